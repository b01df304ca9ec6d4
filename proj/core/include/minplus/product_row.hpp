// Copyright 2026 The minplus Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <vector>

#include "minplus/matrix.hpp"
#include "minplus/modulus_search.hpp"
#include "minplus/segments.hpp"
#include "minplus/solver.hpp"

namespace minplus {

struct NormalizedRows {
  IntMatrix a;
  // Row minima subtracted from A; add back to every output cell of the row.
  std::vector<Value> offsets;
};

// Subtract each row's minimum, then replace entries above 2*bound by
// 2*bound + 1.
NormalizedRows normalize_A(const IntMatrix& a, Value bound);

// Nearest multiple of 100 to sqrt(na*nb*U / (na*nb*nc)^(omega/3)), clamped to
// [100, cfg.m_max]; cfg.m_override wins when set.
Value choose_M(std::size_t na, std::size_t nb, std::size_t nc, Value entry_bound,
               const SolverConfig& cfg);

// s_ij = #{k : A_ik + B_kj = C_ij (mod q)} from the ring product of the
// monomial matrices x^A and x^B.
IntMatrix compute_s_matrix(const VerificationInstance& inst, Value q, const RingOptions& ring = {});

// Outcome of one matrix verification instance (row or rotated layout). For
// the row layout `counts`/`spurious` are s and s' per (i,j); for the rotated
// layout they are r and r' per (i,k).
struct MatrixVerification {
  WitnessMask mask;
  IntMatrix counts;
  IntMatrix spurious;
  ModulusReport report;
  SegmentPipeline pipeline;
};

// Full solver for one promised instance. With `shared` set, its Q is tried
// first and kept if this instance's audit passes.
MatrixVerification verify_matrix_instance(const VerificationInstance& inst,
                                          const SolverConfig& cfg = {},
                                          const ModulusReport* shared = nullptr,
                                          SolveStats* stats = nullptr);

// Mask per (i,j): YES iff s_ij > s'_ij. Throws PromiseViolation on inputs
// that break the promises.
WitnessMask solve_verification_row(const VerificationInstance& inst, const SolverConfig& cfg = {});

// Direct engine: walks the level-0 segments of every (i,k) and stamps the
// column ranges whose anchor sum is exact. Needs only row-monotone B and C.
WitnessMask scan_verification_row(const VerificationInstance& inst);

// Min-plus product of arbitrary A with row-monotone B (entries in
// [1, tag.entry_bound]).
IntMatrix minplus_monotone_row(const IntMatrix& a, const IntMatrix& b, const MonotoneTag& tag,
                               const SolverConfig& cfg = {}, SolveStats* stats = nullptr);

}  // namespace minplus
