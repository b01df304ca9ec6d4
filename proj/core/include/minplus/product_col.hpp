// Copyright 2026 The minplus Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>

#include "minplus/matrix.hpp"
#include "minplus/product_row.hpp"
#include "minplus/solver.hpp"

namespace minplus {

// Running prefix minimum along every row. With a column-monotone right
// factor this leaves the product unchanged.
IntMatrix normalize_nonincreasing(const IntMatrix& a);

// Prefix minimum, then the row-minimum shift and 2*bound+1 cap of
// normalize_A (both keep rows non-increasing).
NormalizedRows normalize_col_input(const IntMatrix& a, Value bound);

// (W - C, B^T, W - A) as a rotated-layout instance: A (na x nc), B (nc x nb),
// C (na x nb); query per (i, j) of the original candidate. Throws
// std::invalid_argument when w is below some entry of A, B or C.
VerificationInstance rotate_to_problem2prime(const IntMatrix& a, const IntMatrix& b,
                                             const IntMatrix& c_candidate, Value w);

// r_ik = #{j : A_ik + B_kj = C_ij (mod q)} via the ring product of x^B and
// x^(-C^T), read at x^(-A_ik).
IntMatrix compute_r_matrix(const VerificationInstance& inst, Value q, const RingOptions& ring = {});

// Mask per (i,k): YES iff r_ik > r'_ik.
WitnessMask solve_verification_col(const VerificationInstance& inst, const SolverConfig& cfg = {});

// Direct engine for the rotated layout: walks the common refinement of the
// constant runs of B[k][.] and C[i][.] and tests one column per piece.
WitnessMask twopointer_direct(const VerificationInstance& inst);

// Verification engine when M * (na*nb*nc)^(omega/3) <= na*nb*U, else the
// two-pointer engine (for ColEngine::kAuto).
ColEngine select_col_engine(std::size_t na, std::size_t nb, std::size_t nc, Value entry_bound,
                            Value m, const SolverConfig& cfg);

// Min-plus product of arbitrary A with column-monotone B (entries in
// [1, tag.entry_bound]).
IntMatrix minplus_monotone_col(const IntMatrix& a, const IntMatrix& b, const MonotoneTag& tag,
                               const SolverConfig& cfg = {}, SolveStats* stats = nullptr);

}  // namespace minplus
