// Copyright 2026 The minplus Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "minplus/matrix.hpp"
#include "minplus/modulus_search.hpp"
#include "minplus/segments.hpp"
#include "minplus/solver.hpp"

namespace minplus {

// s_k = #{i : A_i + B_(k-i) = C_k (mod q)} for k in [2, 2n] (origin 2), read
// off the bivariate product of sum x^(A_i) y^i and sum x^(B_j) y^j. A
// non-empty `diagonals` (d = k - 2, ascending) fills only those k; the rest
// stay zero.
IntArray compute_s_array(const ConvVerificationInstance& inst, Value q, const RingOptions& ring = {},
                         std::span<const std::size_t> diagonals = {});

struct ConvVerification {
  WitnessMask mask;  // 1 x (2n-1), origin 2
  std::vector<Value> counts;
  std::vector<Value> spurious;
  ModulusReport report;
  SegmentPipeline pipeline;
};

// Full solver for one promised convolution instance, restricted to
// `diagonals` when non-empty (other entries of the mask stay false).
ConvVerification verify_conv_instance(const ConvVerificationInstance& inst,
                                      const SolverConfig& cfg = {},
                                      std::span<const std::size_t> diagonals = {},
                                      const ModulusReport* shared = nullptr,
                                      SolveStats* stats = nullptr);

// Mask per k: YES iff s_k > s'_k.
WitnessMask solve_verification_conv(const ConvVerificationInstance& inst,
                                    const SolverConfig& cfg = {},
                                    std::span<const std::size_t> diagonals = {});

// Nearest multiple of 100 to sqrt(U), at least 100; cfg.m_override wins.
Value choose_M_conv(Value entry_bound, const SolverConfig& cfg);

// Min-plus convolution of two monotone arrays with entries in
// [1, tag.entry_bound]; result has length 2n-1 and origin 2.
IntArray minplus_conv_monotone(const IntArray& a, const IntArray& b, const MonotoneTag& tag,
                               const SolverConfig& cfg = {}, SolveStats* stats = nullptr);

}  // namespace minplus
