// Copyright 2026 The minplus Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "minplus/matrix.hpp"

namespace minplus {

// A maximal index interval [start, end] (0-based, inclusive) on which two
// monotone sequences stay constant after flooring by 2^level.
//  - matrix case: line = i, inner = k, the interval runs over columns j of
//    B[k][.] and C[i][.];
//  - convolution case: line = d (output index k = d + 2), inner = 0, the
//    interval runs over i with A[i] and B[d - i].
struct Segment {
  std::size_t line = 0;
  std::size_t inner = 0;
  std::size_t start = 0;
  std::size_t end = 0;
  int level = 0;

  std::size_t length() const noexcept { return end - start + 1; }
  friend bool operator==(const Segment&, const Segment&) = default;
  friend auto operator<=>(const Segment&, const Segment&) = default;
};

struct ActiveSet {
  int level = 0;
  Value q = 1;
  std::vector<Segment> segments;
};

// Unique l with M/20 <= 2^l < M/10. Throws std::invalid_argument unless M is
// a positive multiple of 100.
int levelmax_for(Value m);

// Residue window test on the canonical residue of delta mod q: true iff
// delta is congruent to some shift in [-4*2^level, 4*2^level].
bool in_shift_window(Value delta, Value q, int level);

// Valid i range (0-based, inclusive) of diagonal d for arrays of length n.
struct DiagonalRange {
  std::size_t lo;
  std::size_t hi;
};
DiagonalRange diagonal_range(std::size_t n, std::size_t d);

namespace detail {

inline constexpr std::size_t kLinearScanLimit = 64;

// Last index x in [from, hi] with key(x) == key(from); key is monotone in x
// (either direction), so the predicate holds on a prefix.
template <class Key>
std::size_t block_end(const Key& key, std::size_t from, std::size_t hi) {
  const Value v = key(from);
  if (hi - from < kLinearScanLimit) {
    std::size_t x = from;
    while (x < hi && key(x + 1) == v) ++x;
    return x;
  }
  std::size_t lo = from, up = hi;
  while (lo < up) {
    const std::size_t mid = lo + (up - lo + 1) / 2;
    if (key(mid) == v)
      lo = mid;
    else
      up = mid - 1;
  }
  return lo;
}

// Calls emit(start, end) for each level segment of (f, g) inside [lo, hi].
template <class F, class G, class Emit>
void for_each_block(const F& f, const G& g, int level, std::size_t lo, std::size_t hi,
                    Emit&& emit) {
  auto kf = [&](std::size_t x) { return f(x) >> level; };
  auto kg = [&](std::size_t x) { return g(x) >> level; };
  std::size_t x = lo;
  while (true) {
    const std::size_t e = std::min(block_end(kf, x, hi), block_end(kg, x, hi));
    emit(x, e);
    if (e == hi) break;
    x = e + 1;
  }
}

}  // namespace detail

// ---- matrix (row and rotated) instances ----

// All level-`level` segments of every (i,k), ordered by (i, k, start).
std::vector<Segment> segments_matrix(const VerificationInstance& inst, int level);
inline std::vector<Segment> top_segments_matrix(const VerificationInstance& inst, int lmax) {
  return segments_matrix(inst, lmax);
}

// A + B - C at the segment start, and whether the high parts (floor by M)
// already certify inequality.
Value anchor_delta(const Segment& seg, const VerificationInstance& inst);
bool is_active(const Segment& seg, const VerificationInstance& inst, Value q);

// Children at seg.level - 1 of each member, keeping the active ones.
ActiveSet refine_active(const ActiveSet& parent, const VerificationInstance& inst, Value q);

// Active segments found by testing every segment at `level` directly.
ActiveSet active_segments_direct(const VerificationInstance& inst, Value q, int level);

// Difference-array aggregation over a complete level-0 active set.
IntMatrix aggregate_sprime_rows(const ActiveSet& s0, const VerificationInstance& inst, Value q);
IntMatrix aggregate_rprime_by_ik(const ActiveSet& s0, const VerificationInstance& inst,
                                 Value q);

// ---- convolution instances ----

// `diagonals` restricts the work to the listed d values (ascending); empty
// means every d in [0, 2n-2].
std::vector<Segment> segments_conv(const ConvVerificationInstance& inst, int level,
                                   std::span<const std::size_t> diagonals = {});
inline std::vector<Segment> top_segments_conv(const ConvVerificationInstance& inst, int lmax,
                                              std::span<const std::size_t> diagonals = {}) {
  return segments_conv(inst, lmax, diagonals);
}
Value anchor_delta(const Segment& seg, const ConvVerificationInstance& inst);
bool is_active(const Segment& seg, const ConvVerificationInstance& inst, Value q);
ActiveSet refine_active_conv(const ActiveSet& parent, const ConvVerificationInstance& inst,
                             Value q);
ActiveSet active_segments_direct(const ConvVerificationInstance& inst, Value q, int level,
                                 std::span<const std::size_t> diagonals = {});
// s'_k indexed by d = k - 2 (length 2n-1).
std::vector<Value> aggregate_sprime_conv(const ActiveSet& s0, const ConvVerificationInstance& inst,
                                         Value q);

// ---- full top-down pipeline ----

struct SegmentPipeline {
  // active_counts[l] = |S_l(Q)|.
  std::vector<std::size_t> active_counts;
  std::size_t top_segment_count = 0;
  ActiveSet level0;
};

// Enumerate level-lmax segments, keep the active ones, refine down to 0.
// When `checks` is set, also verify that every child lies inside its parent.
SegmentPipeline run_segment_pipeline(const VerificationInstance& inst, Value q, bool checks = false);
SegmentPipeline run_segment_pipeline(const ConvVerificationInstance& inst, Value q,
                                     std::span<const std::size_t> diagonals = {},
                                     bool checks = false);

// Upper bound lines * (2 * ceil(U / 2^level) + 1) on the number of segments.
std::size_t segment_count_bound(std::size_t lines, Value entry_bound, int level);

}  // namespace minplus
