// Copyright 2026 The minplus Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "minplus/segments.hpp"
#include "oracles.hpp"

namespace minplus {
namespace {

using testing::SplitMix64;

VerificationInstance promised_row(SplitMix64& rng, std::size_t n, Value bound, Value m = 100) {
  const IntMatrix a = testing::random_matrix(rng, n, n, 1, bound);
  const IntMatrix b = testing::random_row_monotone(rng, n, n, bound);
  return cli::lift_verify_row(rng, a, b, m);
}

ConvVerificationInstance promised_conv(SplitMix64& rng, std::size_t n, Value bound, Value m = 100) {
  return cli::lift_verify_conv(rng, testing::random_monotone_array(rng, n, bound),
                               testing::random_monotone_array(rng, n, bound), m);
}

TEST(LevelMax, Examples) {
  EXPECT_EQ(levelmax_for(100), 3);
  EXPECT_EQ(levelmax_for(200), 4);
  EXPECT_EQ(levelmax_for(400), 5);
  EXPECT_THROW(levelmax_for(150), std::invalid_argument);
  EXPECT_THROW(levelmax_for(0), std::invalid_argument);
}

TEST(LevelMax, DefiningInequality) {
  for (Value m = 100; m <= 100000; m += 100) {
    const int l = levelmax_for(m);
    EXPECT_LE(m, 20 * (Value{1} << l));
    EXPECT_LT(10 * (Value{1} << l), m);
  }
}

TEST(TopSegments, ConstantRowsGiveOneSegment) {
  const VerificationInstance v{IntMatrix(2, 3, 4), IntMatrix(3, 5, 7), IntMatrix(2, 5, 9)};
  const auto segs = top_segments_matrix(v, levelmax_for(100));
  EXPECT_EQ(segs.size(), 6u);
  for (const auto& s : segs) {
    EXPECT_EQ(s.start, 0u);
    EXPECT_EQ(s.end, 4u);
  }
}

TEST(TopSegments, FloorBlocksSplit) {
  const VerificationInstance v{IntMatrix{{0}}, IntMatrix{{1, 9}}, IntMatrix{{1, 1}}};
  const auto segs = top_segments_matrix(v, 3);
  ASSERT_EQ(segs.size(), 2u);
  EXPECT_EQ(segs[0].start, 0u);
  EXPECT_EQ(segs[0].end, 0u);
  EXPECT_EQ(segs[1].start, 1u);
  EXPECT_EQ(segs[1].end, 1u);
}

TEST(TopSegments, RandomMatchesLinearScan) {
  SplitMix64 rng(21);
  for (int it = 0; it < 30; ++it) {
    const std::size_t n = 1 + rng.below(90);
    const auto v = promised_row(rng, std::min<std::size_t>(n, 6), 500);
    const int level = static_cast<int>(rng.below(6));
    std::vector<Segment> want;
    for (std::size_t i = 0; i < v.a.rows(); ++i)
      for (std::size_t k = 0; k < v.a.cols(); ++k)
        for (auto [s, e] : testing::linear_runs([&](std::size_t j) { return v.b(k, j); },
                                                [&](std::size_t j) { return v.c(i, j); }, level, 0,
                                                v.b.cols() - 1))
          want.push_back({i, k, s, e, level});
    auto got = segments_matrix(v, level);
    std::sort(got.begin(), got.end());
    std::sort(want.begin(), want.end());
    EXPECT_EQ(got, want);
  }
}

TEST(TopSegments, LongRowsUseSearchPath) {
  // Rows longer than the linear-scan limit.
  SplitMix64 rng(23);
  IntMatrix b(1, 300), c(1, 300);
  Value x = 0, y = 0;
  for (std::size_t j = 0; j < 300; ++j) {
    x += static_cast<Value>(rng.below(100) == 0);
    y += static_cast<Value>(rng.below(150) == 0);
    b(0, j) = x;
    c(0, j) = y;
  }
  const VerificationInstance v{IntMatrix{{0}}, b, c};
  for (int level = 0; level < 3; ++level) {
    std::vector<Segment> want;
    for (auto [s, e] : testing::linear_runs([&](std::size_t j) { return b(0, j); },
                                            [&](std::size_t j) { return c(0, j); }, level, 0, 299))
      want.push_back({0, 0, s, e, level});
    EXPECT_EQ(segments_matrix(v, level), want);
  }
}

TEST(IsActive, Examples) {
  const Segment seg{0, 0, 0, 0, 0};
  VerificationInstance v{IntMatrix{{1000}}, IntMatrix{{5}}, IntMatrix{{4}}, 100};
  EXPECT_EQ(anchor_delta(seg, v), 1001);
  EXPECT_TRUE(is_active(seg, v, 143));
  v = {IntMatrix{{5}}, IntMatrix{{3}}, IntMatrix{{8}}, 100};
  EXPECT_FALSE(is_active(seg, v, 143));
  EXPECT_FALSE(is_active(seg, v, 1));
  v = {IntMatrix{{1000}}, IntMatrix{{5}}, IntMatrix{{100}}, 100};
  EXPECT_EQ(testing::mod(anchor_delta(seg, v), 143), 47);
  EXPECT_FALSE(is_active(seg, v, 143));
}

TEST(InShiftWindow, Boundaries) {
  EXPECT_TRUE(in_shift_window(4, 143, 0));
  EXPECT_FALSE(in_shift_window(5, 143, 0));
  EXPECT_TRUE(in_shift_window(-4, 143, 0));
  EXPECT_TRUE(in_shift_window(139, 143, 0));
  EXPECT_FALSE(in_shift_window(138, 143, 0));
  EXPECT_TRUE(in_shift_window(8, 143, 1));
}

TEST(RefineActive, ConstantRegionKeepsInterval) {
  const VerificationInstance v{IntMatrix{{1000}}, IntMatrix{{0, 0, 0}}, IntMatrix{{0, 0, 0}}, 100};
  const ActiveSet parent{1, 1000, {Segment{0, 0, 0, 2, 1}}};
  const auto child = refine_active(parent, v, 1000);
  ASSERT_EQ(child.segments.size(), 1u);
  EXPECT_EQ(child.segments[0], (Segment{0, 0, 0, 2, 0}));
}

TEST(RefineActive, OneSplit) {
  const VerificationInstance v{IntMatrix{{1000}}, IntMatrix{{0, 0, 2, 2}}, IntMatrix{{0, 0, 0, 0}},
                               100};
  const ActiveSet parent{2, 1000, {Segment{0, 0, 0, 3, 2}}};
  const auto child = refine_active(parent, v, 1000);
  ASSERT_EQ(child.segments.size(), 2u);
  EXPECT_EQ(child.segments[0], (Segment{0, 0, 0, 1, 1}));
  EXPECT_EQ(child.segments[1], (Segment{0, 0, 2, 3, 1}));
  EXPECT_THROW(refine_active(ActiveSet{0, 1000, {}}, v, 1000), std::invalid_argument);
}

TEST(RefineActive, PipelineEqualsDirectEnumeration) {
  SplitMix64 rng(29);
  for (int it = 0; it < 40; ++it) {
    const std::size_t n = 1 + rng.below(8);
    const Value m = 100 * static_cast<Value>(1 + rng.below(4));
    const auto v = promised_row(rng, n, 3 * m, m);
    const Value q = m + static_cast<Value>(rng.below(static_cast<std::uint64_t>(m)));
    const int lmax = levelmax_for(m);
    ActiveSet cur = active_segments_direct(v, q, lmax);
    const auto pipe = run_segment_pipeline(v, q, true);
    EXPECT_EQ(pipe.active_counts[static_cast<std::size_t>(lmax)], cur.segments.size());
    for (int l = lmax - 1; l >= 0; --l) {
      cur = refine_active(cur, v, q);
      auto direct = active_segments_direct(v, q, l).segments;
      auto got = cur.segments;
      std::sort(direct.begin(), direct.end());
      std::sort(got.begin(), got.end());
      EXPECT_EQ(got, direct) << "level " << l;
      EXPECT_EQ(pipe.active_counts[static_cast<std::size_t>(l)], got.size());
    }
  }
}

TEST(Aggregate, RangeStampAndEmpty) {
  // (i=0, k=0, columns [1,2]) with an exact congruence mod 7.
  const VerificationInstance v{IntMatrix{{7, 1}}, IntMatrix{{0, 0, 0, 0}, {0, 0, 0, 0}},
                               IntMatrix{{0, 0, 0, 0}}, 100};
  const ActiveSet s0{0, 7, {Segment{0, 0, 1, 2, 0}}};
  EXPECT_EQ(aggregate_sprime_rows(s0, v, 7), (IntMatrix{{0, 1, 1, 0}}));
  EXPECT_TRUE(aggregate_sprime_rows(ActiveSet{0, 7, {}}, v, 7).all_zero());
  const VerificationInstance w{IntMatrix{{0, 7, 0}}, IntMatrix(3, 6, 0), IntMatrix(1, 6, 0), 100};
  const ActiveSet r0{0, 7, {Segment{0, 1, 3, 5, 0}}};
  EXPECT_EQ(aggregate_rprime_by_ik(r0, w, 7), (IntMatrix{{0, 3, 0}}));
  EXPECT_TRUE(aggregate_rprime_by_ik(ActiveSet{0, 7, {}}, w, 7).all_zero());
}

TEST(Aggregate, RandomMatchesSpuriousCount) {
  SplitMix64 rng(31);
  for (int it = 0; it < 40; ++it) {
    const std::size_t n = 1 + rng.below(7);
    const auto v = promised_row(rng, n, 400);
    const Value q = 100 + static_cast<Value>(rng.below(60));
    const auto pipe = run_segment_pipeline(v, q);
    EXPECT_EQ(aggregate_sprime_rows(pipe.level0, v, q), testing::direct_sprime(v, q));
    VerificationInstance rot = v;
    rot.variant = Variant::kCol;
    EXPECT_EQ(aggregate_rprime_by_ik(pipe.level0, rot, q), testing::direct_r(rot, q, true));
  }
}

TEST(Hierarchy, TilingNestingAndCountBound) {
  SplitMix64 rng(37);
  for (int it = 0; it < 30; ++it) {
    const std::size_t n = 1 + rng.below(8);
    const auto v = promised_row(rng, n, 300);
    const Value u = std::max(v.b.max_entry(), v.c.max_entry());
    for (int level = 0; level <= 3; ++level) {
      const auto segs = segments_matrix(v, level);
      EXPECT_LE(segs.size(), segment_count_bound(v.a.rows() * v.a.cols(), u, level));
      std::vector<std::size_t> covered(v.a.rows() * v.a.cols() * v.b.cols(), 0);
      for (const auto& s : segs)
        for (std::size_t j = s.start; j <= s.end; ++j)
          ++covered[(s.line * v.a.cols() + s.inner) * v.b.cols() + j];
      EXPECT_TRUE(std::all_of(covered.begin(), covered.end(), [](auto c) { return c == 1; }));
      if (level < 3) {
        const auto parents = segments_matrix(v, level + 1);
        for (const auto& s : segs) {
          const bool nested = std::any_of(parents.begin(), parents.end(), [&](const Segment& p) {
            return p.line == s.line && p.inner == s.inner && p.start <= s.start && s.end <= p.end;
          });
          EXPECT_TRUE(nested);
        }
      }
    }
  }
}

TEST(ConvSegments, SingleIndexAndConstantArrays) {
  const ConvVerificationInstance one{IntArray({5}), IntArray({7}), IntArray({12}, 2), 100};
  for (int l = 0; l <= 3; ++l) EXPECT_EQ(segments_conv(one, l).size(), 1u);
  const ConvVerificationInstance flat{IntArray({4, 4, 4, 4}), IntArray({2, 2, 2, 2}),
                                      IntArray(7, 2, 6), 100};
  EXPECT_EQ(top_segments_conv(flat, 3).size(), 7u);
  const std::vector<std::size_t> diags{1, 4};
  EXPECT_EQ(segments_conv(flat, 0, diags).size(), 2u);
}

TEST(ConvSegments, RandomMatchesLinearScanAndSpuriousCount) {
  SplitMix64 rng(41);
  for (int it = 0; it < 40; ++it) {
    const std::size_t n = 1 + rng.below(40);
    const auto v = promised_conv(rng, n, 300);
    const int level = static_cast<int>(rng.below(4));
    std::vector<Segment> want;
    for (std::size_t d = 0; d < 2 * n - 1; ++d) {
      const auto r = diagonal_range(n, d);
      for (auto [s, e] : testing::linear_runs([&](std::size_t i) { return v.a[i]; },
                                              [&](std::size_t i) { return v.b[d - i]; }, level,
                                              r.lo, r.hi))
        want.push_back({d, 0, s, e, level});
    }
    EXPECT_EQ(segments_conv(v, level), want);
    const Value q = 100 + static_cast<Value>(rng.below(60));
    const auto pipe = run_segment_pipeline(v, q, {}, true);
    EXPECT_EQ(aggregate_sprime_conv(pipe.level0, v, q), testing::direct_s_conv(v, q, true));
    for (int l = levelmax_for(100) - 1; l >= 0; --l) {
      auto direct = active_segments_direct(v, q, l).segments;
      EXPECT_EQ(pipe.active_counts[static_cast<std::size_t>(l)], direct.size());
    }
  }
}

TEST(DiagonalRange, Bounds) {
  EXPECT_EQ(diagonal_range(4, 0).lo, 0u);
  EXPECT_EQ(diagonal_range(4, 0).hi, 0u);
  EXPECT_EQ(diagonal_range(4, 3).lo, 0u);
  EXPECT_EQ(diagonal_range(4, 3).hi, 3u);
  EXPECT_EQ(diagonal_range(4, 6).lo, 3u);
  EXPECT_EQ(diagonal_range(4, 6).hi, 3u);
}

}  // namespace
}  // namespace minplus
