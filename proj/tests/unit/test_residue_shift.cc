// Copyright 2026 The minplus Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include "minplus/residue_shift.hpp"
#include "oracles.hpp"

namespace minplus {
namespace {

using testing::SplitMix64;

TEST(ResidueShift, EntryMapExamples) {
  EXPECT_EQ(shift_ab_entry(157, 57, 100), 100);
  EXPECT_EQ(shift_ab_entry(157, 3, 100), 103);
  EXPECT_EQ(residue_class(157, 100), 57);
  EXPECT_EQ(residue_class(1234, 1000), 23);
}

TEST(ResidueShift, CWindow) {
  EXPECT_TRUE(in_window_j(250, 20, 30, 100));
  EXPECT_TRUE(in_window_j(251, 20, 30, 100));
  EXPECT_FALSE(in_window_j(252, 20, 30, 100));
  EXPECT_EQ(shift_c_entry(250, 20, 30, 100), 200);
  EXPECT_EQ(shift_c_entry(253, 20, 30, 100), 207);
  // window wraps past M
  EXPECT_TRUE(in_window_j(300, 49, 50, 100));
  EXPECT_TRUE(in_window_j(399, 49, 50, 100));
  EXPECT_EQ(shift_c_entry(300, 49, 50, 100), 201);
}

TEST(ResidueShift, MapsAreMonotone) {
  for (Value m : {100, 300}) {
    for (int s = 0; s < 100; s += 7) {
      Value prev = shift_ab_entry(m, s, m);
      for (Value x = m + 1; x < 6 * m; ++x) {
        const Value y = shift_ab_entry(x, s, m);
        EXPECT_LE(prev, y);
        prev = y;
      }
      for (int t = 0; t < 100; t += 13) {
        Value pc = shift_c_entry(2 * m, s, t, m);
        for (Value x = 2 * m + 1; x < 8 * m; ++x) {
          const Value y = shift_c_entry(x, s, t, m);
          EXPECT_LE(pc, y);
          pc = y;
        }
      }
    }
  }
}

TEST(ResidueShift, ResiduesStayBelowTenth) {
  for (Value m : {100, 500}) {
    const Value w = m / 100;
    for (Value x = m; x < 4 * m; ++x)
      for (int s = 0; s < 100; s += 3) {
        EXPECT_LE(testing::mod(shift_ab_entry(x, s, m), m), 3 * w);
        for (int t = 0; t < 100; t += 11) EXPECT_LE(testing::mod(shift_c_entry(x + m, s, t, m), m), 7 * w);
      }
  }
}

TEST(ResidueShift, WitnessEquivalenceRow) {
  SplitMix64 rng(61);
  for (int it = 0; it < 6; ++it) {
    const std::size_t n = 1 + rng.below(3);
    const Value m = 100;
    const IntMatrix a = testing::random_matrix(rng, n, n, 1, 3 * m);
    const IntMatrix b = testing::random_row_monotone(rng, n, n, 3 * m);
    const IntMatrix exact = minplus_product_naive(a, b);
    IntMatrix cand = exact;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = n; j-- > 0;) {
        if (rng.below(2) && cand(i, j) > 0) --cand(i, j);
        if (j + 1 < n) cand(i, j) = std::min(cand(i, j), cand(i, j + 1));
      }
    const auto all = shift_residues(a, b, cand, m);
    ASSERT_EQ(all.size(), 10000u);
    WitnessMask joined(n, n);
    for (const auto& li : all) {
      ASSERT_TRUE(validate_verification(li.inst).ok) << li.s << "," << li.t;
      joined |= witness_mask_naive(li.inst, QueryAxis::kPerIJ);
    }
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) EXPECT_EQ(joined.get(i, j), cand(i, j) == exact(i, j));
  }
}

TEST(ResidueShift, WitnessEquivalenceConv) {
  SplitMix64 rng(67);
  for (int it = 0; it < 4; ++it) {
    const std::size_t n = 1 + rng.below(4);
    const IntArray a = testing::random_monotone_array(rng, n, 250);
    const IntArray b = testing::random_monotone_array(rng, n, 250);
    const IntArray exact = minplus_convolution_naive(a, b);
    IntArray cand = exact;
    for (std::size_t k = 0; k < cand.size(); ++k)
      if (rng.below(2) && cand[k] > 0) --cand[k];
    const auto all = shift_residues_conv(a, b, cand, 100);
    ASSERT_EQ(all.size(), 10000u);
    WitnessMask joined(1, exact.size(), 2);
    for (const auto& li : all) joined |= witness_mask_naive(li.inst);
    for (std::size_t k = 0; k < exact.size(); ++k) EXPECT_EQ(joined.get(0, k), cand[k] == exact[k]);
  }
}

TEST(ResidueShift, CachedMatchesEntryMaps) {
  SplitMix64 rng(71);
  const IntMatrix a = testing::random_matrix(rng, 3, 4, 1, 900);
  const IntMatrix b = testing::random_row_monotone(rng, 4, 5, 900);
  const IntMatrix c = testing::random_row_monotone(rng, 3, 5, 900);
  const ResidueShift rs(a, b, 300);
  for (int s : {0, 17, 99}) {
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t k = 0; k < 4; ++k) EXPECT_EQ(rs.a(s)(i, k), shift_ab_entry(a(i, k) + 300, s, 300));
    const IntMatrix cs = rs.c(c, s, 42);
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 5; ++j) EXPECT_EQ(cs(i, j), shift_c_entry(c(i, j) + 600, s, 42, 300));
  }
  EXPECT_THROW(ResidueShift(a, b, 150), std::invalid_argument);
}

TEST(ResidueShift, ValidationReportsFirstOffender) {
  VerificationInstance v{IntMatrix{{100, 100}}, IntMatrix{{100, 100}, {100, 100}},
                         IntMatrix{{200, 200}}, 100};
  EXPECT_TRUE(validate_verification(v).ok);
  v.c(0, 1) = 215;
  auto r = validate_verification(v);
  EXPECT_FALSE(r.ok);
  EXPECT_EQ(r.row, 0u);
  EXPECT_EQ(r.col, 1u);
  v.c(0, 1) = 200;
  v.b(1, 1) = 99;
  EXPECT_FALSE(validate_verification(v).ok);
  v.b(1, 1) = 100;
  v.modulus = 150;
  EXPECT_FALSE(validate_verification(v).ok);
}

}  // namespace
}  // namespace minplus
