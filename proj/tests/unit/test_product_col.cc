// Copyright 2026 The minplus Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include "minplus/product_col.hpp"
#include "minplus/residue_shift.hpp"
#include "oracles.hpp"

namespace minplus {
namespace {

using cli::Family;
using testing::SplitMix64;

constexpr Family kFamilies[] = {Family::kUniformMonotone, Family::kBoundedDifference,
                                Family::kStaircase, Family::kAdversarialTies};

TEST(NormalizeCol, PrefixMin) {
  EXPECT_EQ(normalize_nonincreasing(IntMatrix{{3, 5, 2}}), (IntMatrix{{3, 3, 2}}));
  const auto r = normalize_col_input(IntMatrix{{3, 5, 2}, {9, 9, 9}}, 1);
  EXPECT_EQ(r.a, (IntMatrix{{1, 1, 0}, {0, 0, 0}}));
  EXPECT_EQ(r.offsets, (std::vector<Value>{2, 9}));
}

TEST(Rotation, Example) {
  const IntMatrix a{{1, 2}};
  const IntMatrix b{{1, 2}, {3, 4}};
  const IntMatrix c{{2, 3}};
  const auto v = rotate_to_problem2prime(a, b, c, 5);
  EXPECT_EQ(v.a, (IntMatrix{{3, 2}}));
  EXPECT_EQ(v.b, (IntMatrix{{1, 3}, {2, 4}}));
  EXPECT_EQ(v.c, (IntMatrix{{4, 3}}));
  EXPECT_EQ(v.variant, Variant::kCol);
  // witness (i, k, j) survives the rotation: A_ik + B_kj = C_ij <=> a_ij + b_jk = c_ik
  EXPECT_TRUE(witness_mask_naive(v, QueryAxis::kPerIK).get(0, 0));
  EXPECT_TRUE(witness_mask_naive(v, QueryAxis::kPerIK).get(0, 1));
  EXPECT_THROW(rotate_to_problem2prime(a, b, c, 3), std::invalid_argument);
}

TEST(ComputeR, RandomAgainstDirect) {
  SplitMix64 rng(107);
  for (int it = 0; it < 40; ++it) {
    const std::size_t na = 1 + rng.below(6), nb = 1 + rng.below(6), nc = 1 + rng.below(6);
    const VerificationInstance v{testing::random_matrix(rng, na, nc, 0, 60),
                                 testing::random_matrix(rng, nc, nb, 0, 60),
                                 testing::random_matrix(rng, na, nb, 0, 120), 100, Variant::kCol};
    const Value q = 1 + static_cast<Value>(rng.below(40));
    RingOptions ring;
    ring.strategy = it % 2 ? RingStrategy::kFrequency : RingStrategy::kSparse;
    EXPECT_EQ(compute_r_matrix(v, q, ring), testing::direct_r(v, q, false));
  }
}

TEST(TwoPointer, Example) {
  // a = [[100]], b = [[100, 100, 101]], c = [[200, 201, 201]]
  const VerificationInstance v{IntMatrix{{100}}, IntMatrix{{100, 100, 101}},
                               IntMatrix{{200, 201, 201}}, 100, Variant::kCol};
  EXPECT_TRUE(twopointer_direct(v).get(0, 0));
  const VerificationInstance w{IntMatrix{{100}}, IntMatrix{{100, 100, 101}},
                               IntMatrix{{202, 202, 202}}, 100, Variant::kCol};
  EXPECT_FALSE(twopointer_direct(w).get(0, 0));
}

TEST(VerificationCol, LiftedAgainstNaive) {
  SplitMix64 rng(109);
  for (int it = 0; it < 60; ++it) {
    const std::size_t na = 1 + rng.below(10), nb = 1 + rng.below(10), nc = 1 + rng.below(10);
    const Value m = 100 * static_cast<Value>(1 + rng.below(3));
    const Family fam = kFamilies[it % 4];
    const auto v = cli::lift_verify_col(rng, cli::free_matrix(rng, na, nb, 3 * m, fam),
                                        cli::col_monotone_matrix(rng, nb, nc, 3 * m, fam), m);
    ASSERT_TRUE(validate_verification(v).ok);
    const WitnessMask expected = witness_mask_naive(v, QueryAxis::kPerIK);
    SolverConfig cfg;
    cfg.strict = true;
    EXPECT_EQ(solve_verification_col(v, cfg), expected) << "it=" << it;
    EXPECT_EQ(twopointer_direct(v), expected) << "it=" << it;
    const auto full = verify_matrix_instance(v, cfg);
    EXPECT_EQ(full.counts, testing::direct_r(v, full.report.q, false));
    EXPECT_EQ(full.spurious, testing::direct_r(v, full.report.q, true));
  }
}

TEST(SelectColEngine, Threshold) {
  SolverConfig cfg;
  // M * n^omega <= n^2 U  <=>  100 * 8^3 <= 64 U
  EXPECT_EQ(select_col_engine(8, 8, 8, 800, 100, cfg), ColEngine::kVerify);
  EXPECT_EQ(select_col_engine(8, 8, 8, 799, 100, cfg), ColEngine::kTwoPointer);
}

IntMatrix solve(const IntMatrix& a, const IntMatrix& b, Value u, const SolverConfig& cfg,
                SolveStats* stats = nullptr) {
  return minplus_monotone_col(a, b, MonotoneTag{Axis::kColumnMonotone, u}, cfg, stats);
}

TEST(MonotoneCol, SmallExamples) {
  const IntMatrix a{{3, 5, 2}};
  const IntMatrix b{{1, 4}, {1, 4}, {2, 9}};
  EXPECT_EQ(solve(a, b, 9, {}), (IntMatrix{{4, 7}}));
  EXPECT_THROW(solve(a, IntMatrix{{2, 4}, {1, 4}, {2, 9}}, 9, {}), PromiseViolation);
}

TEST(MonotoneCol, RandomSweepBothEngines) {
  SplitMix64 rng(113);
  for (int it = 0; it < 48; ++it) {
    const std::size_t na = 1 + rng.below(12), nb = 1 + rng.below(12), nc = 1 + rng.below(12);
    const Value u = 1 + static_cast<Value>(rng.below(48));
    const Family fam = kFamilies[it % 4];
    const IntMatrix a = cli::free_matrix(rng, na, nb, u, fam);
    const IntMatrix b = cli::col_monotone_matrix(rng, nb, nc, u, fam);
    SolverConfig cfg;
    cfg.strict = true;
    cfg.col_engine = it % 3 == 0 ? ColEngine::kVerify
                                 : (it % 3 == 1 ? ColEngine::kTwoPointer : ColEngine::kAuto);
    cfg.fast_shared_modulus = it % 4 == 3;
    cfg.threads = 1 + static_cast<unsigned>(it % 2);
    SolveStats stats;
    EXPECT_EQ(solve(a, b, u, cfg, &stats), minplus_product_naive(a, b)) << "it=" << it;
    EXPECT_EQ(stats.audit_failures, 0u);
    EXPECT_FALSE(stats.engine.empty());
  }
}

}  // namespace
}  // namespace minplus
