// Copyright 2026 The minplus Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include "minplus/field.hpp"
#include "minplus/polyring.hpp"
#include "oracles.hpp"

namespace minplus {
namespace {

using testing::SplitMix64;

CyclicPolyMatrix random_polymat(SplitMix64& rng, std::size_t rows, std::size_t cols,
                                std::size_t q, std::uint64_t p) {
  CyclicPolyMatrix m(rows, cols, q);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j)
      for (auto& c : m.entry(i, j)) c = rng.below(4) == 0 ? rng.below(p) : rng.below(3);
  return m;
}

TEST(Field, Arithmetic) {
  const PrimeField f;
  const std::uint64_t p = f.modulus();
  EXPECT_EQ(f.add(p - 1, 2), 1u);
  EXPECT_EQ(f.sub(1, 2), p - 1);
  EXPECT_EQ(f.mul(f.inv(12345), 12345), 1u);
  EXPECT_EQ(f.pow(3, p - 1), 1u);
  EXPECT_GE(f.two_adicity(), 40);
  const std::uint64_t w = f.root_of_unity(1024);
  EXPECT_EQ(f.pow(w, 1024), 1u);
  EXPECT_NE(f.pow(w, 512), 1u);
}

TEST(Field, RejectsBadGenerator) {
  // 4 is a square modulo every odd prime.
  EXPECT_THROW(PrimeField(PrimeField::kDefaultModulus, 4), std::invalid_argument);
}

TEST(Ntt, RoundTrip) {
  const PrimeField f;
  SplitMix64 rng(11);
  for (std::size_t len : {1u, 2u, 8u, 64u}) {
    Ntt ntt(f, len);
    std::vector<std::uint64_t> a(len), orig;
    for (auto& x : a) x = rng.below(f.modulus());
    orig = a;
    ntt.forward(a);
    ntt.inverse(a);
    EXPECT_EQ(a, orig);
  }
}

TEST(CyclicConvolve, Examples) {
  EXPECT_EQ(cyclic_convolve(CyclicPoly::monomial(5, 1), CyclicPoly::monomial(5, 2)),
            CyclicPoly::monomial(5, 3));
  EXPECT_EQ(cyclic_convolve(CyclicPoly::monomial(5, 3), CyclicPoly::monomial(5, 4)),
            CyclicPoly::monomial(5, 2));
  const CyclicPoly one_plus_x(3, {1, 1, 0});
  EXPECT_EQ(cyclic_convolve(one_plus_x, one_plus_x), CyclicPoly(3, {1, 2, 1}));
}

TEST(CyclicConvolve, MatchesQuadraticLoop) {
  const PrimeField f;
  SplitMix64 rng(2);
  for (int it = 0; it < 50; ++it) {
    const std::size_t q = 1 + rng.below(40);
    CyclicPoly u(q), v(q);
    for (auto& c : u.coeffs) c = rng.below(f.modulus());
    for (auto& c : v.coeffs) c = rng.below(f.modulus());
    EXPECT_EQ(cyclic_convolve(u, v, f).coeffs, testing::cyclic_naive(u.coeffs, v.coeffs, f.modulus()));
  }
}

TEST(CyclicConvolve, CommutativeAndAssociative) {
  const PrimeField f;
  SplitMix64 rng(3);
  for (int it = 0; it < 40; ++it) {
    const std::size_t q = 1 + rng.below(24);
    CyclicPoly u(q), v(q), w(q);
    for (auto* p : {&u, &v, &w})
      for (auto& c : p->coeffs) c = rng.below(f.modulus());
    EXPECT_EQ(cyclic_convolve(u, v, f), cyclic_convolve(v, u, f));
    EXPECT_EQ(cyclic_convolve(cyclic_convolve(u, v, f), w, f),
              cyclic_convolve(u, cyclic_convolve(v, w, f), f));
  }
}

TEST(PolymatMul, MonomialExponentPattern) {
  SplitMix64 rng(4);
  for (int it = 0; it < 100; ++it) {
    const std::size_t q = 1 + rng.below(30);
    const IntMatrix a = testing::random_matrix(rng, 1 + rng.below(4), 1, -50, 50);
    const IntMatrix b = testing::random_matrix(rng, 1, 1 + rng.below(4), -50, 50);
    const auto p = polymat_mul(CyclicPolyMatrix::monomials(a, q), CyclicPolyMatrix::monomials(b, q));
    for (std::size_t i = 0; i < a.rows(); ++i)
      for (std::size_t j = 0; j < b.cols(); ++j)
        EXPECT_EQ(p.poly(i, j), CyclicPoly::monomial(q, a(i, 0) + b(0, j)));
  }
}

TEST(PolymatMul, MonomialOneByOne) {
  for (Value a = 0; a < 7; ++a)
    for (Value b = 0; b < 7; ++b) {
      const auto p = polymat_mul(CyclicPolyMatrix::monomials(IntMatrix{{a}}, 7),
                                 CyclicPolyMatrix::monomials(IntMatrix{{b}}, 7));
      EXPECT_EQ(p.poly(0, 0), CyclicPoly::monomial(7, (a + b) % 7));
    }
}

TEST(PolymatMul, IdentityLeavesOperandUnchanged) {
  SplitMix64 rng(5);
  const auto rhs = random_polymat(rng, 3, 2, 6, PrimeField{}.modulus());
  CyclicPolyMatrix id(3, 3, 6);
  for (std::size_t i = 0; i < 3; ++i) id.set(i, i, CyclicPoly::monomial(6, 0));
  for (auto s : {RingStrategy::kFrequency, RingStrategy::kSparse})
    EXPECT_EQ(polymat_mul(id, rhs, {PrimeField{}, s}), rhs);
}

TEST(PolymatMul, RandomMatchesSchoolbook) {
  SplitMix64 rng(7);
  const PrimeField f;
  const auto lhs = random_polymat(rng, 3, 4, 11, f.modulus());
  const auto rhs = random_polymat(rng, 4, 2, 11, f.modulus());
  const auto want = testing::polymat_schoolbook(lhs, rhs, f.modulus());
  for (auto s : {RingStrategy::kAuto, RingStrategy::kFrequency, RingStrategy::kSparse})
    for (auto nb : {NumericBackend::kSchoolbook, NumericBackend::kBlocked})
      EXPECT_EQ(polymat_mul(lhs, rhs, {f, s, nb}), want);
}

TEST(PolymatMul, ShapeMismatchThrows) {
  EXPECT_THROW(polymat_mul(CyclicPolyMatrix(2, 3, 4), CyclicPolyMatrix(2, 3, 4)),
               std::invalid_argument);
  EXPECT_THROW(polymat_mul(CyclicPolyMatrix(2, 3, 4), CyclicPolyMatrix(3, 3, 5)),
               std::invalid_argument);
}

TEST(Coefficient, Examples) {
  const auto p = polymat_mul(CyclicPolyMatrix::monomials(IntMatrix{{1, 1}}, 5),
                             CyclicPolyMatrix::monomials(IntMatrix{{1}, {1}}, 5));
  EXPECT_EQ(coefficient(p, 0, 0, 2), 2u);
  EXPECT_EQ(coefficient(p, 0, 0, 4), 0u);
  EXPECT_THROW(coefficient(p, 0, 0, 5), std::out_of_range);
}

TEST(Coefficient, MatchesDirectModularCount) {
  SplitMix64 rng(9);
  for (int it = 0; it < 20; ++it) {
    const std::size_t q = 1 + rng.below(13);
    const IntMatrix a = testing::random_matrix(rng, 3, 5, -20, 40);
    const IntMatrix b = testing::random_matrix(rng, 5, 4, 0, 40);
    const auto p = polymat_mul(CyclicPolyMatrix::monomials(a, q), CyclicPolyMatrix::monomials(b, q));
    const TermTable t = monomial_matrix_product(MonomialSet(a.data(), q), MonomialSet(b.data(), q),
                                                3, 5, 4);
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 4; ++j)
        for (std::size_t r = 0; r < q; ++r) {
          std::uint64_t want = 0;
          for (std::size_t k = 0; k < 5; ++k)
            if (testing::mod(a(i, k) + b(k, j), static_cast<Value>(q)) == static_cast<Value>(r)) ++want;
          EXPECT_EQ(coefficient(p, i, j, r), want);
          EXPECT_EQ(t.coefficient(i * 4 + j, r), want);
        }
  }
}

TEST(MonomialProducts, KeepMaskAndStrategiesAgree) {
  SplitMix64 rng(13);
  const std::size_t q = 9;
  const IntMatrix a = testing::random_matrix(rng, 4, 6, 0, 50);
  const IntMatrix b = testing::random_matrix(rng, 6, 3, 0, 50);
  std::vector<std::uint8_t> keep(a.data().size());
  for (auto& k : keep) k = static_cast<std::uint8_t>(rng.below(2));
  const MonomialSet l(a.data(), q, keep), r(b.data(), q);
  const auto sparse = monomial_matrix_product(l, r, 4, 6, 3, {PrimeField{}, RingStrategy::kSparse});
  const auto freq = monomial_matrix_product(l, r, 4, 6, 3, {PrimeField{}, RingStrategy::kFrequency});
  const auto dense = polymat_mul(CyclicPolyMatrix::monomials(a, q, keep), CyclicPolyMatrix::monomials(b, q));
  for (std::size_t e = 0; e < 12; ++e)
    for (std::size_t x = 0; x < q; ++x) {
      EXPECT_EQ(sparse.coefficient(e, x), freq.coefficient(e, x));
      EXPECT_EQ(sparse.coefficient(e, x), coefficient(dense, e / 3, e % 3, x));
    }
}

TEST(Bivariate, RandomMatchesDoubleLoop) {
  SplitMix64 rng(17);
  const PrimeField f;
  for (int it = 0; it < 30; ++it) {
    const std::size_t q = 1 + rng.below(9);
    BivariatePoly l(q, 1 + rng.below(6)), r(q, 1 + rng.below(6));
    for (std::size_t d = 0; d < l.y_len(); ++d)
      for (auto& c : l.y_slice(d)) c = rng.below(f.modulus());
    for (std::size_t d = 0; d < r.y_len(); ++d)
      for (auto& c : r.y_slice(d)) c = rng.below(5);
    const auto want = testing::bivariate_naive(l, r, f.modulus());
    EXPECT_EQ(bivariate_mul(l, r, {f, RingStrategy::kFrequency}), want);
    EXPECT_EQ(bivariate_mul(l, r, {f, RingStrategy::kSparse}), want);
  }
}

TEST(Bivariate, MonomialProductRestrictedDegrees) {
  SplitMix64 rng(19);
  const std::vector<Value> a{3, 5, 5, 9}, b{1, 1, 4, 8};
  const std::size_t q = 7;
  const std::vector<std::size_t> degrees{2, 5, 8};
  for (auto s : {RingStrategy::kFrequency, RingStrategy::kSparse}) {
    const auto t = monomial_bivariate_product(MonomialSet(a, q), MonomialSet(b, q), 1,
                                              {PrimeField{}, s}, degrees);
    for (auto deg : degrees)
      for (std::size_t r = 0; r < q; ++r) {
        std::uint64_t want = 0;
        for (std::size_t i = 0; i < 4; ++i)
          for (std::size_t j = 0; j < 4; ++j)
            if (i + j + 2 == deg && static_cast<std::size_t>((a[i] + b[j]) % 7) == r) ++want;
        EXPECT_EQ(t.coefficient(deg, r), want) << "deg " << deg << " r " << r;
      }
  }
}

TEST(ExactCounts, Guard) {
  EXPECT_NO_THROW(require_exact_counts(PrimeField{}, 1u << 20));
  EXPECT_THROW(require_exact_counts(PrimeField(17, 3), 17), std::domain_error);
}

}  // namespace
}  // namespace minplus
