// Copyright 2026 The minplus Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "minplus/field.hpp"
#include "minplus/matrix.hpp"

namespace minplus {

// Element of F[x]/(x^Q - 1): coefficient of x^r lives at coeffs[r].
struct CyclicPoly {
  std::size_t q = 1;
  std::vector<std::uint64_t> coeffs = std::vector<std::uint64_t>(1, 0);

  CyclicPoly() = default;
  explicit CyclicPoly(std::size_t order) : q(order), coeffs(order, 0) {}
  CyclicPoly(std::size_t order, std::vector<std::uint64_t> c);
  // x^(e mod Q) for any integer e.
  static CyclicPoly monomial(std::size_t order, Value exponent);

  friend bool operator==(const CyclicPoly&, const CyclicPoly&) = default;
};

// Matrix over F[x]/(x^Q - 1) with one shared Q; coefficients are stored
// entry-major: entry (i,j) occupies coeffs[(i*cols + j)*Q, ... + Q).
class CyclicPolyMatrix {
 public:
  CyclicPolyMatrix() = default;
  CyclicPolyMatrix(std::size_t rows, std::size_t cols, std::size_t q)
      : rows_(rows), cols_(cols), q_(q), coeffs_(rows * cols * q, 0) {}

  // Entry (i,j) = x^(exponents(i,j) mod Q), or 0 where keep[i*cols+j] == 0
  // when a keep mask is supplied.
  static CyclicPolyMatrix monomials(const IntMatrix& exponents, std::size_t q,
                                    std::span<const std::uint8_t> keep = {});

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t q() const noexcept { return q_; }

  std::span<std::uint64_t> entry(std::size_t i, std::size_t j) {
    return {coeffs_.data() + (i * cols_ + j) * q_, q_};
  }
  std::span<const std::uint64_t> entry(std::size_t i, std::size_t j) const {
    return {coeffs_.data() + (i * cols_ + j) * q_, q_};
  }
  CyclicPoly poly(std::size_t i, std::size_t j) const;
  void set(std::size_t i, std::size_t j, const CyclicPoly& p);

  friend bool operator==(const CyclicPolyMatrix&, const CyclicPolyMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::size_t q_ = 1;
  std::vector<std::uint64_t> coeffs_;
};

// How a ring product is evaluated. Every strategy yields the same element.
//  - kFrequency: transform each entry once at padded length L >= 2Q, run L
//    independent numeric matrix products (one per frequency slot), invert and
//    fold exponents mod Q.
//  - kSparse: accumulate products of nonzero terms directly. Monomial
//    matrices make this O(rows*inner*cols + rows*cols*Q).
//  - kAuto: whichever has the smaller operation estimate.
enum class RingStrategy { kAuto, kFrequency, kSparse };

// Numeric matrix kernel used inside each frequency slot.
enum class NumericBackend { kSchoolbook, kBlocked };

struct RingOptions {
  PrimeField field{};
  RingStrategy strategy = RingStrategy::kAuto;
  NumericBackend numeric = NumericBackend::kSchoolbook;
};

CyclicPoly cyclic_convolve(const CyclicPoly& u, const CyclicPoly& v,
                           const PrimeField& field = PrimeField{});

CyclicPolyMatrix polymat_mul(const CyclicPolyMatrix& lhs, const CyclicPolyMatrix& rhs,
                             const RingOptions& options = {});

// Coefficient of x^r in entry (i,j), read as an exact count (counts stay
// below the field characteristic by the callers' guards).
std::uint64_t coefficient(const CyclicPolyMatrix& m, std::size_t i, std::size_t j,
                          std::size_t r);

// Element of (F[x]/(x^Q - 1))[y]: cyclic in x, ordinary in y. Coefficient of
// x^r y^d lives at coeffs[d*Q + r].
class BivariatePoly {
 public:
  BivariatePoly() = default;
  BivariatePoly(std::size_t q, std::size_t y_len)
      : q_(q), y_len_(y_len), coeffs_(q * y_len, 0) {}

  // sum_d keep[d] * x^(exponents[d] mod Q) y^d; an empty keep keeps all.
  static BivariatePoly monomials(std::span<const Value> exponents, std::size_t q,
                                 std::span<const std::uint8_t> keep = {});

  std::size_t q() const noexcept { return q_; }
  std::size_t y_len() const noexcept { return y_len_; }

  std::span<std::uint64_t> y_slice(std::size_t d) { return {coeffs_.data() + d * q_, q_}; }
  std::span<const std::uint64_t> y_slice(std::size_t d) const {
    return {coeffs_.data() + d * q_, q_};
  }
  std::uint64_t coefficient(std::size_t r, std::size_t d) const {
    return coeffs_.at(d * q_ + r);
  }

  BivariatePoly& add(const BivariatePoly& other, const PrimeField& field);
  BivariatePoly& sub(const BivariatePoly& other, const PrimeField& field);

  friend bool operator==(const BivariatePoly&, const BivariatePoly&) = default;

 private:
  std::size_t q_ = 1;
  std::size_t y_len_ = 0;
  std::vector<std::uint64_t> coeffs_;
};

// Product in (F[x]/(x^Q-1))[y]. The frequency strategy packs (a, d) into a
// single exponent a + Lx*d (Lx >= 2Q-1, so x-sums never spill into the next
// y slot), runs one length Lx*Ly transform and folds x mod Q. A non-empty
// y_degrees restricts the output to those y-degrees (other slices are left
// zero); only the sparse strategy uses it to skip work.
BivariatePoly bivariate_mul(const BivariatePoly& lhs, const BivariatePoly& rhs,
                            const RingOptions& options = {},
                            std::span<const std::size_t> y_degrees = {});

// Entry-indexed collection of monomials over F[x]/(x^Q - 1): entry e is
// keep[e] * x^(exponent[e] mod Q). Used for the inputs of every counting
// product, where each matrix entry or array slot is a single power of x.
struct MonomialSet {
  std::size_t q = 1;
  std::vector<std::uint32_t> exponent;
  std::vector<std::uint8_t> keep;

  MonomialSet() = default;
  MonomialSet(std::span<const Value> values, std::size_t q,
              std::span<const std::uint8_t> keep_mask = {});
  std::size_t size() const noexcept { return exponent.size(); }
};

struct Term {
  std::uint32_t exponent;
  std::uint64_t coeff;
  friend bool operator==(const Term&, const Term&) = default;
};

// Nonzero coefficients of a family of ring elements, one entry per output
// cell (i*cols + j for matrices, the y-degree for bivariate products). Terms
// of an entry are sorted by exponent.
class TermTable {
 public:
  TermTable() = default;
  TermTable(std::size_t entries, std::size_t q) : q_(q), offsets_(entries + 1, 0) {}

  std::size_t entries() const noexcept { return offsets_.empty() ? 0 : offsets_.size() - 1; }
  std::size_t q() const noexcept { return q_; }
  std::span<const Term> terms(std::size_t e) const {
    return {terms_.data() + offsets_[e], offsets_[e + 1] - offsets_[e]};
  }
  std::uint64_t coefficient(std::size_t e, std::size_t r) const;

  static TermTable from_dense(const CyclicPolyMatrix& m);
  static TermTable from_dense(const BivariatePoly& p);

  // Builder interface: append the terms of entries 0, 1, ... in order.
  void push(std::uint32_t exponent, std::uint64_t coeff) { terms_.push_back({exponent, coeff}); }
  void close_entry(std::size_t e) { offsets_[e + 1] = terms_.size(); }

 private:
  std::size_t q_ = 1;
  std::vector<std::size_t> offsets_;
  std::vector<Term> terms_;
};

// Product of an (rows x inner) and an (inner x cols) monomial matrix, both
// stored row-major in MonomialSets sharing one Q. The frequency strategy goes
// through polymat_mul; the sparse strategy counts exponent sums per cell.
TermTable monomial_matrix_product(const MonomialSet& lhs, const MonomialSet& rhs,
                                  std::size_t rows, std::size_t inner, std::size_t cols,
                                  const RingOptions& options = {});

// Product of sum_i lhs[i] y^(i+origin) and sum_j rhs[j] y^(j+origin) in
// (F[x]/(x^Q-1))[y]; entry d of the result is the coefficient of y^d. A
// non-empty y_degrees limits which entries are filled.
TermTable monomial_bivariate_product(const MonomialSet& lhs, const MonomialSet& rhs,
                                     std::size_t origin, const RingOptions& options = {},
                                     std::span<const std::size_t> y_degrees = {});

// Throws std::domain_error unless every count up to `max_count` is
// representable exactly in the field.
void require_exact_counts(const PrimeField& field, std::uint64_t max_count);

}  // namespace minplus
