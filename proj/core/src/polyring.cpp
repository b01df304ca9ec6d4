// Copyright 2026 The minplus Authors
// SPDX-License-Identifier: Apache-2.0

#include "minplus/polyring.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace minplus {

namespace {

std::size_t reduce_exponent(Value e, std::size_t q) {
  const Value m = static_cast<Value>(q);
  Value r = e % m;
  if (r < 0) r += m;
  return static_cast<std::size_t>(r);
}

void require_same_q(std::size_t a, std::size_t b, const char* where) {
  if (a != b) throw std::invalid_argument(std::string(where) + ": mismatched ring order Q");
}

double log2_of(std::size_t n) { return n <= 1 ? 1.0 : std::log2(static_cast<double>(n)); }

// Numeric product over the field of an (r x m) and (m x c) matrix, both
// row-major, accumulated into out (r x c).
void numeric_matmul(const PrimeField& f, NumericBackend backend, const std::uint64_t* a,
                    const std::uint64_t* b, std::uint64_t* out, std::size_t r, std::size_t m,
                    std::size_t c) {
  if (backend == NumericBackend::kSchoolbook) {
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j) {
        u128 acc = 0;
        for (std::size_t k = 0; k < m; ++k) {
          acc += static_cast<u128>(a[i * m + k]) * b[k * c + j];
          // Each product is below 2^126; keep two in flight at most.
          if (k & 1) acc = f.reduce(acc);
        }
        out[i * c + j] = f.reduce(acc);
      }
    return;
  }
  constexpr std::size_t kTile = 32;
  std::fill(out, out + r * c, 0);
  for (std::size_t i0 = 0; i0 < r; i0 += kTile)
    for (std::size_t k0 = 0; k0 < m; k0 += kTile)
      for (std::size_t j0 = 0; j0 < c; j0 += kTile) {
        const std::size_t i1 = std::min(r, i0 + kTile);
        const std::size_t k1 = std::min(m, k0 + kTile);
        const std::size_t j1 = std::min(c, j0 + kTile);
        for (std::size_t i = i0; i < i1; ++i)
          for (std::size_t k = k0; k < k1; ++k) {
            const std::uint64_t aik = a[i * m + k];
            if (aik == 0) continue;
            for (std::size_t j = j0; j < j1; ++j)
              out[i * c + j] = f.add(out[i * c + j], f.mul(aik, b[k * c + j]));
          }
      }
}

std::size_t nnz(std::span<const std::uint64_t> v) {
  return static_cast<std::size_t>(std::count_if(v.begin(), v.end(), [](auto x) { return x != 0; }));
}

// Scratch counter over [0, q) that remembers which slots it touched.
class SlotCounter {
 public:
  explicit SlotCounter(std::size_t q) : counts_(q, 0) {}
  void add(std::uint32_t slot, std::uint64_t v = 1) {
    if (counts_[slot] == 0) touched_.push_back(slot);
    counts_[slot] += v;
  }
  // Appends the sorted nonzero slots to `out` and resets.
  void flush(TermTable& out) {
    std::sort(touched_.begin(), touched_.end());
    for (auto s : touched_) {
      out.push(s, counts_[s]);
      counts_[s] = 0;
    }
    touched_.clear();
  }

 private:
  std::vector<std::uint64_t> counts_;
  std::vector<std::uint32_t> touched_;
};

}  // namespace

CyclicPoly::CyclicPoly(std::size_t order, std::vector<std::uint64_t> c)
    : q(order), coeffs(std::move(c)) {
  if (order == 0) throw std::invalid_argument("CyclicPoly: Q must be positive");
  if (coeffs.size() != order) throw std::invalid_argument("CyclicPoly: need exactly Q coefficients");
}

CyclicPoly CyclicPoly::monomial(std::size_t order, Value exponent) {
  if (order == 0) throw std::invalid_argument("CyclicPoly: Q must be positive");
  CyclicPoly p(order);
  p.coeffs[reduce_exponent(exponent, order)] = 1;
  return p;
}

CyclicPolyMatrix CyclicPolyMatrix::monomials(const IntMatrix& exponents, std::size_t q,
                                             std::span<const std::uint8_t> keep) {
  if (q == 0) throw std::invalid_argument("CyclicPolyMatrix: Q must be positive");
  if (!keep.empty() && keep.size() != exponents.rows() * exponents.cols()) {
    throw std::invalid_argument("CyclicPolyMatrix::monomials: keep mask size mismatch");
  }
  CyclicPolyMatrix m(exponents.rows(), exponents.cols(), q);
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (!keep.empty() && keep[i * m.cols() + j] == 0) continue;
      m.entry(i, j)[reduce_exponent(exponents(i, j), q)] = 1;
    }
  return m;
}

CyclicPoly CyclicPolyMatrix::poly(std::size_t i, std::size_t j) const {
  auto e = entry(i, j);
  return CyclicPoly(q_, std::vector<std::uint64_t>(e.begin(), e.end()));
}

void CyclicPolyMatrix::set(std::size_t i, std::size_t j, const CyclicPoly& p) {
  require_same_q(p.q, q_, "CyclicPolyMatrix::set");
  std::copy(p.coeffs.begin(), p.coeffs.end(), entry(i, j).begin());
}

CyclicPoly cyclic_convolve(const CyclicPoly& u, const CyclicPoly& v, const PrimeField& field) {
  require_same_q(u.q, v.q, "cyclic_convolve");
  const std::size_t q = u.q;
  const std::size_t len = next_pow2(2 * q);
  Ntt ntt(field, len);
  std::vector<std::uint64_t> a(len, 0), b(len, 0);
  std::copy(u.coeffs.begin(), u.coeffs.end(), a.begin());
  std::copy(v.coeffs.begin(), v.coeffs.end(), b.begin());
  ntt.forward(a);
  ntt.forward(b);
  for (std::size_t i = 0; i < len; ++i) a[i] = field.mul(a[i], b[i]);
  ntt.inverse(a);
  CyclicPoly out(q);
  for (std::size_t e = 0; e < 2 * q - 1; ++e) {
    out.coeffs[e % q] = field.add(out.coeffs[e % q], a[e]);
  }
  return out;
}

namespace {

CyclicPolyMatrix polymat_mul_frequency(const CyclicPolyMatrix& lhs, const CyclicPolyMatrix& rhs,
                                       const RingOptions& options) {
  const PrimeField& f = options.field;
  const std::size_t q = lhs.q();
  const std::size_t r = lhs.rows(), m = lhs.cols(), c = rhs.cols();
  const std::size_t len = next_pow2(2 * q);
  Ntt ntt(f, len);

  // Slot-major spectra: spec_a[s*(r*m) + i*m + k] holds slot s of entry (i,k).
  auto transform_all = [&](const CyclicPolyMatrix& src, std::size_t rows, std::size_t cols) {
    std::vector<std::uint64_t> spec(len * rows * cols);
    std::vector<std::uint64_t> buf(len);
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j) {
        auto e = src.entry(i, j);
        std::fill(buf.begin(), buf.end(), 0);
        std::copy(e.begin(), e.end(), buf.begin());
        ntt.forward(buf);
        for (std::size_t s = 0; s < len; ++s) spec[s * rows * cols + i * cols + j] = buf[s];
      }
    return spec;
  };
  const auto sa = transform_all(lhs, r, m);
  const auto sb = transform_all(rhs, m, c);

  std::vector<std::uint64_t> sc(len * r * c);
  for (std::size_t s = 0; s < len; ++s) {
    numeric_matmul(f, options.numeric, sa.data() + s * r * m, sb.data() + s * m * c,
                   sc.data() + s * r * c, r, m, c);
  }

  CyclicPolyMatrix out(r, c, q);
  std::vector<std::uint64_t> buf(len);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) {
      for (std::size_t s = 0; s < len; ++s) buf[s] = sc[s * r * c + i * c + j];
      ntt.inverse(buf);
      auto e = out.entry(i, j);
      for (std::size_t x = 0; x < 2 * q - 1; ++x) e[x % q] = f.add(e[x % q], buf[x]);
    }
  return out;
}

CyclicPolyMatrix polymat_mul_sparse(const CyclicPolyMatrix& lhs, const CyclicPolyMatrix& rhs,
                                    const RingOptions& options) {
  const PrimeField& f = options.field;
  const std::size_t q = lhs.q();
  CyclicPolyMatrix out(lhs.rows(), rhs.cols(), q);
  std::vector<std::uint32_t> lt, rt;
  for (std::size_t i = 0; i < lhs.rows(); ++i)
    for (std::size_t k = 0; k < lhs.cols(); ++k) {
      auto a = lhs.entry(i, k);
      lt.clear();
      for (std::uint32_t x = 0; x < q; ++x)
        if (a[x] != 0) lt.push_back(x);
      if (lt.empty()) continue;
      for (std::size_t j = 0; j < rhs.cols(); ++j) {
        auto b = rhs.entry(k, j);
        auto o = out.entry(i, j);
        for (std::uint32_t y = 0; y < q; ++y) {
          if (b[y] == 0) continue;
          for (auto x : lt) {
            std::size_t e = x + y;
            if (e >= q) e -= q;
            o[e] = f.add(o[e], f.mul(a[x], b[y]));
          }
        }
      }
    }
  return out;
}

}  // namespace

CyclicPolyMatrix polymat_mul(const CyclicPolyMatrix& lhs, const CyclicPolyMatrix& rhs,
                             const RingOptions& options) {
  require_same_q(lhs.q(), rhs.q(), "polymat_mul");
  if (lhs.cols() != rhs.rows()) {
    throw std::invalid_argument("polymat_mul: inner dimensions differ");
  }
  RingStrategy strategy = options.strategy;
  if (strategy == RingStrategy::kAuto) {
    const std::size_t r = lhs.rows(), m = lhs.cols(), c = rhs.cols(), q = lhs.q();
    const std::size_t len = next_pow2(2 * q);
    double sparse_cost = static_cast<double>(r * m * c) * q;  // nonzero scan of rhs
    for (std::size_t k = 0; k < m; ++k) {
      double left = 0, right = 0;
      for (std::size_t i = 0; i < r; ++i) left += static_cast<double>(nnz(lhs.entry(i, k)));
      for (std::size_t j = 0; j < c; ++j) right += static_cast<double>(nnz(rhs.entry(k, j)));
      sparse_cost += left * right;
    }
    const double freq_cost =
        static_cast<double>(r * m + m * c + r * c) * len * log2_of(len) +
        static_cast<double>(len) * r * m * c;
    strategy = sparse_cost <= freq_cost ? RingStrategy::kSparse : RingStrategy::kFrequency;
  }
  return strategy == RingStrategy::kSparse ? polymat_mul_sparse(lhs, rhs, options)
                                           : polymat_mul_frequency(lhs, rhs, options);
}

std::uint64_t coefficient(const CyclicPolyMatrix& m, std::size_t i, std::size_t j,
                          std::size_t r) {
  if (i >= m.rows() || j >= m.cols()) throw std::out_of_range("coefficient: cell out of range");
  if (r >= m.q()) throw std::out_of_range("coefficient: exponent r must be below Q");
  return m.entry(i, j)[r];
}

BivariatePoly BivariatePoly::monomials(std::span<const Value> exponents, std::size_t q,
                                       std::span<const std::uint8_t> keep) {
  if (q == 0) throw std::invalid_argument("BivariatePoly: Q must be positive");
  if (!keep.empty() && keep.size() != exponents.size()) {
    throw std::invalid_argument("BivariatePoly::monomials: keep mask size mismatch");
  }
  BivariatePoly p(q, exponents.size());
  for (std::size_t d = 0; d < exponents.size(); ++d) {
    if (!keep.empty() && keep[d] == 0) continue;
    p.y_slice(d)[reduce_exponent(exponents[d], q)] = 1;
  }
  return p;
}

BivariatePoly& BivariatePoly::add(const BivariatePoly& other, const PrimeField& field) {
  require_same_q(q_, other.q_, "BivariatePoly::add");
  if (other.y_len_ > y_len_) {
    coeffs_.resize(other.y_len_ * q_, 0);
    y_len_ = other.y_len_;
  }
  for (std::size_t i = 0; i < other.coeffs_.size(); ++i)
    coeffs_[i] = field.add(coeffs_[i], other.coeffs_[i]);
  return *this;
}

BivariatePoly& BivariatePoly::sub(const BivariatePoly& other, const PrimeField& field) {
  require_same_q(q_, other.q_, "BivariatePoly::sub");
  if (other.y_len_ > y_len_) {
    coeffs_.resize(other.y_len_ * q_, 0);
    y_len_ = other.y_len_;
  }
  for (std::size_t i = 0; i < other.coeffs_.size(); ++i)
    coeffs_[i] = field.sub(coeffs_[i], other.coeffs_[i]);
  return *this;
}

namespace {

BivariatePoly bivariate_frequency(const BivariatePoly& lhs, const BivariatePoly& rhs,
                                  const PrimeField& f) {
  const std::size_t q = lhs.q();
  const std::size_t out_len = lhs.y_len() + rhs.y_len() - 1;
  const std::size_t lx = next_pow2(2 * q - 1);
  const std::size_t len = next_pow2(lx * out_len);
  Ntt ntt(f, len);
  auto pack = [&](const BivariatePoly& p) {
    std::vector<std::uint64_t> buf(len, 0);
    for (std::size_t d = 0; d < p.y_len(); ++d) {
      auto s = p.y_slice(d);
      std::copy(s.begin(), s.end(), buf.begin() + d * lx);
    }
    ntt.forward(buf);
    return buf;
  };
  auto a = pack(lhs);
  const auto b = pack(rhs);
  for (std::size_t i = 0; i < len; ++i) a[i] = f.mul(a[i], b[i]);
  ntt.inverse(a);
  BivariatePoly out(q, out_len);
  for (std::size_t d = 0; d < out_len; ++d) {
    auto s = out.y_slice(d);
    for (std::size_t x = 0; x + 1 < 2 * q; ++x) s[x % q] = f.add(s[x % q], a[d * lx + x]);
  }
  return out;
}

BivariatePoly bivariate_sparse(const BivariatePoly& lhs, const BivariatePoly& rhs,
                               const PrimeField& f, std::span<const std::size_t> y_degrees) {
  const std::size_t q = lhs.q();
  const std::size_t out_len = lhs.y_len() + rhs.y_len() - 1;
  BivariatePoly out(q, out_len);
  std::vector<std::vector<std::uint32_t>> lsupp(lhs.y_len()), rsupp(rhs.y_len());
  for (std::size_t d = 0; d < lhs.y_len(); ++d) {
    auto s = lhs.y_slice(d);
    for (std::uint32_t x = 0; x < q; ++x)
      if (s[x] != 0) lsupp[d].push_back(x);
  }
  for (std::size_t d = 0; d < rhs.y_len(); ++d) {
    auto s = rhs.y_slice(d);
    for (std::uint32_t x = 0; x < q; ++x)
      if (s[x] != 0) rsupp[d].push_back(x);
  }
  auto fill_degree = [&](std::size_t d) {
    auto o = out.y_slice(d);
    const std::size_t lo = d >= rhs.y_len() ? d - rhs.y_len() + 1 : 0;
    const std::size_t hi = std::min(d, lhs.y_len() - 1);
    for (std::size_t d1 = lo; d1 <= hi; ++d1) {
      const std::size_t d2 = d - d1;
      if (lsupp[d1].empty() || rsupp[d2].empty()) continue;
      auto a = lhs.y_slice(d1);
      auto b = rhs.y_slice(d2);
      for (auto x : lsupp[d1])
        for (auto y : rsupp[d2]) {
          std::size_t e = x + y;
          if (e >= q) e -= q;
          o[e] = f.add(o[e], f.mul(a[x], b[y]));
        }
    }
  };
  if (y_degrees.empty()) {
    for (std::size_t d = 0; d < out_len; ++d) fill_degree(d);
  } else {
    for (auto d : y_degrees) {
      if (d >= out_len) throw std::out_of_range("bivariate_mul: requested y-degree out of range");
      fill_degree(d);
    }
  }
  return out;
}

}  // namespace

BivariatePoly bivariate_mul(const BivariatePoly& lhs, const BivariatePoly& rhs,
                            const RingOptions& options, std::span<const std::size_t> y_degrees) {
  require_same_q(lhs.q(), rhs.q(), "bivariate_mul");
  if (lhs.y_len() == 0 || rhs.y_len() == 0) {
    return BivariatePoly(lhs.q(), 0);
  }
  RingStrategy strategy = options.strategy;
  if (strategy == RingStrategy::kAuto) {
    std::size_t lz = 0, rz = 0;
    for (std::size_t d = 0; d < lhs.y_len(); ++d) lz += nnz(lhs.y_slice(d));
    for (std::size_t d = 0; d < rhs.y_len(); ++d) rz += nnz(rhs.y_slice(d));
    const std::size_t out_len = lhs.y_len() + rhs.y_len() - 1;
    const std::size_t len = next_pow2(next_pow2(2 * lhs.q() - 1) * out_len);
    const double sparse_cost = static_cast<double>(lz) * static_cast<double>(rz);
    const double freq_cost = 3.0 * static_cast<double>(len) * log2_of(len);
    strategy = sparse_cost <= freq_cost ? RingStrategy::kSparse : RingStrategy::kFrequency;
  }
  if (strategy == RingStrategy::kFrequency) return bivariate_frequency(lhs, rhs, options.field);
  return bivariate_sparse(lhs, rhs, options.field, y_degrees);
}

MonomialSet::MonomialSet(std::span<const Value> values, std::size_t order,
                         std::span<const std::uint8_t> keep_mask)
    : q(order), exponent(values.size()), keep(values.size(), 1) {
  if (order == 0) throw std::invalid_argument("MonomialSet: Q must be positive");
  if (order > (std::size_t{1} << 32)) throw std::invalid_argument("MonomialSet: Q too large");
  if (!keep_mask.empty() && keep_mask.size() != values.size()) {
    throw std::invalid_argument("MonomialSet: keep mask size mismatch");
  }
  for (std::size_t e = 0; e < values.size(); ++e) {
    exponent[e] = static_cast<std::uint32_t>(reduce_exponent(values[e], order));
    if (!keep_mask.empty()) keep[e] = keep_mask[e] != 0 ? 1 : 0;
  }
}

std::uint64_t TermTable::coefficient(std::size_t e, std::size_t r) const {
  if (e >= entries()) throw std::out_of_range("TermTable::coefficient: entry out of range");
  if (r >= q_) throw std::out_of_range("TermTable::coefficient: exponent r must be below Q");
  auto t = terms(e);
  auto it = std::lower_bound(t.begin(), t.end(), r,
                             [](const Term& term, std::size_t x) { return term.exponent < x; });
  return it != t.end() && it->exponent == r ? it->coeff : 0;
}

TermTable TermTable::from_dense(const CyclicPolyMatrix& m) {
  TermTable t(m.rows() * m.cols(), m.q());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      auto e = m.entry(i, j);
      for (std::uint32_t r = 0; r < m.q(); ++r)
        if (e[r] != 0) t.push(r, e[r]);
      t.close_entry(i * m.cols() + j);
    }
  return t;
}

TermTable TermTable::from_dense(const BivariatePoly& p) {
  TermTable t(p.y_len(), p.q());
  for (std::size_t d = 0; d < p.y_len(); ++d) {
    auto s = p.y_slice(d);
    for (std::uint32_t r = 0; r < p.q(); ++r)
      if (s[r] != 0) t.push(r, s[r]);
    t.close_entry(d);
  }
  return t;
}

namespace {

CyclicPolyMatrix to_dense(const MonomialSet& s, std::size_t rows, std::size_t cols) {
  CyclicPolyMatrix m(rows, cols, s.q);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) {
      const std::size_t e = i * cols + j;
      if (s.keep[e]) m.entry(i, j)[s.exponent[e]] = 1;
    }
  return m;
}

BivariatePoly to_dense_bivariate(const MonomialSet& s, std::size_t origin) {
  BivariatePoly p(s.q, s.size() + origin);
  for (std::size_t i = 0; i < s.size(); ++i)
    if (s.keep[i]) p.y_slice(i + origin)[s.exponent[i]] = 1;
  return p;
}

}  // namespace

TermTable monomial_matrix_product(const MonomialSet& lhs, const MonomialSet& rhs,
                                  std::size_t rows, std::size_t inner, std::size_t cols,
                                  const RingOptions& options) {
  require_same_q(lhs.q, rhs.q, "monomial_matrix_product");
  if (lhs.size() != rows * inner || rhs.size() != inner * cols) {
    throw std::invalid_argument("monomial_matrix_product: shape does not match the sets");
  }
  const std::size_t q = lhs.q;
  // Monomial inputs make the sparse count O(rows*inner*cols), which never
  // loses to a transform of length >= 2Q per entry.
  if (options.strategy == RingStrategy::kFrequency) {
    return TermTable::from_dense(
        polymat_mul(to_dense(lhs, rows, inner), to_dense(rhs, inner, cols), options));
  }
  // Column-major copy of rhs so the inner loop walks contiguous memory.
  std::vector<std::uint32_t> rexp(inner * cols);
  std::vector<std::uint8_t> rkeep(inner * cols);
  for (std::size_t k = 0; k < inner; ++k)
    for (std::size_t j = 0; j < cols; ++j) {
      rexp[j * inner + k] = rhs.exponent[k * cols + j];
      rkeep[j * inner + k] = rhs.keep[k * cols + j];
    }
  TermTable out(rows * cols, q);
  SlotCounter counter(q);
  for (std::size_t i = 0; i < rows; ++i) {
    const std::uint32_t* le = lhs.exponent.data() + i * inner;
    const std::uint8_t* lk = lhs.keep.data() + i * inner;
    for (std::size_t j = 0; j < cols; ++j) {
      const std::uint32_t* re = rexp.data() + j * inner;
      const std::uint8_t* rk = rkeep.data() + j * inner;
      for (std::size_t k = 0; k < inner; ++k) {
        if (!(lk[k] & rk[k])) continue;
        std::uint32_t e = le[k] + re[k];
        if (e >= q) e -= static_cast<std::uint32_t>(q);
        counter.add(e);
      }
      counter.flush(out);
      out.close_entry(i * cols + j);
    }
  }
  return out;
}

TermTable monomial_bivariate_product(const MonomialSet& lhs, const MonomialSet& rhs,
                                     std::size_t origin, const RingOptions& options,
                                     std::span<const std::size_t> y_degrees) {
  require_same_q(lhs.q, rhs.q, "monomial_bivariate_product");
  const std::size_t q = lhs.q;
  if (lhs.size() == 0 || rhs.size() == 0) return TermTable(0, q);
  const std::size_t entries = lhs.size() + rhs.size() - 1 + 2 * origin;
  if (options.strategy == RingStrategy::kFrequency) {
    auto dense = bivariate_mul(to_dense_bivariate(lhs, origin), to_dense_bivariate(rhs, origin),
                               options, y_degrees);
    if (y_degrees.empty()) return TermTable::from_dense(dense);
    // Keep only the requested degrees so both strategies agree.
    std::vector<std::uint8_t> wanted(entries, 0);
    for (auto d : y_degrees) wanted.at(d) = 1;
    TermTable t(entries, q);
    for (std::size_t d = 0; d < entries; ++d) {
      if (wanted[d]) {
        auto s = dense.y_slice(d);
        for (std::uint32_t r = 0; r < q; ++r)
          if (s[r] != 0) t.push(r, s[r]);
      }
      t.close_entry(d);
    }
    return t;
  }
  std::vector<std::uint8_t> wanted;
  if (!y_degrees.empty()) {
    wanted.assign(entries, 0);
    for (auto d : y_degrees) {
      if (d >= entries) throw std::out_of_range("monomial_bivariate_product: y-degree out of range");
      wanted[d] = 1;
    }
  }
  TermTable out(entries, q);
  SlotCounter counter(q);
  const std::size_t n1 = lhs.size(), n2 = rhs.size();
  for (std::size_t d = 0; d < entries; ++d) {
    if (wanted.empty() || wanted[d]) {
      // Degree d = (i + origin) + (j + origin).
      if (d >= 2 * origin) {
        const std::size_t sum = d - 2 * origin;
        const std::size_t lo = sum >= n2 ? sum - n2 + 1 : 0;
        const std::size_t hi = std::min(sum, n1 - 1);
        for (std::size_t i = lo; i <= hi && lo <= hi; ++i) {
          const std::size_t j = sum - i;
          if (!(lhs.keep[i] & rhs.keep[j])) continue;
          std::uint32_t e = lhs.exponent[i] + rhs.exponent[j];
          if (e >= q) e -= static_cast<std::uint32_t>(q);
          counter.add(e);
        }
        counter.flush(out);
      }
    }
    out.close_entry(d);
  }
  return out;
}

void require_exact_counts(const PrimeField& field, std::uint64_t max_count) {
  if (max_count >= field.modulus()) {
    throw std::domain_error("field characteristic " + std::to_string(field.modulus()) +
                            " cannot represent counts up to " + std::to_string(max_count));
  }
}

}  // namespace minplus
