// Copyright 2026 The minplus Authors
// SPDX-License-Identifier: Apache-2.0

#include "minplus/modulus_search.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace minplus {

namespace {

Value mod_canonical(Value a, Value m) {
  Value r = a % m;
  return r < 0 ? r + m : r;
}

void check_q(Value q) {
  if (q < 1) throw std::invalid_argument("modulus must be positive");
  if (q > (Value{1} << 31)) throw std::invalid_argument("modulus too large for the ring");
}

std::vector<std::uint8_t> row_boundaries(const IntMatrix& m, int level) {
  std::vector<std::uint8_t> ind(m.rows() * m.cols(), 0);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    auto row = m.row(r);
    for (std::size_t c = 0; c < m.cols(); ++c)
      ind[r * m.cols() + c] = c == 0 || (row[c - 1] >> level) != (row[c] >> level);
  }
  return ind;
}

// Y for one modulus and level given the shared D^all table.
Value y_from_tables(const VerificationInstance& inst, const TermTable& d_all,
                    const TermTable& d_bdry, std::span<const std::uint8_t> ic,
                    const std::vector<Value>& w, Value q) {
  const std::size_t na = inst.c.rows(), nc = inst.c.cols();
  Value y = 0;
  for (std::size_t i = 0; i < na; ++i)
    for (std::size_t j = 0; j < nc; ++j) {
      const std::size_t e = i * nc + j;
      const Value c = mod_canonical(inst.c(i, j), q);
      for (const auto& t : (ic[e] ? d_all : d_bdry).terms(e)) {
        Value s = static_cast<Value>(t.exponent) - c;
        if (s < 0) s += q;
        y += static_cast<Value>(t.coeff) * w[static_cast<std::size_t>(s)];
      }
    }
  return y;
}

void check_matrix(const VerificationInstance& inst) {
  if (inst.a.cols() != inst.b.rows() || inst.c.rows() != inst.a.rows() ||
      inst.c.cols() != inst.b.cols()) {
    throw std::invalid_argument("modulus search: inconsistent instance shapes");
  }
}

void check_conv(const ConvVerificationInstance& inst) {
  const std::size_t n = inst.a.size();
  if (n == 0 || inst.b.size() != n || inst.c.size() != 2 * n - 1) {
    throw std::invalid_argument("modulus search: inconsistent convolution shapes");
  }
}

struct ConvBoundaries {
  std::vector<std::uint8_t> ia;
  std::vector<std::uint8_t> ib;
};

ConvBoundaries conv_boundaries(const ConvVerificationInstance& inst, int level) {
  const std::size_t n = inst.a.size();
  ConvBoundaries b{std::vector<std::uint8_t>(n, 0), std::vector<std::uint8_t>(n, 0)};
  for (std::size_t i = 0; i < n; ++i) {
    b.ia[i] = i == 0 || (inst.a[i - 1] >> level) != (inst.a[i] >> level);
    b.ib[i] = i + 1 == n || (inst.b[i + 1] >> level) != (inst.b[i] >> level);
  }
  return b;
}

std::vector<std::size_t> all_degrees(std::size_t n) {
  std::vector<std::size_t> d(2 * n - 1);
  for (std::size_t x = 0; x < d.size(); ++x) d[x] = x + 2;
  return d;
}

std::vector<std::size_t> degrees_of(std::span<const std::size_t> diagonals, std::size_t n) {
  if (diagonals.empty()) return all_degrees(n);
  std::vector<std::size_t> d(diagonals.size());
  for (std::size_t x = 0; x < d.size(); ++x) {
    if (diagonals[x] > 2 * n - 2) throw std::out_of_range("modulus search: diagonal out of range");
    d[x] = diagonals[x] + 2;
  }
  return d;
}

Value y_conv_one(const ConvVerificationInstance& inst, Value q, int level, const RingOptions& ring,
                 std::span<const std::size_t> degrees) {
  const auto bd = conv_boundaries(inst, level);
  const MonomialSet a_all(inst.a.values(), static_cast<std::size_t>(q));
  const MonomialSet b_all(inst.b.values(), static_cast<std::size_t>(q));
  const MonomialSet a_bd(inst.a.values(), static_cast<std::size_t>(q), bd.ia);
  const MonomialSet b_bd(inst.b.values(), static_cast<std::size_t>(q), bd.ib);
  const TermTable pa = monomial_bivariate_product(a_bd, b_all, 1, ring, degrees);
  const TermTable pb = monomial_bivariate_product(a_all, b_bd, 1, ring, degrees);
  const TermTable pab = monomial_bivariate_product(a_bd, b_bd, 1, ring, degrees);
  const auto w = compute_W(level, q);
  const PrimeField& f = ring.field;
  Value y = 0;
  std::vector<std::uint64_t> u(static_cast<std::size_t>(q), 0);
  std::vector<std::uint32_t> touched;
  for (auto deg : degrees) {
    auto add = [&](const TermTable& t, bool negate) {
      for (const auto& term : t.terms(deg)) {
        if (u[term.exponent] == 0) touched.push_back(term.exponent);
        u[term.exponent] = negate ? f.sub(u[term.exponent], term.coeff)
                                  : f.add(u[term.exponent], term.coeff);
      }
    };
    add(pa, false);
    add(pb, false);
    add(pab, true);
    const Value c = mod_canonical(inst.c[deg - 2], q);
    for (auto r : touched) {
      Value s = static_cast<Value>(r) - c;
      if (s < 0) s += q;
      y += static_cast<Value>(u[r]) * w[static_cast<std::size_t>(s)];
      u[r] = 0;
    }
    touched.clear();
  }
  return y;
}

}  // namespace

PrimePool primes_in_range(Value r) {
  if (r < 4) throw std::invalid_argument("primes_in_range: R must be at least 4");
  if (r > (Value{1} << 26)) throw std::invalid_argument("primes_in_range: R too large");
  const std::size_t hi = static_cast<std::size_t>(r);
  std::vector<std::uint8_t> composite(hi + 1, 0);
  composite[0] = composite[1] = 1;
  for (std::size_t p = 2; p * p <= hi; ++p)
    if (!composite[p])
      for (std::size_t x = p * p; x <= hi; x += p) composite[x] = 1;
  PrimePool pool{r, {}};
  for (std::size_t x = static_cast<std::size_t>((r + 1) / 2); x <= hi; ++x)
    if (!composite[x]) pool.primes.push_back(static_cast<Value>(x));
  if (pool.primes.empty()) throw std::invalid_argument("primes_in_range: empty prime pool");
  return pool;
}

Value default_prime_range(std::size_t n) {
  const double lg = n <= 1 ? 0.0 : std::log2(static_cast<double>(n));
  const Value r = static_cast<Value>(std::ceil(std::exp2(std::sqrt(lg))));
  return std::max<Value>(16, r);
}

Value effective_prime_range(Value r) {
  r = std::max<Value>(r, 4);
  while (primes_in_range(r).primes.size() < 2) ++r;
  return r;
}

std::vector<Value> compute_W(int level, Value q) {
  check_q(q);
  std::vector<Value> w(static_cast<std::size_t>(q), 0);
  const Value half = Value{4} << level;
  if (q == 1) {
    w[0] = 2 * half + 1;
    return w;
  }
  for (Value s = -half; s <= half; ++s) ++w[static_cast<std::size_t>(mod_canonical(s, q))];
  return w;
}

std::vector<Value> YTable::column_minima() const {
  std::vector<Value> mins(y.size(), std::numeric_limits<Value>::max());
  for (std::size_t l = 0; l < y.size(); ++l)
    for (auto v : y[l]) mins[l] = std::min(mins[l], v);
  return mins;
}

YTable compute_Y_all_matrix(const VerificationInstance& inst, Value q_prev, const PrimePool& pool,
                            int lmax, const RingOptions& ring) {
  check_matrix(inst);
  require_exact_counts(ring.field, inst.a.cols());
  YTable table;
  table.primes = pool.primes;
  table.y.assign(static_cast<std::size_t>(lmax) + 1, std::vector<Value>(pool.primes.size(), 0));
  const std::size_t na = inst.a.rows(), nb = inst.a.cols(), nc = inst.b.cols();
  std::vector<std::vector<std::uint8_t>> ib(table.y.size()), ic(table.y.size());
  for (int l = 0; l <= lmax; ++l) {
    ib[l] = row_boundaries(inst.b, l);
    ic[l] = row_boundaries(inst.c, l);
  }
  for (std::size_t pi = 0; pi < pool.primes.size(); ++pi) {
    const Value q = q_prev * pool.primes[pi];
    check_q(q);
    const auto uq = static_cast<std::size_t>(q);
    const MonomialSet a(inst.a.data(), uq);
    const MonomialSet b(inst.b.data(), uq);
    const TermTable d_all = monomial_matrix_product(a, b, na, nb, nc, ring);
    for (int l = 0; l <= lmax; ++l) {
      const MonomialSet b_bd(inst.b.data(), uq, ib[l]);
      const TermTable d_bdry = monomial_matrix_product(a, b_bd, na, nb, nc, ring);
      table.y[l][pi] = y_from_tables(inst, d_all, d_bdry, ic[l], compute_W(l, q), q);
    }
  }
  return table;
}

Value compute_Y_matrix(const VerificationInstance& inst, Value q, int level,
                       const RingOptions& ring) {
  PrimePool single{q, {q}};
  return compute_Y_all_matrix(inst, 1, single, level, ring).y[level][0];
}

YTable compute_Y_all_conv(const ConvVerificationInstance& inst, Value q_prev,
                          const PrimePool& pool, int lmax, const RingOptions& ring,
                          std::span<const std::size_t> diagonals) {
  check_conv(inst);
  require_exact_counts(ring.field, inst.a.size());
  const auto degrees = degrees_of(diagonals, inst.a.size());
  YTable table;
  table.primes = pool.primes;
  table.y.assign(static_cast<std::size_t>(lmax) + 1, std::vector<Value>(pool.primes.size(), 0));
  for (std::size_t pi = 0; pi < pool.primes.size(); ++pi) {
    const Value q = q_prev * pool.primes[pi];
    check_q(q);
    for (int l = 0; l <= lmax; ++l) table.y[l][pi] = y_conv_one(inst, q, l, ring, degrees);
  }
  return table;
}

Value compute_Y_conv(const ConvVerificationInstance& inst, Value q, int level,
                     const RingOptions& ring, std::span<const std::size_t> diagonals) {
  check_conv(inst);
  check_q(q);
  require_exact_counts(ring.field, inst.a.size());
  const auto degrees = degrees_of(diagonals, inst.a.size());
  return y_conv_one(inst, q, level, ring, degrees);
}

PrimeChoice select_prime(const YTable& table) {
  if (table.primes.empty()) throw std::invalid_argument("select_prime: empty table");
  const auto mins = table.column_minima();
  PrimeChoice choice;
  choice.phi.assign(table.primes.size(), 0);
  for (std::size_t p = 0; p < table.primes.size(); ++p)
    for (std::size_t l = 0; l < table.y.size(); ++l)
      choice.phi[p] = std::max(choice.phi[p], table.y[l][p] - mins[l]);
  std::size_t best = 0;
  for (std::size_t p = 1; p < table.primes.size(); ++p) {
    if (choice.phi[p] < choice.phi[best] ||
        (choice.phi[p] == choice.phi[best] && table.primes[p] < table.primes[best])) {
      best = p;
    }
  }
  choice.index = best;
  choice.prime = table.primes[best];
  return choice;
}

namespace {

template <class ComputeTable>
ModulusReport search(Value m, Value r, ComputeTable compute) {
  if (m <= 0 || m % 100 != 0) {
    throw std::invalid_argument("find_good_modulus: M must be a positive multiple of 100");
  }
  const PrimePool pool = primes_in_range(r);
  const int lmax = levelmax_for(m);
  ModulusReport report;
  report.m = m;
  report.r = r;
  report.pool = pool.primes;
  report.q_sequence.push_back(1);
  Value q = 1;
  while (q < m) {
    SearchStep step;
    step.q_prev = q;
    step.table = compute(q, pool, lmax);
    const PrimeChoice choice = select_prime(step.table);
    step.phi = choice.phi;
    step.prime = choice.prime;
    q *= choice.prime;
    report.primes.push_back(choice.prime);
    report.q_sequence.push_back(q);
    report.steps.push_back(std::move(step));
  }
  report.q = q;
  return report;
}

}  // namespace

ModulusReport find_good_modulus(const VerificationInstance& inst, Value m, Value r,
                                const SearchOptions& options) {
  check_matrix(inst);
  return search(m, r, [&](Value q_prev, const PrimePool& pool, int lmax) {
    return compute_Y_all_matrix(inst, q_prev, pool, lmax, options.ring);
  });
}

ModulusReport find_good_modulus(const ConvVerificationInstance& inst, Value m, Value r,
                                const SearchOptions& options,
                                std::span<const std::size_t> diagonals) {
  check_conv(inst);
  return search(m, r, [&](Value q_prev, const PrimePool& pool, int lmax) {
    return compute_Y_all_conv(inst, q_prev, pool, lmax, options.ring, diagonals);
  });
}

bool audit_active_counts(std::span<const std::size_t> active_counts, std::size_t lines,
                         Value entry_bound, Value q, double slack) {
  const double limit = slack * static_cast<double>(lines) *
                       static_cast<double>(std::max<Value>(entry_bound, 1)) /
                       static_cast<double>(q);
  return std::all_of(active_counts.begin(), active_counts.end(),
                     [&](std::size_t c) { return static_cast<double>(c) <= limit; });
}

double default_slack(std::size_t n) {
  const double lg = n <= 1 ? 0.0 : std::log2(static_cast<double>(n));
  return 64.0 * (1.0 + lg) * (1.0 + lg);
}

namespace {

void add_probe(XYZ& out, Value delta, Value q, int level) {
  const Value half = Value{4} << level;
  for (Value s = -half; s <= half; ++s) {
    if (mod_canonical(delta - s, q) != 0) continue;
    ++out.y;
    if (delta == s)
      ++out.z;
    else
      ++out.x;
  }
}

void guard(std::size_t segments, int level) {
  const std::size_t probes = segments * ((std::size_t{8} << level) + 1);
  if (probes > kBruteForceLimit) {
    throw std::length_error("brute-force X/Y/Z enumeration exceeds the size guard");
  }
}

}  // namespace

XYZ count_xyz_bruteforce(const VerificationInstance& inst, Value q, int level) {
  check_q(q);
  guard(inst.a.rows() * inst.a.cols() * std::max<std::size_t>(inst.b.cols(), 1), level);
  XYZ out;
  for (const auto& s : segments_matrix(inst, level)) add_probe(out, anchor_delta(s, inst), q, level);
  return out;
}

XYZ count_xyz_bruteforce(const ConvVerificationInstance& inst, Value q, int level,
                         std::span<const std::size_t> diagonals) {
  check_q(q);
  check_conv(inst);
  guard(inst.a.size() * inst.a.size(), level);
  XYZ out;
  for (const auto& s : segments_conv(inst, level, diagonals))
    add_probe(out, anchor_delta(s, inst), q, level);
  return out;
}

}  // namespace minplus
