// Copyright 2026 The minplus Authors
// SPDX-License-Identifier: Apache-2.0

#include "minplus/product_col.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "internal.hpp"
#include "minplus/residue_shift.hpp"

namespace minplus {

using internal::BitRows;
using internal::Stopwatch;

IntMatrix normalize_nonincreasing(const IntMatrix& a) {
  IntMatrix out = a;
  for (std::size_t i = 0; i < out.rows(); ++i) {
    auto row = out.row(i);
    for (std::size_t k = 1; k < row.size(); ++k) row[k] = std::min(row[k], row[k - 1]);
  }
  return out;
}

NormalizedRows normalize_col_input(const IntMatrix& a, Value bound) {
  return normalize_A(normalize_nonincreasing(a), bound);
}

VerificationInstance rotate_to_problem2prime(const IntMatrix& a, const IntMatrix& b,
                                             const IntMatrix& c_candidate, Value w) {
  check_product_shapes(a, b);
  if (c_candidate.rows() != a.rows() || c_candidate.cols() != b.cols()) {
    throw std::invalid_argument("rotate_to_problem2prime: candidate shape mismatch");
  }
  if (a.max_entry() > w || b.max_entry() > w || c_candidate.max_entry() > w) {
    throw std::invalid_argument("rotate_to_problem2prime: W is below the maximum entry");
  }
  VerificationInstance out;
  out.variant = Variant::kCol;
  out.a = IntMatrix(c_candidate.rows(), c_candidate.cols());
  for (std::size_t x = 0; x < out.a.data().size(); ++x) out.a.data()[x] = w - c_candidate.data()[x];
  out.b = b.transposed();
  out.c = IntMatrix(a.rows(), a.cols());
  for (std::size_t x = 0; x < out.c.data().size(); ++x) out.c.data()[x] = w - a.data()[x];
  return out;
}

IntMatrix compute_r_matrix(const VerificationInstance& inst, Value q, const RingOptions& ring) {
  check_product_shapes(inst.a, inst.b);
  if (inst.c.rows() != inst.a.rows() || inst.c.cols() != inst.b.cols()) {
    throw std::invalid_argument("compute_r_matrix: C shape mismatch");
  }
  if (q < 1) throw std::invalid_argument("compute_r_matrix: Q must be positive");
  require_exact_counts(ring.field, inst.b.cols());
  const auto uq = static_cast<std::size_t>(q);
  const std::size_t na = inst.a.rows(), nj = inst.a.cols(), nk = inst.b.cols();
  // x^B (nj x nk) times x^(-C^T) (nk x na); entry (j,i) = sum_k x^(B_jk - C_ik).
  std::vector<Value> neg_ct(nk * na);
  for (std::size_t i = 0; i < na; ++i)
    for (std::size_t k = 0; k < nk; ++k) neg_ct[k * na + i] = -inst.c(i, k);
  const TermTable p = monomial_matrix_product(MonomialSet(inst.b.data(), uq),
                                              MonomialSet(neg_ct, uq), nj, nk, na, ring);
  IntMatrix r(na, nj, 0);
  for (std::size_t i = 0; i < na; ++i)
    for (std::size_t j = 0; j < nj; ++j) {
      Value e = (-inst.a(i, j)) % q;
      if (e < 0) e += q;
      r(i, j) = static_cast<Value>(p.coefficient(j * na + i, static_cast<std::size_t>(e)));
    }
  return r;
}

WitnessMask solve_verification_col(const VerificationInstance& inst, const SolverConfig& cfg) {
  VerificationInstance copy = inst;
  copy.variant = Variant::kCol;
  return verify_matrix_instance(copy, cfg).mask;
}

WitnessMask twopointer_direct(const VerificationInstance& inst) {
  check_product_shapes(inst.a, inst.b);
  if (inst.c.rows() != inst.a.rows() || inst.c.cols() != inst.b.cols()) {
    throw std::invalid_argument("twopointer_direct: C shape mismatch");
  }
  const std::size_t na = inst.a.rows(), nj = inst.a.cols(), nk = inst.b.cols();
  WitnessMask mask(na, nj);
  if (nk == 0) return mask;
  for (std::size_t i = 0; i < na; ++i) {
    auto crow = inst.c.row(i);
    for (std::size_t j = 0; j < nj; ++j) {
      auto brow = inst.b.row(j);
      const Value aij = inst.a(i, j);
      bool hit = false;
      detail::for_each_block([&](std::size_t k) { return brow[k]; },
                             [&](std::size_t k) { return crow[k]; }, 0, 0, nk - 1,
                             [&](std::size_t k0, std::size_t) {
                               if (aij + brow[k0] == crow[k0]) hit = true;
                             });
      mask.set(i, j, hit);
    }
  }
  return mask;
}

ColEngine select_col_engine(std::size_t na, std::size_t nb, std::size_t nc, Value entry_bound,
                            Value m, const SolverConfig& cfg) {
  if (cfg.col_engine != ColEngine::kAuto) return cfg.col_engine;
  const double dims = static_cast<double>(std::max<std::size_t>(na, 1)) *
                      static_cast<double>(std::max<std::size_t>(nb, 1)) *
                      static_cast<double>(std::max<std::size_t>(nc, 1));
  const double verify_cost = static_cast<double>(m) * std::pow(dims, cfg.omega / 3.0);
  const double direct_cost = static_cast<double>(std::max<std::size_t>(na, 1)) *
                             static_cast<double>(std::max<std::size_t>(nb, 1)) *
                             static_cast<double>(std::max<Value>(entry_bound, 1));
  return verify_cost <= direct_cost ? ColEngine::kVerify : ColEngine::kTwoPointer;
}

namespace {

struct Cell {
  std::uint32_t i;
  std::uint32_t j;
};

struct BucketResult {
  std::vector<std::uint8_t> yes;
  SolveStats stats;
  Value q = 0;
};

std::vector<std::uint32_t> unique_sorted(std::vector<std::uint32_t> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

std::size_t position(const std::vector<std::uint32_t>& sorted, std::uint32_t x) {
  return static_cast<std::size_t>(std::lower_bound(sorted.begin(), sorted.end(), x) -
                                  sorted.begin());
}

// Accepted mask (per query cell (i,j) of the rotated instance) through the
// residue-shifted instances.
std::vector<std::uint8_t> verify_col_candidate(const VerificationInstance& rot, Value m,
                                               const std::vector<std::uint8_t>& needed,
                                               const SolverConfig& cfg, SolveStats& st) {
  const std::size_t na = rot.a.rows(), nj = rot.a.cols(), nk = rot.b.cols();
  const Value w = m / kResidueClasses;
  std::vector<std::uint8_t> accepted(na * nj, 0);
  Stopwatch reduce_sw;

  if (!cfg.compaction) {
    ResidueShift shift(rot.a, rot.b, m);
    st.t_reductions += reduce_sw.seconds();
    const std::size_t total = kResidueClasses * kResidueClasses;
    std::vector<BucketResult> results(total);
    auto solve_full = [&](std::size_t key, const ModulusReport* shared, ModulusReport* out) {
      const int s = static_cast<int>(key / kResidueClasses);
      const int t = static_cast<int>(key % kResidueClasses);
      Stopwatch sw;
      VerificationInstance inst{shift.a(s), shift.b(t), shift.c(rot.c, s, t), m, Variant::kCol};
      BucketResult& res = results[key];
      res.stats.t_reductions += sw.seconds();
      auto v = verify_matrix_instance(inst, cfg, shared, &res.stats);
      res.q = v.report.q;
      res.yes.assign(na * nj, 0);
      for (std::size_t i = 0; i < na; ++i)
        for (std::size_t j = 0; j < nj; ++j) res.yes[i * nj + j] = v.mask.get(i, j);
      if (out != nullptr) *out = v.report;
    };
    std::size_t first = 0;
    ModulusReport shared_report;
    const ModulusReport* shared = nullptr;
    if (cfg.fast_shared_modulus) {
      solve_full(0, nullptr, &shared_report);
      shared = &shared_report;
      first = 1;
    }
    parallel_for(total - first, cfg.threads,
                 [&](std::size_t x) { solve_full(x + first, shared, nullptr); });
    for (std::size_t key = 0; key < total; ++key) {
      for (std::size_t c = 0; c < na * nj; ++c)
        if (needed[c] && results[key].yes[c]) accepted[c] = 1;
      st.absorb(results[key].stats);
      st.mix_modulus(results[key].q);
    }
    return accepted;
  }

  BitRows bbits(kResidueClasses * nj, nk), cbits(kResidueClasses * na, nk);
  std::vector<std::vector<int>> row_classes(nj);
  for (std::size_t j = 0; j < nj; ++j) {
    std::vector<std::uint8_t> seen(kResidueClasses, 0);
    for (std::size_t k = 0; k < nk; ++k) {
      const int t = residue_class(rot.b(j, k) + m, m);
      bbits.set(t * nj + j, k);
      if (!seen[t]) {
        seen[t] = 1;
        row_classes[j].push_back(t);
      }
    }
    std::sort(row_classes[j].begin(), row_classes[j].end());
  }
  for (std::size_t i = 0; i < na; ++i)
    for (std::size_t k = 0; k < nk; ++k) {
      const Value rho = ((rot.c(i, k) % m) + m) % m;
      const int u0 = static_cast<int>(rho / w);
      cbits.set(u0 * na + i, k);
      cbits.set(((u0 + kResidueClasses - 1) % kResidueClasses) * na + i, k);
    }
  std::vector<std::vector<Cell>> buckets(kResidueClasses * kResidueClasses);
  for (std::uint32_t i = 0; i < na; ++i)
    for (std::uint32_t j = 0; j < nj; ++j) {
      if (!needed[i * nj + j]) continue;
      const int s = residue_class(rot.a(i, j) + m, m);
      for (int t : row_classes[j]) {
        const int u = (s + t) % kResidueClasses;
        if (bbits.intersects(t * nj + j, cbits, u * na + i)) {
          buckets[s * kResidueClasses + t].push_back({i, j});
        }
      }
    }
  std::vector<std::size_t> live;
  for (std::size_t x = 0; x < buckets.size(); ++x)
    if (!buckets[x].empty()) live.push_back(x);
  st.skipped_instances += buckets.size() - live.size();
  st.t_reductions += reduce_sw.seconds();

  std::vector<BucketResult> results(live.size());
  auto solve = [&](std::size_t idx, const ModulusReport* shared, ModulusReport* report_out) {
    const std::size_t key = live[idx];
    const int s = static_cast<int>(key / kResidueClasses);
    const int t = static_cast<int>(key % kResidueClasses);
    const int u = (s + t) % kResidueClasses;
    const auto& cells = buckets[key];
    Stopwatch sw;
    std::vector<std::uint32_t> is, js;
    for (const auto& c : cells) {
      is.push_back(c.i);
      js.push_back(c.j);
    }
    is = unique_sorted(std::move(is));
    js = unique_sorted(std::move(js));
    std::vector<std::uint64_t> from_b(bbits.words(), 0), from_c(cbits.words(), 0);
    for (auto j : js) bbits.or_into(t * nj + j, from_b);
    for (auto i : is) cbits.or_into(u * na + i, from_c);
    for (std::size_t x = 0; x < from_b.size(); ++x) from_b[x] &= from_c[x];
    const auto ks = internal::bits_to_indices(from_b, nk);
    VerificationInstance sub;
    sub.modulus = m;
    sub.variant = Variant::kCol;
    sub.a = IntMatrix(is.size(), js.size());
    sub.b = IntMatrix(js.size(), ks.size());
    sub.c = IntMatrix(is.size(), ks.size());
    for (std::size_t r = 0; r < is.size(); ++r)
      for (std::size_t c = 0; c < js.size(); ++c)
        sub.a(r, c) = shift_ab_entry(rot.a(is[r], js[c]) + m, s, m);
    for (std::size_t r = 0; r < js.size(); ++r)
      for (std::size_t c = 0; c < ks.size(); ++c)
        sub.b(r, c) = shift_ab_entry(rot.b(js[r], ks[c]) + m, t, m);
    for (std::size_t r = 0; r < is.size(); ++r)
      for (std::size_t c = 0; c < ks.size(); ++c)
        sub.c(r, c) = shift_c_entry(rot.c(is[r], ks[c]) + 2 * m, s, t, m);
    BucketResult& res = results[idx];
    res.stats.t_reductions += sw.seconds();
    auto v = verify_matrix_instance(sub, cfg, shared, &res.stats);
    res.q = v.report.q;
    res.yes.resize(cells.size());
    for (std::size_t x = 0; x < cells.size(); ++x)
      res.yes[x] = v.mask.get(position(is, cells[x].i), position(js, cells[x].j));
    if (report_out != nullptr) *report_out = v.report;
  };

  std::size_t first = 0;
  ModulusReport shared_report;
  const ModulusReport* shared = nullptr;
  if (cfg.fast_shared_modulus && !live.empty()) {
    solve(0, nullptr, &shared_report);
    shared = &shared_report;
    first = 1;
  }
  parallel_for(live.size() - first, cfg.threads,
               [&](std::size_t x) { solve(x + first, shared, nullptr); });
  for (std::size_t idx = 0; idx < live.size(); ++idx) {
    const auto& cells = buckets[live[idx]];
    for (std::size_t x = 0; x < cells.size(); ++x)
      if (results[idx].yes[x]) accepted[cells[x].i * nj + cells[x].j] = 1;
    st.absorb(results[idx].stats);
    st.mix_modulus(results[idx].q);
  }
  return accepted;
}

IntMatrix col_recursive(const IntMatrix& a, const IntMatrix& b, Value bound,
                        const SolverConfig& cfg, SolveStats& st, std::size_t depth) {
  const std::size_t na = a.rows(), nb = a.cols(), nc = b.cols();
  if (a.all_zero() && b.all_zero()) {
    st.recursion_levels = std::max(st.recursion_levels, depth);
    return IntMatrix(na, nc, 0);
  }
  const IntMatrix half =
      col_recursive(internal::halve(a), internal::halve(b), (bound + 1) / 2, cfg, st, depth + 1);
  const Value u = std::max<Value>(b.max_entry(), 1);
  const Value m = choose_M(na, nb, nc, u, cfg);
  const ColEngine engine = select_col_engine(na, nb, nc, u, m, cfg);
  if (st.engine.empty()) st.engine = engine == ColEngine::kVerify ? "verify" : "twopointer";
  IntMatrix result(na, nc, 0);
  std::vector<std::uint8_t> decided(na * nc, 0);
  for (int s = 0; s <= 2; ++s) {
    IntMatrix cand(na, nc);
    for (std::size_t x = 0; x < cand.data().size(); ++x) cand.data()[x] = 2 * half.data()[x] + s;
    const Value w = std::max({a.max_entry(), b.max_entry(), cand.max_entry()});
    Stopwatch sw;
    const VerificationInstance rot = rotate_to_problem2prime(a, b, cand, w);
    st.t_reductions += sw.seconds();
    std::vector<std::uint8_t> needed(na * nc);
    for (std::size_t x = 0; x < needed.size(); ++x) needed[x] = !decided[x];
    std::vector<std::uint8_t> accepted;
    if (engine == ColEngine::kTwoPointer) {
      Stopwatch sw2;
      const auto mask = twopointer_direct(rot);
      accepted.resize(na * nc);
      for (std::size_t i = 0; i < na; ++i)
        for (std::size_t j = 0; j < nc; ++j) accepted[i * nc + j] = mask.get(i, j);
      st.t_counting += sw2.seconds();
    } else {
      accepted = verify_col_candidate(rot, m, needed, cfg, st);
    }
    for (std::size_t x = 0; x < needed.size(); ++x)
      if (needed[x] && accepted[x]) {
        decided[x] = 1;
        result.data()[x] = cand.data()[x];
      }
  }
  for (std::size_t x = 0; x < decided.size(); ++x)
    if (!decided[x]) {
      throw std::logic_error("no candidate accepted at cell (" + std::to_string(x / nc) + ", " +
                             std::to_string(x % nc) + ")");
    }
  return result;
}

}  // namespace

IntMatrix minplus_monotone_col(const IntMatrix& a, const IntMatrix& b, const MonotoneTag& tag,
                               const SolverConfig& cfg, SolveStats* stats) {
  if (tag.axis != Axis::kColumnMonotone) {
    throw std::invalid_argument("minplus_monotone_col: B must carry a column-monotone tag");
  }
  check_product_shapes(a, b);
  if (a.cols() == 0) throw std::invalid_argument("minplus_monotone_col: inner dimension is zero");
  check_entry_range(a, "A");
  require(validate_promises(b, tag), "B");
  SolveStats local;
  Stopwatch sw;
  const NormalizedRows norm = normalize_col_input(a, tag.entry_bound);
  local.t_reductions += sw.seconds();
  IntMatrix c = col_recursive(norm.a, b, tag.entry_bound, cfg, local, 0);
  for (std::size_t i = 0; i < c.rows(); ++i)
    for (auto& v : c.row(i)) v += norm.offsets[i];
  if (local.engine.empty()) local.engine = "verify";
  if (stats != nullptr) {
    stats->absorb(local);
    stats->modulus_digest = local.modulus_digest;
    stats->engine = local.engine;
  }
  return c;
}

}  // namespace minplus
