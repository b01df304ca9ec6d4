// Copyright 2026 The minplus Authors
// SPDX-License-Identifier: Apache-2.0

#include "minplus/product_row.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "internal.hpp"
#include "minplus/product_col.hpp"
#include "minplus/residue_shift.hpp"

namespace minplus {

using internal::BitRows;
using internal::Stopwatch;

NormalizedRows normalize_A(const IntMatrix& a, Value bound) {
  NormalizedRows out{IntMatrix(a.rows(), a.cols()), std::vector<Value>(a.rows(), 0)};
  const Value cap = 2 * bound;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    auto row = a.row(i);
    if (row.empty()) continue;
    const Value lo = *std::min_element(row.begin(), row.end());
    out.offsets[i] = lo;
    auto dst = out.a.row(i);
    for (std::size_t k = 0; k < row.size(); ++k) {
      const Value v = row[k] - lo;
      dst[k] = v > cap ? cap + 1 : v;
    }
  }
  return out;
}

Value choose_M(std::size_t na, std::size_t nb, std::size_t nc, Value entry_bound,
               const SolverConfig& cfg) {
  if (cfg.m_override > 0) {
    if (cfg.m_override % 100 != 0) {
      throw std::invalid_argument("choose_M: M override must be a multiple of 100");
    }
    return cfg.m_override;
  }
  const double dims = static_cast<double>(std::max<std::size_t>(na, 1)) *
                      static_cast<double>(std::max<std::size_t>(nb, 1)) *
                      static_cast<double>(std::max<std::size_t>(nc, 1));
  const double raw = std::sqrt(static_cast<double>(std::max<std::size_t>(na, 1)) *
                               static_cast<double>(std::max<std::size_t>(nb, 1)) *
                               static_cast<double>(std::max<Value>(entry_bound, 1)) /
                               std::pow(dims, cfg.omega / 3.0));
  const Value rounded = 100 * static_cast<Value>(std::llround(raw / 100.0));
  const Value hi = std::max<Value>(100, cfg.m_max - cfg.m_max % 100);
  return std::clamp<Value>(rounded, 100, hi);
}

IntMatrix compute_s_matrix(const VerificationInstance& inst, Value q, const RingOptions& ring) {
  check_product_shapes(inst.a, inst.b);
  if (inst.c.rows() != inst.a.rows() || inst.c.cols() != inst.b.cols()) {
    throw std::invalid_argument("compute_s_matrix: C shape mismatch");
  }
  if (q < 1) throw std::invalid_argument("compute_s_matrix: Q must be positive");
  require_exact_counts(ring.field, inst.a.cols());
  const auto uq = static_cast<std::size_t>(q);
  const std::size_t na = inst.a.rows(), nb = inst.a.cols(), nc = inst.b.cols();
  const TermTable p = monomial_matrix_product(MonomialSet(inst.a.data(), uq),
                                              MonomialSet(inst.b.data(), uq), na, nb, nc, ring);
  IntMatrix s(na, nc, 0);
  for (std::size_t i = 0; i < na; ++i)
    for (std::size_t j = 0; j < nc; ++j) {
      Value r = inst.c(i, j) % q;
      if (r < 0) r += q;
      s(i, j) = static_cast<Value>(p.coefficient(i * nc + j, static_cast<std::size_t>(r)));
    }
  return s;
}

MatrixVerification verify_matrix_instance(const VerificationInstance& inst,
                                          const SolverConfig& cfg, const ModulusReport* shared,
                                          SolveStats* stats) {
  require(validate_verification(inst), "verification instance");
  SolveStats scratch;
  SolveStats& st = stats != nullptr ? *stats : scratch;
  ++st.verification_instances;

  const std::size_t na = inst.a.rows(), nb = inst.a.cols(), nc = inst.b.cols();
  const std::size_t n = std::max({na, nb, nc, std::size_t{1}});
  const std::size_t lines = na * nb;
  const Value u = std::max(inst.b.max_entry(), inst.c.max_entry());
  const double slack = resolve_slack(cfg, n);

  MatrixVerification out;
  bool have = false;
  if (shared != nullptr) {
    Stopwatch sw;
    auto pipe = run_segment_pipeline(inst, shared->q, cfg.strict);
    st.t_segments += sw.seconds();
    if (audit_active_counts(pipe.active_counts, lines, u, shared->q, slack)) {
      out.report = *shared;
      out.report.shared = true;
      out.report.active_counts = pipe.active_counts;
      out.report.audited = true;
      out.report.audit_ok = true;
      out.pipeline = std::move(pipe);
      ++st.shared_modulus_hits;
      have = true;
    }
  }
  if (!have) {
    Stopwatch sw;
    out.report = find_good_modulus(inst, inst.modulus, resolve_prime_range(cfg, n),
                                   SearchOptions{cfg.ring});
    ++st.modulus_searches;
    st.t_modulus_search += sw.seconds();
    Stopwatch sw2;
    out.pipeline = run_segment_pipeline(inst, out.report.q, cfg.strict);
    st.t_segments += sw2.seconds();
    out.report.active_counts = out.pipeline.active_counts;
    out.report.audited = true;
    out.report.audit_ok = audit_active_counts(out.pipeline.active_counts, lines, u,
                                              out.report.q, slack);
    if (!out.report.audit_ok) {
      ++st.audit_failures;
      if (cfg.strict) {
        throw std::logic_error("good-modulus audit failed for Q=" + std::to_string(out.report.q));
      }
    }
  }
  out.report.slack = slack;
  notify_observer(cfg, out.report);

  const Value q = out.report.q;
  Stopwatch sw;
  const bool rotated = inst.variant == Variant::kCol;
  out.counts = rotated ? compute_r_matrix(inst, q, cfg.ring) : compute_s_matrix(inst, q, cfg.ring);
  st.t_counting += sw.seconds();
  Stopwatch sw2;
  out.spurious = rotated ? aggregate_rprime_by_ik(out.pipeline.level0, inst, q)
                         : aggregate_sprime_rows(out.pipeline.level0, inst, q);
  st.t_segments += sw2.seconds();

  out.mask = WitnessMask(out.counts.rows(), out.counts.cols());
  for (std::size_t i = 0; i < out.counts.rows(); ++i)
    for (std::size_t j = 0; j < out.counts.cols(); ++j) {
      if (out.counts(i, j) < out.spurious(i, j)) {
        throw std::logic_error("spurious count exceeds congruence count");
      }
      out.mask.set(i, j, out.counts(i, j) > out.spurious(i, j));
    }
  return out;
}

WitnessMask solve_verification_row(const VerificationInstance& inst, const SolverConfig& cfg) {
  VerificationInstance copy = inst;
  copy.variant = Variant::kRow;
  return verify_matrix_instance(copy, cfg).mask;
}

WitnessMask scan_verification_row(const VerificationInstance& inst) {
  check_product_shapes(inst.a, inst.b);
  if (inst.c.rows() != inst.a.rows() || inst.c.cols() != inst.b.cols()) {
    throw std::invalid_argument("scan_verification_row: C shape mismatch");
  }
  if (!rows_nondecreasing(inst.b) || !rows_nondecreasing(inst.c)) {
    throw std::invalid_argument("scan_verification_row: B and C rows must be non-decreasing");
  }
  const std::size_t na = inst.a.rows(), nb = inst.a.cols(), nc = inst.b.cols();
  WitnessMask mask(na, nc);
  if (nc == 0) return mask;
  std::vector<int> diff(nc + 1);
  for (std::size_t i = 0; i < na; ++i) {
    std::fill(diff.begin(), diff.end(), 0);
    auto crow = inst.c.row(i);
    for (std::size_t k = 0; k < nb; ++k) {
      auto brow = inst.b.row(k);
      const Value aik = inst.a(i, k);
      detail::for_each_block([&](std::size_t j) { return brow[j]; },
                             [&](std::size_t j) { return crow[j]; }, 0, 0, nc - 1,
                             [&](std::size_t j0, std::size_t j1) {
                               if (aik + brow[j0] == crow[j0]) {
                                 ++diff[j0];
                                 --diff[j1 + 1];
                               }
                             });
    }
    int run = 0;
    for (std::size_t j = 0; j < nc; ++j) {
      run += diff[j];
      mask.set(i, j, run > 0);
    }
  }
  return mask;
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

// Accepted mask of one candidate through the 100^2 residue-shifted instances.
std::vector<std::uint8_t> verify_row_candidate(const IntMatrix& a, const IntMatrix& b,
                                               const IntMatrix& cand, Value m,
                                               const std::vector<std::uint8_t>& needed,
                                               const SolverConfig& cfg, SolveStats& st) {
  const std::size_t na = a.rows(), nb = a.cols(), nc = b.cols();
  const Value w = m / kResidueClasses;
  std::vector<std::uint8_t> accepted(na * nc, 0);
  Stopwatch reduce_sw;

  std::vector<std::vector<Cell>> buckets(kResidueClasses * kResidueClasses);
  if (!cfg.compaction) {
    for (auto& bucket : buckets)
      for (std::uint32_t i = 0; i < na; ++i)
        for (std::uint32_t j = 0; j < nc; ++j)
          if (needed[i * nc + j]) bucket.push_back({i, j});
  } else {
    BitRows abits(kResidueClasses * na, nb), bbits(kResidueClasses * nc, nb);
    std::vector<std::vector<int>> row_classes(na);
    for (std::size_t i = 0; i < na; ++i) {
      std::vector<std::uint8_t> seen(kResidueClasses, 0);
      for (std::size_t k = 0; k < nb; ++k) {
        const int s = residue_class(a(i, k) + m, m);
        abits.set(s * na + i, k);
        if (!seen[s]) {
          seen[s] = 1;
          row_classes[i].push_back(s);
        }
      }
      std::sort(row_classes[i].begin(), row_classes[i].end());
    }
    for (std::size_t k = 0; k < nb; ++k)
      for (std::size_t j = 0; j < nc; ++j) bbits.set(residue_class(b(k, j) + m, m) * nc + j, k);
    for (std::uint32_t i = 0; i < na; ++i)
      for (std::uint32_t j = 0; j < nc; ++j) {
        if (!needed[i * nc + j]) continue;
        const Value cp = cand(i, j) + 2 * m;
        const Value rho = ((cp % m) + m) % m;
        for (int s : row_classes[i]) {
          const Value uu = ((rho - s * w) % m + m) % m;
          const int t0 = static_cast<int>(uu / w);
          for (int t : {(t0 + kResidueClasses - 1) % kResidueClasses, t0}) {
            if (!in_window_j(cp, s, t, m)) continue;
            if (abits.intersects(s * na + i, bbits, t * nc + j)) {
              buckets[s * kResidueClasses + t].push_back({i, j});
            }
          }
        }
      }
    // Build per-bucket inner index sets lazily below from the same bits.
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
      const auto& cells = buckets[key];
      Stopwatch sw;
      std::vector<std::uint32_t> is, js;
      for (const auto& c : cells) {
        is.push_back(c.i);
        js.push_back(c.j);
      }
      is = unique_sorted(std::move(is));
      js = unique_sorted(std::move(js));
      std::vector<std::uint64_t> from_a(abits.words(), 0), from_b(bbits.words(), 0);
      for (auto i : is) abits.or_into(s * na + i, from_a);
      for (auto j : js) bbits.or_into(t * nc + j, from_b);
      for (std::size_t x = 0; x < from_a.size(); ++x) from_a[x] &= from_b[x];
      const auto ks = internal::bits_to_indices(from_a, nb);
      VerificationInstance sub;
      sub.modulus = m;
      sub.variant = Variant::kRow;
      sub.a = IntMatrix(is.size(), ks.size());
      sub.b = IntMatrix(ks.size(), js.size());
      sub.c = IntMatrix(is.size(), js.size());
      for (std::size_t r = 0; r < is.size(); ++r)
        for (std::size_t c = 0; c < ks.size(); ++c)
          sub.a(r, c) = shift_ab_entry(a(is[r], ks[c]) + m, s, m);
      for (std::size_t r = 0; r < ks.size(); ++r)
        for (std::size_t c = 0; c < js.size(); ++c)
          sub.b(r, c) = shift_ab_entry(b(ks[r], js[c]) + m, t, m);
      for (std::size_t r = 0; r < is.size(); ++r)
        for (std::size_t c = 0; c < js.size(); ++c)
          sub.c(r, c) = shift_c_entry(cand(is[r], js[c]) + 2 * m, s, t, m);
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
      shared_report.shared = false;
      shared = &shared_report;
      first = 1;
    }
    parallel_for(live.size() - first, cfg.threads,
                 [&](std::size_t x) { solve(x + first, shared, nullptr); });
    for (std::size_t idx = 0; idx < live.size(); ++idx) {
      const auto& cells = buckets[live[idx]];
      for (std::size_t x = 0; x < cells.size(); ++x)
        if (results[idx].yes[x]) accepted[cells[x].i * nc + cells[x].j] = 1;
      st.absorb(results[idx].stats);
      st.mix_modulus(results[idx].q);
    }
    return accepted;
  }

  // Uncompacted: every (s,t) instance at full size.
  ResidueShift shift(a, b, m);
  st.t_reductions += reduce_sw.seconds();
  std::vector<BucketResult> results(buckets.size());
  auto solve_full = [&](std::size_t key, const ModulusReport* shared, ModulusReport* report_out) {
    const int s = static_cast<int>(key / kResidueClasses);
    const int t = static_cast<int>(key % kResidueClasses);
    Stopwatch sw;
    VerificationInstance inst{shift.a(s), shift.b(t), shift.c(cand, s, t), m, Variant::kRow};
    BucketResult& res = results[key];
    res.stats.t_reductions += sw.seconds();
    auto v = verify_matrix_instance(inst, cfg, shared, &res.stats);
    res.q = v.report.q;
    res.yes.assign(na * nc, 0);
    for (std::size_t i = 0; i < na; ++i)
      for (std::size_t j = 0; j < nc; ++j) res.yes[i * nc + j] = v.mask.get(i, j);
    if (report_out != nullptr) *report_out = v.report;
  };
  std::size_t first = 0;
  ModulusReport shared_report;
  const ModulusReport* shared = nullptr;
  if (cfg.fast_shared_modulus) {
    solve_full(0, nullptr, &shared_report);
    shared = &shared_report;
    first = 1;
  }
  parallel_for(buckets.size() - first, cfg.threads,
               [&](std::size_t x) { solve_full(x + first, shared, nullptr); });
  for (std::size_t key = 0; key < buckets.size(); ++key) {
    for (std::size_t c = 0; c < na * nc; ++c)
      if (needed[c] && results[key].yes[c]) accepted[c] = 1;
    st.absorb(results[key].stats);
    st.mix_modulus(results[key].q);
  }
  return accepted;
}

IntMatrix row_recursive(const IntMatrix& a, const IntMatrix& b, const SolverConfig& cfg,
                        SolveStats& st, std::size_t depth) {
  const std::size_t na = a.rows(), nb = a.cols(), nc = b.cols();
  if (a.all_zero() && b.all_zero()) {
    st.recursion_levels = std::max(st.recursion_levels, depth);
    return IntMatrix(na, nc, 0);
  }
  const IntMatrix half = row_recursive(internal::halve(a), internal::halve(b), cfg, st, depth + 1);
  const Value m = choose_M(na, nb, nc, std::max<Value>(b.max_entry(), 1), cfg);
  IntMatrix result(na, nc, 0);
  std::vector<std::uint8_t> decided(na * nc, 0);
  for (int s = 0; s <= 2; ++s) {
    IntMatrix cand(na, nc);
    for (std::size_t x = 0; x < cand.data().size(); ++x) cand.data()[x] = 2 * half.data()[x] + s;
    std::vector<std::uint8_t> needed(na * nc);
    for (std::size_t x = 0; x < needed.size(); ++x) needed[x] = !decided[x];
    std::vector<std::uint8_t> accepted;
    if (cfg.row_engine == RowEngine::kScan) {
      Stopwatch sw;
      const auto mask = scan_verification_row(VerificationInstance{a, b, cand, m, Variant::kRow});
      accepted.resize(na * nc);
      for (std::size_t i = 0; i < na; ++i)
        for (std::size_t j = 0; j < nc; ++j) accepted[i * nc + j] = mask.get(i, j);
      st.t_counting += sw.seconds();
    } else {
      accepted = verify_row_candidate(a, b, cand, m, needed, cfg, st);
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

IntMatrix minplus_monotone_row(const IntMatrix& a, const IntMatrix& b, const MonotoneTag& tag,
                               const SolverConfig& cfg, SolveStats* stats) {
  if (tag.axis != Axis::kRowMonotone) {
    throw std::invalid_argument("minplus_monotone_row: B must carry a row-monotone tag");
  }
  check_product_shapes(a, b);
  if (a.cols() == 0) throw std::invalid_argument("minplus_monotone_row: inner dimension is zero");
  check_entry_range(a, "A");
  require(validate_promises(b, tag), "B");
  SolveStats local;
  local.engine = cfg.row_engine == RowEngine::kScan ? "scan" : "verify";
  Stopwatch sw;
  const NormalizedRows norm = normalize_A(a, tag.entry_bound);
  local.t_reductions += sw.seconds();
  IntMatrix c = row_recursive(norm.a, b, cfg, local, 0);
  for (std::size_t i = 0; i < c.rows(); ++i)
    for (auto& v : c.row(i)) v += norm.offsets[i];
  if (stats != nullptr) {
    stats->absorb(local);
    stats->modulus_digest = local.modulus_digest;
    stats->engine = local.engine;
  }
  return c;
}

}  // namespace minplus
