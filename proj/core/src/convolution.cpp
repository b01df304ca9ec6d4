// Copyright 2026 The minplus Authors
// SPDX-License-Identifier: Apache-2.0

#include "minplus/convolution.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "internal.hpp"
#include "minplus/residue_shift.hpp"

namespace minplus {

using internal::Stopwatch;

namespace {

void check_shapes(const ConvVerificationInstance& inst, const char* where) {
  const std::size_t n = inst.a.size();
  if (n == 0 || inst.b.size() != n || inst.c.size() != 2 * n - 1) {
    throw std::invalid_argument(std::string(where) + ": inconsistent convolution shapes");
  }
}

std::vector<std::size_t> all_diagonals(std::size_t n) {
  std::vector<std::size_t> d(2 * n - 1);
  std::iota(d.begin(), d.end(), std::size_t{0});
  return d;
}

}  // namespace

IntArray compute_s_array(const ConvVerificationInstance& inst, Value q, const RingOptions& ring,
                         std::span<const std::size_t> diagonals) {
  check_shapes(inst, "compute_s_array");
  if (q < 1) throw std::invalid_argument("compute_s_array: Q must be positive");
  const std::size_t n = inst.a.size();
  require_exact_counts(ring.field, n);
  std::vector<std::size_t> ds;
  if (diagonals.empty()) {
    ds = all_diagonals(n);
    diagonals = ds;
  }
  std::vector<std::size_t> degrees;
  degrees.reserve(diagonals.size());
  for (auto d : diagonals) {
    if (d > 2 * n - 2) throw std::out_of_range("compute_s_array: diagonal out of range");
    degrees.push_back(d + 2);
  }
  const auto uq = static_cast<std::size_t>(q);
  const TermTable p = monomial_bivariate_product(MonomialSet(inst.a.values(), uq),
                                                 MonomialSet(inst.b.values(), uq), 1, ring,
                                                 degrees);
  IntArray s(2 * n - 1, 2, 0);
  for (auto d : diagonals) {
    Value r = inst.c[d] % q;
    if (r < 0) r += q;
    s[d] = static_cast<Value>(p.coefficient(d + 2, static_cast<std::size_t>(r)));
  }
  return s;
}

ConvVerification verify_conv_instance(const ConvVerificationInstance& inst,
                                      const SolverConfig& cfg,
                                      std::span<const std::size_t> diagonals,
                                      const ModulusReport* shared, SolveStats* stats) {
  require(validate_verification(inst), "convolution verification instance");
  SolveStats scratch;
  SolveStats& st = stats != nullptr ? *stats : scratch;
  ++st.verification_instances;

  const std::size_t n = inst.a.size();
  const std::size_t lines = diagonals.empty() ? 2 * n - 1 : diagonals.size();
  const Value u = std::max(inst.b.max_entry(), inst.c.max_entry());
  const double slack = resolve_slack(cfg, n);

  ConvVerification out;
  bool have = false;
  if (shared != nullptr) {
    Stopwatch sw;
    auto pipe = run_segment_pipeline(inst, shared->q, diagonals, cfg.strict);
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
                                   SearchOptions{cfg.ring}, diagonals);
    ++st.modulus_searches;
    st.t_modulus_search += sw.seconds();
    Stopwatch sw2;
    out.pipeline = run_segment_pipeline(inst, out.report.q, diagonals, cfg.strict);
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
  const IntArray s = compute_s_array(inst, q, cfg.ring, diagonals);
  st.t_counting += sw.seconds();
  Stopwatch sw2;
  out.spurious = aggregate_sprime_conv(out.pipeline.level0, inst, q);
  st.t_segments += sw2.seconds();
  out.counts.assign(s.values().begin(), s.values().end());
  out.mask = WitnessMask(1, 2 * n - 1, 2);
  for (std::size_t d = 0; d < out.counts.size(); ++d) {
    if (out.counts[d] < out.spurious[d]) {
      throw std::logic_error("spurious count exceeds congruence count");
    }
    out.mask.set(0, d, out.counts[d] > out.spurious[d]);
  }
  return out;
}

WitnessMask solve_verification_conv(const ConvVerificationInstance& inst, const SolverConfig& cfg,
                                    std::span<const std::size_t> diagonals) {
  return verify_conv_instance(inst, cfg, diagonals).mask;
}

Value choose_M_conv(Value entry_bound, const SolverConfig& cfg) {
  if (cfg.m_override > 0) {
    if (cfg.m_override % 100 != 0) {
      throw std::invalid_argument("choose_M_conv: M override must be a multiple of 100");
    }
    return cfg.m_override;
  }
  const double root = std::sqrt(static_cast<double>(std::max<Value>(entry_bound, 1)));
  const Value rounded = 100 * static_cast<Value>(std::llround(root / 100.0));
  const Value hi = std::max<Value>(100, cfg.m_max - cfg.m_max % 100);
  return std::clamp<Value>(rounded, 100, hi);
}

namespace {

struct BucketResult {
  std::vector<std::uint8_t> yes;  // per listed diagonal
  SolveStats stats;
  Value q = 0;
};

// Accepted flags per d for one candidate, through the residue-shifted
// instances that can hold a witness.
std::vector<std::uint8_t> verify_conv_candidate(const IntArray& a, const IntArray& b,
                                                const IntArray& cand, Value m,
                                                const std::vector<std::uint8_t>& needed,
                                                const SolverConfig& cfg, SolveStats& st) {
  const std::size_t n = a.size();
  const std::size_t len = 2 * n - 1;
  std::vector<std::uint8_t> accepted(len, 0);
  Stopwatch reduce_sw;
  constexpr std::size_t kPairs = kResidueClasses * kResidueClasses;
  std::vector<std::vector<std::size_t>> buckets(kPairs);
  if (!cfg.compaction) {
    for (auto& bucket : buckets)
      for (std::size_t d = 0; d < len; ++d)
        if (needed[d]) bucket.push_back(d);
  } else {
    std::vector<std::size_t> mark(kPairs, len);
    for (std::size_t d = 0; d < len; ++d) {
      if (!needed[d]) continue;
      const Value cp = cand[d] + 2 * m;
      const auto r = diagonal_range(n, d);
      detail::for_each_block([&](std::size_t i) { return a[i]; },
                             [&](std::size_t i) { return b[d - i]; }, 0, r.lo, r.hi,
                             [&](std::size_t i0, std::size_t) {
                               const int s = residue_class(a[i0] + m, m);
                               const int t = residue_class(b[d - i0] + m, m);
                               const std::size_t key = s * kResidueClasses + t;
                               if (mark[key] != d && in_window_j(cp, s, t, m)) {
                                 mark[key] = d;
                                 buckets[key].push_back(d);
                               }
                             });
    }
  }
  std::vector<std::size_t> live;
  for (std::size_t x = 0; x < kPairs; ++x)
    if (!buckets[x].empty()) live.push_back(x);
  st.skipped_instances += kPairs - live.size();
  st.t_reductions += reduce_sw.seconds();

  std::vector<BucketResult> results(live.size());
  auto solve = [&](std::size_t idx, const ModulusReport* shared, ModulusReport* report_out) {
    const std::size_t key = live[idx];
    const int s = static_cast<int>(key / kResidueClasses);
    const int t = static_cast<int>(key % kResidueClasses);
    const auto& ds = buckets[key];
    Stopwatch sw;
    ConvVerificationInstance inst{shift_array_ab(a, s, m), shift_array_ab(b, t, m),
                                  shift_array_c(cand, s, t, m), m};
    BucketResult& res = results[idx];
    res.stats.t_reductions += sw.seconds();
    auto v = verify_conv_instance(inst, cfg, ds, shared, &res.stats);
    res.q = v.report.q;
    res.yes.resize(ds.size());
    for (std::size_t x = 0; x < ds.size(); ++x) res.yes[x] = v.mask.get(0, ds[x]);
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
    const auto& ds = buckets[live[idx]];
    for (std::size_t x = 0; x < ds.size(); ++x)
      if (results[idx].yes[x]) accepted[ds[x]] = 1;
    st.absorb(results[idx].stats);
    st.mix_modulus(results[idx].q);
  }
  return accepted;
}

IntArray conv_recursive(const IntArray& a, const IntArray& b, const SolverConfig& cfg,
                        SolveStats& st, std::size_t depth) {
  const std::size_t n = a.size();
  const std::size_t len = 2 * n - 1;
  auto zero = [](const IntArray& x) {
    return std::all_of(x.values().begin(), x.values().end(), [](Value v) { return v == 0; });
  };
  if (zero(a) && zero(b)) {
    st.recursion_levels = std::max(st.recursion_levels, depth);
    return IntArray(len, 2, 0);
  }
  const IntArray half = conv_recursive(internal::halve(a), internal::halve(b), cfg, st, depth + 1);
  const Value u = std::max<Value>(std::max(a.max_entry(), b.max_entry()), 1);
  const Value m = choose_M_conv(u, cfg);
  IntArray result(len, 2, 0);
  std::vector<std::uint8_t> decided(len, 0);
  for (int s = 0; s <= 2; ++s) {
    IntArray cand(len, 2);
    for (std::size_t d = 0; d < len; ++d) cand[d] = 2 * half[d] + s;
    std::vector<std::uint8_t> needed(len);
    for (std::size_t d = 0; d < len; ++d) needed[d] = !decided[d];
    const auto accepted = verify_conv_candidate(a, b, cand, m, needed, cfg, st);
    for (std::size_t d = 0; d < len; ++d)
      if (needed[d] && accepted[d]) {
        decided[d] = 1;
        result[d] = cand[d];
      }
  }
  for (std::size_t d = 0; d < len; ++d)
    if (!decided[d]) {
      throw std::logic_error("no candidate accepted at k=" + std::to_string(d + 2));
    }
  return result;
}

}  // namespace

IntArray minplus_conv_monotone(const IntArray& a, const IntArray& b, const MonotoneTag& tag,
                               const SolverConfig& cfg, SolveStats* stats) {
  if (tag.axis != Axis::kArrayMonotone) {
    throw std::invalid_argument("minplus_conv_monotone: arrays must carry an array-monotone tag");
  }
  if (a.size() == 0 || a.size() != b.size()) {
    throw std::invalid_argument("minplus_conv_monotone: arrays must be non-empty and equally long");
  }
  require(validate_promises(a, tag), "A");
  require(validate_promises(b, tag), "B");
  SolveStats local;
  local.engine = "verify";
  IntArray c = conv_recursive(a, b, cfg, local, 0);
  if (stats != nullptr) {
    stats->absorb(local);
    stats->modulus_digest = local.modulus_digest;
    stats->engine = local.engine;
  }
  return c;
}

}  // namespace minplus
