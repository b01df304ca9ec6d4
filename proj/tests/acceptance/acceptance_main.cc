// Copyright 2026 The minplus Authors
// SPDX-License-Identifier: Apache-2.0

// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <string>
#include <vector>

#include "json.hpp"
#include "minplus/cli/commands.hpp"
#include "minplus/cli/generator.hpp"
#include "minplus/cli/instance_io.hpp"
#include "minplus/convolution.hpp"
#include "minplus/modulus_search.hpp"
#include "minplus/polyring.hpp"
#include "minplus/product_col.hpp"
#include "minplus/product_row.hpp"
#include "minplus/residue_shift.hpp"
#include "minplus/segments.hpp"
#include "oracles.hpp"

namespace {

using namespace minplus;
using cli::Family;
using cli::SplitMix64;

constexpr Family kFamilies[] = {Family::kUniformMonotone, Family::kBoundedDifference,
                                Family::kStaircase, Family::kAdversarialTies};

// Pinned tolerances.
constexpr std::size_t kRowCases = 500;
constexpr std::size_t kColCases = 300;
constexpr std::size_t kConvCases = 500;
constexpr std::size_t kVerifyCases = 200;
constexpr std::size_t kXyzCases = 100;
constexpr std::size_t kModulusCases = 100;
constexpr std::size_t kSegmentCases = 200;
constexpr std::size_t kRingCases = 200;
constexpr std::size_t kDeterminismCases = 20;
constexpr double kMaxExponent = 3.3;
constexpr double kRowSeconds = 900.0;

int failures = 0;

// Every modulus report produced by the product runs of criteria 1-3.
struct QAudit {
  std::size_t reports = 0;
  std::size_t violations = 0;
} q_audit;

void observe(const ModulusReport& r) {
  ++q_audit.reports;
  const auto& seq = r.q_sequence;
  const bool ok = r.m <= r.q && r.q <= r.m * r.r && seq.size() >= 2 && seq[seq.size() - 2] < r.m;
  if (!ok) ++q_audit.violations;
}

void report(int id, const char* what, bool ok, const std::string& detail) {
  std::printf("criterion %2d %-4s %-44s %s\n", id, ok ? "PASS" : "FAIL", what, detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

std::string fmt(const char* f, auto... args) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

Value pick_bound(SplitMix64& rng, std::size_t n) {
  const Value opts[] = {2, static_cast<Value>(n), 4 * static_cast<Value>(n)};
  return std::max<Value>(1, opts[rng.below(3)]);
}

SolverConfig observed_cfg() {
  SolverConfig c;
  c.modulus_observer = observe;
  return c;
}

SolverConfig strict_cfg() {
  SolverConfig c;
  c.strict = true;
  return c;
}

// 1. row-monotone products
void criterion_row() {
  SplitMix64 rng(1001);
  const auto t0 = std::chrono::steady_clock::now();
  std::size_t bad = 0, audits = 0;
  for (std::size_t it = 0; it < kRowCases; ++it) {
    const std::size_t n = 1 + rng.below(32);
    const Value u = pick_bound(rng, n);
    const Family fam = kFamilies[it % 4];
    const IntMatrix a = cli::free_matrix(rng, n, n, u, fam);
    const IntMatrix b = cli::row_monotone_matrix(rng, n, n, u, fam);
    SolverConfig cfg = observed_cfg();
    cfg.fast_shared_modulus = it % 2 == 1;
    SolveStats st;
    if (minplus_monotone_row(a, b, {Axis::kRowMonotone, u}, cfg, &st) != minplus_product_naive(a, b))
      ++bad;
    audits += st.audit_failures;
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  report(1, "row-monotone product == naive", bad == 0 && secs < kRowSeconds,
         fmt("cases=%zu mismatches=%zu (tol 0) audit_failures=%zu wall=%.1fs (tol < %.0fs)",
             kRowCases, bad, audits, secs, kRowSeconds));
}

// 2. column-monotone products, both engines
void criterion_col() {
  SplitMix64 rng(1002);
  std::size_t bad = 0;
  for (std::size_t it = 0; it < kColCases; ++it) {
    const std::size_t n = 1 + rng.below(32);
    const Value u = pick_bound(rng, n);
    const Family fam = kFamilies[it % 4];
    const IntMatrix a = cli::free_matrix(rng, n, n, u, fam);
    const IntMatrix b = cli::col_monotone_matrix(rng, n, n, u, fam);
    const IntMatrix want = minplus_product_naive(a, b);
    for (ColEngine e : {ColEngine::kVerify, ColEngine::kTwoPointer}) {
      SolverConfig cfg = observed_cfg();
      cfg.col_engine = e;
      if (minplus_monotone_col(a, b, {Axis::kColumnMonotone, u}, cfg) != want) ++bad;
    }
  }
  report(2, "column-monotone product == naive", bad == 0,
         fmt("cases=%zu engines=2 mismatches=%zu (tol 0)", kColCases, bad));
}

// 3. monotone convolution
void criterion_conv() {
  SplitMix64 rng(1003);
  std::size_t bad = 0;
  for (std::size_t it = 0; it < kConvCases; ++it) {
    const std::size_t n = 1 + rng.below(256);
    const Value u = pick_bound(rng, n);
    const Family fam = kFamilies[it % 4];
    const IntArray a(cli::monotone_row(rng, n, u, fam));
    const IntArray b(cli::monotone_row(rng, n, u, fam));
    SolverConfig cfg = observed_cfg();
    cfg.fast_shared_modulus = it % 2 == 1;
    if (minplus_conv_monotone(a, b, {Axis::kArrayMonotone, u}, cfg) !=
        minplus_convolution_naive(a, b))
      ++bad;
  }
  report(3, "monotone convolution == naive", bad == 0,
         fmt("cases=%zu n<=256 mismatches=%zu (tol 0)", kConvCases, bad));
}

// 4. verification masks on lifted instances
void criterion_verify() {
  SplitMix64 rng(1004);
  std::size_t bad = 0;
  for (std::size_t it = 0; it < kVerifyCases; ++it) {
    const std::size_t n = 1 + rng.below(it % 10 == 0 ? 64 : 24);
    const Value m = 100 * static_cast<Value>(1 + rng.below(3));
    const Family fam = kFamilies[it % 4];
    bool ok = true;
    switch (it % 3) {
      case 0: {
        const auto v = cli::lift_verify_row(rng, cli::free_matrix(rng, n, n, 3 * m, fam),
                                            cli::row_monotone_matrix(rng, n, n, 3 * m, fam), m);
        ok = solve_verification_row(v, strict_cfg()) == witness_mask_naive(v, QueryAxis::kPerIJ);
        break;
      }
      case 1: {
        const auto v = cli::lift_verify_col(rng, cli::free_matrix(rng, n, n, 3 * m, fam),
                                            cli::col_monotone_matrix(rng, n, n, 3 * m, fam), m);
        ok = solve_verification_col(v, strict_cfg()) == witness_mask_naive(v, QueryAxis::kPerIK);
        break;
      }
      default: {
        const auto v = cli::lift_verify_conv(rng, IntArray(cli::monotone_row(rng, n, 3 * m, fam)),
                                             IntArray(cli::monotone_row(rng, n, 3 * m, fam)), m);
        ok = solve_verification_conv(v, strict_cfg()) == witness_mask_naive(v);
        break;
      }
    }
    if (!ok) ++bad;
  }
  report(4, "verification mask == naive witness mask", bad == 0,
         fmt("cases=%zu n<=64 mismatches=%zu (tol 0)", kVerifyCases, bad));
}

VerificationInstance small_row(SplitMix64& rng, std::size_t n, Value m, Family fam) {
  return cli::lift_verify_row(rng, cli::free_matrix(rng, n, n, 3 * m, fam),
                              cli::row_monotone_matrix(rng, n, n, 3 * m, fam), m);
}
ConvVerificationInstance small_conv(SplitMix64& rng, std::size_t n, Value m, Family fam) {
  return cli::lift_verify_conv(rng, IntArray(cli::monotone_row(rng, n, 3 * m, fam)),
                               IntArray(cli::monotone_row(rng, n, 3 * m, fam)), m);
}

// 5. X = Y - Z on every table entry of the search
void criterion_xyz() {
  SplitMix64 rng(1005);
  std::size_t checks = 0, bad = 0;
  for (std::size_t it = 0; it < kXyzCases; ++it) {
    const std::size_t n = 1 + rng.below(16);
    const Family fam = kFamilies[it % 4];
    auto run = [&](const auto& v, const ModulusReport& r) {
      for (const auto& step : r.steps)
        for (std::size_t p = 0; p < step.table.primes.size(); ++p)
          for (std::size_t l = 0; l < step.table.levels(); ++l) {
            const XYZ c = count_xyz_bruteforce(v, step.q_prev * step.table.primes[p], static_cast<int>(l));
            const Value y = step.table.y[l][p];
            ++checks;
            if (c.y != y || c.x != y - c.z) ++bad;
          }
    };
    if (it % 2 == 0) {
      const auto v = small_row(rng, n, 100, fam);
      run(v, find_good_modulus(v, 100, 16));
    } else {
      const auto v = small_conv(rng, n, 100, fam);
      run(v, find_good_modulus(v, 100, 16));
    }
  }
  report(5, "X = Y - Z (brute force vs ring counts)", bad == 0 && checks > 0,
         fmt("cases=%zu checks=%zu failures=%zu (tol 0)", kXyzCases, checks, bad));
}

// 6. modulus bounds and active-set bounds
void criterion_modulus() {
  SplitMix64 rng(1006);
  std::size_t bad_q = 0, bad_s = 0, bad_audit = 0;
  for (std::size_t it = 0; it < kModulusCases; ++it) {
    const std::size_t n = 1 + rng.below(12);
    const Value m = 100 * static_cast<Value>(1 + rng.below(2));
    const Family fam = kFamilies[it % 4];
    const Value r = resolve_prime_range({}, n);
    const double slack = default_slack(n);
    auto check = [&](const auto& v, const ModulusReport& rep, SegmentPipeline pipe, std::size_t lines,
                     Value u) {
      const auto& seq = rep.q_sequence;
      if (!(rep.m <= rep.q && rep.q <= rep.m * rep.r && seq.size() >= 2 && seq[seq.size() - 2] < rep.m))
        ++bad_q;
      for (std::size_t l = 0; l < pipe.active_counts.size(); ++l)
        if (static_cast<Value>(pipe.active_counts[l]) > count_X_bruteforce(v, rep.q, static_cast<int>(l)))
          ++bad_s;
      if (!audit_active_counts(pipe.active_counts, lines, u, rep.q, slack)) ++bad_audit;
    };
    if (it % 2 == 0) {
      const auto v = small_row(rng, n, m, fam);
      const auto rep = find_good_modulus(v, m, r);
      check(v, rep, run_segment_pipeline(v, rep.q), n * n, std::max(v.b.max_entry(), v.c.max_entry()));
    } else {
      const auto v = small_conv(rng, n, m, fam);
      const auto rep = find_good_modulus(v, m, r);
      check(v, rep, run_segment_pipeline(v, rep.q), 2 * n - 1,
            std::max(v.b.max_entry(), v.c.max_entry()));
    }
  }
  report(6, "M <= Q <= MR, first crossing, |S_l| <= X_l",
         bad_q + bad_s + bad_audit + q_audit.violations == 0 && q_audit.reports > 0,
         fmt("cases=%zu q_fail=%zu s_fail=%zu audit_fail=%zu solver_reports=%zu/%zu bad (tol 0)",
             kModulusCases, bad_q, bad_s, bad_audit, q_audit.violations, q_audit.reports));
}

// 7. segment hierarchy
void criterion_segments() {
  SplitMix64 rng(1007);
  std::size_t bad = 0;
  for (std::size_t it = 0; it < kSegmentCases; ++it) {
    const std::size_t n = 1 + rng.below(10);
    const Value m = 100 * static_cast<Value>(1 + rng.below(4));
    const auto v = small_row(rng, n, m, kFamilies[it % 4]);
    const Value u = std::max(v.b.max_entry(), v.c.max_entry());
    const int lmax = levelmax_for(m);
    const Value q = find_good_modulus(v, m, 16).q;
    std::vector<Segment> parents, active_parents;
    for (int level = lmax; level >= 0; --level) {
      const auto segs = segments_matrix(v, level);
      if (segs.size() > segment_count_bound(n * n, u, level)) ++bad;
      std::vector<std::size_t> cover(n * n * n, 0);
      for (const auto& s : segs)
        for (std::size_t j = s.start; j <= s.end; ++j) ++cover[(s.line * n + s.inner) * n + j];
      if (!std::all_of(cover.begin(), cover.end(), [](std::size_t c) { return c == 1; })) ++bad;
      if (level < lmax)
        for (const auto& s : segs) {
          const bool nested = std::any_of(parents.begin(), parents.end(), [&](const Segment& p) {
            return p.line == s.line && p.inner == s.inner && p.start <= s.start && s.end <= p.end;
          });
          if (!nested) ++bad;
        }
      parents = segs;
      const auto active = active_segments_direct(v, q, level).segments;
      if (level < lmax)
        for (const auto& s : active) {
          const bool nested =
              std::any_of(active_parents.begin(), active_parents.end(), [&](const Segment& p) {
                return p.line == s.line && p.inner == s.inner && p.start <= s.start &&
                       s.end <= p.end;
              });
          if (!nested) ++bad;
        }
      active_parents = active;
    }
  }
  report(7, "segments tile, nest and respect count bound", bad == 0,
         fmt("cases=%zu violations=%zu (tol 0)", kSegmentCases, bad));
}

// 8. ring products against schoolbook oracles
void criterion_ring() {
  SplitMix64 rng(1008);
  const PrimeField f;
  const std::uint64_t p = f.modulus();
  auto coeff = [&]() { return rng.below(4) == 0 ? rng.below(p) : rng.below(3); };
  std::size_t bad_m = 0, bad_b = 0;
  for (std::size_t it = 0; it < kRingCases; ++it) {
    const std::size_t q = 1 + rng.below(32), r = 1 + rng.below(6), k = 1 + rng.below(6),
                      c = 1 + rng.below(6);
    CyclicPolyMatrix l(r, k, q), rr(k, c, q);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < k; ++j)
        for (auto& x : l.entry(i, j)) x = coeff();
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < c; ++j)
        for (auto& x : rr.entry(i, j)) x = coeff();
    const auto want = testing::polymat_schoolbook(l, rr, p);
    for (auto s : {RingStrategy::kFrequency, RingStrategy::kSparse})
      if (polymat_mul(l, rr, {f, s}) != want) ++bad_m;
  }
  for (std::size_t it = 0; it < kRingCases; ++it) {
    const std::size_t q = 1 + rng.below(32), y1 = 1 + rng.below(6), y2 = 1 + rng.below(6);
    BivariatePoly l(q, y1), rr(q, y2);
    for (std::size_t d = 0; d < y1; ++d)
      for (auto& x : l.y_slice(d)) x = coeff();
    for (std::size_t d = 0; d < y2; ++d)
      for (auto& x : rr.y_slice(d)) x = coeff();
    const auto want = testing::bivariate_naive(l, rr, p);
    for (auto s : {RingStrategy::kFrequency, RingStrategy::kSparse})
      if (bivariate_mul(l, rr, {f, s}) != want) ++bad_b;
  }
  report(8, "polynomial matrix and bivariate products", bad_m + bad_b == 0,
         fmt("polymat=%zu bivariate=%zu dims<=6 Q<=32 strategies=2 mismatches=%zu/%zu (tol 0)", kRingCases,
             kRingCases, bad_m, bad_b));
}

// 9. determinism across runs and thread counts
void criterion_determinism() {
  constexpr cli::Kind kinds[] = {cli::Kind::kProductRow, cli::Kind::kProductCol, cli::Kind::kConv,
                                 cli::Kind::kVerifyRow,  cli::Kind::kVerifyCol,  cli::Kind::kVerifyConv};
  std::size_t bad = 0;
  for (std::size_t it = 0; it < kDeterminismCases; ++it) {
    cli::GenParams p;
    p.kind = kinds[it % 6];
    p.family = kFamilies[it % 4];
    p.na = p.nb = p.nc = 4 + 3 * it;
    p.entry_bound = static_cast<Value>(p.na);
    p.seed = 9000 + it;
    const cli::Instance inst = cli::generate(p);
    std::string payload[2];
    nlohmann::json rep[2];
    for (int run = 0; run < 2; ++run) {
      cli::RunOptions o;
      o.solver.threads = run == 0 ? 1 : 4;
      o.solver.fast_shared_modulus = it % 2 == 1;
      const cli::RunResult res = cli::run_instance(inst, o);
      payload[run] = cli::serialize(res.output);
      rep[run] = cli::run_report(res, payload[run]);
      rep[run].erase("timings");
    }
    if (payload[0] != payload[1] || rep[0] != rep[1]) ++bad;
  }
  std::size_t bench_bad = 0;
  for (cli::Kind k : {cli::Kind::kProductRow, cli::Kind::kProductCol, cli::Kind::kConv}) {
    cli::BenchOptions bo;
    bo.kind = k;
    bo.sizes = {8, 12};
    bo.reps = 2;
    bo.seed = 77;
    bo.jobs = 4;
    const std::string first = cli::bench_summary(cli::bench(bo));
    bo.run.solver.threads = 2;
    if (cli::bench_summary(cli::bench(bo)) != first) ++bench_bad;
  }
  report(9, "byte-identical outputs and report checksums", bad + bench_bad == 0,
         fmt("inputs=%zu threads={1,4} mismatches=%zu bench(jobs=4) mismatches=%zu (tol 0)",
             kDeterminismCases, bad, bench_bad));
}

// 10. empirical runtime exponent of the row solver with U = n
void criterion_exponent() {
  const std::size_t sizes[] = {16, 24, 32, 48};
  std::vector<double> xs, ys;
  for (std::size_t n : sizes) {
    SplitMix64 rng(2000 + n);
    const Value u = static_cast<Value>(n);
    const IntMatrix a = cli::free_matrix(rng, n, n, u, Family::kUniformMonotone);
    const IntMatrix b = cli::row_monotone_matrix(rng, n, n, u, Family::kUniformMonotone);
    std::vector<double> t;
    for (int rep = 0; rep < 3; ++rep) {
      const auto t0 = std::chrono::steady_clock::now();
      (void)minplus_monotone_row(a, b, {Axis::kRowMonotone, u});
      t.push_back(std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
    }
    std::sort(t.begin(), t.end());
    xs.push_back(std::log(static_cast<double>(n)));
    ys.push_back(std::log(std::max(t[1], 1e-6)));
  }
  const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / xs.size();
  const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / ys.size();
  double num = 0, den = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    num += (xs[i] - mx) * (ys[i] - my);
    den += (xs[i] - mx) * (xs[i] - mx);
  }
  const double slope = num / den;
  report(10, "runtime exponent (n in 16..48, U = n)", slope <= kMaxExponent,
         fmt("fitted=%.3f (tol <= %.1f) t48=%.3fs", slope, kMaxExponent, std::exp(ys.back())));
}

}  // namespace

int main() {
  const std::vector<std::function<void()>> all{criterion_row,      criterion_col,
                                               criterion_conv,     criterion_verify,
                                               criterion_xyz,      criterion_modulus,
                                               criterion_segments, criterion_ring,
                                               criterion_determinism, criterion_exponent};
  for (const auto& c : all) {
    try {
      c();
    } catch (const std::exception& e) {
      std::printf("criterion error: %s\n", e.what());
      ++failures;
    }
  }
  std::printf("%s: %d failing criteria\n", failures == 0 ? "ALL PASS" : "FAILED", failures);
  return failures == 0 ? 0 : 1;
}
