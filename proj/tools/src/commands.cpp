// Copyright 2026 The minplus Authors
// SPDX-License-Identifier: Apache-2.0

#include "minplus/cli/commands.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <stdexcept>
#include <utility>

#include "minplus/convolution.hpp"
#include "minplus/modulus_search.hpp"
#include "minplus/product_col.hpp"
#include "minplus/product_row.hpp"
#include "minplus/residue_shift.hpp"
#include "minplus/segments.hpp"

namespace minplus::cli {

namespace {

using nlohmann::json;

constexpr std::array<std::pair<Engine, std::string_view>, 5> kEngines{{
    {Engine::kDet, "det"},
    {Engine::kNaive, "naive"},
    {Engine::kScan, "scan"},
    {Engine::kTwoPointer, "twopointer"},
    {Engine::kVerify, "verify"},
}};

IntMatrix mask_matrix(const WitnessMask& mask) {
  IntMatrix m(mask.rows(), mask.cols());
  for (std::size_t r = 0; r < mask.rows(); ++r)
    for (std::size_t c = 0; c < mask.cols(); ++c) m(r, c) = mask.get(r, c) ? 1 : 0;
  return m;
}

IntArray mask_array(const WitnessMask& mask) {
  IntArray a(mask.cols(), 2);
  for (std::size_t c = 0; c < mask.cols(); ++c) a[c] = mask.get(0, c) ? 1 : 0;
  return a;
}

[[noreturn]] void unsupported(Engine engine, Kind kind) {
  throw std::invalid_argument("engine \"" + std::string(engine_name(engine)) +
                              "\" does not apply to kind \"" + std::string(kind_name(kind)) + "\"");
}

VerificationInstance as_verification(const Instance& inst) {
  return {inst.a, inst.b, inst.c, inst.modulus,
          inst.kind == Kind::kVerifyCol ? Variant::kCol : Variant::kRow};
}

ConvVerificationInstance as_conv_verification(const Instance& inst) {
  return {inst.va, inst.vb, inst.vc, inst.modulus};
}

json report_json(const ModulusReport& r, bool with_tables) {
  json j;
  j["M"] = r.m;
  j["R"] = r.r;
  j["pool"] = r.pool;
  j["primes"] = r.primes;
  j["q_sequence"] = r.q_sequence;
  j["Q"] = r.q;
  j["active_counts"] = r.active_counts;
  j["slack"] = r.slack;
  j["audited"] = r.audited;
  j["audit_ok"] = r.audit_ok;
  j["shared"] = r.shared;
  const Value prev = r.q_sequence.size() >= 2 ? r.q_sequence[r.q_sequence.size() - 2] : 0;
  j["bounds"] = {{"M_le_Q", r.m <= r.q},
                 {"Q_le_MR", r.q <= r.m * r.r},
                 {"first_crossing", prev < r.m}};
  if (with_tables) {
    json steps = json::array();
    for (const auto& s : r.steps) {
      json step;
      step["q_prev"] = s.q_prev;
      step["prime"] = s.prime;
      step["phi"] = s.phi;
      step["Y"] = s.table.y;
      steps.push_back(step);
    }
    j["steps"] = steps;
  }
  return j;
}

}  // namespace

Engine parse_engine(std::string_view name) {
  for (const auto& [e, n] : kEngines)
    if (n == name) return e;
  throw std::invalid_argument("unknown engine \"" + std::string(name) + "\"");
}

std::string_view engine_name(Engine engine) {
  for (const auto& [e, n] : kEngines)
    if (e == engine) return n;
  return "?";
}

RunResult run_instance(const Instance& inst, const RunOptions& options) {
  validate_instance(inst);
  RunResult res;
  res.output.kind = inst.kind;
  SolverConfig cfg = options.solver;
  const auto start = std::chrono::steady_clock::now();
  const Engine e = options.engine;
  switch (inst.kind) {
    case Kind::kProductRow: {
      if (e == Engine::kNaive) {
        res.output.matrix = minplus_product_naive(inst.a, inst.b);
        res.engine = "naive";
        break;
      }
      if (e == Engine::kTwoPointer) unsupported(e, inst.kind);
      cfg.row_engine = e == Engine::kScan ? RowEngine::kScan : RowEngine::kVerify;
      res.output.matrix = minplus_monotone_row(
          inst.a, inst.b, {Axis::kRowMonotone, inst.entry_bound}, cfg, &res.stats);
      res.engine = res.stats.engine;
      break;
    }
    case Kind::kProductCol: {
      if (e == Engine::kNaive) {
        res.output.matrix = minplus_product_naive(inst.a, inst.b);
        res.engine = "naive";
        break;
      }
      if (e == Engine::kScan) unsupported(e, inst.kind);
      if (e == Engine::kTwoPointer) cfg.col_engine = ColEngine::kTwoPointer;
      if (e == Engine::kVerify) cfg.col_engine = ColEngine::kVerify;
      res.output.matrix = minplus_monotone_col(
          inst.a, inst.b, {Axis::kColumnMonotone, inst.entry_bound}, cfg, &res.stats);
      res.engine = res.stats.engine;
      break;
    }
    case Kind::kConv: {
      if (e == Engine::kNaive) {
        res.output.array = minplus_convolution_naive(inst.va, inst.vb);
        res.engine = "naive";
        break;
      }
      if (e == Engine::kScan || e == Engine::kTwoPointer) unsupported(e, inst.kind);
      res.output.array = minplus_conv_monotone(
          inst.va, inst.vb, {Axis::kArrayMonotone, inst.entry_bound}, cfg, &res.stats);
      res.engine = res.stats.engine;
      break;
    }
    case Kind::kVerifyRow:
    case Kind::kVerifyCol: {
      const auto v = as_verification(inst);
      const bool rotated = inst.kind == Kind::kVerifyCol;
      WitnessMask mask;
      if (e == Engine::kNaive) {
        mask = witness_mask_naive(v, rotated ? QueryAxis::kPerIK : QueryAxis::kPerIJ);
        res.engine = "naive";
      } else if (e == Engine::kScan) {
        if (rotated) unsupported(e, inst.kind);
        mask = scan_verification_row(v);
        res.engine = "scan";
      } else if (e == Engine::kTwoPointer) {
        if (!rotated) unsupported(e, inst.kind);
        mask = twopointer_direct(v);
        res.engine = "twopointer";
      } else {
        const auto out = verify_matrix_instance(v, cfg, nullptr, &res.stats);
        res.stats.mix_modulus(out.report.q);
        mask = out.mask;
        res.engine = "verify";
      }
      res.output.matrix = mask_matrix(mask);
      break;
    }
    case Kind::kVerifyConv: {
      const auto v = as_conv_verification(inst);
      WitnessMask mask;
      if (e == Engine::kNaive) {
        mask = witness_mask_naive(v);
        res.engine = "naive";
      } else if (e == Engine::kDet || e == Engine::kVerify) {
        const auto out = verify_conv_instance(v, cfg, {}, nullptr, &res.stats);
        res.stats.mix_modulus(out.report.q);
        mask = out.mask;
        res.engine = "verify";
      } else {
        unsupported(e, inst.kind);
      }
      res.output.array = mask_array(mask);
      break;
    }
  }
  res.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  res.stats.engine = res.engine;
  return res;
}

json run_report(const RunResult& result, const std::string& payload) {
  const SolveStats& st = result.stats;
  json j;
  j["format"] = "minplus-report";
  j["version"] = kFormatVersion;
  j["kind"] = std::string(kind_name(result.output.kind));
  j["engine"] = result.engine;
  j["checksum"] = checksum_hex(fnv1a(payload));
  j["modulus_digest"] = checksum_hex(st.modulus_digest);
  j["counters"] = {{"recursion_levels", st.recursion_levels},
                   {"verification_instances", st.verification_instances},
                   {"skipped_instances", st.skipped_instances},
                   {"modulus_searches", st.modulus_searches},
                   {"shared_modulus_hits", st.shared_modulus_hits},
                   {"audit_failures", st.audit_failures}};
  j["timings"] = {{"total", result.seconds},
                  {"reductions", st.t_reductions},
                  {"modulus_search", st.t_modulus_search},
                  {"counting", st.t_counting},
                  {"segments", st.t_segments}};
  return j;
}

std::size_t instance_size(const Instance& inst) {
  std::size_t n = 0;
  for (auto d : inst.dims) n = std::max(n, d);
  return n;
}

CheckResult check_instance(const Instance& inst, const RunOptions& options,
                           std::size_t oracle_limit, const Output* candidate) {
  const std::size_t n = instance_size(inst);
  if (n > oracle_limit) {
    throw std::length_error("instance size " + std::to_string(n) + " exceeds the oracle limit " +
                            std::to_string(oracle_limit));
  }
  RunOptions naive = options;
  naive.engine = Engine::kNaive;
  const Output expected = run_instance(inst, naive).output;
  Output got;
  if (candidate != nullptr) {
    got = *candidate;
  } else {
    RunOptions det = options;
    if (det.engine == Engine::kNaive) det.engine = Engine::kDet;
    got = run_instance(inst, det).output;
  }
  CheckResult res;
  if (got.kind != expected.kind) {
    res.ok = false;
    res.message = "kind mismatch";
    return res;
  }
  if (is_conv(inst.kind)) {
    if (got.array.size() != expected.array.size() || got.array.origin() != expected.array.origin()) {
      res.ok = false;
      res.message = "shape mismatch";
      return res;
    }
    for (std::size_t d = 0; d < expected.array.size(); ++d)
      if (got.array[d] != expected.array[d]) {
        res.ok = false;
        res.first_mismatch = {0, d + expected.array.origin()};
        res.message = "mismatch at k=" + std::to_string(d + expected.array.origin()) +
                      ": got " + std::to_string(got.array[d]) + ", expected " +
                      std::to_string(expected.array[d]);
        return res;
      }
  } else {
    if (got.matrix.rows() != expected.matrix.rows() ||
        got.matrix.cols() != expected.matrix.cols()) {
      res.ok = false;
      res.message = "shape mismatch";
      return res;
    }
    for (std::size_t i = 0; i < expected.matrix.rows(); ++i)
      for (std::size_t j = 0; j < expected.matrix.cols(); ++j)
        if (got.matrix(i, j) != expected.matrix(i, j)) {
          res.ok = false;
          res.first_mismatch = {i, j};
          res.message = "mismatch at (" + std::to_string(i) + ", " + std::to_string(j) +
                        "): got " + std::to_string(got.matrix(i, j)) + ", expected " +
                        std::to_string(expected.matrix(i, j));
          return res;
        }
  }
  res.message = "ok";
  return res;
}

json stats_dump(const Instance& inst, const RunOptions& options, bool test_mode) {
  validate_instance(inst);
  const SolverConfig& cfg = options.solver;
  json out;
  out["kind"] = std::string(kind_name(inst.kind));
  if (!is_verify(inst.kind)) {
    std::vector<ModulusReport> reports;
    RunOptions ro = options;
    ro.engine = Engine::kDet;
    ro.solver.modulus_observer = [&](const ModulusReport& r) { reports.push_back(r); };
    const RunResult res = run_instance(inst, ro);
    json list = json::array();
    bool bounds_ok = true;
    for (const auto& r : reports) {
      json rj = report_json(r, false);
      bounds_ok = bounds_ok && rj["bounds"]["M_le_Q"].get<bool>() &&
                  rj["bounds"]["Q_le_MR"].get<bool>() &&
                  (r.shared || rj["bounds"]["first_crossing"].get<bool>());
      list.push_back(std::move(rj));
    }
    out["engine"] = res.engine;
    out["reports"] = list;
    out["bounds_ok"] = bounds_ok;
    out["audit_failures"] = res.stats.audit_failures;
    return out;
  }

  const std::size_t n = std::max<std::size_t>(instance_size(inst), 1);
  const Value r = resolve_prime_range(cfg, n);
  ModulusReport report;
  SegmentPipeline pipe;
  std::size_t lines = 0;
  Value u = 0;
  const bool conv = inst.kind == Kind::kVerifyConv;
  if (conv) {
    const auto v = as_conv_verification(inst);
    require(validate_verification(v), "verification instance");
    report = find_good_modulus(v, v.modulus, r, SearchOptions{cfg.ring});
    pipe = run_segment_pipeline(v, report.q, {}, true);
    lines = 2 * v.a.size() - 1;
    u = std::max(v.b.max_entry(), v.c.max_entry());
  } else {
    const auto v = as_verification(inst);
    require(validate_verification(v), "verification instance");
    report = find_good_modulus(v, v.modulus, r, SearchOptions{cfg.ring});
    pipe = run_segment_pipeline(v, report.q, true);
    lines = v.a.rows() * v.a.cols();
    u = std::max(v.b.max_entry(), v.c.max_entry());
  }
  report.active_counts = pipe.active_counts;
  report.slack = resolve_slack(cfg, n);
  report.audited = true;
  report.audit_ok = audit_active_counts(pipe.active_counts, lines, u, report.q, report.slack);
  out["report"] = report_json(report, true);
  out["top_segment_count"] = pipe.top_segment_count;
  out["level0_active"] = pipe.level0.segments.size();

  if (test_mode) {
    json checks = json::array();
    std::size_t total = 0, failed = 0;
    auto xyz = [&](Value q, int level) {
      return conv ? count_xyz_bruteforce(as_conv_verification(inst), q, level)
                  : count_xyz_bruteforce(as_verification(inst), q, level);
    };
    for (const auto& step : report.steps) {
      for (std::size_t pi = 0; pi < step.table.primes.size(); ++pi) {
        const Value q = step.q_prev * step.table.primes[pi];
        for (std::size_t l = 0; l < step.table.levels(); ++l) {
          const XYZ c = xyz(q, static_cast<int>(l));
          const Value y = step.table.y[l][pi];
          const bool ok = c.x == y - c.z && c.y == y;
          ++total;
          if (!ok) {
            ++failed;
            checks.push_back({{"Q", q}, {"level", l}, {"X", c.x}, {"Y", y}, {"Z", c.z}});
          }
        }
      }
    }
    json x_final = json::array();
    bool active_le_x = true;
    for (std::size_t l = 0; l < pipe.active_counts.size(); ++l) {
      const Value x = xyz(report.q, static_cast<int>(l)).x;
      x_final.push_back(x);
      active_le_x = active_le_x && static_cast<Value>(pipe.active_counts[l]) <= x;
    }
    out["test"] = {{"xyz_checks", total},
                   {"xyz_failures", failed},
                   {"failures", checks},
                   {"X_final", x_final},
                   {"active_le_X", active_le_x}};
    out["test"]["line"] = failed == 0 ? "X = Y - Z verified (" + std::to_string(total) + " checks)"
                                      : "X = Y - Z FAILED (" + std::to_string(failed) + " of " +
                                            std::to_string(total) + ")";
  }
  return out;
}

std::vector<BenchRow> bench(const BenchOptions& options) {
  struct Job {
    std::size_t n;
    std::uint64_t seed;
  };
  std::vector<Job> jobs;
  for (auto n : options.sizes)
    for (std::size_t rep = 0; rep < options.reps; ++rep) jobs.push_back({n, options.seed + rep});
  std::vector<BenchRow> rows(jobs.size());
  parallel_for(jobs.size(), std::max(1u, options.jobs), [&](std::size_t x) {
    GenParams p;
    p.kind = options.kind;
    p.family = options.family;
    p.na = p.nb = p.nc = jobs[x].n;
    p.entry_bound = options.entry_bound > 0 ? options.entry_bound : static_cast<Value>(jobs[x].n);
    p.seed = jobs[x].seed;
    const Instance inst = generate(p);
    const RunResult res = run_instance(inst, options.run);
    const std::string payload = serialize(res.output);
    rows[x] = {jobs[x].n, jobs[x].seed, res.seconds, checksum_hex(fnv1a(payload)),
               checksum_hex(res.stats.modulus_digest)};
  });
  return rows;
}

std::string bench_summary(const std::vector<BenchRow>& rows) {
  std::string out;
  for (const auto& r : rows) {
    json j = {{"n", r.n}, {"seed", r.seed}, {"checksum", r.checksum},
              {"modulus_digest", r.modulus_digest}};
    out += j.dump();
    out += '\n';
  }
  return out;
}

}  // namespace minplus::cli
