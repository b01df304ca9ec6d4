// Copyright 2026 The minplus Authors
// SPDX-License-Identifier: Apache-2.0

#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "minplus/cli/commands.hpp"
#include "minplus/cli/generator.hpp"
#include "minplus/cli/instance_io.hpp"

namespace {

using namespace minplus;
using namespace minplus::cli;
using nlohmann::json;

enum ExitCode { kOk = 0, kCheckFailed = 1, kUsage = 2, kPromise = 3, kRuntime = 4 };

struct SolverFlags {
  std::string engine = "det";
  Value m = 0;
  Value r = 0;
  double omega = 3.0;
  double slack = 0.0;
  bool fast_shared = false;
  bool no_compaction = false;
  bool strict = false;
  unsigned threads = 1;
  std::string ring = "auto";

  void add_to(CLI::App* app) {
    app->add_option("--engine", engine, "det, naive, verify, scan (row), twopointer (col)")
        ->capture_default_str();
    app->add_option("--M", m, "Promise modulus M (multiple of 100); 0 balances it");
    app->add_option("--R", r, "Prime range R; 0 uses the default schedule");
    app->add_option("--omega", omega, "Matrix multiplication exponent used to balance M")
        ->capture_default_str();
    app->add_option("--slack", slack, "Audit slack; 0 uses 64(1 + log2 n)^2");
    app->add_flag("--fast-shared-modulus", fast_shared,
                  "Share one searched modulus across residue instances (audited)");
    app->add_flag("--no-compaction", no_compaction, "Solve all 100^2 residue instances in full");
    app->add_flag("--strict", strict, "Fail on audit failures and internal check violations");
    app->add_option("--threads", threads, "Worker threads inside one run")->capture_default_str();
    app->add_option("--ring", ring, "auto, frequency or sparse")->capture_default_str();
  }

  RunOptions options() const {
    RunOptions o;
    o.engine = parse_engine(engine);
    o.solver.m_override = m;
    o.solver.r_override = r;
    o.solver.omega = omega;
    o.solver.slack = slack;
    o.solver.fast_shared_modulus = fast_shared;
    o.solver.compaction = !no_compaction;
    o.solver.strict = strict;
    o.solver.threads = std::max(1u, threads);
    if (ring == "frequency") {
      o.solver.ring.strategy = RingStrategy::kFrequency;
    } else if (ring == "sparse") {
      o.solver.ring.strategy = RingStrategy::kSparse;
    } else if (ring != "auto") {
      throw std::invalid_argument("unknown ring strategy \"" + ring + "\"");
    }
    return o;
  }
};

void diagnose(const std::string& error, const std::string& message, const json& extra = {}) {
  json j = {{"error", error}, {"message", message}};
  if (extra.is_object())
    for (auto it = extra.begin(); it != extra.end(); ++it) j[it.key()] = it.value();
  std::cerr << j.dump() << '\n';
}

std::vector<std::size_t> parse_sizes(const std::string& text) {
  std::vector<std::size_t> out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const std::size_t comma = text.find(',', pos);
    const std::string item = text.substr(pos, comma == std::string::npos ? std::string::npos
                                                                           : comma - pos);
    out.push_back(static_cast<std::size_t>(std::stoull(item)));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Min-plus products and convolution with monotone inputs"};
  app.require_subcommand(1);

  // gen
  auto* gen = app.add_subcommand("gen", "Generate a deterministic instance file");
  std::string gen_kind = "product-row", gen_family = "uniform-monotone", gen_out;
  std::size_t gen_n = 4;
  std::string gen_dims;
  Value gen_bound = 0, gen_m = 100;
  std::uint64_t gen_seed = 0;
  gen->add_option("--kind", gen_kind, "product-row, product-col, conv, verify-row, verify-col, verify-conv")
      ->capture_default_str();
  gen->add_option("--n", gen_n, "Size n (all dimensions)")->capture_default_str();
  gen->add_option("--dims", gen_dims, "na,nb,nc for matrix kinds (overrides --n)");
  gen->add_option("--bound", gen_bound, "Entry bound; 0 means n");
  gen->add_option("--family", gen_family,
                  "uniform-monotone, bounded-difference, staircase, adversarial-ties")
      ->capture_default_str();
  gen->add_option("--seed", gen_seed, "64-bit seed")->capture_default_str();
  gen->add_option("--M", gen_m, "Promise modulus for verification kinds")->capture_default_str();
  gen->add_option("-o,--out", gen_out, "Output file (stdout when omitted)");

  // run
  auto* run = app.add_subcommand("run", "Solve an instance file");
  std::string run_file, run_out, run_report_path;
  SolverFlags run_flags;
  run->add_option("file", run_file, "Instance file")->required();
  run->add_option("-o,--out", run_out, "Output payload file (stdout when omitted)");
  run->add_option("--report", run_report_path, "RunReport JSON file (stderr when omitted)");
  run_flags.add_to(run);

  // check
  auto* check = app.add_subcommand("check", "Compare against the naive oracle");
  std::string check_file, check_output;
  std::size_t oracle_limit = 256;
  SolverFlags check_flags;
  check->add_option("file", check_file, "Instance file")->required();
  check->add_option("--output", check_output, "Existing output file to check instead of solving");
  check->add_option("--oracle-limit", oracle_limit, "Largest dimension the oracle will accept")
      ->capture_default_str();
  check_flags.add_to(check);

  // bench
  auto* bn = app.add_subcommand("bench", "Time independent runs over generated instances");
  std::string bench_kind = "product-row", bench_family = "uniform-monotone", bench_sizes = "16,32";
  std::string bench_out;
  std::size_t bench_reps = 1;
  unsigned bench_jobs = 1;
  Value bench_bound = 0;
  std::uint64_t bench_seed = 0;
  SolverFlags bench_flags;
  bn->add_option("--kind", bench_kind)->capture_default_str();
  bn->add_option("--family", bench_family)->capture_default_str();
  bn->add_option("--sizes", bench_sizes, "Comma-separated n values")->capture_default_str();
  bn->add_option("--reps", bench_reps)->capture_default_str();
  bn->add_option("--jobs", bench_jobs, "Parallel independent runs")->capture_default_str();
  bn->add_option("--bound", bench_bound, "Entry bound; 0 means n");
  bn->add_option("--seed", bench_seed)->capture_default_str();
  bn->add_option("-o,--out", bench_out, "Deterministic summary file (checksums only)");
  bench_flags.add_to(bn);

  // stats
  auto* st = app.add_subcommand("stats", "Modulus-search and segment diagnostics");
  std::string stats_file, stats_out;
  bool stats_test = false;
  SolverFlags stats_flags;
  st->add_option("file", stats_file, "Instance file")->required();
  st->add_flag("--test", stats_test, "Add brute-force X/Y/Z cross-checks");
  st->add_option("-o,--out", stats_out, "Write the dump to a file");
  stats_flags.add_to(st);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // --help and friends exit 0; every other parse error is a usage error
    return app.exit(e) == 0 ? kOk : kUsage;
  }

  try {
    if (*gen) {
      GenParams p;
      p.kind = parse_kind(gen_kind);
      p.family = parse_family(gen_family);
      if (!gen_dims.empty()) {
        const auto d = parse_sizes(gen_dims);
        if (d.size() != 3) throw std::invalid_argument("--dims needs na,nb,nc");
        p.na = d[0];
        p.nb = d[1];
        p.nc = d[2];
      } else {
        p.na = p.nb = p.nc = gen_n;
      }
      p.entry_bound = gen_bound > 0 ? gen_bound : static_cast<Value>(p.na);
      p.seed = gen_seed;
      p.modulus = gen_m;
      const std::string text = serialize(generate(p));
      if (gen_out.empty()) {
        std::cout << text;
      } else {
        write_file(gen_out, text);
      }
      return kOk;
    }
    if (*run) {
      const Instance inst = parse_instance(read_file(run_file));
      const RunResult res = run_instance(inst, run_flags.options());
      const std::string payload = serialize(res.output);
      const std::string report = run_report(res, payload).dump(2) + "\n";
      if (run_out.empty()) {
        std::cout << payload;
      } else {
        write_file(run_out, payload);
      }
      if (run_report_path.empty()) {
        std::cerr << report;
      } else {
        write_file(run_report_path, report);
      }
      return kOk;
    }
    if (*check) {
      const Instance inst = parse_instance(read_file(check_file));
      std::optional<Output> given;
      if (!check_output.empty()) given = parse_output(read_file(check_output));
      const CheckResult res =
          check_instance(inst, check_flags.options(), oracle_limit, given ? &*given : nullptr);
      std::cout << (res.ok ? "pass" : "FAIL") << ": " << res.message << '\n';
      return res.ok ? kOk : kCheckFailed;
    }
    if (*bn) {
      BenchOptions o;
      o.kind = parse_kind(bench_kind);
      o.family = parse_family(bench_family);
      o.sizes = parse_sizes(bench_sizes);
      o.reps = bench_reps;
      o.jobs = bench_jobs;
      o.entry_bound = bench_bound;
      o.seed = bench_seed;
      o.run = bench_flags.options();
      const auto rows = bench(o);
      std::printf("%6s %20s %12s %18s\n", "n", "seed", "seconds", "checksum");
      for (const auto& r : rows) {
        std::printf("%6zu %20llu %12.6f %18s\n", r.n, static_cast<unsigned long long>(r.seed),
                    r.seconds, r.checksum.c_str());
      }
      if (!bench_out.empty()) write_file(bench_out, bench_summary(rows));
      return kOk;
    }
    if (*st) {
      const Instance inst = parse_instance(read_file(stats_file));
      const json dump = stats_dump(inst, stats_flags.options(), stats_test);
      const std::string text = dump.dump(2) + "\n";
      if (stats_out.empty()) {
        std::cout << text;
      } else {
        write_file(stats_out, text);
      }
      if (stats_test && dump.contains("test")) {
        std::cerr << dump["test"]["line"].get<std::string>() << '\n';
        if (dump["test"]["xyz_failures"].get<std::size_t>() != 0) return kCheckFailed;
      }
      return kOk;
    }
  } catch (const PromiseViolation& e) {
    diagnose("promise-violation", e.what(), {{"row", e.row()}, {"col", e.col()}});
    return kPromise;
  } catch (const FormatError& e) {
    diagnose("format", e.what());
    return kUsage;
  } catch (const std::length_error& e) {
    diagnose("oracle-limit", e.what());
    return kUsage;
  } catch (const std::invalid_argument& e) {
    diagnose("invalid-argument", e.what());
    return kUsage;
  } catch (const std::exception& e) {
    diagnose("runtime", e.what());
    return kRuntime;
  }
  return kOk;
}
