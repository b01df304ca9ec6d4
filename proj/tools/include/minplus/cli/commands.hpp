// Copyright 2026 The minplus Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "minplus/cli/generator.hpp"
#include "minplus/cli/instance_io.hpp"
#include "minplus/solver.hpp"

namespace minplus::cli {

// det: the deterministic solvers (row: verification engine; col: engine
// chosen by cost unless forced; conv: verification engine).
// naive: the cubic/quadratic oracles.
// scan, twopointer: the direct engines (row and col kinds respectively).
enum class Engine { kDet, kNaive, kScan, kTwoPointer, kVerify };

Engine parse_engine(std::string_view name);
std::string_view engine_name(Engine engine);

struct RunOptions {
  Engine engine = Engine::kDet;
  SolverConfig solver;
};

struct RunResult {
  Output output;
  SolveStats stats;
  double seconds = 0;
  std::string engine;
};

RunResult run_instance(const Instance& inst, const RunOptions& options);

// Machine-readable report for a run. `checksum` is FNV-1a over the
// serialized payload; everything except "timings" is stable across reruns.
nlohmann::json run_report(const RunResult& result, const std::string& payload);

struct CheckResult {
  bool ok = true;
  std::string message;
  std::optional<std::pair<std::size_t, std::size_t>> first_mismatch;
};

// Largest dimension of the instance.
std::size_t instance_size(const Instance& inst);

// Compares `candidate` (or a fresh det run when null) with the naive
// engine. Throws std::length_error when the instance exceeds oracle_limit.
CheckResult check_instance(const Instance& inst, const RunOptions& options,
                           std::size_t oracle_limit, const Output* candidate = nullptr);

// Modulus-search and segment diagnostics. In test mode verification kinds
// also get brute-force X/Y/Z cross-checks.
nlohmann::json stats_dump(const Instance& inst, const RunOptions& options, bool test_mode);

struct BenchOptions {
  Kind kind = Kind::kProductRow;
  Family family = Family::kUniformMonotone;
  std::vector<std::size_t> sizes;
  Value entry_bound = 0;  // 0: entry bound n
  std::size_t reps = 1;
  std::uint64_t seed = 0;
  unsigned jobs = 1;
  RunOptions run;
};

struct BenchRow {
  std::size_t n = 0;
  std::uint64_t seed = 0;
  double seconds = 0;
  std::string checksum;
  std::string modulus_digest;
};

// Independent runs over generated instances, parallel across `jobs`
// workers; rows come back in (size, rep) order.
std::vector<BenchRow> bench(const BenchOptions& options);
// Deterministic part of the bench rows (no timings), one JSON object per line.
std::string bench_summary(const std::vector<BenchRow>& rows);

}  // namespace minplus::cli
