// Copyright 2026 The minplus Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <mutex>
#include <string>
#include <vector>

#include "minplus/matrix.hpp"
#include "minplus/modulus_search.hpp"
#include "minplus/polyring.hpp"

namespace minplus {

enum class RowEngine { kVerify, kScan };
enum class ColEngine { kAuto, kVerify, kTwoPointer };

// Everything the solvers read besides their inputs. Defaults reproduce the
// standard configuration.
struct SolverConfig {
  // Exponent of the numeric matrix-multiplication backend, used only to
  // balance M.
  double omega = 3.0;
  // Fixed M (positive multiple of 100); 0 balances it from the dimensions.
  Value m_override = 0;
  Value m_max = 1'000'000;
  // Prime range R; 0 uses default_prime_range(n).
  Value r_override = 0;
  // Audit slack; 0 uses default_slack(n).
  double slack = 0.0;
  // Share one searched modulus across the (s,t) instances of a recursion
  // level; every instance re-audits and searches afresh on failure.
  bool fast_shared_modulus = false;
  // Skip (s,t) instances with no possible witness and shrink the others to
  // the rows, columns and inner indices that can hold one.
  bool compaction = true;
  RingOptions ring{};
  // Turn audit failures and internal invariant checks into exceptions.
  bool strict = false;
  unsigned threads = 1;
  RowEngine row_engine = RowEngine::kVerify;
  ColEngine col_engine = ColEngine::kAuto;
  // Called with every modulus report produced (serialized by a mutex).
  std::function<void(const ModulusReport&)> modulus_observer;
};

// Counters and phase timings (seconds) of one top-level call.
struct SolveStats {
  std::size_t recursion_levels = 0;
  std::size_t verification_instances = 0;
  std::size_t skipped_instances = 0;
  std::size_t modulus_searches = 0;
  std::size_t shared_modulus_hits = 0;
  std::size_t audit_failures = 0;
  double t_reductions = 0;
  double t_modulus_search = 0;
  double t_counting = 0;
  double t_segments = 0;
  // FNV-1a over every chosen Q in deterministic instance order.
  std::uint64_t modulus_digest = 0xcbf29ce484222325ULL;
  std::string engine;

  void absorb(const SolveStats& other);
  void mix_modulus(Value q);
};

// Resolved per-instance parameters.
Value resolve_prime_range(const SolverConfig& cfg, std::size_t n);
double resolve_slack(const SolverConfig& cfg, std::size_t n);

// Runs body(i) for i in [0, count) on up to `threads` workers. Each index
// runs exactly once; callers write results to per-index slots.
void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& body);

// Calls the observer, if any, under a process-wide lock.
void notify_observer(const SolverConfig& cfg, const ModulusReport& report);

}  // namespace minplus
