// Copyright 2026 The minplus Authors
// SPDX-License-Identifier: Apache-2.0

#include "minplus/solver.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>

namespace minplus {

void SolveStats::absorb(const SolveStats& o) {
  recursion_levels = std::max(recursion_levels, o.recursion_levels);
  verification_instances += o.verification_instances;
  skipped_instances += o.skipped_instances;
  modulus_searches += o.modulus_searches;
  shared_modulus_hits += o.shared_modulus_hits;
  audit_failures += o.audit_failures;
  t_reductions += o.t_reductions;
  t_modulus_search += o.t_modulus_search;
  t_counting += o.t_counting;
  t_segments += o.t_segments;
}

void SolveStats::mix_modulus(Value q) {
  auto v = static_cast<std::uint64_t>(q);
  for (int b = 0; b < 8; ++b) {
    modulus_digest ^= (v >> (8 * b)) & 0xff;
    modulus_digest *= 1099511628211ULL;
  }
}

Value resolve_prime_range(const SolverConfig& cfg, std::size_t n) {
  return effective_prime_range(cfg.r_override > 0 ? cfg.r_override : default_prime_range(n));
}

double resolve_slack(const SolverConfig& cfg, std::size_t n) {
  return cfg.slack > 0 ? cfg.slack : default_slack(n);
}

void parallel_for(std::size_t count, unsigned threads,
                  const std::function<void(std::size_t)>& body) {
  const std::size_t workers = std::min<std::size_t>(std::max(1u, threads), count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mu;
  auto run = [&] {
    while (true) {
      const std::size_t i = next.fetch_add(1);
      if (i >= count) return;
      try {
        body(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mu);
        if (!error) error = std::current_exception();
        next = count;
      }
    }
  };
  std::vector<std::thread> pool;
  for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(run);
  run();
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

void notify_observer(const SolverConfig& cfg, const ModulusReport& report) {
  if (!cfg.modulus_observer) return;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  cfg.modulus_observer(report);
}

}  // namespace minplus
