// Copyright 2026 The minplus Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "minplus/matrix.hpp"
#include "minplus/polyring.hpp"
#include "minplus/segments.hpp"

namespace minplus {

struct PrimePool {
  Value r = 0;
  std::vector<Value> primes;
};

// All primes in [ceil(R/2), R]. Throws std::invalid_argument for R < 4.
PrimePool primes_in_range(Value r);

// max(16, ceil(2^sqrt(log2 n))).
Value default_prime_range(std::size_t n);
// Smallest R' >= max(R, 4) whose pool holds at least two primes.
Value effective_prime_range(Value r);

// W(r) = #{s in [-4*2^level, 4*2^level] : s = r (mod q)} for r in [0, q).
std::vector<Value> compute_W(int level, Value q);

// Y counts for one search step: y[level][p] for the p-th prime of the pool.
struct YTable {
  std::vector<Value> primes;
  std::vector<std::vector<Value>> y;

  std::size_t levels() const noexcept { return y.size(); }
  // Y*_l = min over primes.
  std::vector<Value> column_minima() const;
};

YTable compute_Y_all_matrix(const VerificationInstance& inst, Value q_prev, const PrimePool& pool,
                            int lmax, const RingOptions& ring = {});
// `diagonals` (d = k - 2, ascending) restricts the count to those outputs.
YTable compute_Y_all_conv(const ConvVerificationInstance& inst, Value q_prev,
                          const PrimePool& pool, int lmax, const RingOptions& ring = {},
                          std::span<const std::size_t> diagonals = {});

// Single-prime, single-level Y (shares nothing; used by diagnostics).
Value compute_Y_matrix(const VerificationInstance& inst, Value q, int level,
                       const RingOptions& ring = {});
Value compute_Y_conv(const ConvVerificationInstance& inst, Value q, int level,
                     const RingOptions& ring = {}, std::span<const std::size_t> diagonals = {});

struct PrimeChoice {
  Value prime = 0;
  std::size_t index = 0;
  // Phi(p) for every prime of the table, in table order.
  std::vector<Value> phi;
};

// argmin of Phi(p) = max_l (Y_l(p) - Y*_l); ties go to the smallest prime.
PrimeChoice select_prime(const YTable& table);

struct SearchStep {
  Value q_prev = 1;
  YTable table;
  std::vector<Value> phi;
  Value prime = 0;
};

struct ModulusReport {
  Value m = 0;
  Value r = 0;
  std::vector<Value> pool;
  std::vector<Value> primes;
  // Q_0 = 1, Q_1, ..., Q_T.
  std::vector<Value> q_sequence;
  std::vector<SearchStep> steps;
  Value q = 1;
  // Filled after the segment pipeline ran with this Q.
  std::vector<std::size_t> active_counts;
  double slack = 0.0;
  bool audited = false;
  bool audit_ok = true;
  // True when Q came from another instance's search and passed this
  // instance's audit.
  bool shared = false;
};

struct SearchOptions {
  RingOptions ring{};
};

ModulusReport find_good_modulus(const VerificationInstance& inst, Value m, Value r,
                                const SearchOptions& options = {});
ModulusReport find_good_modulus(const ConvVerificationInstance& inst, Value m, Value r,
                                const SearchOptions& options = {},
                                std::span<const std::size_t> diagonals = {});

// |S_l(Q)| <= slack * lines * U / Q at every level.
bool audit_active_counts(std::span<const std::size_t> active_counts, std::size_t lines,
                         Value entry_bound, Value q, double slack);

// Default audit slack 64 * (1 + log2 n)^2.
double default_slack(std::size_t n);

// ---- brute-force counters (diagnostics and tests) ----

struct XYZ {
  Value x = 0;
  Value y = 0;
  Value z = 0;
};

// Largest number of (segment, shift) probes the enumerators accept.
inline constexpr std::size_t kBruteForceLimit = std::size_t{1} << 26;

// Direct enumeration over level-`level` segments and shifts s in
// [-4*2^level, 4*2^level]: y counts Q | (delta - s), z counts delta == s and
// x counts Q | (delta - s) with delta != s. Throws std::length_error beyond
// kBruteForceLimit.
XYZ count_xyz_bruteforce(const VerificationInstance& inst, Value q, int level);
XYZ count_xyz_bruteforce(const ConvVerificationInstance& inst, Value q, int level,
                         std::span<const std::size_t> diagonals = {});
inline Value count_X_bruteforce(const VerificationInstance& inst, Value q, int level) {
  return count_xyz_bruteforce(inst, q, level).x;
}
inline Value count_X_bruteforce(const ConvVerificationInstance& inst, Value q, int level) {
  return count_xyz_bruteforce(inst, q, level).x;
}

}  // namespace minplus
