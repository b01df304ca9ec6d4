// Copyright 2026 The minplus Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace minplus {

__extension__ using u128 = unsigned __int128;

// Arithmetic modulo an NTT-friendly prime p < 2^63. Elements are canonical
// residues in [0, p).
class PrimeField {
 public:
  // 65535 * 2^46 + 1, primitive root 11.
  static constexpr std::uint64_t kDefaultModulus = 4611615649683210241ULL;
  static constexpr std::uint64_t kDefaultGenerator = 11;

  PrimeField() : PrimeField(kDefaultModulus, kDefaultGenerator) {}
  // `generator` must be a quadratic non-residue modulo `modulus` (any primitive
  // root is); that is all the power-of-two transforms need.
  PrimeField(std::uint64_t modulus, std::uint64_t generator);

  std::uint64_t modulus() const noexcept { return p_; }
  std::uint64_t generator() const noexcept { return g_; }
  // Largest k with 2^k | p - 1.
  int two_adicity() const noexcept { return two_adicity_; }

  std::uint64_t add(std::uint64_t a, std::uint64_t b) const noexcept {
    const std::uint64_t s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  std::uint64_t sub(std::uint64_t a, std::uint64_t b) const noexcept {
    return a >= b ? a - b : a + p_ - b;
  }
  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const noexcept {
    return static_cast<std::uint64_t>(static_cast<u128>(a) * b % p_);
  }
  std::uint64_t reduce(u128 x) const noexcept {
    return static_cast<std::uint64_t>(x % p_);
  }
  std::uint64_t pow(std::uint64_t base, std::uint64_t exp) const noexcept;
  std::uint64_t inv(std::uint64_t a) const;

  // Primitive `len`-th root of unity; len must be a power of two that divides
  // p - 1.
  std::uint64_t root_of_unity(std::size_t len) const;

  friend bool operator==(const PrimeField&, const PrimeField&) = default;

 private:
  std::uint64_t p_;
  std::uint64_t g_;
  int two_adicity_;
};

// Radix-2 number-theoretic transform of a fixed power-of-two length.
class Ntt {
 public:
  Ntt(const PrimeField& field, std::size_t length);

  std::size_t length() const noexcept { return n_; }
  void forward(std::span<std::uint64_t> a) const;
  // Includes the 1/n scaling.
  void inverse(std::span<std::uint64_t> a) const;

 private:
  void transform(std::span<std::uint64_t> a, const std::vector<std::uint64_t>& roots) const;

  PrimeField field_;
  std::size_t n_;
  std::vector<std::uint64_t> roots_;
  std::vector<std::uint64_t> inv_roots_;
  std::uint64_t inv_n_;
};

// Smallest power of two >= n (n >= 1).
std::size_t next_pow2(std::size_t n);

}  // namespace minplus
