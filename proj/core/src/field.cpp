// Copyright 2026 The minplus Authors
// SPDX-License-Identifier: Apache-2.0

#include "minplus/field.hpp"

#include <stdexcept>
#include <utility>

namespace minplus {

PrimeField::PrimeField(std::uint64_t modulus, std::uint64_t generator)
    : p_(modulus), g_(generator % modulus), two_adicity_(0) {
  if (modulus < 3 || modulus >= (std::uint64_t{1} << 63)) {
    throw std::invalid_argument("PrimeField: modulus must be an odd prime below 2^63");
  }
  std::uint64_t m = modulus - 1;
  while ((m & 1) == 0) {
    m >>= 1;
    ++two_adicity_;
  }
  if (pow(g_, (p_ - 1) / 2) != p_ - 1) {
    throw std::invalid_argument("PrimeField: generator is a quadratic residue");
  }
}

std::uint64_t PrimeField::pow(std::uint64_t base, std::uint64_t exp) const noexcept {
  std::uint64_t result = 1 % p_;
  base %= p_;
  while (exp > 0) {
    if (exp & 1) result = mul(result, base);
    base = mul(base, base);
    exp >>= 1;
  }
  return result;
}

std::uint64_t PrimeField::inv(std::uint64_t a) const {
  if (a % p_ == 0) throw std::domain_error("PrimeField: inverse of zero");
  return pow(a, p_ - 2);
}

std::uint64_t PrimeField::root_of_unity(std::size_t len) const {
  if (len == 0 || (len & (len - 1)) != 0) {
    throw std::invalid_argument("root_of_unity: length must be a power of two");
  }
  int k = 0;
  while ((std::size_t{1} << k) < len) ++k;
  if (k > two_adicity_) {
    throw std::invalid_argument("root_of_unity: transform length exceeds the field's 2-adicity");
  }
  return pow(g_, (p_ - 1) >> k);
}

std::size_t next_pow2(std::size_t n) {
  std::size_t l = 1;
  while (l < n) l <<= 1;
  return l;
}

Ntt::Ntt(const PrimeField& field, std::size_t length)
    : field_(field), n_(length), roots_(length / 2 + 1), inv_roots_(length / 2 + 1) {
  const std::uint64_t w = field.root_of_unity(length);
  const std::uint64_t wi = field.inv(w);
  roots_[0] = inv_roots_[0] = 1;
  for (std::size_t i = 1; i < roots_.size(); ++i) {
    roots_[i] = field.mul(roots_[i - 1], w);
    inv_roots_[i] = field.mul(inv_roots_[i - 1], wi);
  }
  inv_n_ = field.inv(length % field.modulus());
}

void Ntt::transform(std::span<std::uint64_t> a,
                    const std::vector<std::uint64_t>& roots) const {
  const std::size_t n = n_;
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const std::size_t half = len / 2;
    const std::size_t step = n / len;
    for (std::size_t i = 0; i < n; i += len) {
      for (std::size_t j = 0; j < half; ++j) {
        const std::uint64_t u = a[i + j];
        const std::uint64_t v = field_.mul(a[i + j + half], roots[j * step]);
        a[i + j] = field_.add(u, v);
        a[i + j + half] = field_.sub(u, v);
      }
    }
  }
}

void Ntt::forward(std::span<std::uint64_t> a) const {
  if (a.size() != n_) throw std::invalid_argument("Ntt::forward: length mismatch");
  transform(a, roots_);
}

void Ntt::inverse(std::span<std::uint64_t> a) const {
  if (a.size() != n_) throw std::invalid_argument("Ntt::inverse: length mismatch");
  transform(a, inv_roots_);
  for (auto& x : a) x = field_.mul(x, inv_n_);
}

}  // namespace minplus
