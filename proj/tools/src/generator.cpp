// Copyright 2026 The minplus Authors
// SPDX-License-Identifier: Apache-2.0

#include "minplus/cli/generator.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>
#include <string>
#include <utility>

#include "minplus/product_col.hpp"
#include "minplus/residue_shift.hpp"

namespace minplus::cli {

namespace {

constexpr std::array<std::pair<Family, std::string_view>, 4> kFamilies{{
    {Family::kUniformMonotone, "uniform-monotone"},
    {Family::kBoundedDifference, "bounded-difference"},
    {Family::kStaircase, "staircase"},
    {Family::kAdversarialTies, "adversarial-ties"},
}};

// Candidate below or at the exact values: each entry lowered by 0 or 1, then
// a running maximum so that rows stay non-decreasing when they were.
std::vector<Value> lowered(SplitMix64& rng, std::span<const Value> exact, bool keep_monotone) {
  std::vector<Value> out(exact.size());
  for (std::size_t x = 0; x < exact.size(); ++x) {
    out[x] = exact[x] - static_cast<Value>(rng.below(2));
    if (keep_monotone && x > 0) out[x] = std::max(out[x], out[x - 1]);
  }
  return out;
}

}  // namespace

std::string_view family_name(Family family) {
  for (const auto& [f, name] : kFamilies)
    if (f == family) return name;
  throw std::invalid_argument("unknown family");
}

Family parse_family(std::string_view name) {
  for (const auto& [f, n] : kFamilies)
    if (n == name) return f;
  throw std::invalid_argument("unknown family \"" + std::string(name) + "\"");
}

std::vector<Value> monotone_row(SplitMix64& rng, std::size_t length, Value bound, Family family) {
  if (bound < 1) throw std::invalid_argument("entry bound must be positive");
  std::vector<Value> row(length);
  switch (family) {
    case Family::kUniformMonotone:
      for (auto& v : row) v = rng.range(1, bound);
      std::sort(row.begin(), row.end());
      break;
    case Family::kBoundedDifference: {
      const auto span = static_cast<Value>(length / 2);
      Value v = rng.range(1, std::max<Value>(1, bound - span));
      for (auto& x : row) {
        x = v;
        v = std::min(bound, v + static_cast<Value>(rng.below(2)));
      }
      break;
    }
    case Family::kStaircase: {
      const auto n = static_cast<Value>(length);
      const Value plateau = (n + bound - 1) / bound;
      const Value steps = n > 0 ? (n - 1) / plateau : 0;
      const Value base = 1 + rng.range(0, bound - 1 - steps);
      for (std::size_t j = 0; j < length; ++j) row[j] = base + static_cast<Value>(j) / plateau;
      break;
    }
    case Family::kAdversarialTies: {
      const std::array<Value, 3> levels{1, (bound + 1) / 2, bound};
      std::size_t cut1 = rng.below(length + 1);
      std::size_t cut2 = rng.below(length + 1);
      if (cut1 > cut2) std::swap(cut1, cut2);
      for (std::size_t j = 0; j < length; ++j) row[j] = levels[j < cut1 ? 0 : j < cut2 ? 1 : 2];
      break;
    }
  }
  return row;
}

IntMatrix free_matrix(SplitMix64& rng, std::size_t rows, std::size_t cols, Value bound,
                      Family family) {
  IntMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    Value walk = rng.range(1, bound);
    for (std::size_t k = 0; k < cols; ++k) {
      switch (family) {
        case Family::kBoundedDifference:
          m(i, k) = walk;
          walk = std::clamp<Value>(walk + rng.range(-1, 1), 1, bound);
          break;
        case Family::kAdversarialTies:
          m(i, k) = std::min<Value>(bound, 1 + static_cast<Value>(rng.below(2)));
          break;
        default:
          m(i, k) = rng.range(1, bound);
          break;
      }
    }
  }
  return m;
}

IntMatrix row_monotone_matrix(SplitMix64& rng, std::size_t rows, std::size_t cols, Value bound,
                              Family family) {
  IntMatrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    const auto row = monotone_row(rng, cols, bound, family);
    std::copy(row.begin(), row.end(), m.row(r).begin());
  }
  return m;
}

IntMatrix col_monotone_matrix(SplitMix64& rng, std::size_t rows, std::size_t cols, Value bound,
                              Family family) {
  return row_monotone_matrix(rng, cols, rows, bound, family).transposed();
}

VerificationInstance lift_verify_row(SplitMix64& rng, const IntMatrix& a, const IntMatrix& b,
                                     Value m) {
  const IntMatrix exact = minplus_product_naive(a, b);
  IntMatrix cand(exact.rows(), exact.cols());
  for (std::size_t i = 0; i < exact.rows(); ++i) {
    const auto row = lowered(rng, exact.row(i), true);
    std::copy(row.begin(), row.end(), cand.row(i).begin());
  }
  const std::size_t i = rng.below(a.rows()), j = rng.below(b.cols());
  std::size_t k = 0;
  while (a(i, k) + b(k, j) != exact(i, j)) ++k;
  const int s = residue_class(a(i, k) + m, m);
  const int t = residue_class(b(k, j) + m, m);
  ResidueShift shift(a, b, m);
  return {shift.a(s), shift.b(t), shift.c(cand, s, t), m, Variant::kRow};
}

VerificationInstance lift_verify_col(SplitMix64& rng, const IntMatrix& a, const IntMatrix& b,
                                     Value m) {
  const IntMatrix an = normalize_nonincreasing(a);
  const IntMatrix exact = minplus_product_naive(an, b);
  IntMatrix cand(exact.rows(), exact.cols());
  const auto flat = lowered(rng, exact.data(), false);
  std::copy(flat.begin(), flat.end(), cand.data().begin());
  const Value w = std::max({an.max_entry(), b.max_entry(), cand.max_entry()});
  const VerificationInstance rot = rotate_to_problem2prime(an, b, cand, w);
  const std::size_t i = rng.below(an.rows()), j = rng.below(b.cols());
  std::size_t k = 0;
  while (an(i, k) + b(k, j) != exact(i, j)) ++k;
  const int s = residue_class(rot.a(i, j) + m, m);
  const int t = residue_class(rot.b(j, k) + m, m);
  ResidueShift shift(rot.a, rot.b, m);
  return {shift.a(s), shift.b(t), shift.c(rot.c, s, t), m, Variant::kCol};
}

ConvVerificationInstance lift_verify_conv(SplitMix64& rng, const IntArray& a, const IntArray& b,
                                          Value m) {
  const IntArray exact = minplus_convolution_naive(a, b);
  const auto low = lowered(rng, exact.values(), false);
  IntArray cand(std::vector<Value>(low.begin(), low.end()), 2);
  const std::size_t n = a.size();
  const std::size_t d = rng.below(2 * n - 1);
  std::size_t i = d >= n ? d - n + 1 : 0;
  while (a[i] + b[d - i] != exact[d]) ++i;
  const int s = residue_class(a[i] + m, m);
  const int t = residue_class(b[d - i] + m, m);
  return {shift_array_ab(a, s, m), shift_array_ab(b, t, m), shift_array_c(cand, s, t, m), m};
}

Instance generate(const GenParams& p) {
  if (p.na == 0 || (!is_conv(p.kind) && (p.nb == 0 || p.nc == 0))) {
    throw std::invalid_argument("dimensions must be at least 1");
  }
  if (p.entry_bound < 1) throw std::invalid_argument("entry bound must be positive");
  SplitMix64 rng(p.seed);
  Instance inst;
  inst.kind = p.kind;
  inst.entry_bound = p.entry_bound;
  switch (p.kind) {
    case Kind::kProductRow:
      inst.dims = {p.na, p.nb, p.nc};
      inst.a = free_matrix(rng, p.na, p.nb, p.entry_bound, p.family);
      inst.b = row_monotone_matrix(rng, p.nb, p.nc, p.entry_bound, p.family);
      break;
    case Kind::kProductCol:
      inst.dims = {p.na, p.nb, p.nc};
      inst.a = free_matrix(rng, p.na, p.nb, p.entry_bound, p.family);
      inst.b = col_monotone_matrix(rng, p.nb, p.nc, p.entry_bound, p.family);
      break;
    case Kind::kConv:
      inst.dims = {p.na};
      inst.va = IntArray(monotone_row(rng, p.na, p.entry_bound, p.family));
      inst.vb = IntArray(monotone_row(rng, p.na, p.entry_bound, p.family));
      break;
    case Kind::kVerifyRow: {
      const IntMatrix a = free_matrix(rng, p.na, p.nb, p.entry_bound, p.family);
      const IntMatrix b = row_monotone_matrix(rng, p.nb, p.nc, p.entry_bound, p.family);
      const auto v = lift_verify_row(rng, a, b, p.modulus);
      inst.dims = {p.na, p.nb, p.nc};
      inst.a = v.a;
      inst.b = v.b;
      inst.c = v.c;
      inst.modulus = p.modulus;
      inst.entry_bound = std::max({v.a.max_entry(), v.b.max_entry(), v.c.max_entry(), Value{1}});
      break;
    }
    case Kind::kVerifyCol: {
      const IntMatrix a = free_matrix(rng, p.na, p.nb, p.entry_bound, p.family);
      const IntMatrix b = col_monotone_matrix(rng, p.nb, p.nc, p.entry_bound, p.family);
      const auto v = lift_verify_col(rng, a, b, p.modulus);
      inst.dims = {p.na, p.nc, p.nb};
      inst.a = v.a;
      inst.b = v.b;
      inst.c = v.c;
      inst.modulus = p.modulus;
      inst.entry_bound = std::max({v.a.max_entry(), v.b.max_entry(), v.c.max_entry(), Value{1}});
      break;
    }
    case Kind::kVerifyConv: {
      const IntArray a(monotone_row(rng, p.na, p.entry_bound, p.family));
      const IntArray b(monotone_row(rng, p.na, p.entry_bound, p.family));
      const auto v = lift_verify_conv(rng, a, b, p.modulus);
      inst.dims = {p.na};
      inst.va = v.a;
      inst.vb = v.b;
      inst.vc = v.c;
      inst.modulus = p.modulus;
      inst.entry_bound = std::max({v.a.max_entry(), v.b.max_entry(), v.c.max_entry(), Value{1}});
      break;
    }
  }
  validate_instance(inst);
  return inst;
}

}  // namespace minplus::cli
