// Copyright 2026 The minplus Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <vector>

#include "minplus/matrix.hpp"
#include "minplus/modulus_search.hpp"
#include "minplus/segments.hpp"
#include "minplus/solver.hpp"

namespace minplus::internal {

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

// Fixed-width bit rows: rows x bits, packed in 64-bit words.
class BitRows {
 public:
  BitRows() = default;
  BitRows(std::size_t rows, std::size_t bits)
      : words_((bits + 63) / 64), data_(rows * words_, 0) {}

  void set(std::size_t r, std::size_t b) { data_[r * words_ + b / 64] |= std::uint64_t{1} << (b % 64); }
  const std::uint64_t* row(std::size_t r) const { return data_.data() + r * words_; }
  std::size_t words() const noexcept { return words_; }

  bool intersects(std::size_t r, const BitRows& other, std::size_t r2) const {
    const std::uint64_t* x = row(r);
    const std::uint64_t* y = other.row(r2);
    for (std::size_t w = 0; w < words_; ++w)
      if (x[w] & y[w]) return true;
    return false;
  }
  void or_into(std::size_t r, std::vector<std::uint64_t>& acc) const {
    const std::uint64_t* x = row(r);
    for (std::size_t w = 0; w < words_; ++w) acc[w] |= x[w];
  }

 private:
  std::size_t words_ = 0;
  std::vector<std::uint64_t> data_;
};

inline std::vector<std::uint32_t> bits_to_indices(const std::vector<std::uint64_t>& bits,
                                                  std::size_t limit) {
  std::vector<std::uint32_t> out;
  for (std::size_t w = 0; w < bits.size(); ++w) {
    std::uint64_t x = bits[w];
    while (x) {
      const int b = __builtin_ctzll(x);
      const std::size_t idx = w * 64 + static_cast<std::size_t>(b);
      if (idx < limit) out.push_back(static_cast<std::uint32_t>(idx));
      x &= x - 1;
    }
  }
  return out;
}

inline IntMatrix submatrix(const IntMatrix& m, const std::vector<std::uint32_t>& rows,
                           const std::vector<std::uint32_t>& cols) {
  IntMatrix out(rows.size(), cols.size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    auto src = m.row(rows[r]);
    auto dst = out.row(r);
    for (std::size_t c = 0; c < cols.size(); ++c) dst[c] = src[cols[c]];
  }
  return out;
}

inline IntMatrix halve(const IntMatrix& m) {
  IntMatrix out(m.rows(), m.cols());
  auto in = m.data();
  auto o = out.data();
  for (std::size_t x = 0; x < in.size(); ++x) o[x] = in[x] >> 1;
  return out;
}

inline IntArray halve(const IntArray& a) {
  IntArray out(a.size(), a.origin());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] >> 1;
  return out;
}

// Modulus for one matrix-layout verification instance: reuse `shared` when
// its audit passes here, otherwise search. Returns the report with active
// counts and audit fields filled, plus the pipeline run with that Q.
struct ModulusAndSegments {
  ModulusReport report;
  SegmentPipeline pipeline;
};

}  // namespace minplus::internal
