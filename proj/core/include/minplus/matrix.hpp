// Copyright 2026 The minplus Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace minplus {

using Value = std::int64_t;

// Entries whose magnitude exceeds this bound are rejected so that any
// A + B - C (and the shifted forms built from it) stays inside int64.
inline constexpr Value kMaxAbsEntry = Value{1} << 60;

// Thrown when an input breaks a documented promise (monotonicity, bounds,
// small residues). Carries the first offending coordinate, 0-based.
class PromiseViolation : public std::invalid_argument {
 public:
  PromiseViolation(const std::string& what, std::size_t row, std::size_t col)
      : std::invalid_argument(what), row_(row), col_(col) {}

  std::size_t row() const noexcept { return row_; }
  std::size_t col() const noexcept { return col_; }

 private:
  std::size_t row_;
  std::size_t col_;
};

// Dense row-major integer matrix.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols, Value fill = 0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
  IntMatrix(std::initializer_list<std::initializer_list<Value>> rows);
  static IntMatrix from_rows(const std::vector<std::vector<Value>>& rows);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool empty() const noexcept { return data_.empty(); }

  Value& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  Value operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<Value> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const Value> row(std::size_t r) const {
    return {data_.data() + r * cols_, cols_};
  }
  std::span<const Value> data() const noexcept { return data_; }
  std::span<Value> data() noexcept { return data_; }

  IntMatrix transposed() const;
  Value max_entry() const;
  Value min_entry() const;
  bool all_zero() const;

  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Value> data_;
};

// Dense 1-D integer array whose first valid index is `origin` (1 for inputs,
// 2 for convolution outputs). Storage is 0-based; at() speaks origin-based.
class IntArray {
 public:
  IntArray() = default;
  IntArray(std::size_t length, std::size_t origin, Value fill = 0)
      : origin_(origin), data_(length, fill) {}
  IntArray(std::vector<Value> values, std::size_t origin = 1)
      : origin_(origin), data_(std::move(values)) {}
  IntArray(std::initializer_list<Value> values, std::size_t origin = 1)
      : origin_(origin), data_(values) {}

  std::size_t size() const noexcept { return data_.size(); }
  std::size_t origin() const noexcept { return origin_; }

  Value& operator[](std::size_t i) { return data_[i]; }
  Value operator[](std::size_t i) const { return data_[i]; }
  Value at(std::size_t index) const { return data_.at(index - origin_); }

  std::span<const Value> values() const noexcept { return data_; }
  std::span<Value> values() noexcept { return data_; }

  Value max_entry() const;
  bool all_zero() const;

  friend bool operator==(const IntArray&, const IntArray&) = default;

 private:
  std::size_t origin_ = 1;
  std::vector<Value> data_;
};

enum class Axis { kRowMonotone, kColumnMonotone, kArrayMonotone };

// Monotonicity axis plus the entry bound that plays the role of n^mu.
struct MonotoneTag {
  Axis axis = Axis::kRowMonotone;
  Value entry_bound = 1;
};

struct ValidationReport {
  bool ok = true;
  // First violating coordinate in row-major order (0-based). For arrays the
  // row is always 0.
  std::size_t row = 0;
  std::size_t col = 0;
  std::string reason;

  explicit operator bool() const noexcept { return ok; }
};

ValidationReport validate_promises(const IntMatrix& m, const MonotoneTag& tag);
ValidationReport validate_promises(const IntArray& a, const MonotoneTag& tag);

// Throws PromiseViolation if the report is not ok.
void require(const ValidationReport& report, const std::string& context);

bool rows_nondecreasing(const IntMatrix& m);
bool is_nondecreasing(std::span<const Value> values);

// Query masks for the verification problems: per-(i,j) for the row product,
// per-(i,k) for the rotated problem, and a single row indexed by k for
// convolution (origin 2).
class WitnessMask {
 public:
  WitnessMask() = default;
  WitnessMask(std::size_t rows, std::size_t cols, std::size_t origin = 0)
      : rows_(rows), cols_(cols), origin_(origin), bits_(rows * cols, 0) {}

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t origin() const noexcept { return origin_; }

  bool get(std::size_t r, std::size_t c) const { return bits_[r * cols_ + c] != 0; }
  void set(std::size_t r, std::size_t c, bool v = true) {
    bits_[r * cols_ + c] = v ? 1 : 0;
  }
  std::size_t count() const;
  bool all() const { return count() == bits_.size(); }
  bool none() const { return count() == 0; }

  // Cellwise OR; shapes must match.
  WitnessMask& operator|=(const WitnessMask& other);

  friend bool operator==(const WitnessMask&, const WitnessMask&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::size_t origin_ = 0;
  std::vector<std::uint8_t> bits_;
};

enum class Variant { kRow, kCol, kConv };

// (A, B, C, M) for the row problem (query per (i,j)) or the rotated problem
// (query per (i,k)). Both require B and C row-monotone.
struct VerificationInstance {
  IntMatrix a;
  IntMatrix b;
  IntMatrix c;
  Value modulus = 100;
  Variant variant = Variant::kRow;
};

// Convolution verification: A, B of length n (origin 1), C of length 2n-1
// (origin 2).
struct ConvVerificationInstance {
  IntArray a;
  IntArray b;
  IntArray c;
  Value modulus = 100;
};

enum class QueryAxis { kPerIJ, kPerIK, kPerK };

IntMatrix minplus_product_naive(const IntMatrix& a, const IntMatrix& b);
IntArray minplus_convolution_naive(const IntArray& a, const IntArray& b);

WitnessMask witness_mask_naive(const VerificationInstance& inst, QueryAxis axis);
WitnessMask witness_mask_naive(const ConvVerificationInstance& inst);

// Shape and overflow checks shared by every entry point. Throws
// std::invalid_argument.
void check_product_shapes(const IntMatrix& a, const IntMatrix& b);
void check_entry_range(const IntMatrix& m, const char* name);
void check_entry_range(const IntArray& a, const char* name);

}  // namespace minplus
