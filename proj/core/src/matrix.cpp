// Copyright 2026 The minplus Authors
// SPDX-License-Identifier: Apache-2.0

#include "minplus/matrix.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

namespace minplus {

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<Value>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw std::invalid_argument("IntMatrix: ragged rows");
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<Value>>& rows) {
  IntMatrix m(rows.size(), rows.empty() ? 0 : rows.front().size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != m.cols_) throw std::invalid_argument("IntMatrix: ragged rows");
    std::copy(rows[r].begin(), rows[r].end(), m.row(r).begin());
  }
  return m;
}

IntMatrix IntMatrix::transposed() const {
  IntMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

Value IntMatrix::max_entry() const {
  return data_.empty() ? 0 : *std::max_element(data_.begin(), data_.end());
}

Value IntMatrix::min_entry() const {
  return data_.empty() ? 0 : *std::min_element(data_.begin(), data_.end());
}

bool IntMatrix::all_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](Value v) { return v == 0; });
}

Value IntArray::max_entry() const {
  return data_.empty() ? 0 : *std::max_element(data_.begin(), data_.end());
}

bool IntArray::all_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](Value v) { return v == 0; });
}

namespace {

ValidationReport fail(std::size_t r, std::size_t c, std::string reason) {
  return ValidationReport{false, r, c, std::move(reason)};
}

}  // namespace

ValidationReport validate_promises(const IntMatrix& m, const MonotoneTag& tag) {
  if (tag.axis == Axis::kArrayMonotone) {
    return fail(0, 0, "array-monotone tag attached to a matrix");
  }
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) {
      const Value v = m(r, c);
      if (v < 1 || v > tag.entry_bound) {
        std::ostringstream os;
        os << "entry " << v << " outside [1, " << tag.entry_bound << "]";
        return fail(r, c, os.str());
      }
      if (tag.axis == Axis::kRowMonotone && c > 0 && m(r, c - 1) > v) {
        return fail(r, c, "row not monotone");
      }
      if (tag.axis == Axis::kColumnMonotone && r > 0 && m(r - 1, c) > v) {
        return fail(r, c, "column not monotone");
      }
    }
  }
  return {};
}

ValidationReport validate_promises(const IntArray& a, const MonotoneTag& tag) {
  if (tag.axis != Axis::kArrayMonotone) {
    return fail(0, 0, "matrix tag attached to an array");
  }
  for (std::size_t i = 0; i < a.size(); ++i) {
    const Value v = a[i];
    if (v < 1 || v > tag.entry_bound) {
      std::ostringstream os;
      os << "entry " << v << " outside [1, " << tag.entry_bound << "]";
      return fail(0, i, os.str());
    }
    if (i > 0 && a[i - 1] > v) return fail(0, i, "array not monotone");
  }
  return {};
}

void require(const ValidationReport& report, const std::string& context) {
  if (report.ok) return;
  std::ostringstream os;
  os << context << ": " << report.reason << " at (" << report.row << ", " << report.col
     << ")";
  throw PromiseViolation(os.str(), report.row, report.col);
}

bool is_nondecreasing(std::span<const Value> values) {
  return std::is_sorted(values.begin(), values.end());
}

bool rows_nondecreasing(const IntMatrix& m) {
  for (std::size_t r = 0; r < m.rows(); ++r)
    if (!is_nondecreasing(m.row(r))) return false;
  return true;
}

std::size_t WitnessMask::count() const {
  return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), 1));
}

WitnessMask& WitnessMask::operator|=(const WitnessMask& other) {
  if (other.rows_ != rows_ || other.cols_ != cols_) {
    throw std::invalid_argument("WitnessMask: shape mismatch in |=");
  }
  for (std::size_t i = 0; i < bits_.size(); ++i) bits_[i] |= other.bits_[i];
  return *this;
}

void check_product_shapes(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols() != b.rows()) {
    std::ostringstream os;
    os << "dimension mismatch: A is " << a.rows() << "x" << a.cols() << ", B is "
       << b.rows() << "x" << b.cols();
    throw std::invalid_argument(os.str());
  }
}

void check_entry_range(const IntMatrix& m, const char* name) {
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c)
      if (m(r, c) > kMaxAbsEntry || m(r, c) < -kMaxAbsEntry) {
        throw PromiseViolation(std::string(name) + ": entry magnitude exceeds 2^60", r, c);
      }
}

void check_entry_range(const IntArray& a, const char* name) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] > kMaxAbsEntry || a[i] < -kMaxAbsEntry) {
      throw PromiseViolation(std::string(name) + ": entry magnitude exceeds 2^60", 0, i);
    }
}

IntMatrix minplus_product_naive(const IntMatrix& a, const IntMatrix& b) {
  check_product_shapes(a, b);
  IntMatrix c(a.rows(), b.cols(), std::numeric_limits<Value>::max());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    auto out = c.row(i);
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Value aik = a(i, k);
      auto brow = b.row(k);
      for (std::size_t j = 0; j < b.cols(); ++j) out[j] = std::min(out[j], aik + brow[j]);
    }
  }
  return c;
}

IntArray minplus_convolution_naive(const IntArray& a, const IntArray& b) {
  if (a.size() != b.size() || a.size() == 0) {
    throw std::invalid_argument("minplus_convolution_naive: arrays must share a length n >= 1");
  }
  const std::size_t n = a.size();
  IntArray c(2 * n - 1, 2, std::numeric_limits<Value>::max());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) c[i + j] = std::min(c[i + j], a[i] + b[j]);
  return c;
}

WitnessMask witness_mask_naive(const VerificationInstance& inst, QueryAxis axis) {
  const auto& a = inst.a;
  const auto& b = inst.b;
  const auto& c = inst.c;
  if (a.cols() != b.rows() || c.rows() != a.rows() || c.cols() != b.cols()) {
    throw std::invalid_argument("witness_mask_naive: inconsistent instance shapes");
  }
  if (axis == QueryAxis::kPerK) {
    throw std::invalid_argument("witness_mask_naive: per-k axis needs a convolution instance");
  }
  WitnessMask mask = axis == QueryAxis::kPerIJ ? WitnessMask(a.rows(), b.cols())
                                               : WitnessMask(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k)
      for (std::size_t j = 0; j < b.cols(); ++j)
        if (a(i, k) + b(k, j) == c(i, j)) {
          if (axis == QueryAxis::kPerIJ)
            mask.set(i, j);
          else
            mask.set(i, k);
        }
  return mask;
}

WitnessMask witness_mask_naive(const ConvVerificationInstance& inst) {
  const std::size_t n = inst.a.size();
  if (inst.b.size() != n || n == 0 || inst.c.size() != 2 * n - 1) {
    throw std::invalid_argument("witness_mask_naive: inconsistent convolution shapes");
  }
  WitnessMask mask(1, 2 * n - 1, 2);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (inst.a[i] + inst.b[j] == inst.c[i + j]) mask.set(0, i + j);
  return mask;
}

}  // namespace minplus
