// Copyright 2026 The minplus Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <vector>

#include "minplus/matrix.hpp"

namespace minplus {

inline constexpr int kResidueClasses = 100;

// Residue class of x under M: floor((x mod M) / W) with W = M/100.
int residue_class(Value x, Value m);

// Entry maps for a pair label (s, t). Inputs are already pre-shifted
// (A, B by +M; C by +2M).
//   A^(s): x - sW           if x mod M in [sW, (s+1)W)
//          floor((x - sW)/M)*M + 3W  otherwise
//   C^(s,t): x - (s+t)W     if x mod M in [(s+t)W, (s+t)W + 2W) mod M
//            floor((x - (s+t)W)/M)*M + 7W  otherwise
Value shift_ab_entry(Value x, int s, Value m);
Value shift_c_entry(Value x, int s, int t, Value m);
// Whether x mod M lies in J_{s,t}.
bool in_window_j(Value x, int s, int t, Value m);

struct LabeledInstance {
  int s = 0;
  int t = 0;
  VerificationInstance inst;
};

struct LabeledConvInstance {
  int s = 0;
  int t = 0;
  ConvVerificationInstance inst;
};

// Pre-shifts and caches A^(s), B^(t) for s, t in [0, 100); builds C^(s,t) on
// demand. M must be a positive multiple of 100.
class ResidueShift {
 public:
  ResidueShift(const IntMatrix& a, const IntMatrix& b, Value m);

  Value modulus() const noexcept { return m_; }
  const IntMatrix& a(int s) const { return a_.at(s); }
  const IntMatrix& b(int t) const { return b_.at(t); }
  // Shifted candidate, with the +2M pre-shift applied here.
  IntMatrix c(const IntMatrix& c_candidate, int s, int t) const;

 private:
  Value m_;
  std::vector<IntMatrix> a_;
  std::vector<IntMatrix> b_;
};

// All 100^2 labeled instances (row layout). Intended for small inputs.
std::vector<LabeledInstance> shift_residues(const IntMatrix& a, const IntMatrix& b,
                                            const IntMatrix& c_candidate, Value m,
                                            Variant variant = Variant::kRow);
std::vector<LabeledConvInstance> shift_residues_conv(const IntArray& a, const IntArray& b,
                                                     const IntArray& c_candidate, Value m);

// Array versions of the entry maps applied elementwise (pre-shift included).
IntArray shift_array_ab(const IntArray& x, int s, Value m);
IntArray shift_array_c(const IntArray& x, int s, int t, Value m);

// Promise checks for the verification problems: M a positive multiple of
// 100, entries nonnegative, B and C row-monotone (arrays: A, B monotone),
// every residue mod M at most M/10. First offending coordinate reported.
ValidationReport validate_verification(const VerificationInstance& inst);
ValidationReport validate_verification(const ConvVerificationInstance& inst);

}  // namespace minplus
