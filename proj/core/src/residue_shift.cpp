// Copyright 2026 The minplus Authors
// SPDX-License-Identifier: Apache-2.0

#include "minplus/residue_shift.hpp"

#include <sstream>
#include <stdexcept>

namespace minplus {

namespace {

Value floor_div(Value a, Value m) {
  Value q = a / m;
  if ((a % m != 0) && ((a < 0) != (m < 0))) --q;
  return q;
}

Value mod_canonical(Value a, Value m) {
  Value r = a % m;
  return r < 0 ? r + m : r;
}

void check_m(Value m) {
  if (m <= 0 || m % 100 != 0) {
    throw std::invalid_argument("residue shift: M must be a positive multiple of 100");
  }
}

IntMatrix map_matrix(const IntMatrix& src, Value add, int s, Value m) {
  IntMatrix out(src.rows(), src.cols());
  auto in = src.data();
  auto o = out.data();
  for (std::size_t x = 0; x < in.size(); ++x) o[x] = shift_ab_entry(in[x] + add, s, m);
  return out;
}

}  // namespace

int residue_class(Value x, Value m) {
  return static_cast<int>(mod_canonical(x, m) / (m / kResidueClasses));
}

Value shift_ab_entry(Value x, int s, Value m) {
  const Value w = m / kResidueClasses;
  const Value r = mod_canonical(x, m);
  if (r >= s * w && r < (s + 1) * w) return x - s * w;
  return floor_div(x - s * w, m) * m + 3 * w;
}

bool in_window_j(Value x, int s, int t, Value m) {
  const Value w = m / kResidueClasses;
  return mod_canonical(x - (s + t) * w, m) < 2 * w;
}

Value shift_c_entry(Value x, int s, int t, Value m) {
  const Value w = m / kResidueClasses;
  if (in_window_j(x, s, t, m)) return x - (s + t) * w;
  return floor_div(x - (s + t) * w, m) * m + 7 * w;
}

ResidueShift::ResidueShift(const IntMatrix& a, const IntMatrix& b, Value m) : m_(m) {
  check_m(m);
  a_.reserve(kResidueClasses);
  b_.reserve(kResidueClasses);
  for (int s = 0; s < kResidueClasses; ++s) {
    a_.push_back(map_matrix(a, m, s, m));
    b_.push_back(map_matrix(b, m, s, m));
  }
}

IntMatrix ResidueShift::c(const IntMatrix& c_candidate, int s, int t) const {
  IntMatrix out(c_candidate.rows(), c_candidate.cols());
  auto in = c_candidate.data();
  auto o = out.data();
  for (std::size_t x = 0; x < in.size(); ++x) o[x] = shift_c_entry(in[x] + 2 * m_, s, t, m_);
  return out;
}

std::vector<LabeledInstance> shift_residues(const IntMatrix& a, const IntMatrix& b,
                                            const IntMatrix& c_candidate, Value m,
                                            Variant variant) {
  check_product_shapes(a, b);
  if (c_candidate.rows() != a.rows() || c_candidate.cols() != b.cols()) {
    throw std::invalid_argument("shift_residues: candidate shape mismatch");
  }
  ResidueShift shift(a, b, m);
  std::vector<LabeledInstance> out;
  out.reserve(kResidueClasses * kResidueClasses);
  for (int s = 0; s < kResidueClasses; ++s)
    for (int t = 0; t < kResidueClasses; ++t)
      out.push_back({s, t, {shift.a(s), shift.b(t), shift.c(c_candidate, s, t), m, variant}});
  return out;
}

IntArray shift_array_ab(const IntArray& x, int s, Value m) {
  check_m(m);
  IntArray out(x.size(), x.origin());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = shift_ab_entry(x[i] + m, s, m);
  return out;
}

IntArray shift_array_c(const IntArray& x, int s, int t, Value m) {
  check_m(m);
  IntArray out(x.size(), x.origin());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = shift_c_entry(x[i] + 2 * m, s, t, m);
  return out;
}

std::vector<LabeledConvInstance> shift_residues_conv(const IntArray& a, const IntArray& b,
                                                     const IntArray& c_candidate, Value m) {
  const std::size_t n = a.size();
  if (n == 0 || b.size() != n || c_candidate.size() != 2 * n - 1) {
    throw std::invalid_argument("shift_residues_conv: inconsistent shapes");
  }
  std::vector<IntArray> as, bs;
  for (int s = 0; s < kResidueClasses; ++s) {
    as.push_back(shift_array_ab(a, s, m));
    bs.push_back(shift_array_ab(b, s, m));
  }
  std::vector<LabeledConvInstance> out;
  out.reserve(kResidueClasses * kResidueClasses);
  for (int s = 0; s < kResidueClasses; ++s)
    for (int t = 0; t < kResidueClasses; ++t)
      out.push_back({s, t, {as[s], bs[t], shift_array_c(c_candidate, s, t, m), m}});
  return out;
}

namespace {

ValidationReport bad(std::size_t r, std::size_t c, const std::string& what) {
  return ValidationReport{false, r, c, what};
}

ValidationReport check_entries(const IntMatrix& x, Value m, const char* name, bool monotone) {
  for (std::size_t r = 0; r < x.rows(); ++r)
    for (std::size_t c = 0; c < x.cols(); ++c) {
      const Value v = x(r, c);
      if (v < 0) return bad(r, c, std::string(name) + " has a negative entry");
      if (mod_canonical(v, m) > m / 10) {
        std::ostringstream os;
        os << name << " entry " << v << " has residue above M/10 for M=" << m;
        return bad(r, c, os.str());
      }
      if (monotone && c > 0 && x(r, c - 1) > v) {
        return bad(r, c, std::string(name) + " row not monotone");
      }
    }
  return {};
}

ValidationReport check_array(const IntArray& x, Value m, const char* name, bool monotone) {
  for (std::size_t i = 0; i < x.size(); ++i) {
    const Value v = x[i];
    if (v < 0) return bad(0, i, std::string(name) + " has a negative entry");
    if (mod_canonical(v, m) > m / 10) {
      std::ostringstream os;
      os << name << " entry " << v << " has residue above M/10 for M=" << m;
      return bad(0, i, os.str());
    }
    if (monotone && i > 0 && x[i - 1] > v) return bad(0, i, std::string(name) + " not monotone");
  }
  return {};
}

}  // namespace

ValidationReport validate_verification(const VerificationInstance& inst) {
  if (inst.modulus <= 0 || inst.modulus % 100 != 0) {
    return bad(0, 0, "M must be a positive multiple of 100");
  }
  if (inst.a.cols() != inst.b.rows() || inst.c.rows() != inst.a.rows() ||
      inst.c.cols() != inst.b.cols()) {
    return bad(0, 0, "inconsistent instance shapes");
  }
  if (auto r = check_entries(inst.a, inst.modulus, "A", false); !r) return r;
  if (auto r = check_entries(inst.b, inst.modulus, "B", true); !r) return r;
  return check_entries(inst.c, inst.modulus, "C", true);
}

ValidationReport validate_verification(const ConvVerificationInstance& inst) {
  if (inst.modulus <= 0 || inst.modulus % 100 != 0) {
    return bad(0, 0, "M must be a positive multiple of 100");
  }
  const std::size_t n = inst.a.size();
  if (n == 0 || inst.b.size() != n || inst.c.size() != 2 * n - 1) {
    return bad(0, 0, "inconsistent convolution shapes");
  }
  if (auto r = check_array(inst.a, inst.modulus, "A", true); !r) return r;
  if (auto r = check_array(inst.b, inst.modulus, "B", true); !r) return r;
  return check_array(inst.c, inst.modulus, "C", false);
}

}  // namespace minplus
