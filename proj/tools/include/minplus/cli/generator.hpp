// Copyright 2026 The minplus Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string_view>

#include "minplus/cli/instance_io.hpp"
#include "minplus/cli/rng.hpp"
#include "minplus/matrix.hpp"

namespace minplus::cli {

enum class Family { kUniformMonotone, kBoundedDifference, kStaircase, kAdversarialTies };

std::string_view family_name(Family family);
Family parse_family(std::string_view name);

struct GenParams {
  Kind kind = Kind::kProductRow;
  // Matrix kinds: na x nb times nb x nc. Convolution kinds use na as n.
  std::size_t na = 1, nb = 1, nc = 1;
  Value entry_bound = 1;
  std::uint64_t seed = 0;
  Family family = Family::kUniformMonotone;
  Value modulus = 100;  // verification kinds
};

// Non-decreasing row of `length` entries in [1, bound].
std::vector<Value> monotone_row(SplitMix64& rng, std::size_t length, Value bound, Family family);
// Left factor with entries in [1, bound] (shape rows x cols).
IntMatrix free_matrix(SplitMix64& rng, std::size_t rows, std::size_t cols, Value bound,
                      Family family);
IntMatrix row_monotone_matrix(SplitMix64& rng, std::size_t rows, std::size_t cols, Value bound,
                              Family family);
IntMatrix col_monotone_matrix(SplitMix64& rng, std::size_t rows, std::size_t cols, Value bound,
                              Family family);

// Promised verification instances built by lifting a candidate through the
// residue shift: the candidate is the exact product lowered by 0 or 1 per
// cell (kept monotone), and (s, t) is picked from classes present in the
// inputs. The row/rotated layouts follow VerificationInstance.
VerificationInstance lift_verify_row(SplitMix64& rng, const IntMatrix& a, const IntMatrix& b,
                                     Value m);
VerificationInstance lift_verify_col(SplitMix64& rng, const IntMatrix& a, const IntMatrix& b,
                                     Value m);
ConvVerificationInstance lift_verify_conv(SplitMix64& rng, const IntArray& a, const IntArray& b,
                                          Value m);

// Deterministic instance from the parameters; validated before return.
Instance generate(const GenParams& params);

}  // namespace minplus::cli
