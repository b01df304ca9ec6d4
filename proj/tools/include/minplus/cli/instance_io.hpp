// Copyright 2026 The minplus Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "minplus/matrix.hpp"

namespace minplus::cli {

enum class Kind { kProductRow, kProductCol, kConv, kVerifyRow, kVerifyCol, kVerifyConv };

std::string_view kind_name(Kind kind);
Kind parse_kind(std::string_view name);
bool is_conv(Kind kind);
bool is_verify(Kind kind);

inline constexpr std::string_view kInstanceFormat = "minplus-instance";
inline constexpr std::string_view kOutputFormat = "minplus-output";
inline constexpr int kFormatVersion = 1;

// One problem instance. Matrix kinds use a/b (and c for verification);
// convolution kinds use va/vb (and vc). dims is [na, nb, nc] for matrix
// kinds and [n] for convolution kinds.
struct Instance {
  Kind kind = Kind::kProductRow;
  std::vector<std::size_t> dims;
  Value entry_bound = 1;
  Value modulus = 0;  // verification kinds only
  IntMatrix a, b, c;
  IntArray va, vb, vc;

  friend bool operator==(const Instance&, const Instance&) = default;
};

class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Canonical text: JSON with one matrix row per line, two-space indent and a
// trailing newline.
std::string serialize(const Instance& inst);
Instance parse_instance(std::string_view text);

// Result payload of a run: a product/convolution or a witness mask.
struct Output {
  Kind kind = Kind::kProductRow;
  IntMatrix matrix;  // product kinds and matrix masks (0/1)
  IntArray array;    // conv (origin 2) and conv masks

  friend bool operator==(const Output&, const Output&) = default;
};

std::string serialize(const Output& out);
Output parse_output(std::string_view text);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view text);

// FNV-1a 64 over bytes, printed as 16 hex digits by checksum_hex.
std::uint64_t fnv1a(std::string_view bytes);
std::string checksum_hex(std::uint64_t h);

// Promise checks for the instance kind (monotone tags, entry ranges, shapes,
// verification promises). Throws PromiseViolation or FormatError.
void validate_instance(const Instance& inst);

}  // namespace minplus::cli
