// Copyright 2026 The minplus Authors
// SPDX-License-Identifier: Apache-2.0

#include "minplus/cli/instance_io.hpp"

#include <array>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <utility>

#include "json.hpp"
#include "minplus/residue_shift.hpp"

namespace minplus::cli {

namespace {

using nlohmann::json;

constexpr std::array<std::pair<Kind, std::string_view>, 6> kKinds{{
    {Kind::kProductRow, "product-row"},
    {Kind::kProductCol, "product-col"},
    {Kind::kConv, "conv"},
    {Kind::kVerifyRow, "verify-row"},
    {Kind::kVerifyCol, "verify-col"},
    {Kind::kVerifyConv, "verify-conv"},
}};

void write_array(std::string& out, std::span<const Value> values) {
  out += '[';
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i > 0) out += ", ";
    out += std::to_string(values[i]);
  }
  out += ']';
}

void write_matrix(std::string& out, const IntMatrix& m) {
  if (m.rows() == 0) {
    out += "[]";
    return;
  }
  out += "[\n";
  for (std::size_t r = 0; r < m.rows(); ++r) {
    out += "    ";
    write_array(out, m.row(r));
    out += r + 1 < m.rows() ? ",\n" : "\n";
  }
  out += "  ]";
}

void field(std::string& out, std::string_view key, const std::string& value, bool last = false) {
  out += "  \"";
  out += key;
  out += "\": ";
  out += value;
  out += last ? "\n" : ",\n";
}

std::string quoted(std::string_view s) { return json(std::string(s)).dump(); }

std::string dims_text(const std::vector<std::size_t>& dims) {
  std::string s = "[";
  for (std::size_t i = 0; i < dims.size(); ++i) {
    if (i > 0) s += ", ";
    s += std::to_string(dims[i]);
  }
  return s + "]";
}

const json& member(const json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) throw FormatError(std::string("missing field \"") + key + "\"");
  return *it;
}

Value as_value(const json& v, const char* what) {
  if (!v.is_number_integer()) throw FormatError(std::string(what) + ": expected an integer");
  return v.get<Value>();
}

IntMatrix read_matrix(const json& j, const char* name, std::size_t rows, std::size_t cols) {
  if (!j.is_array() || j.size() != rows) {
    throw FormatError(std::string(name) + ": expected " + std::to_string(rows) + " rows");
  }
  IntMatrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    const json& row = j[r];
    if (!row.is_array() || row.size() != cols) {
      throw FormatError(std::string(name) + ": row " + std::to_string(r) + " must have " +
                        std::to_string(cols) + " entries");
    }
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = as_value(row[c], name);
  }
  return m;
}

IntArray read_array(const json& j, const char* name, std::size_t length, std::size_t origin) {
  if (!j.is_array() || j.size() != length) {
    throw FormatError(std::string(name) + ": expected " + std::to_string(length) + " entries");
  }
  IntArray a(length, origin);
  for (std::size_t i = 0; i < length; ++i) a[i] = as_value(j[i], name);
  return a;
}

json parse_json(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw FormatError(std::string("malformed JSON: ") + e.what());
  }
}

void check_header(const json& j, std::string_view format) {
  if (!j.is_object()) throw FormatError("top level must be an object");
  const json& f = member(j, "format");
  if (!f.is_string() || f.get<std::string>() != format) {
    throw FormatError("format must be \"" + std::string(format) + "\"");
  }
  const json& v = member(j, "version");
  if (!v.is_number_integer() || v.get<int>() != kFormatVersion) {
    throw FormatError("unsupported version");
  }
}

std::size_t as_dim(const json& v) {
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<Value>() >= 0)) {
    throw FormatError("dims: expected non-negative integers");
  }
  return v.get<std::size_t>();
}

}  // namespace

std::string_view kind_name(Kind kind) {
  for (const auto& [k, name] : kKinds)
    if (k == kind) return name;
  throw std::invalid_argument("unknown kind");
}

Kind parse_kind(std::string_view name) {
  for (const auto& [k, n] : kKinds)
    if (n == name) return k;
  throw FormatError("unknown kind \"" + std::string(name) + "\"");
}

bool is_conv(Kind kind) { return kind == Kind::kConv || kind == Kind::kVerifyConv; }
bool is_verify(Kind kind) {
  return kind == Kind::kVerifyRow || kind == Kind::kVerifyCol || kind == Kind::kVerifyConv;
}

std::string serialize(const Instance& inst) {
  std::string out = "{\n";
  field(out, "format", quoted(kInstanceFormat));
  field(out, "version", std::to_string(kFormatVersion));
  field(out, "kind", quoted(kind_name(inst.kind)));
  field(out, "dims", dims_text(inst.dims));
  field(out, "entry_bound", std::to_string(inst.entry_bound));
  if (is_verify(inst.kind)) field(out, "M", std::to_string(inst.modulus));
  std::string body;
  const bool with_c = is_verify(inst.kind);
  if (is_conv(inst.kind)) {
    body.clear();
    write_array(body, inst.va.values());
    field(out, "A", body);
    body.clear();
    write_array(body, inst.vb.values());
    field(out, "B", body, !with_c);
    if (with_c) {
      body.clear();
      write_array(body, inst.vc.values());
      field(out, "C", body, true);
    }
  } else {
    body.clear();
    write_matrix(body, inst.a);
    field(out, "A", body);
    body.clear();
    write_matrix(body, inst.b);
    field(out, "B", body, !with_c);
    if (with_c) {
      body.clear();
      write_matrix(body, inst.c);
      field(out, "C", body, true);
    }
  }
  out += "}\n";
  return out;
}

Instance parse_instance(std::string_view text) {
  const json j = parse_json(text);
  check_header(j, kInstanceFormat);
  Instance inst;
  const json& kind = member(j, "kind");
  if (!kind.is_string()) throw FormatError("kind must be a string");
  inst.kind = parse_kind(kind.get<std::string>());
  const json& dims = member(j, "dims");
  if (!dims.is_array()) throw FormatError("dims must be an array");
  for (const auto& d : dims) inst.dims.push_back(as_dim(d));
  inst.entry_bound = as_value(member(j, "entry_bound"), "entry_bound");
  if (inst.entry_bound < 1) throw FormatError("entry_bound must be positive");
  if (is_verify(inst.kind)) inst.modulus = as_value(member(j, "M"), "M");
  if (is_conv(inst.kind)) {
    if (inst.dims.size() != 1 || inst.dims[0] == 0) {
      throw FormatError("dims must be [n] with n >= 1 for convolution kinds");
    }
    const std::size_t n = inst.dims[0];
    inst.va = read_array(member(j, "A"), "A", n, 1);
    inst.vb = read_array(member(j, "B"), "B", n, 1);
    if (is_verify(inst.kind)) inst.vc = read_array(member(j, "C"), "C", 2 * n - 1, 2);
  } else {
    if (inst.dims.size() != 3) throw FormatError("dims must be [na, nb, nc] for matrix kinds");
    const std::size_t na = inst.dims[0], nb = inst.dims[1], nc = inst.dims[2];
    inst.a = read_matrix(member(j, "A"), "A", na, nb);
    inst.b = read_matrix(member(j, "B"), "B", nb, nc);
    if (inst.kind == Kind::kVerifyRow) inst.c = read_matrix(member(j, "C"), "C", na, nc);
    if (inst.kind == Kind::kVerifyCol) inst.c = read_matrix(member(j, "C"), "C", na, nc);
  }
  return inst;
}

std::string serialize(const Output& out) {
  std::string s = "{\n";
  field(s, "format", quoted(kOutputFormat));
  field(s, "version", std::to_string(kFormatVersion));
  field(s, "kind", quoted(kind_name(out.kind)));
  std::string body;
  if (is_conv(out.kind)) {
    field(s, "origin", std::to_string(out.array.origin()));
    write_array(body, out.array.values());
  } else {
    field(s, "dims", dims_text({out.matrix.rows(), out.matrix.cols()}));
    write_matrix(body, out.matrix);
  }
  field(s, is_verify(out.kind) ? "mask" : "C", body, true);
  s += "}\n";
  return s;
}

Output parse_output(std::string_view text) {
  const json j = parse_json(text);
  check_header(j, kOutputFormat);
  Output out;
  out.kind = parse_kind(member(j, "kind").get<std::string>());
  const char* key = is_verify(out.kind) ? "mask" : "C";
  const json& body = member(j, key);
  if (is_conv(out.kind)) {
    const auto origin = static_cast<std::size_t>(as_value(member(j, "origin"), "origin"));
    out.array = read_array(body, key, body.is_array() ? body.size() : 0, origin);
  } else {
    const json& dims = member(j, "dims");
    if (!dims.is_array() || dims.size() != 2) throw FormatError("output dims must be [rows, cols]");
    out.matrix = read_matrix(body, key, as_dim(dims[0]), as_dim(dims[1]));
  }
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  std::string text = ss.str();
  // Newline-normalize.
  std::string out;
  out.reserve(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '\r') {
      out += '\n';
      if (i + 1 < text.size() && text[i + 1] == '\n') ++i;
    } else {
      out += text[i];
    }
  }
  return out;
}

void write_file(const std::string& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path);
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw std::runtime_error("write failed for " + path);
}

std::uint64_t fnv1a(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : bytes) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  return h;
}

std::string checksum_hex(std::uint64_t h) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

void validate_instance(const Instance& inst) {
  const MonotoneTag row{Axis::kRowMonotone, inst.entry_bound};
  switch (inst.kind) {
    case Kind::kProductRow:
      check_product_shapes(inst.a, inst.b);
      check_entry_range(inst.a, "A");
      require(validate_promises(inst.b, row), "B");
      break;
    case Kind::kProductCol:
      check_product_shapes(inst.a, inst.b);
      check_entry_range(inst.a, "A");
      require(validate_promises(inst.b, {Axis::kColumnMonotone, inst.entry_bound}), "B");
      break;
    case Kind::kConv:
      require(validate_promises(inst.va, {Axis::kArrayMonotone, inst.entry_bound}), "A");
      require(validate_promises(inst.vb, {Axis::kArrayMonotone, inst.entry_bound}), "B");
      break;
    case Kind::kVerifyRow:
    case Kind::kVerifyCol:
      require(validate_verification(VerificationInstance{
                  inst.a, inst.b, inst.c, inst.modulus,
                  inst.kind == Kind::kVerifyRow ? Variant::kRow : Variant::kCol}),
              "verification instance");
      break;
    case Kind::kVerifyConv:
      require(validate_verification(ConvVerificationInstance{inst.va, inst.vb, inst.vc,
                                                             inst.modulus}),
              "verification instance");
      break;
  }
}

}  // namespace minplus::cli
