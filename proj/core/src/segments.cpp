// Copyright 2026 The minplus Authors
// SPDX-License-Identifier: Apache-2.0

#include "minplus/segments.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

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

void check_matrix_shapes(const VerificationInstance& inst) {
  if (inst.a.cols() != inst.b.rows() || inst.c.rows() != inst.a.rows() ||
      inst.c.cols() != inst.b.cols()) {
    throw std::invalid_argument("segments: inconsistent instance shapes");
  }
}

void check_conv_shapes(const ConvVerificationInstance& inst) {
  const std::size_t n = inst.a.size();
  if (n == 0 || inst.b.size() != n || inst.c.size() != 2 * n - 1) {
    throw std::invalid_argument("segments: inconsistent convolution shapes");
  }
}

template <class Emit>
void emit_line_blocks(const VerificationInstance& inst, std::size_t i, std::size_t k, int level,
                      std::size_t lo, std::size_t hi, Emit&& emit) {
  auto brow = inst.b.row(k);
  auto crow = inst.c.row(i);
  detail::for_each_block([&](std::size_t j) { return brow[j]; },
                         [&](std::size_t j) { return crow[j]; }, level, lo, hi, emit);
}

template <class Emit>
void emit_diag_blocks(const ConvVerificationInstance& inst, std::size_t d, int level,
                      std::size_t lo, std::size_t hi, Emit&& emit) {
  auto a = inst.a.values();
  auto b = inst.b.values();
  detail::for_each_block([&](std::size_t i) { return a[i]; },
                         [&](std::size_t i) { return b[d - i]; }, level, lo, hi, emit);
}

std::vector<std::size_t> all_diagonals(std::size_t n) {
  std::vector<std::size_t> d(2 * n - 1);
  for (std::size_t x = 0; x < d.size(); ++x) d[x] = x;
  return d;
}

}  // namespace

int levelmax_for(Value m) {
  if (m <= 0 || m % 100 != 0) {
    throw std::invalid_argument("levelmax_for: M must be a positive multiple of 100, got " +
                                std::to_string(m));
  }
  for (int l = 0; l < 62; ++l) {
    const Value p = Value{1} << l;
    if (20 * p >= m && 10 * p < m) return l;
  }
  throw std::invalid_argument("levelmax_for: M too large");
}

bool in_shift_window(Value delta, Value q, int level) {
  const Value w = Value{4} << level;
  const Value r = mod_canonical(delta, q);
  return r <= w || r >= q - w;
}

DiagonalRange diagonal_range(std::size_t n, std::size_t d) {
  return {d >= n ? d - (n - 1) : 0, std::min(d, n - 1)};
}

std::size_t segment_count_bound(std::size_t lines, Value entry_bound, int level) {
  const Value p = Value{1} << level;
  const Value blocks = (std::max<Value>(entry_bound, 0) + p - 1) / p;
  return lines * static_cast<std::size_t>(2 * blocks + 1);
}

// ---- matrix ----

std::vector<Segment> segments_matrix(const VerificationInstance& inst, int level) {
  check_matrix_shapes(inst);
  std::vector<Segment> out;
  const std::size_t nc = inst.b.cols();
  if (nc == 0) return out;
  for (std::size_t i = 0; i < inst.a.rows(); ++i)
    for (std::size_t k = 0; k < inst.a.cols(); ++k)
      emit_line_blocks(inst, i, k, level, 0, nc - 1, [&](std::size_t s, std::size_t e) {
        out.push_back({i, k, s, e, level});
      });
  return out;
}

Value anchor_delta(const Segment& seg, const VerificationInstance& inst) {
  return inst.a(seg.line, seg.inner) + inst.b(seg.inner, seg.start) - inst.c(seg.line, seg.start);
}

namespace {

bool highs_differ(Value a, Value b, Value c, Value m) {
  return floor_div(a, m) + floor_div(b, m) != floor_div(c, m);
}

}  // namespace

bool is_active(const Segment& seg, const VerificationInstance& inst, Value q) {
  const Value a = inst.a(seg.line, seg.inner);
  const Value b = inst.b(seg.inner, seg.start);
  const Value c = inst.c(seg.line, seg.start);
  return highs_differ(a, b, c, inst.modulus) && in_shift_window(a + b - c, q, seg.level);
}

ActiveSet refine_active(const ActiveSet& parent, const VerificationInstance& inst, Value q) {
  if (parent.level <= 0) throw std::invalid_argument("refine_active: parent level must be >= 1");
  ActiveSet out{parent.level - 1, q, {}};
  for (const auto& p : parent.segments) {
    emit_line_blocks(inst, p.line, p.inner, out.level, p.start, p.end,
                     [&](std::size_t s, std::size_t e) {
                       Segment child{p.line, p.inner, s, e, out.level};
                       if (is_active(child, inst, q)) out.segments.push_back(child);
                     });
  }
  return out;
}

ActiveSet active_segments_direct(const VerificationInstance& inst, Value q, int level) {
  ActiveSet out{level, q, {}};
  for (const auto& s : segments_matrix(inst, level))
    if (is_active(s, inst, q)) out.segments.push_back(s);
  return out;
}

namespace {

bool exact_congruence(const Segment& s, const VerificationInstance& inst, Value q) {
  return mod_canonical(anchor_delta(s, inst), q) == 0;
}

}  // namespace

IntMatrix aggregate_sprime_rows(const ActiveSet& s0, const VerificationInstance& inst, Value q) {
  check_matrix_shapes(inst);
  const std::size_t na = inst.a.rows(), nc = inst.b.cols();
  IntMatrix diff(na, nc + 1, 0);
  for (const auto& s : s0.segments) {
    if (!exact_congruence(s, inst, q)) continue;
    diff(s.line, s.start) += 1;
    diff(s.line, s.end + 1) -= 1;
  }
  IntMatrix out(na, nc, 0);
  for (std::size_t i = 0; i < na; ++i) {
    Value run = 0;
    for (std::size_t j = 0; j < nc; ++j) {
      run += diff(i, j);
      out(i, j) = run;
    }
  }
  return out;
}

IntMatrix aggregate_rprime_by_ik(const ActiveSet& s0, const VerificationInstance& inst,
                                 Value q) {
  check_matrix_shapes(inst);
  IntMatrix out(inst.a.rows(), inst.a.cols(), 0);
  for (const auto& s : s0.segments)
    if (exact_congruence(s, inst, q)) out(s.line, s.inner) += static_cast<Value>(s.length());
  return out;
}

// ---- convolution ----

std::vector<Segment> segments_conv(const ConvVerificationInstance& inst, int level,
                                   std::span<const std::size_t> diagonals) {
  check_conv_shapes(inst);
  const std::size_t n = inst.a.size();
  std::vector<std::size_t> all;
  if (diagonals.empty()) {
    all = all_diagonals(n);
    diagonals = all;
  }
  std::vector<Segment> out;
  for (auto d : diagonals) {
    if (d > 2 * n - 2) throw std::out_of_range("segments_conv: diagonal out of range");
    const auto r = diagonal_range(n, d);
    emit_diag_blocks(inst, d, level, r.lo, r.hi,
                     [&](std::size_t s, std::size_t e) { out.push_back({d, 0, s, e, level}); });
  }
  return out;
}

Value anchor_delta(const Segment& seg, const ConvVerificationInstance& inst) {
  return inst.a[seg.start] + inst.b[seg.line - seg.start] - inst.c[seg.line];
}

bool is_active(const Segment& seg, const ConvVerificationInstance& inst, Value q) {
  const Value a = inst.a[seg.start];
  const Value b = inst.b[seg.line - seg.start];
  const Value c = inst.c[seg.line];
  return highs_differ(a, b, c, inst.modulus) && in_shift_window(a + b - c, q, seg.level);
}

ActiveSet refine_active_conv(const ActiveSet& parent, const ConvVerificationInstance& inst,
                             Value q) {
  if (parent.level <= 0) {
    throw std::invalid_argument("refine_active_conv: parent level must be >= 1");
  }
  ActiveSet out{parent.level - 1, q, {}};
  for (const auto& p : parent.segments) {
    emit_diag_blocks(inst, p.line, out.level, p.start, p.end, [&](std::size_t s, std::size_t e) {
      Segment child{p.line, 0, s, e, out.level};
      if (is_active(child, inst, q)) out.segments.push_back(child);
    });
  }
  return out;
}

ActiveSet active_segments_direct(const ConvVerificationInstance& inst, Value q, int level,
                                 std::span<const std::size_t> diagonals) {
  ActiveSet out{level, q, {}};
  for (const auto& s : segments_conv(inst, level, diagonals))
    if (is_active(s, inst, q)) out.segments.push_back(s);
  return out;
}

std::vector<Value> aggregate_sprime_conv(const ActiveSet& s0, const ConvVerificationInstance& inst,
                                         Value q) {
  check_conv_shapes(inst);
  std::vector<Value> out(inst.c.size(), 0);
  for (const auto& s : s0.segments)
    if (mod_canonical(anchor_delta(s, inst), q) == 0) out[s.line] += static_cast<Value>(s.length());
  return out;
}

// ---- pipeline ----

namespace {

void check_nesting(const ActiveSet& parent, const ActiveSet& child) {
  // Both sets are ordered by (line, inner, start); walk them together.
  std::size_t p = 0;
  for (const auto& c : child.segments) {
    while (p < parent.segments.size()) {
      const auto& s = parent.segments[p];
      if (s.line == c.line && s.inner == c.inner && s.end >= c.start) break;
      ++p;
    }
    if (p == parent.segments.size()) throw std::logic_error("segment nesting violated");
    const auto& s = parent.segments[p];
    if (!(s.line == c.line && s.inner == c.inner && s.start <= c.start && c.end <= s.end)) {
      throw std::logic_error("segment nesting violated");
    }
  }
}

template <class Inst, class Refine>
SegmentPipeline pipeline(const Inst& inst, Value q, ActiveSet top, bool checks, Refine refine,
                         std::size_t top_count) {
  SegmentPipeline out;
  out.top_segment_count = top_count;
  const int lmax = top.level;
  out.active_counts.assign(static_cast<std::size_t>(lmax) + 1, 0);
  out.active_counts[lmax] = top.segments.size();
  ActiveSet cur = std::move(top);
  while (cur.level > 0) {
    ActiveSet next = refine(cur, inst, q);
    if (checks) check_nesting(cur, next);
    out.active_counts[next.level] = next.segments.size();
    cur = std::move(next);
  }
  out.level0 = std::move(cur);
  return out;
}

}  // namespace

SegmentPipeline run_segment_pipeline(const VerificationInstance& inst, Value q, bool checks) {
  check_matrix_shapes(inst);
  const int lmax = levelmax_for(inst.modulus);
  ActiveSet top{lmax, q, {}};
  std::size_t count = 0;
  const std::size_t nc = inst.b.cols();
  if (nc > 0) {
    for (std::size_t i = 0; i < inst.a.rows(); ++i)
      for (std::size_t k = 0; k < inst.a.cols(); ++k)
        emit_line_blocks(inst, i, k, lmax, 0, nc - 1, [&](std::size_t s, std::size_t e) {
          ++count;
          Segment seg{i, k, s, e, lmax};
          if (is_active(seg, inst, q)) top.segments.push_back(seg);
        });
  }
  return pipeline(inst, q, std::move(top), checks,
                  [](const ActiveSet& a, const VerificationInstance& in, Value qq) {
                    return refine_active(a, in, qq);
                  },
                  count);
}

SegmentPipeline run_segment_pipeline(const ConvVerificationInstance& inst, Value q,
                                     std::span<const std::size_t> diagonals, bool checks) {
  check_conv_shapes(inst);
  const int lmax = levelmax_for(inst.modulus);
  const std::size_t n = inst.a.size();
  std::vector<std::size_t> all;
  if (diagonals.empty()) {
    all = all_diagonals(n);
    diagonals = all;
  }
  ActiveSet top{lmax, q, {}};
  std::size_t count = 0;
  for (auto d : diagonals) {
    if (d > 2 * n - 2) throw std::out_of_range("run_segment_pipeline: diagonal out of range");
    const auto r = diagonal_range(n, d);
    emit_diag_blocks(inst, d, lmax, r.lo, r.hi, [&](std::size_t s, std::size_t e) {
      ++count;
      Segment seg{d, 0, s, e, lmax};
      if (is_active(seg, inst, q)) top.segments.push_back(seg);
    });
  }
  return pipeline(inst, q, std::move(top), checks,
                  [](const ActiveSet& a, const ConvVerificationInstance& in, Value qq) {
                    return refine_active_conv(a, in, qq);
                  },
                  count);
}

}  // namespace minplus
