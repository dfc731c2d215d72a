// Copyright 2026 The dickson-zn Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <cstdlib>
#include <functional>
#include <vector>

#include "dickson/integer.hpp"

namespace dickson {

// Canonical enumeration of Z^n: shells of increasing max-norm s, and inside a
// shell lexicographic order with x_1 most significant, each coordinate
// ascending from -s.

/// Number of points with max-norm exactly s in Z^n.
inline Integer shell_size(std::size_t n, std::int64_t s) {
  if (s == 0) return 1;
  Integer outer = boost::multiprecision::pow(Integer(2 * s + 1), static_cast<unsigned>(n));
  Integer inner = boost::multiprecision::pow(Integer(2 * s - 1), static_cast<unsigned>(n));
  return outer - inner;
}

/// Number of shell-s points whose first coordinate equals x1.
inline Integer shell_slice_size(std::size_t n, std::int64_t s, std::int64_t x1) {
  if (n == 1) return (std::llabs(x1) == s) ? 1 : 0;
  const auto rest = static_cast<unsigned>(n - 1);
  if (std::llabs(x1) == s) return boost::multiprecision::pow(Integer(2 * s + 1), rest);
  return shell_size(n - 1, s);
}

namespace detail {

// Returns false when the visitor asked to stop.
template <typename Visitor>
bool walk_shell(std::vector<std::int64_t>& x, std::size_t j, std::int64_t s, bool hit, Visitor& visit) {
  const std::size_t n = x.size();
  if (j == n) return hit ? visit(static_cast<const std::vector<std::int64_t>&>(x)) : true;
  if (j + 1 == n && !hit) {
    x[j] = -s;
    if (!visit(static_cast<const std::vector<std::int64_t>&>(x))) return false;
    if (s == 0) return true;
    x[j] = s;
    return visit(static_cast<const std::vector<std::int64_t>&>(x));
  }
  for (std::int64_t v = -s; v <= s; ++v) {
    x[j] = v;
    if (!walk_shell(x, j + 1, s, hit || std::llabs(v) == s, visit)) return false;
  }
  return true;
}

}  // namespace detail

/// Visits the shell-s points with x1 in [x1_lo, x1_hi], in canonical order.
/// The visitor returns false to stop; the function then returns false.
template <typename Visitor>
bool for_each_in_shell(std::size_t n, std::int64_t s, std::int64_t x1_lo, std::int64_t x1_hi, Visitor&& visit) {
  std::vector<std::int64_t> x(n, 0);
  x1_lo = std::max(x1_lo, -s);
  x1_hi = std::min(x1_hi, s);
  if (n == 1) {
    if (s == 0) return x1_lo <= 0 && 0 <= x1_hi ? visit(static_cast<const std::vector<std::int64_t>&>(x)) : true;
    for (std::int64_t v : {-s, s}) {
      if (v < x1_lo || v > x1_hi) continue;
      x[0] = v;
      if (!visit(static_cast<const std::vector<std::int64_t>&>(x))) return false;
    }
    return true;
  }
  for (std::int64_t v = x1_lo; v <= x1_hi; ++v) {
    x[0] = v;
    if (!detail::walk_shell(x, 1, s, std::llabs(v) == s, visit)) return false;
  }
  return true;
}

template <typename Visitor>
bool for_each_in_shell(std::size_t n, std::int64_t s, Visitor&& visit) {
  return for_each_in_shell(n, s, -s, s, std::forward<Visitor>(visit));
}

/// Visits every point of [-box, box]^n in canonical order.
template <typename Visitor>
bool for_each_in_box(std::size_t n, std::int64_t box, Visitor&& visit) {
  for (std::int64_t s = 0; s <= box; ++s) {
    if (!for_each_in_shell(n, s, visit)) return false;
  }
  return true;
}

}  // namespace dickson
