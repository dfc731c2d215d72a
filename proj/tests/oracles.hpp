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

// Independent reference implementations used only by the tests. Nothing here
// calls into the library's algorithms beyond the plain data types.

#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "dickson/forms.hpp"

namespace dickson::oracle {

inline bool trial_division_is_prime(std::uint64_t v) {
  if (v < 2) return false;
  for (std::uint64_t d = 2; d * d <= v; ++d) {
    if (v % d == 0) return false;
  }
  return true;
}

inline bool trial_division_is_prime(const Integer& v) {
  if (v < 2) return false;
  for (Integer d = 2; d * d <= v; ++d) {
    if (v % d == 0) return false;
  }
  return true;
}

/// Pairs (p, p + 2) of primes with p <= limit, by a segmented sieve.
inline std::uint64_t segmented_sieve_twin_count(std::uint64_t limit) {
  const std::uint64_t top = limit + 2;
  std::uint64_t root = 1;
  while ((root + 1) * (root + 1) <= top) ++root;
  std::vector<char> small(root + 1, 1);
  std::vector<std::uint64_t> base;
  for (std::uint64_t i = 2; i <= root; ++i) {
    if (!small[i]) continue;
    base.push_back(i);
    for (std::uint64_t j = i * i; j <= root; j += i) small[j] = 0;
  }
  const std::uint64_t segment = 1 << 15;
  std::uint64_t count = 0;
  bool prev2 = false, prev1 = false;  // primality of n-2 and n-1
  std::vector<char> sieve(segment);
  for (std::uint64_t lo = 0; lo <= top; lo += segment) {
    const std::uint64_t hi = std::min(top + 1, lo + segment);
    std::fill(sieve.begin(), sieve.end(), 1);
    for (std::uint64_t p : base) {
      std::uint64_t start = std::max(p * p, (lo + p - 1) / p * p);
      for (std::uint64_t j = start; j < hi; j += p) sieve[j - lo] = 0;
    }
    for (std::uint64_t v = lo; v < hi; ++v) {
      const bool prime = v >= 2 && sieve[v - lo];
      if (prime && prev2) ++count;
      prev2 = prev1;
      prev1 = prime;
    }
  }
  return count;
}

/// Does p divide prod f_i(x) for every x in {0..p-1}^n? Plain enumeration.
inline bool brute_force_obstruction(const AffineSystem& system, std::uint32_t p) {
  const std::size_t n = system.dimension();
  std::vector<std::uint32_t> x(n, 0);
  while (true) {
    Point pt;
    for (auto c : x) pt.coords.emplace_back(c);
    Integer prod = 1;
    for (const auto& f : system.forms()) prod *= f(pt);
    if (prod % p != 0) return false;
    std::size_t j = 0;
    while (j < n && ++x[j] == p) x[j++] = 0;
    if (j == n) return true;
  }
}

/// Random system with n, m in [1, max_dim] and entries in [-max_entry, max_entry].
inline AffineSystem random_system(std::mt19937_64& rng, int max_dim = 3, int max_entry = 5) {
  std::uniform_int_distribution<int> dim(1, max_dim), entry(-max_entry, max_entry);
  while (true) {
    const std::size_t n = dim(rng), m = dim(rng);
    std::vector<AffineForm> forms;
    for (std::size_t i = 0; i < m; ++i) {
      AffineForm f;
      for (std::size_t j = 0; j < n; ++j) f.coefficients.emplace_back(entry(rng));
      f.constant = entry(rng);
      forms.push_back(std::move(f));
    }
    try {
      return AffineSystem(n, std::move(forms));
    } catch (const Error&) {
      // duplicate forms; draw again
    }
  }
}

inline Point random_point(std::mt19937_64& rng, std::size_t n, int range = 1000) {
  std::uniform_int_distribution<int> coord(-range, range);
  Point x;
  for (std::size_t j = 0; j < n; ++j) x.coords.emplace_back(coord(rng));
  return x;
}

/// Visits [-box, box]^n in canonical shell order, written independently of
/// the library: sort the whole box by (max-norm, lexicographic).
inline std::vector<std::vector<std::int64_t>> canonical_box(std::size_t n, std::int64_t box) {
  std::vector<std::vector<std::int64_t>> pts;
  std::vector<std::int64_t> x(n, -box);
  while (true) {
    pts.push_back(x);
    std::size_t j = n;
    while (j > 0 && x[j - 1] == box) x[--j] = -box;
    if (j == 0) break;
    ++x[j - 1];
  }
  auto norm = [](const std::vector<std::int64_t>& v) {
    std::int64_t s = 0;
    for (auto c : v) s = std::max<std::int64_t>(s, c < 0 ? -c : c);
    return s;
  };
  std::stable_sort(pts.begin(), pts.end(), [&](const auto& a, const auto& b) { return norm(a) < norm(b); });
  return pts;
}

inline Point to_point(const std::vector<std::int64_t>& v) {
  Point x;
  for (auto c : v) x.coords.emplace_back(c);
  return x;
}

}  // namespace dickson::oracle
