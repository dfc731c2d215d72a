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

#include <algorithm>
#include <atomic>
#include <optional>
#include <thread>
#include <vector>

#include "dickson/admissibility.hpp"
#include "dickson/forms.hpp"

namespace dickson {

/// The value set of F is the coset b + A Z^n. `basis` is the Hermite normal
/// form of the column lattice A Z^n: basis[k] has its first nonzero entry
/// (positive) at coordinate pivots[k], pivots strictly increase, and entries
/// of earlier vectors at later pivots are reduced into [0, pivot).
struct ImageLattice {
  std::size_t rank = 0;
  std::vector<Vector> basis;
  std::vector<std::size_t> pivots;
  Vector offset;
  /// preimages[k] is an integral x with A x = basis[k].
  std::vector<Point> preimages;
};

/// Row-reduces A^T (generators as rows) by unimodular operations, tracking
/// the transform so each basis vector keeps an explicit preimage.
inline ImageLattice image_lattice(const AffineSystem& system) {
  const std::size_t n = system.dimension();
  const std::size_t m = system.size();
  std::vector<Vector> rows(n, Vector(m));
  std::vector<Vector> transform(n, Vector(n, 0));
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < m; ++i) rows[j][i] = system.coefficient(i, j);
    transform[j][j] = 1;
  }

  auto combine = [&](std::size_t r1, std::size_t r2, const Integer& a, const Integer& b, const Integer& c,
                     const Integer& d) {
    // (row r1, row r2) <- (a*r1 + b*r2, c*r1 + d*r2), ad - bc = 1
    for (auto* mat : {&rows, &transform}) {
      auto& A = *mat;
      for (std::size_t k = 0; k < A[r1].size(); ++k) {
        Integer u = a * A[r1][k] + b * A[r2][k];
        Integer v = c * A[r1][k] + d * A[r2][k];
        A[r1][k] = std::move(u);
        A[r2][k] = std::move(v);
      }
    }
  };

  ImageLattice lattice;
  std::size_t pivot_row = 0;
  for (std::size_t col = 0; col < m && pivot_row < n; ++col) {
    for (std::size_t r = pivot_row + 1; r < n; ++r) {
      if (rows[r][col] == 0) continue;
      const Integer a = rows[pivot_row][col];
      const Integer b = rows[r][col];
      // extended gcd: s a + t b = g
      Integer old_r = a, rr = b, s0 = 1, s1 = 0, t0 = 0, t1 = 1;
      while (rr != 0) {
        Integer q = floor_div(old_r, rr);
        Integer tmp = old_r - q * rr;
        old_r = rr;
        rr = tmp;
        tmp = s0 - q * s1;
        s0 = s1;
        s1 = tmp;
        tmp = t0 - q * t1;
        t0 = t1;
        t1 = tmp;
      }
      const Integer g = old_r;
      combine(pivot_row, r, s0, t0, Integer(-b / g), Integer(a / g));
    }
    if (rows[pivot_row][col] == 0) continue;
    if (rows[pivot_row][col] < 0) {
      for (auto& v : rows[pivot_row]) v = -v;
      for (auto& v : transform[pivot_row]) v = -v;
    }
    const Integer& piv = rows[pivot_row][col];
    for (std::size_t r = 0; r < pivot_row; ++r) {
      Integer q = floor_div(rows[r][col], piv);
      if (q == 0) continue;
      combine(r, pivot_row, Integer(1), Integer(-q), Integer(0), Integer(1));
    }
    lattice.pivots.push_back(col);
    ++pivot_row;
  }
  lattice.rank = pivot_row;
  for (std::size_t k = 0; k < pivot_row; ++k) {
    lattice.basis.push_back(rows[k]);
    lattice.preimages.push_back(Point{transform[k]});
  }
  for (const auto& f : system.forms()) lattice.offset.push_back(f.constant);
  return lattice;
}

/// Integer coordinates of v in the basis, or nullopt if v is not in the lattice.
inline std::optional<Vector> lattice_coordinates(const ImageLattice& lattice, Vector v) {
  Vector coords(lattice.rank);
  std::size_t k = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (k < lattice.rank && lattice.pivots[k] == i) {
      const Integer& piv = lattice.basis[k][i];
      if (v[i] % piv != 0) return std::nullopt;
      coords[k] = v[i] / piv;
      for (std::size_t l = i; l < v.size(); ++l) v[l] -= coords[k] * lattice.basis[k][l];
      ++k;
    } else if (v[i] != 0) {
      return std::nullopt;
    }
  }
  return coords;
}

/// Values with 1 < values_i <= k and gcd(values_i, k) = 1, attained at x.
struct StrongWitness {
  Integer k;
  Point x;
  Vector values;
  friend bool operator==(const StrongWitness&, const StrongWitness&) = default;
};

inline bool verify_strong_witness(const AffineSystem& system, const StrongWitness& w) {
  if (evaluate(system, w.x) != w.values) return false;
  for (const auto& v : w.values) {
    if (v <= 1 || v > w.k || gcd(v, w.k) != 1) return false;
  }
  return true;
}

namespace detail {

struct StrongSearch {
  const ImageLattice& lattice;
  const Integer& k;
  std::size_t m;
  Vector values;
  Vector coeffs;

  // partial = offset + sum of chosen multiples of basis[0..level)
  bool descend(std::size_t i, std::size_t level, Vector& partial) {
    if (i == m) return true;
    if (level < lattice.rank && lattice.pivots[level] == i) {
      const Vector& b = lattice.basis[level];
      const Integer& piv = b[i];
      Integer v = partial[i] + (ceil_div(2 - partial[i], piv)) * piv;
      for (; v <= k; v += piv) {
        if (gcd(v, k) != 1) continue;
        Integer c = (v - partial[i]) / piv;
        Vector next = partial;
        for (std::size_t l = i; l < m; ++l) next[l] += c * b[l];
        values[i] = v;
        coeffs[level] = c;
        if (descend(i + 1, level + 1, next)) return true;
      }
      return false;
    }
    const Integer& v = partial[i];
    if (v <= 1 || v > k || gcd(v, k) != 1) return false;
    values[i] = v;
    return descend(i + 1, level, partial);
  }
};

}  // namespace detail

/// Lexicographically smallest value tuple in (b + A Z^n) meeting [2, k]^m
/// with every entry coprime to k, plus a preimage point.
inline std::optional<StrongWitness> strong_witness(const AffineSystem& system, const ImageLattice& lattice,
                                                   const Integer& k) {
  if (k < 1) throw Error(ErrorCode::invalid_argument, "k must be a positive integer");
  const std::size_t m = system.size();
  detail::StrongSearch search{lattice, k, m, Vector(m), Vector(lattice.rank)};
  Vector partial = lattice.offset;
  if (!search.descend(0, 0, partial)) return std::nullopt;
  Point x{Vector(system.dimension(), 0)};
  for (std::size_t l = 0; l < lattice.rank; ++l) {
    for (std::size_t j = 0; j < x.dimension(); ++j) x[j] += search.coeffs[l] * lattice.preimages[l][j];
  }
  return StrongWitness{k, std::move(x), std::move(search.values)};
}

inline std::optional<StrongWitness> strong_witness(const AffineSystem& system, const Integer& k) {
  return strong_witness(system, image_lattice(system), k);
}

struct EmpiricalConstant {
  Integer c_emp;
  std::vector<std::uint64_t> failures;
  std::uint64_t bound = 0;
};

/// Scans k = 1..bound. c_emp = 1 + the largest failing k (1 if none). This
/// is only a lower estimate of the strongly admissible constant.
inline EmpiricalConstant empirical_constant(const AffineSystem& system, std::uint64_t bound, unsigned workers = 1) {
  require_admissible(system);
  const ImageLattice lattice = image_lattice(system);
  workers = std::max(1u, workers);
  std::vector<char> failed(bound + 1, 0);
  std::atomic<std::uint64_t> next{1};
  auto work = [&] {
    for (std::uint64_t k = next++; k <= bound; k = next++) {
      if (!strong_witness(system, lattice, Integer(k))) failed[k] = 1;
    }
  };
  std::vector<std::thread> pool;
  for (unsigned w = 1; w < workers; ++w) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();

  EmpiricalConstant result{1, {}, bound};
  for (std::uint64_t k = 1; k <= bound; ++k) {
    if (failed[k]) result.failures.push_back(k);
  }
  if (!result.failures.empty()) result.c_emp = Integer(result.failures.back()) + 1;
  return result;
}

}  // namespace dickson
