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

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dickson/admissibility.hpp"
#include "dickson/strong.hpp"

namespace dickson {

// Executable form of the argument that admissible linear systems are
// strongly admissible: every k >= prod f_i(z) f_i(w) has a witness in
// Z_k^* \ {1}, built from helper points y, z, w (and v for the cofactor t).

enum class Theorem1Branch { z_branch, w_branch, d_equals_one_branch, congruent_branch, matrix_branch };

inline const char* branch_name(Theorem1Branch b) {
  switch (b) {
    case Theorem1Branch::z_branch: return "zBranch";
    case Theorem1Branch::w_branch: return "wBranch";
    case Theorem1Branch::d_equals_one_branch: return "dEqualsOneBranch";
    case Theorem1Branch::congruent_branch: return "congruentBranch";
    case Theorem1Branch::matrix_branch: return "matrixBranch";
  }
  return "unknown";
}

/// Helper points that do not depend on k.
struct Theorem1Setup {
  Integer e;
  Integer alpha;
  Point y, z, w;
  Vector fy, fz, fw;
  Integer prod_y, prod_z, prod_w;
  /// 1 + e + m * prod f_i(z) * max_j sum_i |a_ji y_i|
  Integer w_threshold;
  /// k at or above this value is covered by the construction.
  Integer proof_bound;
};

struct Theorem1Trace {
  Theorem1Setup setup;
  Integer k;
  Theorem1Branch branch = Theorem1Branch::z_branch;
  // Populated from the k = p q t decomposition onward.
  std::optional<Integer> p, q, t, d;
  unsigned p_exponent = 0;
  std::optional<Point> v;
  Vector shifts;
  std::vector<Point> family;
  std::vector<Vector> matrix;  // m rows, m + 1 columns
  std::optional<std::size_t> chosen_column;  // zero-based
  StrongWitness witness;
};

/// y: values > 1 and linear parts > e. z: every prime divisor of
/// prod f_i(z) exceeds prod f_i(y). w: every prime divisor of prod f_i(w)
/// exceeds the threshold above. Helpers are found by searching an
/// obstruction-free progression for all-prime values, which keeps their
/// magnitudes small enough to trace.
inline Theorem1Setup theorem1_setup(const AffineSystem& system) {
  require_admissible(system);
  Theorem1Setup s;
  s.e = profile(system).e;
  s.alpha = constant_product(system);
  s.y = lemma1_witness(system, 1, Lemma1Strategy::prime_values);
  s.fy = evaluate(system, s.y);
  s.prod_y = product(s.fy);
  s.z = lemma1_witness(system, s.prod_y, Lemma1Strategy::prime_values);
  s.fz = evaluate(system, s.z);
  s.prod_z = product(s.fz);
  Integer max_abs = 0;
  for (std::size_t i = 0; i < system.size(); ++i) {
    Integer sum = 0;
    for (std::size_t j = 0; j < system.dimension(); ++j) sum += abs(Integer(system.coefficient(i, j) * s.y[j]));
    max_abs = std::max(max_abs, sum);
  }
  s.w_threshold = 1 + s.e + Integer(system.size()) * s.prod_z * max_abs;
  s.w = lemma1_witness(system, s.w_threshold, Lemma1Strategy::prime_values);
  s.fw = evaluate(system, s.w);
  s.prod_w = product(s.fw);
  s.proof_bound = s.prod_z * s.prod_w;
  return s;
}

namespace detail {

inline StrongWitness checked_witness(const AffineSystem& system, const Integer& k, const Point& x,
                                     Theorem1Branch branch) {
  StrongWitness w{k, x, evaluate(system, x)};
  for (const auto& v : w.values) {
    if (v <= 1 || v >= k || gcd(v, k) != 1) {
      throw Error(ErrorCode::proof_gap_detected, std::string(branch_name(branch)) + " produced value " + v.str() +
                                                     " outside Z_" + k.str() + "^* \\ {1}");
    }
  }
  return w;
}

// Least prime dividing both k and prod(values), found by factoring the
// values one at a time (helper values are usually prime themselves).
inline Integer smallest_shared_prime(const Integer& k, std::span<const Integer> values) {
  std::optional<Integer> best;
  for (const auto& v : values) {
    const Integer g = gcd(k, v);
    if (g == 1) continue;
    const Integer p = prime_divisors(g).front();
    if (!best || p < *best) best = p;
  }
  return *best;
}

}  // namespace detail

inline Theorem1Trace theorem1_trace(const AffineSystem& system, const Theorem1Setup& setup, const Integer& k) {
  if (k < setup.proof_bound) {
    throw Error(ErrorCode::below_proof_bound,
                "k = " + k.str() + " is below the construction bound " + setup.proof_bound.str());
  }
  Theorem1Trace trace;
  trace.setup = setup;
  trace.k = k;

  const Integer gz = gcd(k, setup.prod_z);
  if (gz == 1) {
    trace.branch = Theorem1Branch::z_branch;
    trace.witness = detail::checked_witness(system, k, setup.z, trace.branch);
    return trace;
  }
  const Integer gw = gcd(k, setup.prod_w);
  if (gw == 1) {
    trace.branch = Theorem1Branch::w_branch;
    trace.witness = detail::checked_witness(system, k, setup.w, trace.branch);
    return trace;
  }

  // k = p q t with p | prod f(z), q | prod f(w); smallest such primes.
  const Integer p = detail::smallest_shared_prime(k, setup.fz);
  const Integer q = detail::smallest_shared_prime(k, setup.fw);
  if (p == q || k % (p * q) != 0) {
    throw Error(ErrorCode::proof_gap_detected, "could not split k into p q t");
  }
  const Integer t = k / (p * q);
  trace.p = p;
  trace.q = q;
  trace.t = t;
  trace.v = admissible_witness(system, t);
  Integer d = t;
  while (d % p == 0) {
    d /= p;
    ++trace.p_exponent;
  }
  trace.d = d;

  if (d == 1) {
    trace.branch = Theorem1Branch::d_equals_one_branch;
    trace.witness = detail::checked_witness(system, k, setup.y, trace.branch);
    return trace;
  }
  const std::size_t n = system.dimension();
  bool congruent = true;
  for (std::size_t j = 0; j < n; ++j) congruent = congruent && mod(setup.y[j] - (*trace.v)[j], d) == 0;
  if (congruent) {
    trace.branch = Theorem1Branch::congruent_branch;
    trace.witness = detail::checked_witness(system, k, setup.y, trace.branch);
    return trace;
  }

  trace.branch = Theorem1Branch::matrix_branch;
  // y_i + p r_i = v_i (mod d), 0 <= r_i < d
  const Integer p_inv = inverse_mod(p, d);
  for (std::size_t j = 0; j < n; ++j) trace.shifts.push_back(mod(((*trace.v)[j] - setup.y[j]) * p_inv, d));
  const std::size_t m = system.size();
  trace.matrix.assign(m, Vector());
  for (std::size_t h = 1; h <= m + 1; ++h) {
    Point x{Vector(n)};
    for (std::size_t j = 0; j < n; ++j) x[j] = setup.y[j] + p * trace.shifts[j] + p * d * Integer(h) * setup.y[j];
    const Vector values = evaluate(system, x);
    for (std::size_t i = 0; i < m; ++i) trace.matrix[i].push_back(values[i]);
    trace.family.push_back(std::move(x));
  }
  for (std::size_t h = 0; h <= m; ++h) {
    bool coprime = true;
    for (std::size_t i = 0; i < m && coprime; ++i) coprime = trace.matrix[i][h] % q != 0;
    if (coprime) {
      trace.chosen_column = h;
      break;
    }
  }
  if (!trace.chosen_column) {
    throw Error(ErrorCode::proof_gap_detected, "every column of the matrix has a value divisible by q = " + q.str());
  }
  trace.witness = detail::checked_witness(system, k, trace.family[*trace.chosen_column], trace.branch);
  return trace;
}

inline Theorem1Trace theorem1_trace(const AffineSystem& system, const Integer& k) {
  return theorem1_trace(system, theorem1_setup(system), k);
}

/// Re-checks a trace against the system without trusting any stored value.
inline bool verify_trace(const AffineSystem& system, const Theorem1Trace& trace) {
  const auto& s = trace.setup;
  if (!verify_strong_witness(system, trace.witness)) return false;
  for (const auto& v : trace.witness.values) {
    if (v >= trace.k) return false;
  }
  if (trace.branch != Theorem1Branch::matrix_branch) return true;
  const std::size_t m = system.size();
  if (trace.family.size() != m + 1 || trace.matrix.size() != m) return false;
  const Integer& p = *trace.p;
  const Integer& d = *trace.d;
  if (*trace.p * *trace.q * *trace.t != trace.k) return false;
  if (d * boost::multiprecision::pow(p, trace.p_exponent) != *trace.t || d % p == 0) return false;
  for (std::size_t h = 0; h <= m; ++h) {
    for (std::size_t j = 0; j < system.dimension(); ++j) {
      if (trace.family[h][j] != s.y[j] + p * trace.shifts[j] + p * d * Integer(h + 1) * s.y[j]) return false;
    }
    const Vector values = evaluate(system, trace.family[h]);
    for (std::size_t i = 0; i < m; ++i) {
      if (trace.matrix[i].size() != m + 1 || trace.matrix[i][h] != values[i]) return false;
    }
  }
  return trace.witness.x == trace.family[*trace.chosen_column];
}

}  // namespace dickson
