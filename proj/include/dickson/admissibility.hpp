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
#include <set>
#include <vector>

#include "dickson/feasibility.hpp"
#include "dickson/forms.hpp"
#include "dickson/polynomial.hpp"
#include "dickson/primality.hpp"
#include "dickson/shells.hpp"

namespace dickson {

// Decision procedure. A linear system F is admissible (for every r > 0 some
// integral x has all f_i(x) > 1 and gcd(prod f_i(x), r) = 1) exactly when
//
//   (a) A y > 0 has an integral solution y, and
//   (b) no prime p divides prod f_i(x) for every x.
//
// Sufficiency: for r > 0 pick, for each p | r, a residue point avoiding p,
// glue them by CRT into x0 mod rad(r), then walk x0 + rad(r) t y until every
// value exceeds 1. Necessity of (b) is immediate (take r = p). If (a) fails,
// Gordan's theorem gives lambda >= 0, lambda != 0, lambda^T A = 0, so
// lambda^T F(x) is a constant L. On points where all values are >= 2 the
// forms with lambda_i > 0 take finitely many value tuples; the product r of
// all their entries admits no witness.
//
// Only primes p <= m or p dividing some form's content can obstruct: for
// larger p each nonconstant form vanishes on one hyperplane of (Z_p)^n, and
// m hyperplanes cover at most m p^(n-1) < p^n residue points.

struct ObstructionReport {
  std::vector<Integer> primes;
  std::vector<Integer> candidates;
  /// Every prime up to this bound was a candidate (the number of forms).
  std::size_t candidate_bound = 0;
  friend bool operator==(const ObstructionReport&, const ObstructionReport&) = default;
};

struct AdmissibilityReport {
  bool admissible = false;
  PositivityOutcome positivity;
  ObstructionReport obstructions;
  friend bool operator==(const AdmissibilityReport&, const AdmissibilityReport&) = default;
};

/// Lexicographically smallest x in (Z_p)^n (x_1 most significant) with
/// p not dividing any f_i(x), or nullopt if p obstructs.
inline std::optional<Vector> first_good_residue(const AffineSystem& system, const Integer& p) {
  const std::size_t n = system.dimension();
  const std::size_t m = system.size();
  std::vector<Vector> coeffs(m, Vector(n));
  Vector values(m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) coeffs[i][j] = mod(system.coefficient(i, j), p);
    values[i] = mod(system[i].constant, p);
  }
  // Odometer with the last coordinate fastest; values track f_i(x) mod p.
  Vector x(n, 0);
  while (true) {
    bool good = std::none_of(values.begin(), values.end(), [](const Integer& v) { return v == 0; });
    if (good) return x;
    std::size_t j = n;
    while (j > 0) {
      --j;
      x[j] += 1;
      if (x[j] < p) {
        for (std::size_t i = 0; i < m; ++i) {
          values[i] += coeffs[i][j];
          if (values[i] >= p) values[i] -= p;
        }
        break;
      }
      x[j] = 0;
      for (std::size_t i = 0; i < m; ++i) {
        values[i] = mod(values[i] - coeffs[i][j] * (p - 1), p);
      }
      if (j == 0) return std::nullopt;
    }
  }
}

/// True iff p divides prod f_i(x) for every residue point x in (Z_p)^n.
inline bool local_obstruction_at(const AffineSystem& system, const Integer& p) {
  if (!is_prime(p)) throw Error(ErrorCode::not_prime, p.str() + " is not prime");
  std::size_t nonconstant = 0;
  for (const auto& f : system.forms()) {
    bool constant = std::all_of(f.coefficients.begin(), f.coefficients.end(),
                                [&](const Integer& a) { return a % p == 0; });
    if (constant && f.constant % p == 0) return true;
    if (!constant) ++nonconstant;
  }
  // Fewer hyperplanes than p cannot cover (Z_p)^n.
  if (Integer(nonconstant) < p) return false;
  return !first_good_residue(system, p).has_value();
}

inline ObstructionReport obstruction_primes(const AffineSystem& system) {
  ObstructionReport report;
  report.candidate_bound = system.size();
  std::set<Integer> candidates;
  for (std::uint32_t p : primes_up_to(static_cast<std::uint32_t>(system.size()))) candidates.insert(p);
  for (const auto& c : profile(system).contents) {
    if (c == 0) {
      candidates.insert(2);  // the zero form: every prime divides it
    } else {
      for (const auto& p : prime_divisors(c)) candidates.insert(p);
    }
  }
  for (const auto& p : candidates) {
    report.candidates.push_back(p);
    if (local_obstruction_at(system, p)) report.primes.push_back(p);
  }
  return report;
}

inline AdmissibilityReport admissible_check(const AffineSystem& system) {
  AdmissibilityReport report;
  report.positivity = positivity_analyze(system);
  report.obstructions = obstruction_primes(system);
  report.admissible = is_direction(report.positivity) && report.obstructions.primes.empty();
  return report;
}

/// Positivity direction of an admissible system, or NotAdmissible.
inline Point require_admissible(const AffineSystem& system) {
  auto report = admissible_check(system);
  if (!report.admissible) {
    std::string why;
    if (!is_direction(report.positivity)) {
      why = "no direction makes every linear part positive";
    } else {
      why = "fixed prime divisor " + report.obstructions.primes.front().str();
    }
    throw Error(ErrorCode::not_admissible, why);
  }
  return std::get<PositiveDirection>(report.positivity).y;
}

/// Point with every f_i > 1 and no f_i divisible by any of `primes`.
/// Per prime the lexicographically first good residue is taken, the residues
/// are glued by CRT, and x = x0 + R t y for the least t >= 0 that works.
inline Point witness_avoiding(const AffineSystem& system, const Point& direction, std::span<const Integer> primes) {
  const std::size_t n = system.dimension();
  Vector x0(n, 0);
  Integer modulus = 1;
  for (const auto& p : primes) {
    auto residue = first_good_residue(system, p);
    if (!residue) throw Error(ErrorCode::not_admissible, "fixed prime divisor " + p.str());
    const Integer inv = inverse_mod(modulus % p, p);
    for (std::size_t j = 0; j < n; ++j) {
      Integer lift = mod(((*residue)[j] - x0[j]) * inv, p);
      x0[j] += modulus * lift;
    }
    modulus *= p;
  }
  const Point base{x0};
  const Vector values = evaluate(system, base);
  const Vector slopes = linear_parts(system, direction);
  Integer t = 0;
  for (std::size_t i = 0; i < system.size(); ++i) {
    if (slopes[i] < 1) throw Error(ErrorCode::invalid_argument, "direction is not positive on every form");
    Integer need = ceil_div(2 - values[i], modulus * slopes[i]);
    if (need > t) t = need;
  }
  Point x = base;
  for (std::size_t j = 0; j < n; ++j) x[j] += modulus * t * direction[j];
  return x;
}

/// Condition-A witness: all f_i(x) > 1 and gcd(prod f_i(x), r) = 1.
/// Primes of r below max(2^16, m) or dividing a slope are glued by CRT. The
/// cofactor R keeps only primes that exceed m and miss every slope, so each
/// rules out at most m steps along the direction; the first good step is
/// taken and R is never factored.
inline Point admissible_witness(const AffineSystem& system, const Integer& r) {
  if (r < 1) throw Error(ErrorCode::invalid_argument, "r must be a positive integer");
  const Point direction = require_admissible(system);
  const Vector slopes = linear_parts(system, direction);
  std::set<Integer> known;
  Integer rest = r;
  auto strip = [&](const Integer& p) {
    if (rest % p != 0) return;
    known.insert(p);
    while (rest % p == 0) rest /= p;
  };
  static const std::vector<std::uint32_t> trial = primes_up_to(1 << 16);
  for (std::uint32_t p : trial) strip(p);
  if (system.size() > (1u << 16)) {
    for (std::uint32_t p : primes_up_to(static_cast<std::uint32_t>(system.size()))) strip(p);
  }
  for (const auto& slope : slopes) {
    const Integer g = gcd(slope, rest);
    if (g > 1) {
      for (const auto& p : prime_divisors(g)) strip(p);
    }
  }
  const std::vector<Integer> primes(known.begin(), known.end());
  Point x = witness_avoiding(system, direction, primes);
  const Integer modulus = product(primes);
  while (gcd(product(evaluate(system, x)), rest) != 1) {
    for (std::size_t j = 0; j < x.dimension(); ++j) x[j] += modulus * direction[j];
  }
  return x;
}

/// alpha: product of the nonzero constants (1 when all vanish).
inline Integer constant_product(const AffineSystem& system) {
  Integer alpha = 1;
  for (const auto& f : system.forms()) {
    if (f.constant != 0) alpha *= f.constant;
  }
  return alpha;
}

enum class Lemma1Strategy {
  automatic,    // primorial while the prime bound stays small, else prime_values
  primorial,    // admissible_witness with r = product of primes <= 2|alpha| c e
  prime_values, // search an obstruction-free progression for all-prime values
};

inline constexpr std::uint32_t kPrimorialLimit = 100'000;

namespace detail {

inline Point lemma1_prime_values(const AffineSystem& system, const Point& direction, const Integer& c,
                                 std::uint64_t budget) {
  const auto e = profile(system).e;
  const Vector slopes = linear_parts(system, direction);

  // Avoid every prime <= m and every prime dividing a slope. Along the
  // progression each form then has content 1, and a prime outside this set
  // exceeds m, so m forms cannot cover all its residues: no obstruction.
  std::set<Integer> avoid;
  for (std::uint32_t p : primes_up_to(static_cast<std::uint32_t>(system.size()))) avoid.insert(p);
  for (const auto& s : slopes) {
    for (const auto& p : prime_divisors(s)) avoid.insert(p);
  }
  const std::vector<Integer> primes(avoid.begin(), avoid.end());
  const Point base = witness_avoiding(system, direction, primes);
  const Integer modulus = product(primes);
  const Vector start = evaluate(system, base);

  Integer step = 0;
  for (std::size_t i = 0; i < system.size(); ++i) {
    // value > c and linear part > e, i.e. value > e + b_i
    Integer floor_value = std::max(c, Integer(e + system[i].constant));
    Integer need = floor_div(floor_value - start[i], modulus * slopes[i]) + 1;
    if (need > step) step = need;
  }
  for (std::uint64_t k = 0; k < budget; ++k, ++step) {
    bool all_prime = true;
    for (std::size_t i = 0; i < system.size() && all_prime; ++i) {
      all_prime = is_prime(start[i] + step * modulus * slopes[i]);
    }
    if (all_prime) {
      Point x = base;
      for (std::size_t j = 0; j < x.dimension(); ++j) x[j] += step * modulus * direction[j];
      return x;
    }
  }
  throw Error(ErrorCode::budget_exhausted, "no all-prime point within " + std::to_string(budget) + " progression steps");
}

}  // namespace detail

/// Point whose value product has only prime divisors > c and whose linear
/// parts all exceed e (the max row 1-norm).
inline Point lemma1_witness(const AffineSystem& system, const Integer& c,
                            Lemma1Strategy strategy = Lemma1Strategy::automatic,
                            std::uint64_t budget = 1'000'000) {
  if (c < 1) throw Error(ErrorCode::invalid_argument, "c must be a positive integer");
  const Point direction = require_admissible(system);
  const Integer bound = 2 * abs(constant_product(system)) * c * profile(system).e;
  if (strategy == Lemma1Strategy::automatic) {
    strategy = bound <= kPrimorialLimit ? Lemma1Strategy::primorial : Lemma1Strategy::prime_values;
  }
  if (strategy == Lemma1Strategy::prime_values) return detail::lemma1_prime_values(system, direction, c, budget);
  if (bound > kPrimorialLimit) {
    throw Error(ErrorCode::budget_exhausted,
                "primorial bound " + bound.str() + " exceeds " + std::to_string(kPrimorialLimit));
  }
  std::vector<Integer> primes;
  for (std::uint32_t p : primes_up_to(static_cast<std::uint32_t>(bound))) primes.emplace_back(p);
  return witness_avoiding(system, direction, primes);
}

/// First point of [-box, box]^n in canonical shell order where every
/// polynomial exceeds 1 and the product is coprime to r. nullopt says nothing
/// about admissibility.
inline std::optional<Point> probe_general(std::span<const Polynomial> map, const Integer& r, std::int64_t box) {
  if (map.empty()) throw Error(ErrorCode::empty_system, "probe needs at least one polynomial");
  if (r < 1) throw Error(ErrorCode::invalid_argument, "r must be a positive integer");
  if (box < 0) throw Error(ErrorCode::invalid_argument, "box must be nonnegative");
  const std::size_t n = map.front().dimension();
  for (const auto& f : map) {
    if (f.dimension() != n) throw Error(ErrorCode::dimension_mismatch, "polynomials disagree on n");
  }
  std::optional<Point> found;
  Vector x(n);
  for_each_in_box(n, box, [&](const std::vector<std::int64_t>& coords) {
    for (std::size_t j = 0; j < n; ++j) x[j] = coords[j];
    for (const auto& f : map) {
      Integer v = f(x);
      if (v <= 1 || gcd(v, r) != 1) return true;
    }
    found = Point{x};
    return false;
  });
  return found;
}

}  // namespace dickson
