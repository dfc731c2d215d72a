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

#include <map>
#include <optional>
#include <variant>
#include <vector>

#include "dickson/forms.hpp"

namespace dickson {

/// Integer y with (A y)_i >= 1 for every form.
struct PositiveDirection {
  Point y;
  friend bool operator==(const PositiveDirection&, const PositiveDirection&) = default;
};

/// Nonnegative, nonzero, primitive lambda with lambda^T A = 0. Then
/// lambda^T F(x) = lambda_dot_b for every integral x.
struct GordanCertificate {
  Vector lambda;
  Integer lambda_dot_b;
  friend bool operator==(const GordanCertificate&, const GordanCertificate&) = default;
};

using PositivityOutcome = std::variant<PositiveDirection, GordanCertificate>;

namespace detail {

// Invariant: coeffs == lambda^T A for the original coefficient matrix A.
struct FmRow {
  Vector coeffs;
  Vector lambda;
};

inline bool all_zero(const Vector& v) {
  return std::all_of(v.begin(), v.end(), [](const Integer& a) { return a == 0; });
}

inline Integer content_of(const Vector& v) {
  Integer g = 0;
  for (const auto& a : v) g = gcd(g, a);
  return g;
}

inline void make_primitive(FmRow& row) {
  Integer g = gcd(content_of(row.coeffs), content_of(row.lambda));
  if (g > 1) {
    for (auto& a : row.coeffs) a /= g;
    for (auto& a : row.lambda) a /= g;
  }
}

inline Vector primitive_direction(const Vector& v) {
  Integer g = content_of(v);
  Vector out = v;
  if (g > 1) {
    for (auto& a : out) a /= g;
  }
  return out;
}

inline GordanCertificate make_certificate(const AffineSystem& system, Vector lambda) {
  Integer g = content_of(lambda);
  for (auto& l : lambda) l /= g;
  Integer dot = 0;
  for (std::size_t i = 0; i < system.size(); ++i) dot += lambda[i] * system[i].constant;
  return GordanCertificate{std::move(lambda), std::move(dot)};
}

// Integer in the open interval (lo, hi) closest to zero, or the midpoint if
// the interval holds no integer. Missing ends are unbounded.
inline Rational pick_between(const std::optional<Rational>& lo, const std::optional<Rational>& hi) {
  auto floor_of = [](const Rational& q) {
    return Rational(floor_div(boost::multiprecision::numerator(q), boost::multiprecision::denominator(q)));
  };
  auto ceil_of = [](const Rational& q) {
    return Rational(ceil_div(boost::multiprecision::numerator(q), boost::multiprecision::denominator(q)));
  };
  if (!lo && !hi) return Rational(0);
  if (lo && !hi) return *lo < 0 ? Rational(0) : floor_of(*lo) + 1;
  if (!lo && hi) return *hi > 0 ? Rational(0) : ceil_of(*hi) - 1;
  if (*lo < 0 && *hi > 0) return Rational(0);
  Rational candidate = *lo >= 0 ? floor_of(*lo) + 1 : ceil_of(*hi) - 1;
  if (candidate > *lo && candidate < *hi) return candidate;
  return (*lo + *hi) / 2;
}

}  // namespace detail

/// Decides whether A y > 0 has a rational solution by Fourier-Motzkin
/// elimination with multiplier tracking. Infeasibility yields the Gordan
/// certificate carried by the row that collapses to 0 > 0.
inline PositivityOutcome positivity_analyze(const AffineSystem& system) {
  const std::size_t n = system.dimension();
  const std::size_t m = system.size();

  std::vector<detail::FmRow> rows;
  for (std::size_t i = 0; i < m; ++i) {
    Vector lambda(m, 0);
    lambda[i] = 1;
    rows.push_back({system[i].coefficients, std::move(lambda)});
  }

  auto zero_row = [&](const std::vector<detail::FmRow>& current) -> std::optional<GordanCertificate> {
    for (const auto& row : current) {
      if (detail::all_zero(row.coeffs)) return detail::make_certificate(system, row.lambda);
    }
    return std::nullopt;
  };

  std::vector<std::vector<detail::FmRow>> stages;
  for (std::size_t var = 0; var < n; ++var) {
    if (auto cert = zero_row(rows)) return *cert;
    stages.push_back(rows);

    std::vector<detail::FmRow> next;
    std::vector<const detail::FmRow*> pos, neg;
    for (const auto& row : rows) {
      if (row.coeffs[var] > 0) {
        pos.push_back(&row);
      } else if (row.coeffs[var] < 0) {
        neg.push_back(&row);
      } else {
        next.push_back(row);
      }
    }
    for (const auto* p : pos) {
      for (const auto* q : neg) {
        const Integer wp = -q->coeffs[var];
        const Integer wq = p->coeffs[var];
        detail::FmRow combined;
        combined.coeffs.resize(n);
        combined.lambda.resize(m);
        for (std::size_t j = 0; j < n; ++j) combined.coeffs[j] = wp * p->coeffs[j] + wq * q->coeffs[j];
        for (std::size_t i = 0; i < m; ++i) combined.lambda[i] = wp * p->lambda[i] + wq * q->lambda[i];
        detail::make_primitive(combined);
        next.push_back(std::move(combined));
      }
    }

    // Rows with positively proportional coefficients are redundant.
    std::map<Vector, std::size_t> seen;
    std::vector<detail::FmRow> unique;
    for (auto& row : next) {
      Vector key = detail::all_zero(row.coeffs) ? row.coeffs : detail::primitive_direction(row.coeffs);
      if (!detail::all_zero(row.coeffs) && seen.count(key)) continue;
      seen.emplace(std::move(key), unique.size());
      unique.push_back(std::move(row));
    }
    rows = std::move(unique);
  }
  if (auto cert = zero_row(rows)) return *cert;

  // Feasible: back-substitute through the stored stages.
  std::vector<Rational> y(n, Rational(0));
  for (std::size_t k = n; k-- > 0;) {
    std::optional<Rational> lo, hi;
    for (const auto& row : stages[k]) {
      const Integer& c = row.coeffs[k];
      if (c == 0) continue;
      Rational rest = 0;
      for (std::size_t j = k + 1; j < n; ++j) rest += Rational(row.coeffs[j]) * y[j];
      Rational bound = -rest / Rational(c);
      if (c > 0) {
        if (!lo || bound > *lo) lo = bound;
      } else {
        if (!hi || bound < *hi) hi = bound;
      }
    }
    y[k] = detail::pick_between(lo, hi);
  }

  Integer lcm = 1;
  for (const auto& q : y) {
    const Integer den = boost::multiprecision::denominator(q);
    lcm = lcm / gcd(lcm, den) * den;
  }
  Vector direction;
  for (const auto& q : y) {
    direction.push_back(boost::multiprecision::numerator(q) * (lcm / boost::multiprecision::denominator(q)));
  }
  return PositiveDirection{Point{detail::primitive_direction(direction)}};
}

/// Exact re-check of either outcome against the system.
inline bool verify_outcome(const AffineSystem& system, const PositivityOutcome& outcome) {
  if (const auto* dir = std::get_if<PositiveDirection>(&outcome)) {
    require_dimension(system, dir->y);
    for (const auto& v : linear_parts(system, dir->y)) {
      if (v < 1) return false;
    }
    return true;
  }
  const auto& cert = std::get<GordanCertificate>(outcome);
  if (cert.lambda.size() != system.size()) {
    throw Error(ErrorCode::dimension_mismatch, "certificate has " + std::to_string(cert.lambda.size()) +
                                                   " multipliers, system has " + std::to_string(system.size()) +
                                                   " forms");
  }
  bool nonzero = false;
  Integer g = 0;
  for (const auto& l : cert.lambda) {
    if (l < 0) return false;
    if (l != 0) nonzero = true;
    g = gcd(g, l);
  }
  if (!nonzero || g != 1) return false;
  for (std::size_t j = 0; j < system.dimension(); ++j) {
    Integer s = 0;
    for (std::size_t i = 0; i < system.size(); ++i) s += cert.lambda[i] * system.coefficient(i, j);
    if (s != 0) return false;
  }
  Integer dot = 0;
  for (std::size_t i = 0; i < system.size(); ++i) dot += cert.lambda[i] * system[i].constant;
  return dot == cert.lambda_dot_b;
}

inline bool is_direction(const PositivityOutcome& outcome) {
  return std::holds_alternative<PositiveDirection>(outcome);
}

}  // namespace dickson
