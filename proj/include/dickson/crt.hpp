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
#include <vector>

#include "dickson/admissibility.hpp"
#include "dickson/forms.hpp"
#include "dickson/primesearch.hpp"
#include "dickson/strong.hpp"

namespace dickson {

/// An element of (Z_a)^n, coordinates in [0, a-1], or of (Z_a^*)^n when
/// `unit` is set, coordinates in [1, a] and coprime to a.
struct ResiduePoint {
  Integer modulus;
  Vector coords;
  bool unit = false;

  friend bool operator==(const ResiduePoint&, const ResiduePoint&) = default;
};

inline bool valid(const ResiduePoint& r) {
  if (r.modulus < 1) return false;
  for (const auto& c : r.coords) {
    if (r.unit) {
      if (c < 1 || c > r.modulus || gcd(c, r.modulus) != 1) return false;
    } else if (c < 0 || c >= r.modulus) {
      return false;
    }
  }
  return true;
}

inline void require_pairwise_coprime(std::span<const Integer> moduli) {
  for (std::size_t i = 0; i < moduli.size(); ++i) {
    if (moduli[i] < 1) throw Error(ErrorCode::invalid_argument, "moduli must be positive");
    for (std::size_t j = i + 1; j < moduli.size(); ++j) {
      if (gcd(moduli[i], moduli[j]) != 1) {
        throw Error(ErrorCode::non_coprime_moduli, moduli[i].str() + " and " + moduli[j].str() + " share a factor");
      }
    }
  }
}

namespace detail {

// Representative of residue class `r` in Z_a or Z_a^*.
inline Integer canonical(const Integer& r, const Integer& a, bool unit) {
  Integer v = mod(r, a);
  if (unit && v == 0) v = a;
  return v;
}

}  // namespace detail

/// Coordinatewise CRT lift to the product modulus.
inline ResiduePoint crt_combine(std::span<const ResiduePoint> points) {
  if (points.empty()) throw Error(ErrorCode::invalid_argument, "nothing to combine");
  const std::size_t n = points.front().coords.size();
  const bool unit = points.front().unit;
  std::vector<Integer> moduli;
  for (const auto& p : points) {
    if (p.coords.size() != n) throw Error(ErrorCode::dimension_mismatch, "residue points disagree on n");
    if (p.unit != unit) throw Error(ErrorCode::invalid_argument, "residue points disagree on the unit flag");
    if (!valid(p)) throw Error(ErrorCode::invalid_argument, "residue out of range for modulus " + p.modulus.str());
    moduli.push_back(p.modulus);
  }
  require_pairwise_coprime(moduli);

  ResiduePoint out{1, Vector(n, 0), unit};
  for (const auto& p : points) {
    const Integer inv = inverse_mod(out.modulus % p.modulus, p.modulus);
    for (std::size_t j = 0; j < n; ++j) {
      out.coords[j] += out.modulus * mod((p.coords[j] - out.coords[j]) * inv, p.modulus);
    }
    out.modulus *= p.modulus;
  }
  for (auto& c : out.coords) c = detail::canonical(c, out.modulus, unit);
  return out;
}

inline std::vector<ResiduePoint> crt_split(const ResiduePoint& point, std::span<const Integer> moduli) {
  require_pairwise_coprime(moduli);
  if (product(moduli) != point.modulus) {
    throw Error(ErrorCode::product_mismatch, "moduli multiply to " + product(moduli).str() + ", expected " +
                                                 point.modulus.str());
  }
  if (!valid(point)) throw Error(ErrorCode::invalid_argument, "residue out of range");
  std::vector<ResiduePoint> parts;
  for (const auto& a : moduli) {
    ResiduePoint part{a, {}, point.unit};
    for (const auto& c : point.coords) part.coords.push_back(detail::canonical(c, a, point.unit));
    parts.push_back(std::move(part));
  }
  return parts;
}

struct AnalogyResult {
  Integer modulus;
  Point z;
  Vector values;
  /// For each a_j, a point with values in Z_{a_j}^* \ {1}, when one exists.
  std::vector<std::optional<StrongWitness>> hypothesis;
};

/// True iff every value lies in (1, A] and is coprime to A.
inline bool in_unit_set_minus_one(std::span<const Integer> values, const Integer& A) {
  return std::all_of(values.begin(), values.end(),
                     [&](const Integer& v) { return v > 1 && v <= A && gcd(v, A) == 1; });
}

/// Searches prime points in canonical order (max-norm up to options.bound)
/// for z with every f_i(z) in Z_A^* \ {1}, A = a_1 ... a_k, read literally:
/// 1 < f_i(z) <= A and gcd(f_i(z), A) = 1. Also reports the hypothesis points
/// x^(j) with values in Z_{a_j}^* \ {1}.
inline AnalogyResult analogy_prime_point(const AffineSystem& system, std::span<const Integer> moduli,
                                         const EnumerationOptions& options = {}) {
  if (moduli.empty()) throw Error(ErrorCode::invalid_argument, "at least one modulus is required");
  require_pairwise_coprime(moduli);
  require_admissible(system);
  AnalogyResult result;
  result.modulus = product(moduli);
  const ImageLattice lattice = image_lattice(system);
  for (const auto& a : moduli) result.hypothesis.push_back(strong_witness(system, lattice, a));

  bool found = false;
  for_each_prime_point(system, options, [&](const PrimePoint& pp) {
    if (!in_unit_set_minus_one(pp.values, result.modulus)) return true;
    result.z = pp.x;
    result.values = pp.values;
    found = true;
    return false;
  });
  if (!found) {
    throw Error(ErrorCode::budget_exhausted, "no qualifying prime point with max-norm <= " +
                                                 std::to_string(options.bound));
  }
  return result;
}

}  // namespace dickson
