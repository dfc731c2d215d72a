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
#include <array>
#include <cstdint>
#include <map>
#include <vector>

#include "dickson/integer.hpp"

namespace dickson {

/// All primes <= limit, by a plain sieve of Eratosthenes.
inline std::vector<std::uint32_t> primes_up_to(std::uint32_t limit) {
  std::vector<std::uint32_t> primes;
  if (limit < 2) return primes;
  std::vector<bool> composite(static_cast<std::size_t>(limit) + 1, false);
  for (std::uint64_t i = 2; i <= limit; ++i) {
    if (composite[i]) continue;
    primes.push_back(static_cast<std::uint32_t>(i));
    for (std::uint64_t j = i * i; j <= limit; j += i) composite[j] = true;
  }
  return primes;
}

namespace detail {

inline std::uint64_t mul_mod64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

inline std::uint64_t pow_mod64(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
  std::uint64_t result = 1 % m;
  base %= m;
  while (exp > 0) {
    if (exp & 1) result = mul_mod64(result, base, m);
    base = mul_mod64(base, base, m);
    exp >>= 1;
  }
  return result;
}

inline constexpr std::array<std::uint32_t, 25> kSmallPrimes = {
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97};

// Strong probable-prime test to the first twelve prime bases, which is
// deterministic below 3.3 * 10^24 and hence for every 64-bit input.
inline bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint32_t p : kSmallPrimes) {
    if (n == p) return true;
    if (n % p == 0) return false;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    std::uint64_t x = pow_mod64(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mul_mod64(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

inline int jacobi(Integer a, Integer n) {
  a = mod(a, n);
  int result = 1;
  while (a != 0) {
    while ((a & 1) == 0) {
      a >>= 1;
      const unsigned r = static_cast<unsigned>(n & 7);
      if (r == 3 || r == 5) result = -result;
    }
    std::swap(a, n);
    if ((a & 3) == 3 && (n & 3) == 3) result = -result;
    a %= n;
  }
  return n == 1 ? result : 0;
}

inline bool strong_prp_base2(const Integer& n) {
  Integer d = n - 1;
  unsigned s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  Integer x = pow_mod(Integer(2), d, n);
  if (x == 1 || x == n - 1) return true;
  for (unsigned r = 1; r < s; ++r) {
    x = x * x % n;
    if (x == n - 1) return true;
  }
  return false;
}

// Strong Lucas probable-prime test with Selfridge's parameter choice.
inline bool strong_lucas_prp(const Integer& n) {
  const Integer root = boost::multiprecision::sqrt(n);
  if (root * root == n) return false;

  Integer D = 5;
  while (true) {
    const int j = jacobi(D, n);
    if (j == -1) break;
    if (j == 0 && abs(D) != n) return false;
    D = D > 0 ? Integer(-(D + 2)) : Integer(-D + 2);
  }
  const Integer P = 1;
  const Integer Q = (1 - D) / 4;

  Integer d = n + 1;
  unsigned s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }

  auto half = [&](Integer x) {
    x = mod(x, n);
    if ((x & 1) != 0) x += n;
    return Integer(x >> 1);
  };

  Integer U = 1, V = P, Qk = mod(Q, n);
  const unsigned bits = static_cast<unsigned>(boost::multiprecision::msb(d));
  for (unsigned b = bits; b-- > 0;) {
    U = U * V % n;
    V = mod(V * V - 2 * Qk, n);
    Qk = Qk * Qk % n;
    if (boost::multiprecision::bit_test(d, b)) {
      Integer nu = half(P * U + V);
      Integer nv = half(D * U + P * V);
      U = std::move(nu);
      V = std::move(nv);
      Qk = mod(Qk * Q, n);
    }
  }
  if (U == 0 || V == 0) return true;
  for (unsigned r = 1; r < s; ++r) {
    V = mod(V * V - 2 * Qk, n);
    if (V == 0) return true;
    Qk = Qk * Qk % n;
  }
  return false;
}

}  // namespace detail

/// Positive primes only. Deterministic below 2^64; above that, a
/// Baillie-PSW test (no counterexample is known, but it is not a proof).
inline bool is_prime(const Integer& v) {
  if (v < 2) return false;
  if (v <= std::numeric_limits<std::uint64_t>::max()) return detail::is_prime_u64(static_cast<std::uint64_t>(v));
  for (std::uint32_t p : detail::kSmallPrimes) {
    if (v % p == 0) return false;
  }
  return detail::strong_prp_base2(v) && detail::strong_lucas_prp(v);
}

namespace detail {

inline std::optional<Integer> pollard_brent(const Integer& n, std::uint64_t budget) {
  if ((n & 1) == 0) return Integer(2);
  for (std::uint64_t c = 1; c < 64; ++c) {
    Integer y = 2, x, ys, q = 1, g = 1;
    std::uint64_t r = 1, spent = 0;
    const std::uint64_t m = 128;
    auto f = [&](const Integer& v) { return Integer((v * v + c) % n); };
    while (g == 1) {
      x = y;
      for (std::uint64_t i = 0; i < r; ++i) y = f(y);
      std::uint64_t k = 0;
      while (k < r && g == 1) {
        ys = y;
        const std::uint64_t steps = std::min(m, r - k);
        for (std::uint64_t i = 0; i < steps; ++i) {
          y = f(y);
          q = q * abs(Integer(x - y)) % n;
        }
        g = gcd(q, n);
        k += steps;
        spent += steps;
      }
      r *= 2;
      if (spent > budget) return std::nullopt;
    }
    if (g == n) {
      do {
        ys = f(ys);
        g = gcd(abs(Integer(x - ys)), n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
  return std::nullopt;
}

inline void factor_into(const Integer& n, std::map<Integer, unsigned>& out, std::uint64_t budget) {
  if (n == 1) return;
  if (is_prime(n)) {
    ++out[n];
    return;
  }
  auto factor = pollard_brent(n, budget);
  if (!factor) throw Error(ErrorCode::factorization_budget, "could not factor " + n.str() + " within budget");
  factor_into(*factor, out, budget);
  factor_into(n / *factor, out, budget);
}

}  // namespace detail

/// Prime factorization of |n| (n != 0) as prime -> exponent. Trial division
/// below 2^16, then Pollard-Brent on the cofactor with an iteration budget.
inline std::map<Integer, unsigned> factorize(const Integer& n, std::uint64_t budget = 2'000'000) {
  if (n == 0) throw Error(ErrorCode::invalid_argument, "cannot factor 0");
  std::map<Integer, unsigned> out;
  Integer rest = abs(n);
  static const std::vector<std::uint32_t> trial = primes_up_to(1 << 16);
  for (std::uint32_t p : trial) {
    if (Integer(p) * p > rest) break;
    while (rest % p == 0) {
      ++out[Integer(p)];
      rest /= p;
    }
  }
  if (rest > 1) detail::factor_into(rest, out, budget);
  return out;
}

/// Distinct prime divisors of |n|, ascending.
inline std::vector<Integer> prime_divisors(const Integer& n, std::uint64_t budget = 2'000'000) {
  std::vector<Integer> primes;
  for (const auto& [p, e] : factorize(n, budget)) primes.push_back(p);
  return primes;
}

}  // namespace dickson
