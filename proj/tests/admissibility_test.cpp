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

#include <random>
#include <set>

#include <gtest/gtest.h>

#include "dickson/admissibility.hpp"
#include "oracles.hpp"

namespace dickson {
namespace {

Vector vec(std::initializer_list<long long> v) {
  Vector out;
  for (auto c : v) out.emplace_back(c);
  return out;
}

const AffineSystem kTwin = parse_system(R"({"n":1,"forms":[{"a":[1],"b":0},{"a":[1],"b":2}]})");
const AffineSystem kConsecutive = parse_system(R"({"n":1,"forms":[{"a":[1],"b":0},{"a":[1],"b":1}]})");
const AffineSystem kTriple = parse_system(R"({"n":1,"forms":[{"a":[1],"b":0},{"a":[1],"b":2},{"a":[1],"b":4}]})");
const AffineSystem kToy = parse_system(R"({"n":2,"forms":[{"a":[2,-3],"b":0},{"a":[-3,4],"b":0}]})");
const AffineSystem kCounterexample = parse_system(
    R"({"n":2,"forms":[{"a":[-2,3],"b":-6},{"a":[3,-4],"b":-6},{"a":[-9,10],"b":-6}]})");
const AffineSystem kDoubled = parse_system(R"({"n":1,"forms":[{"a":[2],"b":2}]})");

// Independent post-condition of a Condition-A witness.
bool is_condition_a_witness(const AffineSystem& s, const Point& x, const Integer& r) {
  Integer prod = 1;
  for (const auto& f : s.forms()) {
    Integer v = f(x);
    if (v <= 1) return false;
    prod *= v;
  }
  return gcd(prod, r) == 1;
}

// First witness in canonical shell order.
Point first_witness_by_scan(const AffineSystem& s, const Integer& r, std::int64_t box) {
  for (const auto& v : oracle::canonical_box(s.dimension(), box)) {
    Point x = oracle::to_point(v);
    if (is_condition_a_witness(s, x, r)) return x;
  }
  ADD_FAILURE() << "no witness in box";
  return {};
}

TEST(Admissibility, LocalObstructionAt) {
  EXPECT_TRUE(local_obstruction_at(kConsecutive, 2));
  EXPECT_FALSE(local_obstruction_at(kTwin, 2));
  EXPECT_TRUE(local_obstruction_at(kTriple, 3));
  EXPECT_TRUE(oracle::brute_force_obstruction(kTriple, 3));
  EXPECT_FALSE(local_obstruction_at(kTriple, 2));
  try {
    local_obstruction_at(kTwin, 4);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::not_prime);
  }
}

TEST(Admissibility, ObstructionPrimes) {
  EXPECT_TRUE(obstruction_primes(kTwin).primes.empty());
  EXPECT_EQ(obstruction_primes(kTriple).primes, vec({3}));
  EXPECT_EQ(obstruction_primes(kTriple).candidates, vec({2, 3}));
  EXPECT_EQ(obstruction_primes(kDoubled).primes, vec({2}));
}

TEST(Admissibility, Check) {
  auto twin = admissible_check(kTwin);
  EXPECT_TRUE(twin.admissible);
  EXPECT_TRUE(is_direction(twin.positivity));

  auto cx = admissible_check(kCounterexample);
  EXPECT_FALSE(cx.admissible);
  ASSERT_TRUE(std::holds_alternative<GordanCertificate>(cx.positivity));
  EXPECT_EQ(std::get<GordanCertificate>(cx.positivity).lambda, vec({6, 7, 1}));

  auto cons = admissible_check(kConsecutive);
  EXPECT_FALSE(cons.admissible);
  EXPECT_TRUE(is_direction(cons.positivity));
  EXPECT_EQ(cons.obstructions.primes, vec({2}));
}

TEST(Admissibility, WitnessForTwinAndR15) {
  const Point x = admissible_witness(kTwin, 15);
  EXPECT_TRUE(is_condition_a_witness(kTwin, x, 15));
  // The scan oracle's smallest witness.
  EXPECT_EQ(first_witness_by_scan(kTwin, 15, 10), Point{vec({2})});
  EXPECT_EQ(evaluate(kTwin, Point{vec({2})}), vec({2, 4}));
}

TEST(Admissibility, WitnessForToyAndR2) {
  const Point x = admissible_witness(kToy, 2);
  EXPECT_TRUE(is_condition_a_witness(kToy, x, 2));
  const Point first = first_witness_by_scan(kToy, 2, 30);
  EXPECT_EQ(first, Point{vec({-21, -15})});
  EXPECT_EQ(evaluate(kToy, first), vec({3, 3}));
}

TEST(Admissibility, WitnessErrors) {
  try {
    admissible_witness(kConsecutive, 6);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::not_admissible);
  }
  try {
    admissible_witness(kTwin, 0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::invalid_argument);
  }
  EXPECT_TRUE(is_condition_a_witness(kTwin, admissible_witness(kTwin, 1), 1));
}

TEST(Admissibility, WitnessForHugeR) {
  const Integer r = Integer(1) << 200;
  EXPECT_TRUE(is_condition_a_witness(kToy, admissible_witness(kToy, r), r));
  const Integer primorial = 2 * 3 * 5 * 7 * 11 * 13 * Integer("1000000000000000000000000000057");
  EXPECT_TRUE(is_condition_a_witness(kTwin, admissible_witness(kTwin, primorial), primorial));
  // Product of two large primes: avoided without factoring r.
  const Integer one = 1;
  const Integer semiprime = ((one << 127) - 1) * ((one << 521) - 1) * 35;
  for (const auto* s : {&kTwin, &kToy}) {
    EXPECT_TRUE(is_condition_a_witness(*s, admissible_witness(*s, semiprime), semiprime));
  }
}

bool lemma1_holds(const AffineSystem& s, const Point& x, const Integer& c) {
  const auto e = profile(s).e;
  for (const auto& f : s.forms()) {
    if (f.linear_part(x) <= e) return false;
    Integer v = f(x);
    if (v <= 1) return false;
    for (Integer d = 2; d <= c; ++d) {
      if (v % d == 0) return false;
    }
  }
  return true;
}

TEST(Admissibility, Lemma1Witness) {
  const Point x = lemma1_witness(kTwin, 5);
  EXPECT_TRUE(lemma1_holds(kTwin, x, 5));
  EXPECT_TRUE(lemma1_holds(kTwin, Point{vec({11})}, 5));
  EXPECT_TRUE(lemma1_holds(kToy, lemma1_witness(kToy, 2), 2));
  for (auto strategy : {Lemma1Strategy::primorial, Lemma1Strategy::prime_values}) {
    EXPECT_TRUE(lemma1_holds(kTwin, lemma1_witness(kTwin, 30, strategy), 30));
    EXPECT_TRUE(lemma1_holds(kToy, lemma1_witness(kToy, 40, strategy), 40));
  }
  try {
    lemma1_witness(kCounterexample, 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::not_admissible);
  }
}

TEST(Polynomial, Parses) {
  auto f = parse_polynomial("-x^2+6");
  EXPECT_EQ(f.dimension(), 1u);
  EXPECT_EQ(f(vec({3})), -3);
  auto g = parse_polynomial("3*x1*x2 - 2x2^3 + 1");
  EXPECT_EQ(g.dimension(), 2u);
  EXPECT_EQ(g(vec({2, 3})), 3 * 2 * 3 - 2 * 27 + 1);
  EXPECT_EQ(parse_polynomial("x1", 3).dimension(), 3u);
  EXPECT_THROW(parse_polynomial("x^"), Error);
  EXPECT_THROW(parse_polynomial("2 x + + 1"), Error);
  EXPECT_THROW(parse_polynomial("x3", 2), Error);
  EXPECT_THROW(parse_polynomial(""), Error);
}

TEST(Probe, NonlinearCautionExample) {
  std::vector<Polynomial> map{parse_polynomial("-x^2+6")};
  EXPECT_FALSE(probe_general(map, 30, 100).has_value());
  auto at7 = probe_general(map, 7, 10);
  ASSERT_TRUE(at7.has_value());
  EXPECT_EQ(*at7, Point{vec({0})});
  for (int p : {2, 3, 5, 7}) EXPECT_TRUE(probe_general(map, p, 100).has_value()) << p;
}

TEST(Probe, RejectsValueOne) {
  std::vector<Polynomial> map{parse_polynomial("x^2+1")};
  auto x = probe_general(map, 3, 10);
  ASSERT_TRUE(x.has_value());
  EXPECT_EQ(*x, Point{vec({-1})});  // x = 0 gives 1; -1 precedes 1 in the shell
}

TEST(Probe, AgreesWithLinearWitnessOnLinearSystems) {
  std::mt19937_64 rng(77);
  int checked = 0;
  for (int trial = 0; trial < 100 && checked < 25; ++trial) {
    auto s = oracle::random_system(rng, 2, 4);
    if (!admissible_check(s).admissible) continue;
    std::vector<Polynomial> map;
    for (const auto& f : s.forms()) map.push_back(Polynomial::from_form(f));
    for (int r : {6, 10, 30}) {
      const Point w = admissible_witness(s, r);
      std::int64_t box = 0;
      for (const auto& c : w.coords) box = std::max<std::int64_t>(box, static_cast<std::int64_t>(abs(c)));
      if (box > 60) continue;
      auto found = probe_general(map, r, box);
      ASSERT_TRUE(found.has_value());
      EXPECT_TRUE(is_condition_a_witness(s, *found, r));
      EXPECT_EQ(*found, first_witness_by_scan(s, r, box));
    }
    ++checked;
  }
  EXPECT_GT(checked, 10);
}

// For 200 random small systems the verdict is cross-checked against the
// definition from both sides.
TEST(Admissibility, CrossValidation) {
  std::mt19937_64 rng(1234);
  int admissible = 0, obstructed = 0, certified = 0;
  for (int trial = 0; trial < 200; ++trial) {
    auto s = oracle::random_system(rng);
    auto report = admissible_check(s);
    ASSERT_TRUE(verify_outcome(s, report.positivity));
    if (report.admissible) {
      ++admissible;
      for (int r = 2; r <= 50; ++r) {
        ASSERT_TRUE(is_condition_a_witness(s, admissible_witness(s, r), r)) << system_to_json(s).dump();
      }
      continue;
    }
    if (!report.obstructions.primes.empty()) {
      ++obstructed;
      const Integer& p = report.obstructions.primes.front();
      for (int k = 0; k < 100; ++k) {
        auto values = evaluate(s, oracle::random_point(rng, s.dimension()));
        ASSERT_EQ(product(values) % p, 0);
      }
    }
    if (const auto* cert = std::get_if<GordanCertificate>(&report.positivity)) {
      ++certified;
      for (int k = 0; k < 100; ++k) {
        auto values = evaluate(s, oracle::random_point(rng, s.dimension()));
        Integer dot = 0;
        for (std::size_t i = 0; i < s.size(); ++i) dot += cert->lambda[i] * values[i];
        ASSERT_EQ(dot, cert->lambda_dot_b);
      }
      // Values of the certified forms at points where all values exceed 1
      // are bounded; their product is an r without witnesses.
      Integer r = 1;
      std::set<Integer> seen;
      std::vector<Polynomial> map;
      for (const auto& f : s.forms()) map.push_back(Polynomial::from_form(f));
      for (const auto& v : oracle::canonical_box(s.dimension(), s.dimension() == 3 ? 8 : 20)) {
        auto values = evaluate(s, oracle::to_point(v));
        if (std::any_of(values.begin(), values.end(), [](const Integer& a) { return a <= 1; })) continue;
        for (std::size_t i = 0; i < s.size(); ++i) {
          if (cert->lambda[i] > 0 && seen.insert(values[i]).second) r *= values[i];
        }
      }
      EXPECT_FALSE(probe_general(map, r, s.dimension() == 3 ? 8 : 20).has_value());
    }
  }
  EXPECT_GT(admissible, 10);
  EXPECT_GT(obstructed, 5);
  EXPECT_GT(certified, 10);
}

TEST(Admissibility, CandidateSetIsComplete) {
  std::mt19937_64 rng(1234);
  const auto primes = primes_up_to(50);
  for (int trial = 0; trial < 200; ++trial) {
    auto s = oracle::random_system(rng);
    auto report = obstruction_primes(s);
    std::set<Integer> candidates(report.candidates.begin(), report.candidates.end());
    std::set<Integer> found(report.primes.begin(), report.primes.end());
    for (std::uint32_t p : primes) {
      const bool obstructs = oracle::brute_force_obstruction(s, p);
      if (obstructs) EXPECT_TRUE(candidates.count(p)) << p << " " << system_to_json(s).dump();
      if (candidates.count(p)) EXPECT_EQ(obstructs, found.count(p) == 1);
    }
  }
}

}  // namespace
}  // namespace dickson
