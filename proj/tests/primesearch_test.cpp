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

#include "dickson/primesearch.hpp"
#include "oracles.hpp"

namespace dickson {
namespace {

const AffineSystem kTwin = parse_system(R"({"n":1,"forms":[{"a":[1],"b":0},{"a":[1],"b":2}]})");
const AffineSystem kToy = parse_system(R"({"n":2,"forms":[{"a":[2,-3],"b":0},{"a":[-3,4],"b":0}]})");
const AffineSystem kAp4 =
    parse_system(R"({"n":2,"forms":[{"a":[1,0],"b":0},{"a":[1,1],"b":0},{"a":[1,2],"b":0},{"a":[1,3],"b":0}]})");
const AffineSystem kConsecutive = parse_system(R"({"n":1,"forms":[{"a":[1],"b":0},{"a":[1],"b":1}]})");

std::vector<PrimePoint> all_points(const AffineSystem& s, std::int64_t bound, bool prefilter, unsigned workers = 1) {
  EnumerationOptions options;
  options.bound = bound;
  options.use_prefilter = prefilter;
  options.workers = workers;
  options.unit_target = 64;
  std::vector<PrimePoint> out;
  for_each_prime_point(s, options, [&](const PrimePoint& pp) {
    out.push_back(pp);
    return true;
  });
  return out;
}

TEST(Primality, SmallAgainstTrialDivision) {
  for (std::uint64_t v = 0; v < 200'000; ++v) ASSERT_EQ(is_prime(Integer(v)), oracle::trial_division_is_prime(v)) << v;
}

TEST(Primality, RandomFortyBitAgainstTrialDivision) {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<std::uint64_t> dist(1ull << 39, 1ull << 40);
  for (int i = 0; i < 300; ++i) {
    const std::uint64_t v = dist(rng) | 1;
    ASSERT_EQ(is_prime(Integer(v)), oracle::trial_division_is_prime(v)) << v;
  }
}

TEST(Primality, KnownValues) {
  EXPECT_FALSE(is_prime(Integer(-7)));
  EXPECT_FALSE(is_prime(Integer(1)));
  EXPECT_TRUE(is_prime(Integer(2)));
  EXPECT_FALSE(is_prime(Integer(561)));
  EXPECT_FALSE(is_prime(Integer(2047)));
  EXPECT_FALSE(is_prime(Integer(3215031751ull)));
  EXPECT_FALSE(is_prime(Integer(3825123056546413051ull)));
  EXPECT_FALSE(is_prime(Integer("318665857834031151167461")));
  EXPECT_FALSE(is_prime(Integer("3317044064679887385961981")));
  const Integer one = 1;
  EXPECT_TRUE(is_prime((one << 61) - 1));
  EXPECT_TRUE(is_prime((one << 89) - 1));
  EXPECT_TRUE(is_prime((one << 127) - 1));
  EXPECT_FALSE(is_prime((one << 67) - 1));
  EXPECT_FALSE(is_prime(((one << 61) - 1) * ((one << 89) - 1)));
}

TEST(Factorization, ProductOfPrimes) {
  const Integer n = Integer(1000003) * 1000033 * 1000037 * 4;
  EXPECT_EQ(prime_divisors(n), (Vector{2, 1000003, 1000033, 1000037}));
  EXPECT_EQ(prime_divisors(Integer(1)), Vector{});
}

TEST(PrimeSearch, FirstPoints) {
  auto twin = find_prime_points(kTwin, 5);
  ASSERT_TRUE(twin.complete);
  std::vector<Integer> xs;
  for (const auto& pp : twin.points) xs.push_back(pp.x[0]);
  EXPECT_EQ(xs, (Vector{3, 5, 11, 17, 29}));

  // x2 = 0 collapses the progression; (2, 0) has max-norm 2.
  auto ap = find_prime_points(kAp4, 1);
  ASSERT_TRUE(ap.complete);
  EXPECT_EQ(ap.points[0].x, (Point{Vector{2, 0}}));
  EXPECT_EQ(ap.points[0].values, (Vector{2, 2, 2, 2}));
  EnumerationOptions options;
  options.bound = 6;
  std::optional<PrimePoint> proper;
  for_each_prime_point(kAp4, options, [&](const PrimePoint& pp) {
    if (pp.x[1] == 0) return true;
    proper = pp;
    return false;
  });
  ASSERT_TRUE(proper.has_value());
  EXPECT_EQ(proper->x, (Point{Vector{5, 6}}));
  EXPECT_EQ(proper->values, (Vector{5, 11, 17, 23}));

  auto toy = find_prime_points(kToy, 1);
  ASSERT_TRUE(toy.complete);
  EXPECT_EQ(toy.points[0].x, (Point{Vector{-14, -10}}));
  EXPECT_EQ(toy.points[0].values, (Vector{2, 2}));
}

TEST(PrimeSearch, IncompleteWhenBoundReached) {
  EnumerationOptions options;
  options.bound = 1000;
  auto result = find_prime_points(kConsecutive, 5, options);
  EXPECT_FALSE(result.complete);
  ASSERT_EQ(result.points.size(), 1u);
  EXPECT_EQ(result.points[0].values, (Vector{2, 3}));
}

TEST(PrimeCount, Twin) {
  EXPECT_EQ(count_prime_points(kTwin, 100), 8u);
  EXPECT_EQ(count_prime_points(kTwin, 1'000'000), oracle::segmented_sieve_twin_count(1'000'000));
  EXPECT_EQ(count_prime_points(kTwin, 1'000'000), 8169u);
  EXPECT_EQ(count_prime_points(kConsecutive, 10'000), 1u);
}

TEST(PrimeCount, MonotoneInBound) {
  std::uint64_t last = 0;
  for (std::int64_t bound : {0, 1, 2, 5, 10, 20, 40, 80}) {
    const auto c = count_prime_points(kAp4, bound);
    EXPECT_GE(c, last);
    last = c;
  }
}

TEST(Prefilter, Tables) {
  auto twin = build_prefilter(kTwin, 5);
  ASSERT_EQ(twin.primes, (std::vector<std::uint32_t>{2, 3, 5}));
  EXPECT_EQ(twin.allowed_points(0, 1), (std::vector<std::vector<std::uint32_t>>{{1}}));
  EXPECT_EQ(twin.allowed_points(1, 1), (std::vector<std::vector<std::uint32_t>>{{2}}));
  EXPECT_FALSE(twin.total_obstruction);
  auto consecutive = build_prefilter(kConsecutive, 2);
  EXPECT_TRUE(consecutive.allowed_points(0, 1).empty());
  EXPECT_TRUE(consecutive.total_obstruction);
}

TEST(Prefilter, AgreesWithBruteForceObstruction) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 100; ++trial) {
    auto s = oracle::random_system(rng);
    auto filter = build_prefilter(s, 13);
    for (std::size_t k = 0; k < filter.primes.size(); ++k) {
      if (filter.allowed[k].empty()) continue;
      EXPECT_EQ(filter.allowed_points(k, s.dimension()).empty(), oracle::brute_force_obstruction(s, filter.primes[k]));
    }
  }
}

TEST(Prefilter, NeverDropsPrimePoints) {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 60; ++trial) {
    auto s = oracle::random_system(rng, 2, 20);
    EXPECT_EQ(all_points(s, 40, true), all_points(s, 40, false)) << system_to_json(s).dump();
  }
}

TEST(PrimeSearch, CanonicalOrderAgainstOracle) {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 40; ++trial) {
    auto s = oracle::random_system(rng, 3, 6);
    const std::int64_t box = s.dimension() == 3 ? 6 : 15;
    std::vector<PrimePoint> expected;
    for (const auto& v : oracle::canonical_box(s.dimension(), box)) {
      auto values = evaluate(s, oracle::to_point(v));
      if (std::all_of(values.begin(), values.end(), [](const Integer& a) { return oracle::trial_division_is_prime(a); })) {
        expected.push_back({oracle::to_point(v), values});
      }
    }
    EXPECT_EQ(all_points(s, box, true), expected) << system_to_json(s).dump();
  }
}

TEST(PrimeSearch, IndependentOfWorkers) {
  for (const auto* s : {&kTwin, &kToy, &kAp4}) {
    const auto one = all_points(*s, 300, true, 1);
    EXPECT_EQ(all_points(*s, 300, true, 2), one);
    EXPECT_EQ(all_points(*s, 300, true, 5), one);
  }
}

TEST(PrimeSearch, DistinctValues) {
  const auto all = all_points(kAp4, 60, true);
  std::vector<PrimePoint> expected;
  std::vector<std::set<Integer>> used(kAp4.size());
  for (const auto& pp : all) {
    bool fresh = true;
    for (std::size_t i = 0; i < pp.values.size(); ++i) fresh = fresh && !used[i].count(pp.values[i]);
    if (!fresh) continue;
    for (std::size_t i = 0; i < pp.values.size(); ++i) used[i].insert(pp.values[i]);
    expected.push_back(pp);
    if (expected.size() == 10) break;
  }
  ASSERT_EQ(expected.size(), 10u);
  EnumerationOptions options;
  options.bound = 60;
  EXPECT_EQ(find_prime_points(kAp4, 10, options, true).points, expected);
}

}  // namespace
}  // namespace dickson
