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
#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <thread>
#include <vector>

#include "dickson/forms.hpp"
#include "dickson/primality.hpp"
#include "dickson/shells.hpp"

namespace dickson {

/// x with every f_i(x) prime (positive).
struct PrimePoint {
  Point x;
  Vector values;
  friend bool operator==(const PrimePoint&, const PrimePoint&) = default;
};

/// Residue classes modulo small primes where no form vanishes. A point whose
/// values all exceed p0 and that sits in a disallowed class has a composite
/// value. Tables are only materialized while p^n <= table_limit; other
/// primes are checked on the values directly.
struct Prefilter {
  std::uint32_t p0 = 97;
  std::vector<std::uint32_t> primes;
  /// allowed[k][sum_j (x_j mod p) p^j], empty when not materialized
  std::vector<std::vector<char>> allowed;
  /// True if some prime rules out every residue class.
  bool total_obstruction = false;

  /// Allowed residue points for primes[k], each as (x_1 mod p, ..., x_n mod p).
  std::vector<std::vector<std::uint32_t>> allowed_points(std::size_t k, std::size_t n) const {
    std::vector<std::vector<std::uint32_t>> out;
    const std::uint32_t p = primes[k];
    for (std::size_t idx = 0; idx < allowed[k].size(); ++idx) {
      if (!allowed[k][idx]) continue;
      std::vector<std::uint32_t> x(n);
      std::size_t rest = idx;
      for (std::size_t j = 0; j < n; ++j) {
        x[j] = static_cast<std::uint32_t>(rest % p);
        rest /= p;
      }
      out.push_back(std::move(x));
    }
    std::sort(out.begin(), out.end());
    return out;
  }
};

inline Prefilter build_prefilter(const AffineSystem& system, std::uint32_t p0 = 97,
                                 std::uint64_t table_limit = 1u << 20) {
  Prefilter filter;
  filter.p0 = p0;
  const std::size_t n = system.dimension();
  for (std::uint32_t p : primes_up_to(p0)) {
    filter.primes.push_back(p);
    std::uint64_t size = 1;
    bool fits = true;
    for (std::size_t j = 0; j < n && fits; ++j) {
      size *= p;
      fits = size <= table_limit;
    }
    std::vector<char> table;
    if (fits) {
      table.assign(size, 0);
      std::vector<std::vector<std::uint64_t>> a(system.size(), std::vector<std::uint64_t>(n));
      std::vector<std::uint64_t> b(system.size());
      for (std::size_t i = 0; i < system.size(); ++i) {
        for (std::size_t j = 0; j < n; ++j) a[i][j] = static_cast<std::uint64_t>(mod(system.coefficient(i, j), p));
        b[i] = static_cast<std::uint64_t>(mod(system[i].constant, p));
      }
      bool any = false;
      for (std::uint64_t idx = 0; idx < size; ++idx) {
        bool ok = true;
        for (std::size_t i = 0; i < system.size() && ok; ++i) {
          std::uint64_t v = b[i], rest = idx;
          for (std::size_t j = 0; j < n; ++j) {
            v += a[i][j] * (rest % p);
            rest /= p;
          }
          ok = v % p != 0;
        }
        table[idx] = ok ? 1 : 0;
        any = any || ok;
      }
      if (!any) filter.total_obstruction = true;
    }
    filter.allowed.push_back(std::move(table));
  }
  return filter;
}

namespace detail {

// Tests single points; 64-bit arithmetic whenever it cannot overflow.
class PointTester {
 public:
  PointTester(const AffineSystem& system, std::int64_t bound, const Prefilter* filter)
      : system_(system), filter_(filter), n_(system.dimension()), m_(system.size()) {
    const auto prof = profile(system);
    Integer max_b = 0;
    for (const auto& f : system.forms()) max_b = std::max(max_b, abs(f.constant));
    fast_ = (prof.e + 1) * (Integer(bound) + 1) + max_b < (Integer(1) << 62);
    if (fast_) {
      a_.assign(m_, std::vector<std::int64_t>(n_));
      b_.resize(m_);
      for (std::size_t i = 0; i < m_; ++i) {
        for (std::size_t j = 0; j < n_; ++j) a_[i][j] = static_cast<std::int64_t>(system.coefficient(i, j));
        b_[i] = static_cast<std::int64_t>(system[i].constant);
      }
    }
  }

  std::optional<PrimePoint> test(const std::vector<std::int64_t>& x) const {
    return fast_ ? test_fast(x) : test_big(x);
  }

 private:
  bool residue_allowed(const std::vector<std::int64_t>& x, std::size_t k) const {
    const auto& table = filter_->allowed[k];
    const std::int64_t p = filter_->primes[k];
    std::size_t idx = 0, scale = 1;
    for (std::size_t j = 0; j < n_; ++j) {
      std::int64_t r = x[j] % p;
      if (r < 0) r += p;
      idx += static_cast<std::size_t>(r) * scale;
      scale *= static_cast<std::size_t>(p);
    }
    return table[idx] != 0;
  }

  std::optional<PrimePoint> test_fast(const std::vector<std::int64_t>& x) const {
    std::int64_t values[16];
    std::vector<std::int64_t> heap;
    std::int64_t* v = values;
    if (m_ > 16) {
      heap.resize(m_);
      v = heap.data();
    }
    bool large = true;
    for (std::size_t i = 0; i < m_; ++i) {
      std::int64_t s = b_[i];
      for (std::size_t j = 0; j < n_; ++j) s += a_[i][j] * x[j];
      if (s <= 1) return std::nullopt;
      v[i] = s;
      large = large && s > static_cast<std::int64_t>(filter_ ? filter_->p0 : 0);
    }
    if (filter_ && large) {
      for (std::size_t k = 0; k < filter_->primes.size(); ++k) {
        if (!filter_->allowed[k].empty()) {
          if (!residue_allowed(x, k)) return std::nullopt;
        } else {
          const std::int64_t p = filter_->primes[k];
          for (std::size_t i = 0; i < m_; ++i) {
            if (v[i] % p == 0) return std::nullopt;
          }
        }
      }
    }
    for (std::size_t i = 0; i < m_; ++i) {
      if (!detail::is_prime_u64(static_cast<std::uint64_t>(v[i]))) return std::nullopt;
    }
    PrimePoint pp;
    for (std::size_t j = 0; j < n_; ++j) pp.x.coords.emplace_back(x[j]);
    for (std::size_t i = 0; i < m_; ++i) pp.values.emplace_back(v[i]);
    return pp;
  }

  std::optional<PrimePoint> test_big(const std::vector<std::int64_t>& coords) const {
    Point x;
    for (auto c : coords) x.coords.emplace_back(c);
    Vector values = evaluate(system_, x);
    bool large = true;
    for (const auto& v : values) {
      if (v <= 1) return std::nullopt;
      large = large && filter_ && v > filter_->p0;
    }
    if (filter_ && large) {
      for (std::size_t k = 0; k < filter_->primes.size(); ++k) {
        if (!filter_->allowed[k].empty()) {
          if (!residue_allowed(coords, k)) return std::nullopt;
        } else {
          for (const auto& v : values) {
            if (v % filter_->primes[k] == 0) return std::nullopt;
          }
        }
      }
    }
    for (const auto& v : values) {
      if (!is_prime(v)) return std::nullopt;
    }
    return PrimePoint{std::move(x), std::move(values)};
  }

  const AffineSystem& system_;
  const Prefilter* filter_;
  std::size_t n_, m_;
  bool fast_ = false;
  std::vector<std::vector<std::int64_t>> a_;
  std::vector<std::int64_t> b_;
};

// A contiguous stretch of canonical order: shells [s_begin, s_end), and
// within each of them only x1 in [x1_lo, x1_hi].
struct WorkUnit {
  std::int64_t s_begin, s_end;
  std::int64_t x1_lo, x1_hi;
};

class UnitCursor {
 public:
  UnitCursor(std::size_t n, std::int64_t bound, std::uint64_t target)
      : n_(n), bound_(bound), target_(target) {}

  std::optional<WorkUnit> next() {
    if (s_ > bound_) return std::nullopt;
    constexpr std::int64_t kAll = std::numeric_limits<std::int64_t>::max() / 4;
    if (!in_shell_ && shell_size(n_, s_) <= target_) {
      WorkUnit u{s_, s_, -kAll, kAll};
      Integer total = 0;
      while (s_ <= bound_) {
        Integer size = shell_size(n_, s_);
        if (u.s_end > u.s_begin && (total + size > target_ || size > target_)) break;
        total += size;
        ++s_;
        u.s_end = s_;
      }
      return u;
    }
    if (!in_shell_) {
      in_shell_ = true;
      x1_ = -s_;
    }
    WorkUnit u{s_, s_ + 1, x1_, x1_};
    Integer total = 0;
    while (x1_ <= s_) {
      Integer size = shell_slice_size(n_, s_, x1_);
      if (total > 0 && total + size > target_) break;
      total += size;
      u.x1_hi = x1_;
      ++x1_;
    }
    if (x1_ > s_) {
      in_shell_ = false;
      ++s_;
    }
    return u;
  }

 private:
  std::size_t n_;
  std::int64_t bound_;
  std::uint64_t target_;
  std::int64_t s_ = 0;
  bool in_shell_ = false;
  std::int64_t x1_ = 0;
};

}  // namespace detail

struct EnumerationOptions {
  std::int64_t bound = 100'000;
  unsigned workers = 1;
  bool use_prefilter = true;
  std::uint32_t p0 = 97;
  std::uint64_t unit_target = 1 << 14;
};

/// Visits the prime points with max-norm <= bound in canonical order until
/// the callback returns false. Workers scan disjoint pieces of canonical
/// order; results are replayed in order, so the callback sequence does not
/// depend on the worker count. Returns false if stopped early.
inline bool for_each_prime_point(const AffineSystem& system, const EnumerationOptions& options,
                                 const std::function<bool(const PrimePoint&)>& callback) {
  if (options.bound < 0) throw Error(ErrorCode::invalid_argument, "bound must be nonnegative");
  std::optional<Prefilter> filter;
  if (options.use_prefilter) filter = build_prefilter(system, options.p0);
  const detail::PointTester tester(system, options.bound, filter ? &*filter : nullptr);
  const unsigned workers = std::max(1u, options.workers);
  const std::size_t n = system.dimension();
  detail::UnitCursor cursor(n, options.bound, options.unit_target);

  const std::size_t batch_units = 8 * static_cast<std::size_t>(workers);
  while (true) {
    std::vector<detail::WorkUnit> batch;
    while (batch.size() < batch_units) {
      auto u = cursor.next();
      if (!u) break;
      batch.push_back(*u);
    }
    if (batch.empty()) return true;

    std::vector<std::vector<PrimePoint>> found(batch.size());
    std::atomic<std::size_t> next{0};
    auto work = [&] {
      for (std::size_t i = next++; i < batch.size(); i = next++) {
        const auto& u = batch[i];
        for (std::int64_t s = u.s_begin; s < u.s_end; ++s) {
          for_each_in_shell(n, s, u.x1_lo, u.x1_hi, [&](const std::vector<std::int64_t>& x) {
            if (auto pp = tester.test(x)) found[i].push_back(std::move(*pp));
            return true;
          });
        }
      }
    };
    std::vector<std::thread> pool;
    for (unsigned w = 1; w < workers; ++w) pool.emplace_back(work);
    work();
    for (auto& t : pool) t.join();

    for (const auto& unit_points : found) {
      for (const auto& pp : unit_points) {
        if (!callback(pp)) return false;
      }
    }
  }
}

struct SearchResult {
  std::vector<PrimePoint> points;
  /// False when the bound was reached before `count` points were found.
  bool complete = false;
};

/// First `count` prime points in canonical order. With distinct_values a
/// point is skipped when any f_i value repeats the f_i value of an earlier
/// reported point.
inline SearchResult find_prime_points(const AffineSystem& system, std::uint64_t count,
                                      const EnumerationOptions& options = {}, bool distinct_values = false) {
  SearchResult result;
  if (count == 0) {
    result.complete = true;
    return result;
  }
  std::vector<std::set<Integer>> used(system.size());
  for_each_prime_point(system, options, [&](const PrimePoint& pp) {
    if (distinct_values) {
      for (std::size_t i = 0; i < pp.values.size(); ++i) {
        if (used[i].count(pp.values[i])) return true;
      }
      for (std::size_t i = 0; i < pp.values.size(); ++i) used[i].insert(pp.values[i]);
    }
    result.points.push_back(pp);
    return result.points.size() < count;
  });
  result.complete = result.points.size() == count;
  return result;
}

/// Number of prime points with max-norm <= bound.
inline std::uint64_t count_prime_points(const AffineSystem& system, std::int64_t bound, unsigned workers = 1,
                                        bool use_prefilter = true) {
  EnumerationOptions options;
  options.bound = bound;
  options.workers = workers;
  options.use_prefilter = use_prefilter;
  std::uint64_t total = 0;
  for_each_prime_point(system, options, [&](const PrimePoint&) {
    ++total;
    return true;
  });
  return total;
}

}  // namespace dickson
