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

#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace dickson {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

enum class ErrorCode {
  malformed_document,
  dimension_mismatch,
  duplicate_form,
  empty_system,
  invalid_argument,
  not_prime,
  not_admissible,
  non_coprime_moduli,
  product_mismatch,
  below_proof_bound,
  proof_gap_detected,
  factorization_budget,
  budget_exhausted,
};

inline const char* error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::malformed_document: return "MalformedDocument";
    case ErrorCode::dimension_mismatch: return "DimensionMismatch";
    case ErrorCode::duplicate_form: return "DuplicateForm";
    case ErrorCode::empty_system: return "EmptySystem";
    case ErrorCode::invalid_argument: return "InvalidArgument";
    case ErrorCode::not_prime: return "NotPrime";
    case ErrorCode::not_admissible: return "NotAdmissible";
    case ErrorCode::non_coprime_moduli: return "NonCoprimeModuli";
    case ErrorCode::product_mismatch: return "ProductMismatch";
    case ErrorCode::below_proof_bound: return "BelowProofBound";
    case ErrorCode::proof_gap_detected: return "ProofGapDetected";
    case ErrorCode::factorization_budget: return "FactorizationBudget";
    case ErrorCode::budget_exhausted: return "BudgetExhausted";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_name(code)) + ": " + what),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

inline Integer abs(const Integer& v) { return v < 0 ? Integer(-v) : v; }

inline Integer gcd(const Integer& a, const Integer& b) {
  return boost::multiprecision::gcd(a, b);
}

/// Least nonnegative residue, for any sign of `v` and `m > 0`.
inline Integer mod(const Integer& v, const Integer& m) {
  Integer r = v % m;
  if (r < 0) r += m;
  return r;
}

inline Integer floor_div(const Integer& a, const Integer& b) {
  Integer q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

inline Integer ceil_div(const Integer& a, const Integer& b) {
  return -floor_div(-a, b);
}

/// Inverse of `a` modulo `m`; `a` must be a unit mod `m`.
inline Integer inverse_mod(const Integer& a, const Integer& m) {
  Integer old_r = mod(a, m), r = m;
  Integer old_s = 1, s = 0;
  while (r != 0) {
    Integer q = old_r / r;
    Integer tmp = old_r - q * r;
    old_r = r;
    r = tmp;
    tmp = old_s - q * s;
    old_s = s;
    s = tmp;
  }
  if (old_r != 1 && m != 1) {
    throw Error(ErrorCode::invalid_argument, "value is not invertible modulo " + m.str());
  }
  return mod(old_s, m);
}

inline Integer pow_mod(Integer base, Integer exp, const Integer& m) {
  return boost::multiprecision::powm(base, exp, m);
}

inline std::optional<std::int64_t> to_int64(const Integer& v) {
  if (v > std::numeric_limits<std::int64_t>::max() ||
      v < std::numeric_limits<std::int64_t>::min()) {
    return std::nullopt;
  }
  return static_cast<std::int64_t>(v);
}

/// Parses an optionally signed decimal string. Whitespace is not accepted.
inline Integer parse_integer(std::string_view text) {
  std::size_t i = 0;
  bool negative = false;
  if (i < text.size() && (text[i] == '-' || text[i] == '+')) {
    negative = text[i] == '-';
    ++i;
  }
  if (i == text.size()) {
    throw Error(ErrorCode::malformed_document, "expected an integer, got '" + std::string(text) + "'");
  }
  Integer value = 0;
  for (; i < text.size(); ++i) {
    char c = text[i];
    if (c < '0' || c > '9') {
      throw Error(ErrorCode::malformed_document, "expected an integer, got '" + std::string(text) + "'");
    }
    value = value * 10 + (c - '0');
  }
  return negative ? Integer(-value) : value;
}

using Vector = std::vector<Integer>;

}  // namespace dickson
