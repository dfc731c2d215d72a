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

#include <cctype>
#include <string>
#include <string_view>
#include <vector>

#include "dickson/forms.hpp"

namespace dickson {

struct Monomial {
  Integer coefficient;
  std::vector<unsigned> exponents;  // one per variable
};

/// An integer polynomial in n variables, used only by the bounded probe for
/// general (nonlinear) maps.
class Polynomial {
 public:
  Polynomial(std::size_t n, std::vector<Monomial> terms) : n_(n), terms_(std::move(terms)) {
    for (auto& t : terms_) t.exponents.resize(n_, 0);
  }

  std::size_t dimension() const { return n_; }
  const std::vector<Monomial>& terms() const { return terms_; }

  Integer operator()(std::span<const Integer> x) const {
    if (x.size() != n_) throw Error(ErrorCode::dimension_mismatch, "polynomial evaluated at a point of wrong dimension");
    Integer total = 0;
    for (const auto& t : terms_) {
      Integer v = t.coefficient;
      for (std::size_t j = 0; j < n_; ++j) {
        if (t.exponents[j] > 0) v *= boost::multiprecision::pow(x[j], t.exponents[j]);
      }
      total += v;
    }
    return total;
  }

  static Polynomial from_form(const AffineForm& f) {
    const std::size_t n = f.coefficients.size();
    std::vector<Monomial> terms;
    for (std::size_t j = 0; j < n; ++j) {
      std::vector<unsigned> e(n, 0);
      e[j] = 1;
      terms.push_back({f.coefficients[j], std::move(e)});
    }
    terms.push_back({f.constant, std::vector<unsigned>(n, 0)});
    return Polynomial(n, std::move(terms));
  }

 private:
  std::size_t n_;
  std::vector<Monomial> terms_;
};

namespace detail {

class PolynomialParser {
 public:
  explicit PolynomialParser(std::string_view text) {
    for (char c : text) {
      if (!std::isspace(static_cast<unsigned char>(c))) text_.push_back(c);
    }
  }

  std::vector<Monomial> parse() {
    std::vector<Monomial> terms;
    if (text_.empty()) fail("empty polynomial");
    bool first = true;
    while (pos_ < text_.size() || first) {
      int sign = 1;
      if (peek() == '+' || peek() == '-') {
        sign = peek() == '-' ? -1 : 1;
        ++pos_;
      } else if (!first) {
        fail("expected '+' or '-'");
      }
      Monomial m = term();
      if (sign < 0) m.coefficient = -m.coefficient;
      terms.push_back(std::move(m));
      first = false;
    }
    return terms;
  }

  std::size_t max_variable() const { return max_var_; }

 private:
  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

  [[noreturn]] void fail(const std::string& what) const {
    throw Error(ErrorCode::malformed_document,
                "polynomial '" + text_ + "': " + what + " at offset " + std::to_string(pos_));
  }

  std::string digits() {
    std::string d;
    while (std::isdigit(static_cast<unsigned char>(peek()))) d.push_back(text_[pos_++]);
    return d;
  }

  Monomial term() {
    Monomial m{1, {}};
    bool any = false;
    while (true) {
      if (std::isdigit(static_cast<unsigned char>(peek()))) {
        m.coefficient *= parse_integer(digits());
        any = true;
      } else if (peek() == 'x') {
        ++pos_;
        std::string idx = digits();
        std::size_t var = idx.empty() ? 1 : std::stoul(idx);
        if (var == 0) fail("variables are numbered from x1");
        unsigned exponent = 1;
        if (peek() == '^') {
          ++pos_;
          std::string e = digits();
          if (e.empty()) fail("expected an exponent");
          exponent = static_cast<unsigned>(std::stoul(e));
        }
        if (m.exponents.size() < var) m.exponents.resize(var, 0);
        m.exponents[var - 1] += exponent;
        max_var_ = std::max(max_var_, var);
        any = true;
      } else {
        fail("expected a number or variable");
      }
      if (peek() == '*') {
        ++pos_;
        continue;
      }
      if (peek() == 'x' || std::isdigit(static_cast<unsigned char>(peek()))) continue;
      break;
    }
    if (!any) fail("empty term");
    return m;
  }

  std::string text_;
  std::size_t pos_ = 0;
  std::size_t max_var_ = 0;
};

}  // namespace detail

/// Parses inline syntax such as "-x^2+6" or "3*x1*x2 - 2x2^3 + 1". A bare x
/// means x1. `n == 0` infers the dimension from the highest variable used.
inline Polynomial parse_polynomial(std::string_view text, std::size_t n = 0) {
  detail::PolynomialParser parser(text);
  auto terms = parser.parse();
  if (n == 0) n = std::max<std::size_t>(1, parser.max_variable());
  if (parser.max_variable() > n) {
    throw Error(ErrorCode::dimension_mismatch, "polynomial uses x" + std::to_string(parser.max_variable()) +
                                                   " but n = " + std::to_string(n));
  }
  return Polynomial(n, std::move(terms));
}

}  // namespace dickson
