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
#include <compare>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "dickson/integer.hpp"

namespace dickson {

/// An integral point x = (x_1, ..., x_n).
struct Point {
  Vector coords;

  std::size_t dimension() const { return coords.size(); }
  const Integer& operator[](std::size_t i) const { return coords[i]; }
  Integer& operator[](std::size_t i) { return coords[i]; }

  friend bool operator==(const Point&, const Point&) = default;
  friend auto operator<=>(const Point&, const Point&) = default;
};

/// f(x) = a_1 x_1 + ... + a_n x_n + b.
struct AffineForm {
  Vector coefficients;
  Integer constant;

  Integer linear_part(const Point& x) const {
    Integer s = 0;
    for (std::size_t j = 0; j < coefficients.size(); ++j) s += coefficients[j] * x[j];
    return s;
  }
  Integer operator()(const Point& x) const { return linear_part(x) + constant; }

  bool is_constant() const {
    return std::all_of(coefficients.begin(), coefficients.end(),
                       [](const Integer& a) { return a == 0; });
  }

  friend bool operator==(const AffineForm&, const AffineForm&) = default;
  friend auto operator<=>(const AffineForm&, const AffineForm&) = default;
};

/// An ordered tuple of m >= 1 distinct affine forms in n >= 1 variables.
class AffineSystem {
 public:
  AffineSystem(std::size_t n, std::vector<AffineForm> forms) : n_(n), forms_(std::move(forms)) {
    if (n_ == 0) throw Error(ErrorCode::empty_system, "dimension n must be at least 1");
    if (forms_.empty()) throw Error(ErrorCode::empty_system, "a system needs at least one form");
    for (std::size_t i = 0; i < forms_.size(); ++i) {
      if (forms_[i].coefficients.size() != n_) {
        throw Error(ErrorCode::dimension_mismatch,
                    "form " + std::to_string(i + 1) + " has " +
                        std::to_string(forms_[i].coefficients.size()) + " coefficients, expected " +
                        std::to_string(n_));
      }
      for (std::size_t j = 0; j < i; ++j) {
        if (forms_[i] == forms_[j]) {
          throw Error(ErrorCode::duplicate_form, "forms " + std::to_string(j + 1) + " and " +
                                                     std::to_string(i + 1) + " are identical");
        }
      }
    }
  }

  std::size_t dimension() const { return n_; }
  std::size_t size() const { return forms_.size(); }
  const std::vector<AffineForm>& forms() const { return forms_; }
  const AffineForm& operator[](std::size_t i) const { return forms_[i]; }

  const Integer& coefficient(std::size_t i, std::size_t j) const { return forms_[i].coefficients[j]; }

  friend bool operator==(const AffineSystem&, const AffineSystem&) = default;

 private:
  std::size_t n_;
  std::vector<AffineForm> forms_;
};

struct SystemProfile {
  Integer e;
  Vector contents;
  Vector row_norms;
};

inline void require_dimension(const AffineSystem& system, const Point& x) {
  if (x.dimension() != system.dimension()) {
    throw Error(ErrorCode::dimension_mismatch, "point has dimension " + std::to_string(x.dimension()) +
                                                   ", system has " + std::to_string(system.dimension()));
  }
}

/// F(x) = (f_1(x), ..., f_m(x)).
inline Vector evaluate(const AffineSystem& system, const Point& x) {
  require_dimension(system, x);
  Vector values;
  values.reserve(system.size());
  for (const auto& f : system.forms()) values.push_back(f(x));
  return values;
}

/// Linear parts (A x)_i without the constants.
inline Vector linear_parts(const AffineSystem& system, const Point& x) {
  require_dimension(system, x);
  Vector values;
  values.reserve(system.size());
  for (const auto& f : system.forms()) values.push_back(f.linear_part(x));
  return values;
}

inline Integer product(std::span<const Integer> values) {
  Integer p = 1;
  for (const auto& v : values) p *= v;
  return p;
}

/// Pairs (i, j), i < j, zero-based, whose full tuples (a_i, b_i) and (a_j, b_j)
/// are nonzero rational multiples of each other.
inline std::vector<std::pair<std::size_t, std::size_t>> rational_multiple_pairs(const AffineSystem& system) {
  auto tuple = [&](std::size_t i) {
    Vector t = system[i].coefficients;
    t.push_back(system[i].constant);
    return t;
  };
  auto is_zero = [](const Vector& v) {
    return std::all_of(v.begin(), v.end(), [](const Integer& a) { return a == 0; });
  };
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < system.size(); ++i) {
    const Vector u = tuple(i);
    if (is_zero(u)) continue;
    for (std::size_t j = i + 1; j < system.size(); ++j) {
      const Vector v = tuple(j);
      if (is_zero(v)) continue;
      bool parallel = true;
      for (std::size_t k = 0; k < u.size() && parallel; ++k) {
        for (std::size_t l = k + 1; l < u.size() && parallel; ++l) {
          parallel = u[k] * v[l] == u[l] * v[k];
        }
      }
      if (parallel) pairs.emplace_back(i, j);
    }
  }
  return pairs;
}

inline SystemProfile profile(const AffineSystem& system) {
  SystemProfile p;
  p.e = 0;
  for (const auto& f : system.forms()) {
    Integer norm = 0;
    Integer content = abs(f.constant);
    for (const auto& a : f.coefficients) {
      norm += abs(a);
      content = gcd(content, a);
    }
    p.row_norms.push_back(norm);
    p.contents.push_back(content);
    if (norm > p.e) p.e = norm;
  }
  return p;
}

namespace detail {

// DOM builder that keeps integers too large for 64 bits as their decimal text.
template <typename Json>
class big_integer_dom_parser : public nlohmann::detail::json_sax_dom_parser<Json> {
 public:
  using nlohmann::detail::json_sax_dom_parser<Json>::json_sax_dom_parser;

  bool number_float(typename Json::number_float_t value, const typename Json::string_t& text) {
    const bool integral = !text.empty() && text.find_first_of(".eE") == std::string::npos;
    if (integral) {
      typename Json::string_t copy = text;
      return this->string(copy);
    }
    return nlohmann::detail::json_sax_dom_parser<Json>::number_float(value, text);
  }
};

}  // namespace detail

/// Parses JSON text, keeping oversized integer literals exact (as strings).
inline nlohmann::json parse_json_exact(const std::string& text) {
  nlohmann::json result;
  detail::big_integer_dom_parser<nlohmann::json> sax(result, true);
  try {
    nlohmann::json::sax_parse(text, &sax);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::malformed_document, e.what());
  }
  return result;
}

/// Integer from a JSON number or decimal string.
inline Integer integer_from_json(const nlohmann::json& j) {
  if (j.is_number_unsigned()) return Integer(j.get<std::uint64_t>());
  if (j.is_number_integer()) return Integer(j.get<std::int64_t>());
  if (j.is_string()) return parse_integer(j.get<std::string>());
  throw Error(ErrorCode::malformed_document, "expected an integer, got " + j.dump());
}

/// JSON number when the value fits in 64 bits, decimal string otherwise.
inline nlohmann::json integer_to_json(const Integer& v) {
  if (auto small = to_int64(v)) return *small;
  return v.str();
}

inline nlohmann::json vector_to_json(std::span<const Integer> values) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& v : values) arr.push_back(integer_to_json(v));
  return arr;
}

inline Vector vector_from_json(const nlohmann::json& j) {
  if (!j.is_array()) throw Error(ErrorCode::malformed_document, "expected an array, got " + j.dump());
  Vector out;
  for (const auto& item : j) out.push_back(integer_from_json(item));
  return out;
}

inline AffineSystem system_from_json(const nlohmann::json& doc) {
  if (!doc.is_object() || !doc.contains("n") || !doc.contains("forms") || !doc["forms"].is_array()) {
    throw Error(ErrorCode::malformed_document, R"(expected {"n": <int>, "forms": [...]})");
  }
  Integer n = integer_from_json(doc["n"]);
  if (n < 0 || n > 1'000'000) throw Error(ErrorCode::malformed_document, "unreasonable dimension n = " + n.str());
  std::vector<AffineForm> forms;
  for (const auto& f : doc["forms"]) {
    if (!f.is_object() || !f.contains("a") || !f.contains("b")) {
      throw Error(ErrorCode::malformed_document, R"(each form must be {"a": [...], "b": <int>})");
    }
    forms.push_back(AffineForm{vector_from_json(f["a"]), integer_from_json(f["b"])});
  }
  return AffineSystem(static_cast<std::size_t>(n), std::move(forms));
}

inline AffineSystem parse_system(const std::string& text) { return system_from_json(parse_json_exact(text)); }

inline nlohmann::json system_to_json(const AffineSystem& system) {
  nlohmann::json forms = nlohmann::json::array();
  for (const auto& f : system.forms()) {
    forms.push_back({{"a", vector_to_json(f.coefficients)}, {"b", integer_to_json(f.constant)}});
  }
  return {{"n", system.dimension()}, {"forms", forms}};
}

inline Point point_from_json(const nlohmann::json& j) { return Point{vector_from_json(j)}; }
inline nlohmann::json point_to_json(const Point& x) { return vector_to_json(x.coords); }

/// Human-readable rendering such as "2x1 - 3x2 + 5" (or "x" when n = 1).
inline std::string to_string(const AffineSystem& system, std::size_t i) {
  const auto& f = system[i];
  std::string out;
  auto var = [&](std::size_t j) {
    return system.dimension() == 1 ? std::string("x") : "x" + std::to_string(j + 1);
  };
  auto term = [&](const Integer& c, const std::string& symbol) {
    if (c == 0) return;
    Integer mag = abs(c);
    if (out.empty()) {
      if (c < 0) out += "-";
    } else {
      out += c < 0 ? " - " : " + ";
    }
    if (mag != 1 || symbol.empty()) out += mag.str();
    out += symbol;
  };
  for (std::size_t j = 0; j < f.coefficients.size(); ++j) term(f.coefficients[j], var(j));
  term(f.constant, "");
  return out.empty() ? "0" : out;
}

}  // namespace dickson
