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
#include <cstdio>
#include <string>

#include <json.hpp>

#include "dickson/admissibility.hpp"
#include "dickson/crt.hpp"
#include "dickson/feasibility.hpp"
#include "dickson/primesearch.hpp"
#include "dickson/strong.hpp"
#include "dickson/theorem1.hpp"

// JSON encodings of the library's results. Integers that fit in 64 bits are
// numbers, larger ones decimal strings; readers accept both.

namespace dickson {

using nlohmann::json;

inline constexpr int kSchemaVersion = 1;

/// 64-bit FNV-1a of the canonical system document, as 16 hex digits.
inline std::string input_digest(const AffineSystem& system) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : system_to_json(system).dump()) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

inline json to_json(const PositivityOutcome& outcome) {
  if (const auto* dir = std::get_if<PositiveDirection>(&outcome)) {
    return {{"kind", "direction"}, {"y", point_to_json(dir->y)}};
  }
  const auto& cert = std::get<GordanCertificate>(outcome);
  return {{"kind", "certificate"}, {"lambda", vector_to_json(cert.lambda)},
          {"lambdaDotB", integer_to_json(cert.lambda_dot_b)}};
}

inline PositivityOutcome positivity_from_json(const json& j) {
  const auto kind = j.at("kind").get<std::string>();
  if (kind == "direction") return PositiveDirection{point_from_json(j.at("y"))};
  if (kind == "certificate") {
    return GordanCertificate{vector_from_json(j.at("lambda")), integer_from_json(j.at("lambdaDotB"))};
  }
  throw Error(ErrorCode::malformed_document, "unknown positivity kind '" + kind + "'");
}

inline json to_json(const ObstructionReport& r) {
  return {{"primes", vector_to_json(r.primes)},
          {"candidates", vector_to_json(r.candidates)},
          {"candidateBound", r.candidate_bound}};
}

inline ObstructionReport obstructions_from_json(const json& j) {
  return {vector_from_json(j.at("primes")), vector_from_json(j.at("candidates")),
          j.at("candidateBound").get<std::size_t>()};
}

inline json to_json(const AdmissibilityReport& r) {
  return {{"verdict", r.admissible ? "admissible" : "notAdmissible"},
          {"positivity", to_json(r.positivity)},
          {"obstructions", to_json(r.obstructions)}};
}

inline AdmissibilityReport admissibility_from_json(const json& j) {
  return {j.at("verdict").get<std::string>() == "admissible", positivity_from_json(j.at("positivity")),
          obstructions_from_json(j.at("obstructions"))};
}

inline json to_json(const StrongWitness& w) {
  return {{"k", integer_to_json(w.k)}, {"x", point_to_json(w.x)}, {"values", vector_to_json(w.values)}};
}

inline StrongWitness strong_witness_from_json(const json& j) {
  return {integer_from_json(j.at("k")), point_from_json(j.at("x")), vector_from_json(j.at("values"))};
}

inline json to_json(const PrimePoint& pp) {
  return {{"x", point_to_json(pp.x)}, {"values", vector_to_json(pp.values)}};
}

inline PrimePoint prime_point_from_json(const json& j) {
  return {point_from_json(j.at("x")), vector_from_json(j.at("values"))};
}

inline json to_json(const ResiduePoint& r) {
  return {{"modulus", integer_to_json(r.modulus)}, {"coords", vector_to_json(r.coords)}, {"unit", r.unit}};
}

inline ResiduePoint residue_point_from_json(const json& j) {
  return {integer_from_json(j.at("modulus")), vector_from_json(j.at("coords")), j.value("unit", false)};
}

inline json to_json(const SystemProfile& p) {
  return {{"e", integer_to_json(p.e)}, {"contents", vector_to_json(p.contents)},
          {"rowNorms", vector_to_json(p.row_norms)}};
}

inline json to_json(const Theorem1Setup& s) {
  return {{"e", integer_to_json(s.e)},
          {"alpha", integer_to_json(s.alpha)},
          {"y", point_to_json(s.y)},
          {"z", point_to_json(s.z)},
          {"w", point_to_json(s.w)},
          {"fy", vector_to_json(s.fy)},
          {"fz", vector_to_json(s.fz)},
          {"fw", vector_to_json(s.fw)},
          {"wThreshold", integer_to_json(s.w_threshold)},
          {"proofBound", integer_to_json(s.proof_bound)}};
}

inline json to_json(const Theorem1Trace& t) {
  json j = {{"setup", to_json(t.setup)},
            {"k", integer_to_json(t.k)},
            {"branch", branch_name(t.branch)},
            {"witness", to_json(t.witness)}};
  if (t.p) {
    j["p"] = integer_to_json(*t.p);
    j["q"] = integer_to_json(*t.q);
    j["t"] = integer_to_json(*t.t);
    j["d"] = integer_to_json(*t.d);
    j["pExponent"] = t.p_exponent;
    j["v"] = point_to_json(*t.v);
  }
  if (t.branch == Theorem1Branch::matrix_branch) {
    j["shifts"] = vector_to_json(t.shifts);
    json family = json::array();
    for (const auto& x : t.family) family.push_back(point_to_json(x));
    j["family"] = family;
    json matrix = json::array();
    for (const auto& row : t.matrix) matrix.push_back(vector_to_json(row));
    j["matrixM"] = matrix;
    j["chosenColumn"] = *t.chosen_column + 1;
  }
  return j;
}

}  // namespace dickson
