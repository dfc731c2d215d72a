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
#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "dickson/admissibility.hpp"
#include "dickson/crt.hpp"
#include "dickson/forms.hpp"
#include "dickson/primesearch.hpp"
#include "dickson/report.hpp"
#include "dickson/strong.hpp"
#include "dickson/theorem1.hpp"

namespace dickson::cli {

enum ExitCode : int {
  kSuccess = 0,
  kNegative = 1,      // not admissible, no witness
  kInputError = 2,
  kExhausted = 3,     // budget or bound reached, no verdict
  kInternalError = 4, // invariant violation such as ProofGapDetected
};

inline int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::not_admissible: return kNegative;
    case ErrorCode::budget_exhausted:
    case ErrorCode::factorization_budget: return kExhausted;
    case ErrorCode::proof_gap_detected: return kInternalError;
    default: return kInputError;
  }
}

inline AffineSystem load_system(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::malformed_document, "cannot read '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_system(buf.str());
}

inline std::vector<Integer> parse_integer_list(const std::string& text) {
  std::vector<Integer> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_integer(item));
  if (out.empty()) throw Error(ErrorCode::invalid_argument, "expected a comma-separated list of integers");
  return out;
}

/// "c1,c2,...:a" -> residue point modulo a.
inline ResiduePoint parse_residue(const std::string& text, bool unit) {
  const auto colon = text.rfind(':');
  if (colon == std::string::npos) {
    throw Error(ErrorCode::invalid_argument, "residue '" + text + "' must look like c1,c2:modulus");
  }
  return {parse_integer(text.substr(colon + 1)), parse_integer_list(text.substr(0, colon)), unit};
}

inline std::string join(std::span<const Integer> values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ", ";
    out += values[i].str();
  }
  return out;
}

inline std::string tuple(std::span<const Integer> values) { return "(" + join(values) + ")"; }

inline std::int64_t to_bound(const Integer& v, const char* what) {
  auto small = to_int64(v);
  if (!small || *small < 0 || *small > (std::int64_t{1} << 40)) {
    throw Error(ErrorCode::invalid_argument, std::string(what) + " must be in [0, 2^40]");
  }
  return *small;
}

class Runner {
 public:
  Runner(std::ostream& out, std::ostream& err) : out_(out), err_(err) {}

  int run(std::vector<std::string> args) {
    CLI::App app{"Admissibility, strong admissibility and prime points of affine-linear systems over Z^n"};
    app.require_subcommand(1);
    app.fallthrough();
    app.add_flag("--json", json_, "Print the machine-readable report");
    app.add_option("--workers", workers_, "Worker threads (output does not depend on this)")->check(CLI::Range(1, 1024));

    std::string system_path, r_text, k_text, max_text, count_text = "1", bound_text, moduli_text, box_text = "100";
    std::string n_text = "0", crt_moduli_text;
    bool distinct = false, no_prefilter = false, unit = false;
    std::vector<std::string> polys, residues;

    auto* check = app.add_subcommand("check", "Decide admissibility with certificates");
    check->add_option("system", system_path)->required();

    auto* witness = app.add_subcommand("witness", "Point with values > 1 whose product is coprime to r");
    witness->add_option("system", system_path)->required();
    witness->add_option("--r", r_text)->required();

    auto* strong = app.add_subcommand("strong", "Point with every value in Z_k^* and > 1");
    strong->add_option("system", system_path)->required();
    strong->add_option("--k", k_text)->required();

    auto* constant = app.add_subcommand("constant", "Scan k <= max for strong witnesses");
    constant->add_option("system", system_path)->required();
    constant->add_option("--max", max_text)->required();

    auto* trace = app.add_subcommand("trace", "Trace the strong-admissibility construction for k");
    trace->add_option("system", system_path)->required();
    trace->add_option("--k", k_text, "Omit to print the helper points and the bound on k");

    auto* search = app.add_subcommand("search", "Stream prime points in canonical order");
    search->add_option("system", system_path)->required();
    search->add_option("--count", count_text);
    search->add_option("--bound", bound_text, "Max-norm limit (default 100000)");
    search->add_flag("--distinct-values", distinct);
    search->add_flag("--no-prefilter", no_prefilter);

    auto* count = app.add_subcommand("count", "Count prime points with max-norm <= bound");
    count->add_option("system", system_path)->required();
    count->add_option("--bound", bound_text)->required();
    count->add_flag("--no-prefilter", no_prefilter);

    auto* crt = app.add_subcommand("crt", "Generalized CRT on n-tuples");
    crt->require_subcommand(1);
    auto* combine = crt->add_subcommand("combine", "Combine residue points c1,c2:a with coprime moduli");
    combine->add_option("residues", residues)->required();
    combine->add_flag("--unit", unit, "Residues are in Z_a^* (range [1, a])");
    auto* split = crt->add_subcommand("split", "Split a residue point c1,c2:A over coprime moduli");
    split->add_option("residue", residues)->required()->expected(1);
    split->add_option("--moduli", crt_moduli_text)->required();
    split->add_flag("--unit", unit);

    auto* analogy = app.add_subcommand("analogy", "Prime point with values in Z_A^* \\ {1}, A = a_1 ... a_k");
    analogy->add_option("system", system_path)->required();
    analogy->add_option("--moduli", moduli_text)->required();
    analogy->add_option("--bound", bound_text, "Max-norm search limit (default 100000)");

    auto* probe = app.add_subcommand("probe", "Bounded search for a general polynomial map");
    probe->add_option("--poly", polys, "Polynomial such as -x^2+6 (repeatable)")->required();
    probe->add_option("--n", n_text, "Number of variables (default: inferred)");
    probe->add_option("--r", r_text)->required();
    probe->add_option("--box", box_text);

    std::reverse(args.begin(), args.end());
    try {
      app.parse(args);
    } catch (const CLI::CallForHelp&) {
      out_ << app.help();
      return kSuccess;
    } catch (const CLI::ParseError& e) {
      err_ << e.what() << "\n" << app.help();
      return kInputError;
    }

    const auto start = std::chrono::steady_clock::now();
    try {
      int code = kInputError;
      if (*check) code = run_check(load_system(system_path));
      if (*witness) code = run_witness(load_system(system_path), parse_integer(r_text));
      if (*strong) code = run_strong(load_system(system_path), parse_integer(k_text));
      if (*constant) code = run_constant(load_system(system_path), parse_integer(max_text));
      if (*trace) code = run_trace(load_system(system_path), k_text);
      if (*search) {
        code = run_search(load_system(system_path), parse_integer(count_text), bound_text, distinct, !no_prefilter);
      }
      if (*count) code = run_count(load_system(system_path), parse_integer(bound_text), !no_prefilter);
      if (*combine) code = run_combine(residues, unit);
      if (*split) code = run_split(residues.front(), crt_moduli_text, unit);
      if (*analogy) code = run_analogy(load_system(system_path), moduli_text, bound_text);
      if (*probe) code = run_probe(polys, parse_integer(n_text), parse_integer(r_text), parse_integer(box_text));
      const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start);
      err_ << "elapsed " << ms.count() << " ms\n";
      return code;
    } catch (const Error& e) {
      err_ << "error: " << e.what() << "\n";
      if (json_) {
        out_ << json{{"schemaVersion", kSchemaVersion}, {"error", error_name(e.code())}, {"message", e.what()}}.dump()
             << "\n";
      }
      return exit_code_for(e.code());
    }
  }

 private:
  json header(const std::string& command, const AffineSystem* system) const {
    json j = {{"schemaVersion", kSchemaVersion}, {"command", command}};
    if (system) {
      j["inputDigest"] = input_digest(*system);
      j["system"] = system_to_json(*system);
    }
    return j;
  }

  void emit(const json& report) { out_ << report.dump() << "\n"; }

  void describe(const AffineSystem& system) {
    for (std::size_t i = 0; i < system.size(); ++i) out_ << "  f" << i + 1 << " = " << to_string(system, i) << "\n";
  }

  int run_check(const AffineSystem& system) {
    const auto report = admissible_check(system);
    const auto pairs = rational_multiple_pairs(system);
    const auto prof = profile(system);
    if (json_) {
      json j = header("check", &system);
      j.update(to_json(report));
      json jp = json::array();
      for (auto [a, b] : pairs) jp.push_back({a + 1, b + 1});
      j["rationalMultiplePairs"] = jp;
      j["profile"] = to_json(prof);
      emit(j);
    } else {
      describe(system);
      out_ << (report.admissible ? "admissible" : "not admissible") << "\n";
      if (const auto* dir = std::get_if<PositiveDirection>(&report.positivity)) {
        out_ << "positivity direction y = " << tuple(dir->y.coords) << ", A y = "
             << tuple(linear_parts(system, dir->y)) << "\n";
      } else {
        const auto& cert = std::get<GordanCertificate>(report.positivity);
        out_ << "certificate lambda = " << tuple(cert.lambda) << ", lambda^T A = 0, lambda^T b = "
             << cert.lambda_dot_b << "\n";
      }
      out_ << "fixed prime divisors: {" << join(report.obstructions.primes) << "} (candidates {"
           << join(report.obstructions.candidates) << "})\n";
      out_ << "e = " << prof.e << "\n";
      for (auto [a, b] : pairs) out_ << "f" << a + 1 << " and f" << b + 1 << " are rational multiples\n";
    }
    return report.admissible ? kSuccess : kNegative;
  }

  int run_witness(const AffineSystem& system, const Integer& r) {
    const Point x = admissible_witness(system, r);
    const Vector values = evaluate(system, x);
    if (json_) {
      json j = header("witness", &system);
      j["r"] = integer_to_json(r);
      j["x"] = point_to_json(x);
      j["values"] = vector_to_json(values);
      emit(j);
    } else {
      out_ << "x = " << tuple(x.coords) << ", F(x) = " << tuple(values) << ", gcd with r = "
           << gcd(product(values), r) << "\n";
    }
    return kSuccess;
  }

  int run_strong(const AffineSystem& system, const Integer& k) {
    const auto w = strong_witness(system, k);
    if (json_) {
      json j = header("strong", &system);
      j["k"] = integer_to_json(k);
      j["found"] = w.has_value();
      if (w) j["witness"] = to_json(*w);
      emit(j);
    } else if (w) {
      out_ << "x = " << tuple(w->x.coords) << ", F(x) = " << tuple(w->values) << " in Z_" << k << "^*\n";
    } else {
      out_ << "no point has every value in Z_" << k << "^* \\ {1}\n";
    }
    return w ? kSuccess : kNegative;
  }

  int run_constant(const AffineSystem& system, const Integer& max) {
    const auto result = empirical_constant(system, static_cast<std::uint64_t>(to_bound(max, "--max")), workers_);
    if (json_) {
      json j = header("constant", &system);
      j["max"] = result.bound;
      j["cEmp"] = integer_to_json(result.c_emp);
      j["failures"] = result.failures;
      emit(j);
    } else {
      out_ << "empirical constant " << result.c_emp << " (valid up to k = " << result.bound << ")\n";
      out_ << "failing k:";
      for (auto k : result.failures) out_ << " " << k;
      out_ << "\n";
    }
    return kSuccess;
  }

  int run_trace(const AffineSystem& system, const std::string& k_text) {
    const auto setup = theorem1_setup(system);
    if (k_text.empty()) {
      if (json_) {
        json j = header("trace", &system);
        j["setup"] = to_json(setup);
        emit(j);
      } else {
        out_ << "y = " << tuple(setup.y.coords) << ", F(y) = " << tuple(setup.fy) << "\n"
             << "z = " << tuple(setup.z.coords) << ", F(z) = " << tuple(setup.fz) << "\n"
             << "w = " << tuple(setup.w.coords) << ", F(w) = " << tuple(setup.fw) << "\n"
             << "construction covers every k >= " << setup.proof_bound << "\n";
      }
      return kSuccess;
    }
    const auto trace = theorem1_trace(system, setup, parse_integer(k_text));
    if (!verify_trace(system, trace)) throw Error(ErrorCode::proof_gap_detected, "trace failed re-verification");
    if (json_) {
      json j = header("trace", &system);
      j.update(to_json(trace));
      emit(j);
    } else {
      out_ << "branch " << branch_name(trace.branch) << "\n";
      if (trace.p) {
        out_ << "k = p q t with p = " << *trace.p << ", q = " << *trace.q << ", t = " << *trace.t << " = " << *trace.p
             << "^" << trace.p_exponent << " * " << *trace.d << "\n";
      }
      if (trace.chosen_column) {
        for (const auto& row : trace.matrix) out_ << "  " << join(row) << "\n";
        out_ << "column " << *trace.chosen_column + 1 << " is coprime to q\n";
      }
      out_ << "x = " << tuple(trace.witness.x.coords) << ", F(x) = " << tuple(trace.witness.values) << "\n";
    }
    return kSuccess;
  }

  EnumerationOptions enumeration(const std::string& bound_text, bool prefilter = true) const {
    EnumerationOptions options;
    if (!bound_text.empty()) options.bound = to_bound(parse_integer(bound_text), "--bound");
    options.workers = workers_;
    options.use_prefilter = prefilter;
    return options;
  }

  int run_search(const AffineSystem& system, const Integer& count, const std::string& bound_text, bool distinct,
                 bool prefilter) {
    if (count < 0) throw Error(ErrorCode::invalid_argument, "--count must be nonnegative");
    const auto options = enumeration(bound_text, prefilter);
    const auto result = find_prime_points(system, static_cast<std::uint64_t>(count), options, distinct);
    for (const auto& pp : result.points) {
      out_ << R"({"x":)" << point_to_json(pp.x).dump() << R"(,"values":)" << vector_to_json(pp.values).dump() << "}\n";
    }
    if (!result.complete) {
      err_ << "found " << result.points.size() << " of " << count << " prime points with max-norm <= "
           << options.bound << "\n";
      return kExhausted;
    }
    return kSuccess;
  }

  int run_count(const AffineSystem& system, const Integer& bound, bool prefilter) {
    const auto b = to_bound(bound, "--bound");
    const auto total = count_prime_points(system, b, workers_, prefilter);
    if (json_) {
      json j = header("count", &system);
      j["bound"] = b;
      j["count"] = total;
      emit(j);
    } else {
      out_ << total << "\n";
    }
    return kSuccess;
  }

  int run_combine(const std::vector<std::string>& residues, bool unit) {
    std::vector<ResiduePoint> points;
    for (const auto& r : residues) points.push_back(parse_residue(r, unit));
    const auto combined = crt_combine(points);
    if (json_) {
      json j = header("crt combine", nullptr);
      j["result"] = to_json(combined);
      emit(j);
    } else {
      out_ << join(combined.coords) << ":" << combined.modulus << "\n";
    }
    return kSuccess;
  }

  int run_split(const std::string& residue, const std::string& moduli_text, bool unit) {
    const auto moduli = parse_integer_list(moduli_text);
    const auto parts = crt_split(parse_residue(residue, unit), moduli);
    if (json_) {
      json j = header("crt split", nullptr);
      json arr = json::array();
      for (const auto& p : parts) arr.push_back(to_json(p));
      j["result"] = arr;
      emit(j);
    } else {
      for (const auto& p : parts) out_ << join(p.coords) << ":" << p.modulus << "\n";
    }
    return kSuccess;
  }

  int run_analogy(const AffineSystem& system, const std::string& moduli_text, const std::string& bound_text) {
    const auto moduli = parse_integer_list(moduli_text);
    const auto result = analogy_prime_point(system, moduli, enumeration(bound_text));
    if (json_) {
      json j = header("analogy", &system);
      j["moduli"] = vector_to_json(moduli);
      j["modulus"] = integer_to_json(result.modulus);
      j["z"] = point_to_json(result.z);
      j["values"] = vector_to_json(result.values);
      json hyp = json::array();
      for (const auto& h : result.hypothesis) hyp.push_back(h ? to_json(*h) : json(nullptr));
      j["hypothesis"] = hyp;
      emit(j);
    } else {
      for (std::size_t i = 0; i < moduli.size(); ++i) {
        const auto& h = result.hypothesis[i];
        out_ << "a = " << moduli[i] << ": ";
        if (h) {
          out_ << "x = " << tuple(h->x.coords) << ", F(x) = " << tuple(h->values) << "\n";
        } else {
          out_ << "no point with values in Z_a^* \\ {1}\n";
        }
      }
      out_ << "z = " << tuple(result.z.coords) << ", F(z) = " << tuple(result.values) << " in Z_" << result.modulus
           << "^* \\ {1}\n";
    }
    return kSuccess;
  }

  int run_probe(const std::vector<std::string>& texts, const Integer& n, const Integer& r, const Integer& box) {
    std::vector<Polynomial> map;
    std::size_t dim = static_cast<std::size_t>(to_bound(n, "--n"));
    if (dim == 0) {
      for (const auto& t : texts) dim = std::max(dim, parse_polynomial(t).dimension());
    }
    for (const auto& t : texts) map.push_back(parse_polynomial(t, dim));
    const auto found = probe_general(map, r, to_bound(box, "--box"));
    if (json_) {
      json j = header("probe", nullptr);
      j["polynomials"] = texts;
      j["r"] = integer_to_json(r);
      j["box"] = integer_to_json(box);
      j["found"] = found.has_value();
      if (found) {
        j["x"] = point_to_json(*found);
        Vector values;
        for (const auto& f : map) values.push_back(f(found->coords));
        j["values"] = vector_to_json(values);
      }
      emit(j);
    } else if (found) {
      out_ << "x = " << tuple(found->coords) << ", values (";
      for (std::size_t i = 0; i < map.size(); ++i) out_ << (i ? ", " : "") << map[i](found->coords);
      out_ << ")\n";
    } else {
      out_ << "not found in [-" << box << ", " << box << "]^" << dim << " (this is not a proof)\n";
    }
    return found ? kSuccess : kExhausted;
  }

  std::ostream& out_;
  std::ostream& err_;
  bool json_ = false;
  unsigned workers_ = 1;
};

/// Entry point shared by the executable and the tests.
inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  return Runner(out, err).run(args);
}

}  // namespace dickson::cli
