/*
  Copyright (c) the absp authors.

  Licensed under the Apache License, Version 2.0 (the "License");
  you may not use this file except in compliance with the License.
  You may obtain a copy of the License at

  http://www.apache.org/licenses/LICENSE-2.0

  Unless required by applicable law or agreed to in writing, software
  distributed under the License is distributed on an "AS IS" BASIS,
  WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
  See the License for the specific language governing permissions and
  limitations under the License.
*/

// Command-line front end.  Wires models, states and the evaluators into
// reproducible batch runs; all numerics go through the shared-library C API.

#include <CLI11.hpp>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "absp/absp.h"

namespace {

// exit codes: 0 pass, 1 property failure, 2 config error, 3 numerical error
constexpr int kExitOk = 0;
constexpr int kExitPropertyFailure = 1;
constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

std::string read_file_or_exit(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    std::cerr << "error: cannot open " << path << "\n";
    std::exit(kExitConfig);
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_atomic_or_exit(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  fs::path target(path);
  fs::path dir = target.parent_path();
  if (dir.empty()) dir = ".";
  fs::path tmp = dir / (target.filename().string() + ".tmp");
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) {
      std::cerr << "error: cannot write " << tmp.string() << "\n";
      std::exit(kExitConfig);
    }
    out << content;
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    std::cerr << "error: rename failed: " << ec.message() << "\n";
    std::exit(kExitConfig);
  }
}

absp_model* load_model_or_exit(const std::string& path) {
  absp_model* model = nullptr;
  if (absp_model_load(path.c_str(), &model) != ABSP_OK) {
    std::cerr << "error: " << absp_last_error() << "\n";
    std::exit(kExitConfig);
  }
  return model;
}

std::vector<double> parse_rapidity_file(const std::string& path) {
  // minimal reader for {"roots": [[re, im], ...]} produced by this tool
  std::string text = read_file_or_exit(path);
  std::vector<double> flat;
  std::size_t pos = text.find('[');
  if (pos == std::string::npos) {
    std::cerr << "error: no roots in " << path << "\n";
    std::exit(kExitConfig);
  }
  const char* p = text.c_str();
  while (true) {
    pos = text.find('[', pos + 1);
    if (pos == std::string::npos) break;
    double re = 0.0, im = 0.0;
    if (std::sscanf(p + pos, "[ %lf , %lf ]", &re, &im) == 2 ||
        std::sscanf(p + pos, "[%lf,%lf]", &re, &im) == 2 ||
        std::sscanf(p + pos, "[%lf, %lf]", &re, &im) == 2) {
      flat.push_back(re);
      flat.push_back(im);
    }
  }
  return flat;
}

std::string extract_roots_array(const std::string& state_json) {
  // pull the "roots" array text out of a state JSON
  std::size_t k = state_json.find("\"roots\"");
  if (k == std::string::npos) return "[]";
  k = state_json.find('[', k);
  int depth = 0;
  std::size_t end = k;
  for (std::size_t i = k; i < state_json.size(); ++i) {
    if (state_json[i] == '[') depth++;
    if (state_json[i] == ']') {
      depth--;
      if (depth == 0) {
        end = i;
        break;
      }
    }
  }
  return state_json.substr(k, end - k + 1);
}

int numerical_exit(absp_status st) {
  std::cerr << "error: " << absp_last_error() << "\n";
  return st == ABSP_ERR_PARSE || st == ABSP_ERR_INVALID_ARGUMENT || st == ABSP_ERR_IO
             ? kExitConfig
             : kExitNumerical;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"scalar products of Bethe vectors: exact formulas, brute-force oracle, "
               "semiclassical expansion"};
  app.require_subcommand(1);
  app.failure_message(CLI::FailureMessage::help);

  std::uint64_t seed = 1;
  app.add_option("--seed", seed, "seed recorded in every output")->capture_default_str();

  // solve-bethe
  auto* solve = app.add_subcommand("solve-bethe", "solve the Bethe equations for mode numbers");
  std::string solve_model, solve_modes, solve_out, solve_guess;
  double solve_tol = 1e-13;
  int solve_iter = 80;
  solve->add_option("--model", solve_model, "model JSON file")->required();
  solve->add_option("--modes", solve_modes, "comma-separated mode numbers")->required();
  solve->add_option("--out", solve_out, "output state JSON")->required();
  solve->add_option("--initial", solve_guess, "rapidity JSON with the initial guess");
  solve->add_option("--tol", solve_tol, "component-wise tolerance")->capture_default_str();
  solve->add_option("--max-iter", solve_iter, "Newton iteration cap")->capture_default_str();

  // scalar-product
  auto* sp = app.add_subcommand("scalar-product", "scalar product of an on-shell and a generic state");
  std::string sp_model, sp_u, sp_v, sp_out, sp_method = "all";
  sp->add_option("--model", sp_model, "model JSON file")->required();
  sp->add_option("--u", sp_u, "state JSON (on shell)")->required();
  sp->add_option("--v", sp_v, "rapidity JSON for the second state")->required();
  sp->add_option("--method", sp_method, "all|ratio|fredholm|coulomb")->capture_default_str();
  sp->add_option("--out", sp_out, "output JSON")->required();

  // oracle-check
  auto* oc = app.add_subcommand("oracle-check", "compare the determinant value with the 2^L oracle");
  std::string oc_model, oc_u, oc_v, oc_out;
  oc->add_option("--model", oc_model, "model JSON file (inhomogeneous_xxx)")->required();
  oc->add_option("--u", oc_u, "state JSON")->required();
  oc->add_option("--v", oc_v, "rapidity JSON")->required();
  oc->add_option("--out", oc_out, "output JSON")->required();

  // verify-identities
  auto* vi = app.add_subcommand("verify-identities", "cross-method identity suites");
  std::string vi_out;
  int vi_instances = 200;
  bool vi_flip = false;
  vi->add_option("--instances", vi_instances, "instance count")->capture_default_str();
  vi->add_option("--out", vi_out, "report JSON (stdout when omitted)");
  vi->add_flag("--inject-epsilon-sign-flip", vi_flip, "test fixture: corrupt the Fredholm kernel")
      ->group("");

  // semiclassical-compare
  auto* sc = app.add_subcommand("semiclassical-compare",
                                "leading/subleading expansion against exact log A");
  std::string sc_family, sc_out, sc_emit;
  int sc_nodes = 512;
  sc->add_option("--family", sc_family, "family JSON (bundled one-cut family when omitted)");
  sc->add_option("--nodes", sc_nodes, "contour nodes")->capture_default_str();
  sc->add_option("--out", sc_out, "report CSV")->required();
  sc->add_option("--emit-family", sc_emit, "also write the family definition JSON");

  CLI11_PARSE(app, argc, argv);

  if (solve->parsed()) {
    absp_model* model = load_model_or_exit(solve_model);
    std::vector<int> modes;
    {
      std::stringstream ss(solve_modes);
      std::string tok;
      while (std::getline(ss, tok, ',')) modes.push_back(std::atoi(tok.c_str()));
    }
    std::vector<double> guess;
    if (!solve_guess.empty()) {
      guess = parse_rapidity_file(solve_guess);
      if (guess.size() != 2 * modes.size()) {
        std::cerr << "error: initial guess size does not match mode count\n";
        return kExitConfig;
      }
    }
    char* state_json = nullptr;
    absp_status st = absp_solve_bethe(model, modes.data(), modes.size(),
                                      guess.empty() ? nullptr : guess.data(), solve_tol,
                                      solve_iter, &state_json);
    if (st != ABSP_OK && st != ABSP_ERR_NO_CONVERGENCE) return numerical_exit(st);
    std::ostringstream os;
    os << "{\"seed\": " << seed << ", \"state\": " << state_json << "}\n";
    write_atomic_or_exit(solve_out, os.str());
    absp_string_free(state_json);
    absp_model_free(model);
    if (st == ABSP_ERR_NO_CONVERGENCE) {
      std::cerr << "warning: no convergence; best iterate written\n";
      return kExitNumerical;
    }
    return kExitOk;
  }

  if (sp->parsed()) {
    if (sp_method != "all" && sp_method != "ratio" && sp_method != "fredholm" &&
        sp_method != "coulomb") {
      std::cerr << "error: unknown method " << sp_method << "\n";
      return kExitConfig;
    }
    absp_model* model = load_model_or_exit(sp_model);
    std::string u_state = read_file_or_exit(sp_u);
    std::vector<double> v = parse_rapidity_file(sp_v);
    char* result = nullptr;
    absp_status st = absp_scalar_product(model, u_state.c_str(), v.data(), v.size() / 2, &result);
    if (st != ABSP_OK) return numerical_exit(st);
    std::ostringstream os;
    os << "{\"seed\": " << seed << ", \"method\": \"" << sp_method << "\", \"result\": " << result
       << "}\n";
    write_atomic_or_exit(sp_out, os.str());
    absp_string_free(result);
    absp_model_free(model);
    return kExitOk;
  }

  if (oc->parsed()) {
    absp_model* model = load_model_or_exit(oc_model);
    std::string u_state = read_file_or_exit(oc_u);
    std::vector<double> v = parse_rapidity_file(oc_v);
    char* result = nullptr;
    absp_status st = absp_oracle_check(model, u_state.c_str(), v.data(), v.size() / 2, &result);
    if (st != ABSP_OK) return numerical_exit(st);
    std::ostringstream os;
    os << "{\"seed\": " << seed << ", \"result\": " << result << "}\n";
    write_atomic_or_exit(oc_out, os.str());
    absp_string_free(result);
    absp_model_free(model);
    return kExitOk;
  }

  if (vi->parsed()) {
    char* report = nullptr;
    absp_status st = absp_verify_identities(seed, vi_instances, vi_flip ? 1 : 0, &report);
    if (st != ABSP_OK) return numerical_exit(st);
    std::string text = report;
    absp_string_free(report);
    bool pass = text.find("\"pass\": true}") != std::string::npos;
    if (!vi_out.empty())
      write_atomic_or_exit(vi_out, text + "\n");
    else
      std::cout << text << "\n";
    return pass ? kExitOk : kExitPropertyFailure;
  }

  if (sc->parsed()) {
    std::string family_text;
    char* csv = nullptr;
    char* family_out = nullptr;
    absp_status st;
    if (!sc_family.empty()) {
      family_text = read_file_or_exit(sc_family);
      st = absp_semiclassical_compare(family_text.c_str(), sc_nodes, &csv,
                                      sc_emit.empty() ? nullptr : &family_out);
    } else {
      st = absp_semiclassical_compare(nullptr, sc_nodes, &csv,
                                      sc_emit.empty() ? nullptr : &family_out);
    }
    if (st != ABSP_OK) return numerical_exit(st);
    write_atomic_or_exit(sc_out, csv);
    absp_string_free(csv);
    if (family_out) {
      write_atomic_or_exit(sc_emit, std::string(family_out) + "\n");
      absp_string_free(family_out);
    }
    return kExitOk;
  }

  std::cerr << "error: no subcommand\n";
  return kExitConfig;
}
