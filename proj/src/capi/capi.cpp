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
#include "absp/absp.h"

#include <cstring>
#include <sstream>

#include "../core/afunctional.hpp"
#include "../core/dilog.hpp"
#include "../core/family.hpp"
#include "../core/instances.hpp"
#include "../core/jsonio.hpp"
#include "../core/oracle.hpp"
#include "../core/solver.hpp"

using namespace absp;

struct absp_model {
  Model impl;
};

namespace {

thread_local std::string g_last_error;

absp_status to_status(Err code) { return static_cast<absp_status>(static_cast<int>(code)); }

template <typename Fn>
absp_status guarded(Fn&& fn) {
  try {
    fn();
    return ABSP_OK;
  } catch (const Error& e) {
    g_last_error = e.what();
    return to_status(e.code());
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return ABSP_ERR_INTERNAL;
  }
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

RapiditySet set_from(const double* data, size_t n) {
  RapiditySet s;
  s.roots.reserve(n);
  for (size_t i = 0; i < n; ++i) s.roots.push_back(Cx{data[2 * i], data[2 * i + 1]});
  return s;
}

void put(double out[2], Cx z) {
  out[0] = z.real();
  out[1] = z.imag();
}

}  // namespace

extern "C" {

const char* absp_last_error(void) { return g_last_error.c_str(); }

void absp_string_free(char* s) { std::free(s); }

const char* absp_version(void) { return "0.1.0"; }

absp_status absp_model_parse(const char* json, absp_model** out) {
  if (!json || !out) return ABSP_ERR_INVALID_ARGUMENT;
  return guarded([&] { *out = new absp_model{model_from_json(json)}; });
}

absp_status absp_model_load(const char* path, absp_model** out) {
  if (!path || !out) return ABSP_ERR_INVALID_ARGUMENT;
  return guarded([&] { *out = new absp_model{model_from_file(path)}; });
}

void absp_model_free(absp_model* model) { delete model; }

absp_status absp_model_to_json(const absp_model* model, char** json) {
  if (!model || !json) return ABSP_ERR_INVALID_ARGUMENT;
  return guarded([&] { *json = dup_string(model_to_json(model->impl)); });
}

absp_status absp_model_epsilon(const absp_model* model, double* epsilon) {
  if (!model || !epsilon) return ABSP_ERR_INVALID_ARGUMENT;
  *epsilon = model->impl.epsilon();
  return ABSP_OK;
}

absp_status absp_baxter_eval(const double* roots, size_t n, const double v[2], double out[2]) {
  if ((n && !roots) || !v || !out) return ABSP_ERR_INVALID_ARGUMENT;
  return guarded([&] {
    RapiditySet s = set_from(roots, n);
    put(out, baxter_eval(s, Cx{v[0], v[1]}));
  });
}

absp_status absp_f_eval(const absp_model* model, const double v[2], double out[2]) {
  if (!model || !v || !out) return ABSP_ERR_INVALID_ARGUMENT;
  return guarded([&] { put(out, model->impl.f(Cx{v[0], v[1]})); });
}

absp_status absp_weight_eval(const absp_model* model, const double* w, size_t n, const double z[2],
                             double out[2]) {
  if (!model || (n && !w) || !z || !out) return ABSP_ERR_INVALID_ARGUMENT;
  return guarded([&] {
    RapiditySet s = set_from(w, n);
    put(out, weight_function(model->impl, s, Cx{z[0], z[1]}));
  });
}

absp_status absp_pseudo_momentum(const absp_model* model, const double* u, size_t n,
                                 const double v[2], double out[2]) {
  if (!model || (n && !u) || !v || !out) return ABSP_ERR_INVALID_ARGUMENT;
  return guarded([&] {
    RapiditySet s = set_from(u, n);
    put(out, pseudo_momentum(model->impl, s, Cx{v[0], v[1]}));
  });
}

absp_status absp_dilog(const double z[2], double out[2]) {
  if (!z || !out) return ABSP_ERR_INVALID_ARGUMENT;
  return guarded([&] { put(out, dilog(Cx{z[0], z[1]})); });
}

absp_status absp_bethe_residual(const absp_model* model, const double* u, size_t n,
                                double* residual) {
  if (!model || (n && !u) || !residual) return ABSP_ERR_INVALID_ARGUMENT;
  return guarded([&] {
    RapiditySet s = set_from(u, n);
    *residual = bethe_residual(model->impl, s);
  });
}

absp_status absp_transfer_eigenvalue(const absp_model* model, const double* u, size_t n,
                                     const double v[2], double out[2]) {
  if (!model || (n && !u) || !v || !out) return ABSP_ERR_INVALID_ARGUMENT;
  return guarded([&] {
    RapiditySet s = set_from(u, n);
    put(out, transfer_eigenvalue(model->impl, s, Cx{v[0], v[1]}));
  });
}

absp_status absp_solve_bethe(const absp_model* model, const int* modes, size_t n,
                             const double* guess, double tol, int max_iter, char** state_json) {
  if (!model || (n && !modes) || !state_json) return ABSP_ERR_INVALID_ARGUMENT;
  bool converged = true;
  absp_status st = guarded([&] {
    std::vector<int> m(modes, modes + n);
    RapiditySet g;
    if (guess) g = set_from(guess, n);
    BetheState state = solve_bethe(model->impl, m, g, tol, max_iter);
    converged = state.on_shell;
    *state_json = dup_string(state_to_json(state));
  });
  if (st != ABSP_OK) return st;
  if (!converged) {
    g_last_error = "Newton did not reach tolerance; best iterate returned";
    return ABSP_ERR_NO_CONVERGENCE;
  }
  return ABSP_OK;
}

absp_status absp_a_functional(const absp_model* model, const double* w, size_t n,
                              absp_a_method method, int n_max, double value[2],
                              double* condition_estimate, int* n_terms) {
  if (!model || (n && !w) || !value) return ABSP_ERR_INVALID_ARGUMENT;
  return guarded([&] {
    RapiditySet s = set_from(w, n);
    AFunctionalResult r;
    switch (method) {
      case ABSP_A_RATIO_DET: r = a_ratio_det(model->impl, s); break;
      case ABSP_A_FREDHOLM_DET: r = a_fredholm_det(model->impl, s); break;
      case ABSP_A_COULOMB_SUM: r = a_coulomb_sum(model->impl, s); break;
      case ABSP_A_LOG_SERIES: r = a_log_series(model->impl, s, n_max > 0 ? n_max : 24); break;
      default: fail(Err::InvalidArgument, "unknown A-functional method");
    }
    put(value, r.value);
    if (condition_estimate) *condition_estimate = r.condition_estimate;
    if (n_terms) *n_terms = r.n_terms;
  });
}

absp_status absp_scalar_product(const absp_model* model, const char* u_state_json, const double* v,
                                size_t n, char** result_json) {
  if (!model || !u_state_json || (n && !v) || !result_json) return ABSP_ERR_INVALID_ARGUMENT;
  return guarded([&] {
    BetheState u = state_from_json(u_state_json);
    RapiditySet vs = set_from(v, n);
    double residual = bethe_residual(model->impl, u.roots);
    ScalarProductResult sp = scalar_product(model->impl, u.roots, residual, vs);

    RapiditySet w;
    w.roots = u.roots.roots;
    w.roots.insert(w.roots.end(), vs.roots.begin(), vs.roots.end());

    std::ostringstream os;
    os << "{\"scalar_product\": " << fmt_complex(sp.value);
    os << ", \"off_shell_warning\": " << (sp.off_shell_warning ? "true" : "false");
    os << ", \"residual\": " << fmt_double(sp.residual);
    os << ", \"methods\": {";
    Cx fred = sp.a.value;
    os << "\"fredholm\": {\"value\": " << fmt_complex(fred)
       << ", \"condition\": " << fmt_double(sp.a.condition_estimate) << "}";
    double max_dev = 0.0;
    if (w.size() <= kRatioDetMaxN) {
      try {
        AFunctionalResult rat = a_ratio_det(model->impl, w);
        max_dev = std::max(max_dev, std::abs(rat.value - fred) / std::max(1e-300, std::abs(fred)));
        os << ", \"ratio\": {\"value\": " << fmt_complex(rat.value)
           << ", \"condition\": " << fmt_double(rat.condition_estimate) << "}";
      } catch (const Error& e) {
        os << ", \"ratio\": {\"error\": \"" << e.what() << "\"}";
      }
    }
    if (w.size() <= static_cast<std::size_t>(kCoulombMaxN)) {
      try {
        AFunctionalResult cs = a_coulomb_sum(model->impl, w);
        max_dev = std::max(max_dev, std::abs(cs.value - fred) / std::max(1e-300, std::abs(fred)));
        os << ", \"coulomb\": {\"value\": " << fmt_complex(cs.value) << "}";
      } catch (const Error& e) {
        os << ", \"coulomb\": {\"error\": \"" << e.what() << "\"}";
      }
    }
    os << "}, \"pairwise_max_rel_dev\": " << fmt_double(max_dev) << "}";
    *result_json = dup_string(os.str());
  });
}

absp_status absp_oracle_check(const absp_model* model, const char* u_state_json, const double* v,
                              size_t n, char** result_json) {
  if (!model || !u_state_json || (n && !v) || !result_json) return ABSP_ERR_INVALID_ARGUMENT;
  return guarded([&] {
    if (model->impl.kind() != Model::Kind::InhomogeneousXXX)
      fail(Err::InvalidArgument, "oracle check needs an inhomogeneous_xxx model");
    ChainSpec chain{model->impl.theta(), model->impl.epsilon(), model->impl.kappa()};
    BetheState u = state_from_json(u_state_json);
    RapiditySet vs = set_from(v, n);
    Cx oracle = oracle_scalar_product(chain, vs, u.roots);
    double residual = bethe_residual(model->impl, u.roots);
    ScalarProductResult sp = scalar_product(model->impl, u.roots, residual, vs);
    double rel = std::abs(oracle - sp.value) / std::max({1e-300, std::abs(oracle)});
    std::ostringstream os;
    os << "{\"oracle\": " << fmt_complex(oracle) << ", \"formula\": " << fmt_complex(sp.value)
       << ", \"relative_deviation\": " << fmt_double(rel)
       << ", \"residual\": " << fmt_double(residual)
       << ", \"off_shell_warning\": " << (sp.off_shell_warning ? "true" : "false") << "}";
    *result_json = dup_string(os.str());
  });
}

absp_status absp_verify_identities(uint64_t seed, int instances, int inject_eps_flip,
                                   char** report_json) {
  if (!report_json || instances < 0) return ABSP_ERR_INVALID_ARGUMENT;
  bool all_pass = true;
  absp_status st = guarded([&] {
    VerifyOptions opt;
    opt.seed = seed;
    opt.instances = instances;
    opt.inject_epsilon_flip = inject_eps_flip != 0;
    std::vector<PropertyResult> results = verify_identities(opt);
    std::ostringstream os;
    os << "{\"seed\": " << seed << ", \"instances\": " << instances << ", \"properties\": [";
    for (std::size_t i = 0; i < results.size(); ++i) {
      const PropertyResult& p = results[i];
      all_pass = all_pass && p.pass;
      if (i) os << ", ";
      os << "{\"name\": \"" << p.name << "\", \"instances\": " << p.instances
         << ", \"max_deviation\": " << fmt_double(p.max_deviation)
         << ", \"threshold\": " << fmt_double(p.threshold)
         << ", \"worst_index\": " << p.worst_index << ", \"pass\": " << (p.pass ? "true" : "false")
         << "}";
    }
    os << "], \"pass\": " << (all_pass ? "true" : "false") << "}";
    *report_json = dup_string(os.str());
  });
  return st;
}

absp_status absp_semiclassical_compare(const char* family_json, int nodes, char** csv,
                                       char** family_json_out) {
  if (!csv) return ABSP_ERR_INVALID_ARGUMENT;
  return guarded([&] {
    std::vector<FamilyMember> family;
    if (family_json) {
      family = family_from_json(family_json);
    } else {
      OneCutFamilyOptions opt;
      if (nodes > 0) opt.nodes = nodes;
      family = build_one_cut_family({8, 16, 32, 64}, opt);
    }
    std::vector<ExpansionReport> reports = expansion_report(family);
    *csv = dup_string(expansion_csv(reports));
    if (family_json_out) *family_json_out = dup_string(family_to_json(family));
  });
}

} /* extern "C" */
