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
#include "solver.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <map>

namespace absp {

double bethe_residual(const Model& model, const RapiditySet& u) {
  const Cx ie{0.0, model.epsilon()};
  double worst = 0.0;
  for (std::size_t j = 0; j < u.size(); ++j) {
    const Cx uj = u.roots[j];
    Cx lqp{0.0, 0.0}, lqm{0.0, 0.0};
    for (std::size_t k = 0; k < u.size(); ++k) {
      Cx dplus = uj - u.roots[k] + ie;
      Cx dminus = uj - u.roots[k] - ie;
      if (std::abs(dminus) < 1e-280 || std::abs(dplus) < 1e-280)
        fail(Err::PoleHit, "Bethe residual hit a shifted-root pole");
      lqp += std::log(dplus);
      lqm += std::log(dminus);
    }
    Cx lad = model.log_a(uj) - model.log_d(uj);
    Cx term = std::exp(lad) + model.kappa() * std::exp(lqp - lqm);
    worst = std::max(worst, std::abs(term));
  }
  return worst;
}

Cx counting_function(const Model& model, const RapiditySet& u, Cx v) {
  return 2.0 * pseudo_momentum_tracked(model, u, v);
}

namespace {

// counting function evaluated at every root (self-term contributes i*pi) and
// the complex Jacobian d phi_j / d u_m
void counting_at_roots(const Model& model, const std::vector<Cx>& u, Eigen::VectorXcd& phi,
                       Eigen::MatrixXcd* jac) {
  const int m = static_cast<int>(u.size());
  const double eps = model.epsilon();
  const Cx ie{0.0, eps};
  const Cx inv_i{0.0, -1.0};  // 1/i
  phi.resize(m);
  if (jac) jac->setZero(m, m);
  const Cx logkappa = std::log(model.kappa());
  for (int j = 0; j < m; ++j) {
    Cx s = logkappa + Cx{0.0, kPi};  // self term log(ie) - log(-ie)
    Cx diag{0.0, 0.0};
    for (int k = 0; k < m; ++k) {
      if (k == j) continue;
      Cx d = u[j] - u[k];
      s += std::log(d + ie) - std::log(d - ie);
      Cx t = 1.0 / (d + ie) - 1.0 / (d - ie);
      diag += t;
      if (jac) (*jac)(j, k) = inv_i * (-t);
    }
    s -= model.log_a(u[j]) - model.log_d(u[j]);
    diag -= model.dlog_a(u[j]) - model.dlog_d(u[j]);
    phi[j] = inv_i * s;
    if (jac) (*jac)(j, j) = inv_i * diag;
  }
}

double max_abs(const Eigen::VectorXcd& v) {
  double m = 0.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) m = std::max(m, std::abs(v[i]));
  return m;
}

}  // namespace

std::vector<int> mode_numbers_of(const Model& model, const RapiditySet& u) {
  Eigen::VectorXcd phi;
  std::vector<Cx> roots = u.roots;
  counting_at_roots(model, roots, phi, nullptr);
  std::vector<int> modes(u.size());
  for (std::size_t j = 0; j < u.size(); ++j)
    modes[j] = static_cast<int>(std::lround((phi[j].real() + kPi) / (2.0 * kPi)));
  return modes;
}

RapiditySet string_seeds(const Model& model, const std::vector<int>& mode_numbers) {
  // group identical mode numbers into vertical strings spaced i*eps around a
  // real centre, the centre fitted from the magnon-free counting function
  const double eps = model.epsilon();
  std::map<int, int> counts;
  for (int n : mode_numbers) counts[n]++;
  RapiditySet out;
  RapiditySet empty;
  for (auto [n, cnt] : counts) {
    const double target = 2.0 * kPi * n - kPi;
    // coarse grid search for the centre, then refine by bisection-like steps
    double best_x = 0.0;
    double best = std::numeric_limits<double>::infinity();
    for (int i = -400; i <= 400; ++i) {
      double x = 0.025 * i;
      Cx phi;
      try {
        phi = counting_function(model, empty, Cx{x, 0.0});
      } catch (const Error&) {
        continue;
      }
      double miss = std::abs(phi.real() - target);
      if (miss < best) {
        best = miss;
        best_x = x;
      }
    }
    for (int k = 0; k < cnt; ++k) {
      double offset = (cnt > 1) ? (k - 0.5 * (cnt - 1)) : 0.0;
      out.roots.push_back(Cx{best_x + 0.02 * eps * offset * offset, eps * offset});
    }
  }
  return out;
}

BetheState solve_bethe(const Model& model, const std::vector<int>& mode_numbers,
                       const RapiditySet& initial_guess, double tol, int max_iter) {
  if (tol <= 0.0) fail(Err::InvalidArgument, "tolerance must be positive");
  BetheState state;
  state.mode_numbers = mode_numbers;
  const int m = static_cast<int>(mode_numbers.size());
  if (m == 0) {
    state.on_shell = true;
    return state;
  }
  std::vector<Cx> u;
  if (initial_guess.size() == 0) {
    u = string_seeds(model, mode_numbers).roots;
  } else if (initial_guess.size() == static_cast<std::size_t>(m)) {
    u = initial_guess.roots;
  } else {
    fail(Err::InvalidArgument, "initial guess size must match mode numbers");
  }
  Eigen::VectorXcd target(m);
  for (int j = 0; j < m; ++j) target[j] = Cx{2.0 * kPi * mode_numbers[j] - kPi, 0.0};

  Eigen::VectorXcd phi;
  Eigen::MatrixXcd jac;
  double gn = std::numeric_limits<double>::infinity();
  for (int it = 0; it < max_iter; ++it) {
    counting_at_roots(model, u, phi, &jac);
    Eigen::VectorXcd g = phi - target;
    gn = max_abs(g);
    {
      RapiditySet cur{u};
      try {
        state.residual_history.push_back(bethe_residual(model, cur));
      } catch (const Error&) {
        state.residual_history.push_back(std::numeric_limits<double>::quiet_NaN());
      }
    }
    if (gn < tol) {
      state.iterations = it;
      state.roots.roots = u;
      state.roots.validate_distinct();
      state.residual = bethe_residual(model, state.roots);
      state.on_shell = true;
      return state;
    }
    Eigen::PartialPivLU<Eigen::MatrixXcd> lu(jac);
    double rc = std::abs(lu.determinant());
    if (!std::isfinite(rc) || rc == 0.0) fail(Err::JacobianSingular, "singular counting Jacobian");
    Eigen::VectorXcd step = lu.solve(g);
    double lambda = 1.0;
    bool accepted = false;
    for (int h = 0; h < 40; ++h) {
      std::vector<Cx> trial(u);
      for (int j = 0; j < m; ++j) trial[j] -= lambda * step[j];
      try {
        Eigen::VectorXcd pt;
        counting_at_roots(model, trial, pt, nullptr);
        if (max_abs(pt - target) < gn) {
          u = trial;
          accepted = true;
          break;
        }
      } catch (const Error&) {
        // step landed on a singular configuration; shorten
      }
      lambda *= 0.5;
    }
    if (!accepted) break;
  }
  // no convergence: report the best iterate with diagnostics
  state.iterations = max_iter;
  state.roots.roots = u;
  try {
    state.residual = bethe_residual(model, state.roots);
  } catch (const Error&) {
    state.residual = std::numeric_limits<double>::quiet_NaN();
  }
  state.on_shell = false;
  return state;
}

Cx transfer_eigenvalue(const Model& model, const RapiditySet& u, Cx v) {
  const Cx ie{0.0, model.epsilon()};
  Cx q = baxter_eval(u, v);
  double scale = 1.0;
  for (Cx r : u.roots) scale = std::max(scale, std::abs(v - r));
  if (u.size() > 0 && std::abs(q) < 1e-12 * std::pow(scale, u.size() - 1))
    fail(Err::PoleHit, "transfer eigenvalue requested at a root");
  Cx av = model.a(v);
  if (std::abs(av) < 1e-250) fail(Err::ZeroDenominator, "a(v) vanishes in t(v)");
  return baxter_eval(u, v - ie) / q + model.kappa() * (model.d(v) / av) * baxter_eval(u, v + ie) / q;
}

RapiditySet polish_residue_form(const Model& model, const RapiditySet& guess, double tol,
                                int max_iter) {
  const int m = static_cast<int>(guess.size());
  if (m == 0) return guess;
  const Cx ie{0.0, model.epsilon()};
  std::vector<Cx> u = guess.roots;
  auto lambda_of = [&](const std::vector<Cx>& x, int j) {
    Cx s = std::log(model.kappa()) + Cx{0.0, kPi};
    for (int k = 0; k < m; ++k) {
      if (k == j) continue;
      s += std::log(x[j] - x[k] + ie) - std::log(x[j] - x[k] - ie);
    }
    s += model.log_d(x[j]) - model.log_a(x[j]);
    return s;  // F_j = 1 + exp(s)
  };
  for (int it = 0; it < max_iter; ++it) {
    Eigen::VectorXcd F(m);
    Eigen::MatrixXcd J(m, m);
    double gn = 0.0;
    for (int j = 0; j < m; ++j) {
      Cx lam = lambda_of(u, j);
      Cx el = std::exp(lam);
      F[j] = 1.0 + el;
      gn = std::max(gn, std::abs(F[j]));
      Cx diag = model.dlog_d(u[j]) - model.dlog_a(u[j]);
      for (int k = 0; k < m; ++k) {
        if (k == j) continue;
        Cx t = 1.0 / (u[j] - u[k] + ie) - 1.0 / (u[j] - u[k] - ie);
        diag += t;
        J(j, k) = el * (-t);
      }
      J(j, j) = el * diag;
    }
    if (gn < tol) break;
    Eigen::VectorXcd step = Eigen::PartialPivLU<Eigen::MatrixXcd>(J).solve(F);
    double lam = 1.0;
    for (int h = 0; h < 40; ++h) {
      std::vector<Cx> trial(u);
      for (int j = 0; j < m; ++j) trial[j] -= lam * step[j];
      double g2 = 0.0;
      for (int j = 0; j < m; ++j) g2 = std::max(g2, std::abs(1.0 + std::exp(lambda_of(trial, j))));
      if (g2 < gn) {
        u = trial;
        break;
      }
      lam *= 0.5;
    }
  }
  RapiditySet out;
  out.roots = u;
  return out;
}

}  // namespace absp
