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
#include "model.hpp"

#include <algorithm>
#include <cmath>

namespace absp {

namespace {
constexpr double kDenomTol = 1e-280;  // absolute floor for divisions in product form
}

Cx RationalFunction::eval(Cx v) const {
  Cx num = scale;
  for (Cx r : roots) num *= (v - r);
  Cx den{1.0, 0.0};
  for (Cx p : poles) den *= (v - p);
  if (std::abs(den) < kDenomTol) fail(Err::PoleHit, "rational function evaluated at a pole");
  return num / den;
}

Cx RationalFunction::log_eval(Cx v) const {
  Cx s = std::log(scale);
  for (Cx r : roots) {
    Cx t = v - r;
    if (std::abs(t) < kDenomTol) fail(Err::PoleHit, "log of rational function at a zero");
    s += std::log(t);
  }
  for (Cx p : poles) {
    Cx t = v - p;
    if (std::abs(t) < kDenomTol) fail(Err::PoleHit, "rational function evaluated at a pole");
    s -= std::log(t);
  }
  return s;
}

Cx RationalFunction::log_deriv(Cx v) const {
  Cx s{0.0, 0.0};
  for (Cx r : roots) s += 1.0 / (v - r);
  for (Cx p : poles) s -= 1.0 / (v - p);
  return s;
}

double RapiditySet::coincidence_scale() const {
  double m = 0.0;
  for (Cx r : roots) m = std::max(m, std::abs(r));
  return kCoincidenceTol * (1.0 + m);
}

void RapiditySet::validate_distinct() const {
  const double tol = coincidence_scale();
  for (std::size_t j = 0; j < roots.size(); ++j)
    for (std::size_t k = j + 1; k < roots.size(); ++k)
      if (std::abs(roots[j] - roots[k]) < tol)
        fail(Err::DegenerateRoots, "coincident rapidities in set");
}

Cx baxter_eval(const RapiditySet& w, Cx v) {
  Cx q{1.0, 0.0};
  for (Cx r : w.roots) q *= (v - r);
  return q;
}

Cx baxter_log(const RapiditySet& w, Cx v) {
  Cx s{0.0, 0.0};
  for (Cx r : w.roots) {
    Cx t = v - r;
    if (std::abs(t) < kDenomTol) fail(Err::PoleHit, "Baxter polynomial log at a root");
    s += std::log(t);
  }
  return s;
}

Cx baxter_log_deriv(const RapiditySet& w, Cx v) {
  Cx s{0.0, 0.0};
  for (Cx r : w.roots) s += 1.0 / (v - r);
  return s;
}

Model Model::inhomogeneous_xxx(std::vector<Cx> theta, Cx kappa, double epsilon) {
  if (epsilon <= 0.0) fail(Err::InvalidArgument, "epsilon must be positive");
  Model m;
  m.kind_ = Kind::InhomogeneousXXX;
  m.kappa_ = kappa;
  m.epsilon_ = epsilon;
  m.theta_ = std::move(theta);
  const Cx half{0.0, epsilon / 2.0};
  for (Cx t : m.theta_) {
    m.a_.roots.push_back(t - half);  // a(v) = Q_theta(v + i eps/2)
    m.d_.roots.push_back(t + half);  // d(v) = Q_theta(v - i eps/2)
  }
  return m;
}

Model Model::custom_rational(RationalFunction a, RationalFunction d, Cx kappa, double epsilon) {
  if (epsilon <= 0.0) fail(Err::InvalidArgument, "epsilon must be positive");
  Model m;
  m.kind_ = Kind::CustomRational;
  m.kappa_ = kappa;
  m.epsilon_ = epsilon;
  m.a_ = std::move(a);
  m.d_ = std::move(d);
  return m;
}

Cx Model::a(Cx v) const { return a_.eval(v); }
Cx Model::d(Cx v) const { return d_.eval(v); }
Cx Model::log_a(Cx v) const { return a_.log_eval(v); }
Cx Model::log_d(Cx v) const { return d_.log_eval(v); }
Cx Model::dlog_a(Cx v) const { return a_.log_deriv(v); }
Cx Model::dlog_d(Cx v) const { return d_.log_deriv(v); }

Cx Model::f(Cx v) const {
  Cx av = a(v);
  if (std::abs(av) < 1e-14 * (1.0 + std::abs(d(v)))) fail(Err::ZeroDenominator, "a(v) vanishes in f = kappa d/a");
  return kappa_ * d(v) / av;
}

Cx Model::log_f(Cx v) const { return std::log(kappa_) + log_d(v) - log_a(v); }

Cx Model::dlog_f(Cx v) const { return dlog_d(v) - dlog_a(v); }

Cx weight_function(const Model& model, const RapiditySet& w, Cx z) {
  Cx qw = baxter_eval(w, z);
  double scale = 1.0;
  for (Cx r : w.roots) scale = std::max(scale, std::abs(z - r));
  if (std::abs(qw) < 1e-14 * std::pow(scale, std::max<std::size_t>(w.size(), 1) - 1) * w.size() &&
      w.size() > 0) {
    fail(Err::PoleHit, "weight function evaluated at a rapidity pole");
  }
  const Cx shift{0.0, model.epsilon()};
  return model.f(z) * baxter_eval(w, z + shift) / qw;
}

Cx weight_function_log(const Model& model, const RapiditySet& w, Cx z) {
  const Cx shift{0.0, model.epsilon()};
  return model.log_f(z) + baxter_log(w, z + shift) - baxter_log(w, z);
}

Cx weight_function_dlog(const Model& model, const RapiditySet& w, Cx z) {
  const Cx shift{0.0, model.epsilon()};
  return model.dlog_f(z) + baxter_log_deriv(w, z + shift) - baxter_log_deriv(w, z);
}

Cx pseudo_momentum(const Model& model, const RapiditySet& u, Cx v) {
  const Cx shift{0.0, model.epsilon()};
  Cx qp = baxter_eval(u, v + shift);
  Cx qm = baxter_eval(u, v - shift);
  if (std::abs(qm) < 1e-250 || std::abs(qp) < 1e-250)
    fail(Err::PoleHit, "pseudo-momentum at a shifted rapidity pole");
  Cx av = model.a(v), dv = model.d(v);
  if (std::abs(av) < 1e-250 || std::abs(dv) < 1e-250)
    fail(Err::ZeroDenominator, "pseudo-momentum needs a(v), d(v) nonzero");
  Cx two_ip = std::log(qp / qm) - std::log(av / dv) + std::log(model.kappa());
  Cx p = two_ip / Cx{0.0, 2.0};
  // reduce the real part modulo pi (branch ambiguity of the assembled logs)
  double re = std::remainder(p.real(), kPi);
  return Cx{re, p.imag()};
}

Cx pseudo_momentum_tracked(const Model& model, const RapiditySet& u, Cx v) {
  const Cx shift{0.0, model.epsilon()};
  Cx two_ip = baxter_log(u, v + shift) - baxter_log(u, v - shift) - model.log_a(v) +
              model.log_d(v) + std::log(model.kappa());
  return two_ip / Cx{0.0, 2.0};
}

}  // namespace absp
