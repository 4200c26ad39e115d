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
#include "contour.hpp"

#include <cmath>

#include "afunctional.hpp"
#include "dilog.hpp"

namespace absp {

int Contour::winding_number(Cx p) const {
  double total = 0.0;
  const std::size_t n = nodes.size();
  for (std::size_t k = 0; k < n; ++k) {
    Cx a = nodes[k] - p;
    Cx b = nodes[(k + 1) % n] - p;
    total += std::arg(b / a);
  }
  return static_cast<int>(std::lround(total / (2.0 * kPi)));
}

void Contour::validate(const std::vector<Cx>& inside, const std::vector<Cx>& outside) const {
  if (nodes.size() < 16) fail(Err::ContourInvalid, "contour needs at least 16 nodes");
  for (Cx p : inside)
    if (winding_number(p) != 1) fail(Err::ContourInvalid, "contour does not enclose a required point");
  for (Cx p : outside)
    if (winding_number(p) != 0) fail(Err::ContourInvalid, "contour encloses an excluded point");
}

Contour make_ellipse(Cx c, double ax, double ay, int n) {
  if (ax <= 0.0 || ay <= 0.0 || n < 16) fail(Err::InvalidArgument, "bad ellipse parameters");
  Contour out;
  out.nodes.resize(n);
  out.weights.resize(n);
  out.second_jet.resize(n);
  const double dt = 1.0 / n;
  for (int k = 0; k < n; ++k) {
    double t = 2.0 * kPi * k * dt;
    out.nodes[k] = c + Cx{ax * std::cos(t), ay * std::sin(t)};
    Cx deriv{-2.0 * kPi * ax * std::sin(t), 2.0 * kPi * ay * std::cos(t)};
    out.weights[k] = deriv * dt / (2.0 * kPi);
    out.second_jet[k] = Cx{-std::cos(t) * ax, -std::sin(t) * ay} * (2.0 * kPi) * (2.0 * kPi) * dt * dt;
  }
  return out;
}

Cx contour_integral(const Contour& contour, const std::vector<Cx>& values) {
  if (values.size() != contour.size()) fail(Err::InvalidArgument, "sample count mismatch");
  Cx s{0.0, 0.0};
  for (std::size_t k = 0; k < values.size(); ++k) s += contour.weights[k] * values[k];
  return s;
}

CutCrossing detect_cut_crossing(const std::vector<Cx>& qvals) {
  const std::size_t n = qvals.size();
  for (std::size_t k = 0; k < n; ++k) {
    Cx a = qvals[k], b = qvals[(k + 1) % n];
    double ia = a.imag(), ib = b.imag();
    if (ia == 0.0 && a.real() > 1.0) return {true, static_cast<int>(k)};
    if (ia * ib < 0.0) {
      // linear estimate of the real part at the crossing of the real axis
      double t = ia / (ia - ib);
      double re = a.real() + t * (b.real() - a.real());
      if (re > 1.0) return {true, static_cast<int>(k)};
    }
  }
  return {};
}

namespace {

std::vector<Cx> weight_samples(const Model& model, const RapiditySet& w, const Contour& contour) {
  std::vector<Cx> q(contour.size());
  for (std::size_t k = 0; k < contour.size(); ++k)
    q[k] = std::exp(weight_function_log(model, w, contour.nodes[k]));
  return q;
}

}  // namespace

Cx f0_coefficient(const Model& model, const RapiditySet& w, const Contour& contour) {
  std::vector<Cx> q = weight_samples(model, w, contour);
  CutCrossing cut = detect_cut_crossing(q);
  if (cut.crossed)
    fail(Err::BranchCutCrossing,
         "weight function crosses the dilogarithm cut near segment " + std::to_string(cut.segment));
  std::vector<Cx> vals(q.size());
  for (std::size_t k = 0; k < q.size(); ++k) vals[k] = dilog(q[k]);
  return contour_integral(contour, vals);
}

Cx f1_coefficient(const Model& model, const RapiditySet& w, const Contour& contour) {
  const std::size_t n = contour.size();
  std::vector<Cx> q = weight_samples(model, w, contour);
  CutCrossing cut = detect_cut_crossing(q);
  if (cut.crossed)
    fail(Err::BranchCutCrossing,
         "weight function crosses the logarithm cut near segment " + std::to_string(cut.segment));
  std::vector<Cx> g(n), gp(n);
  for (std::size_t k = 0; k < n; ++k) {
    Cx one_minus = 1.0 - q[k];
    if (std::abs(one_minus) < 1e-6)
      fail(Err::LogSingularity, "weight function approaches 1 on the contour");
    g[k] = std::log(one_minus);
    gp[k] = -q[k] * weight_function_dlog(model, w, contour.nodes[k]) / one_minus;
  }
  // F1 = -1/2 (2 pi)^{-2} PV oint oint g(x) g(u)/(x-u)^2
  //    = +1/4 (2 pi)^{-2} oint oint [g(x)-g(u)]^2/(x-u)^2
  // after the symmetric decomposition; the finite part of the bare double-pole
  // integral over a closed curve vanishes, and the remaining integrand is
  // analytic across the diagonal with value g'(x)^2.
  Cx total{0.0, 0.0};
  for (std::size_t i = 0; i < n; ++i) {
    Cx wi = contour.weights[i];
    for (std::size_t j = 0; j < n; ++j) {
      Cx h;
      if (i == j) {
        h = gp[i] * gp[i];
      } else {
        Cx dg = g[i] - g[j];
        Cx dz = contour.nodes[i] - contour.nodes[j];
        h = (dg / dz) * (dg / dz);
      }
      total += wi * contour.weights[j] * h;
    }
  }
  return 0.25 * total;
}

Cx f1_coefficient_pv(const Model& model, const RapiditySet& w, const Contour& contour) {
  const std::size_t n = contour.size();
  std::vector<Cx> q = weight_samples(model, w, contour);
  std::vector<Cx> g(n), gp(n), gpp(n);
  for (std::size_t k = 0; k < n; ++k) {
    Cx one_minus = 1.0 - q[k];
    if (std::abs(one_minus) < 1e-6)
      fail(Err::LogSingularity, "weight function approaches 1 on the contour");
    Cx dl = weight_function_dlog(model, w, contour.nodes[k]);
    // d/dz of dlog Q: differentiate the partial-fraction form
    const Cx ie{0.0, model.epsilon()};
    Cx ddl{0.0, 0.0};
    for (Cx r : w.roots) {
      Cx zp = contour.nodes[k] + ie - r, z0 = contour.nodes[k] - r;
      ddl += -1.0 / (zp * zp) + 1.0 / (z0 * z0);
    }
    // second log-derivative of f for rational models
    {
      Cx s{0.0, 0.0};
      for (Cx r : model.d_fn().roots) s += -1.0 / ((contour.nodes[k] - r) * (contour.nodes[k] - r));
      for (Cx p : model.d_fn().poles) s += 1.0 / ((contour.nodes[k] - p) * (contour.nodes[k] - p));
      for (Cx r : model.a_fn().roots) s += 1.0 / ((contour.nodes[k] - r) * (contour.nodes[k] - r));
      for (Cx p : model.a_fn().poles) s += -1.0 / ((contour.nodes[k] - p) * (contour.nodes[k] - p));
      ddl += s;
    }
    Cx qp = q[k] * dl;
    Cx qpp = q[k] * (dl * dl + ddl);
    g[k] = std::log(one_minus);
    gp[k] = -qp / one_minus;
    gpp[k] = -(qpp * one_minus + qp * qp) / (one_minus * one_minus);
  }
  // F1 = 1/2 (2 pi)^{-2} oint dx g(x) PV oint du g'(u)/(x-u)
  // PV oint du h(u)/(x-u) = oint du [h(u)-h(x)]/(x-u) - i pi h(x)
  Cx total{0.0, 0.0};
  for (std::size_t i = 0; i < n; ++i) {
    Cx inner{0.0, 0.0};
    for (std::size_t j = 0; j < n; ++j) {
      Cx val;
      if (i == j) {
        val = -gpp[i];
      } else {
        val = (gp[j] - gp[i]) / (contour.nodes[i] - contour.nodes[j]);
      }
      inner += 2.0 * kPi * contour.weights[j] * val;
    }
    inner -= Cx{0.0, kPi} * gp[i] * 2.0 * kPi;
    inner /= 2.0 * kPi;
    total += contour.weights[i] * g[i] * inner;
  }
  return 0.5 * total;
}

ExpansionReport evaluate_member(const FamilyMember& member) {
  ExpansionReport rep;
  rep.m = static_cast<int>(member.u.size());
  rep.epsilon = member.model.epsilon();
  RapiditySet w;
  w.roots = member.u.roots;
  w.roots.insert(w.roots.end(), member.v.roots.begin(), member.v.roots.end());

  AFunctionalResult a = a_fredholm_det(member.model, w);
  Cx log_a = std::log(a.value);

  Cx f0 = f0_coefficient(member.model, w, member.contour);
  Cx f1 = f1_coefficient(member.model, w, member.contour);
  Cx f0_fine = f0_coefficient(member.model, w, member.contour_fine);
  Cx f1_fine = f1_coefficient(member.model, w, member.contour_fine);
  rep.quadrature_error = std::max(std::abs(f0_fine - f0), std::abs(f1_fine - f1));

  // The determinant fixes log A only modulo 2 pi i; report the representative
  // nearest to the expansion prediction.
  Cx predicted = f0 / rep.epsilon + f1;
  double k = std::round((predicted.imag() - log_a.imag()) / (2.0 * kPi));
  log_a += Cx{0.0, 2.0 * kPi * k};

  rep.log_a_exact = log_a;
  rep.f0 = f0;
  rep.f1 = f1;
  rep.residual_leading = std::abs(log_a - f0 / rep.epsilon);
  rep.residual_subleading = std::abs(log_a - f0 / rep.epsilon - f1);
  return rep;
}

std::vector<ExpansionReport> expansion_report(const std::vector<FamilyMember>& family) {
  std::vector<ExpansionReport> out;
  out.reserve(family.size());
  for (const FamilyMember& member : family) {
    try {
      out.push_back(evaluate_member(member));
    } catch (const Error& e) {
      ExpansionReport rep;
      rep.m = static_cast<int>(member.u.size());
      rep.epsilon = member.model.epsilon();
      rep.error = e.what();
      rep.residual_leading = std::numeric_limits<double>::quiet_NaN();
      rep.residual_subleading = std::numeric_limits<double>::quiet_NaN();
      out.push_back(std::move(rep));
    }
  }
  return out;
}

}  // namespace absp
