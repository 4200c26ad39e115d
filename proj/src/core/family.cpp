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
#include "family.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdio>

namespace absp {

namespace {

// Condensed-array solver on raw positions in the pole-cancellation form
// F_j = 1 + exp(Lambda_j): single-valued, so no branch bookkeeping is needed.
// The family's melted arrays keep rung deviations of order eps, comfortably
// inside double precision.
struct ArrayProblem {
  const Model& model;
  int m;
  double eps;
  Cx log_kappa;

  Cx lambda(const Eigen::VectorXcd& u, int j) const {
    const Cx ie{0.0, eps};
    Cx s = log_kappa + model.log_d(u[j]) - model.log_a(u[j]) + Cx{0.0, kPi};
    for (int k = 0; k < m; ++k) {
      if (k == j) continue;
      s += std::log(u[j] - u[k] + ie) - std::log(u[j] - u[k] - ie);
    }
    return s;
  }

  void residual_and_jacobian(const Eigen::VectorXcd& u, Eigen::VectorXcd& f,
                             Eigen::MatrixXcd* jac) const {
    const Cx ie{0.0, eps};
    f.resize(m);
    if (jac) jac->setZero(m, m);
    for (int j = 0; j < m; ++j) {
      Cx lam = lambda(u, j);
      Cx el = std::exp(lam);
      f[j] = 1.0 + el;
      if (!jac) continue;
      Cx diag = model.dlog_d(u[j]) - model.dlog_a(u[j]);
      for (int k = 0; k < m; ++k) {
        if (k == j) continue;
        Cx t = 1.0 / (u[j] - u[k] + ie) - 1.0 / (u[j] - u[k] - ie);
        diag += t;
        (*jac)(j, k) = el * (-t);
      }
      (*jac)(j, j) = el * diag;
    }
  }

  double worst(const Eigen::VectorXcd& u) const {
    Eigen::VectorXcd f;
    residual_and_jacobian(u, f, nullptr);
    return f.cwiseAbs().maxCoeff();
  }

  // rejects collapsing configurations (coincident rungs or pair differences
  // swallowed by the shift)
  bool admissible(const Eigen::VectorXcd& u) const {
    for (int i = 0; i < m; ++i)
      for (int k = i + 1; k < m; ++k) {
        Cx d = u[i] - u[k];
        if (std::abs(d) < 0.25 * eps) return false;
        if (std::abs(d + Cx{0.0, eps}) < 0.12 * eps) return false;
        if (std::abs(d - Cx{0.0, eps}) < 0.12 * eps) return false;
      }
    return true;
  }
};

// symmetrise under conjugation: the physical one-cut arrays of the real-twist
// model are invariant under u -> conj(u) as a set
Eigen::VectorXcd symmetrize(Eigen::VectorXcd u) {
  std::sort(u.data(), u.data() + u.size(), [](Cx a, Cx b) { return a.imag() < b.imag(); });
  const int m = static_cast<int>(u.size());
  Eigen::VectorXcd out(m);
  for (int j = 0; j < m; ++j) out[j] = 0.5 * (u[j] + std::conj(u[m - 1 - j]));
  return out;
}

Eigen::VectorXcd solve_array(const ArrayProblem& prob, Eigen::VectorXcd u, double tol,
                             int max_iter, bool verbose) {
  const int m = prob.m;
  Eigen::VectorXcd f;
  Eigen::MatrixXcd jac;
  for (int it = 0; it < max_iter; ++it) {
    prob.residual_and_jacobian(u, f, &jac);
    double gn = f.cwiseAbs().maxCoeff();
    if (verbose) std::fprintf(stderr, "  [array m=%d] it=%d max|F|=%.3e\n", m, it, gn);
    if (gn < tol) break;
    Eigen::VectorXcd step = Eigen::PartialPivLU<Eigen::MatrixXcd>(jac).solve(f);
    double lambda = 1.0;
    bool ok = false;
    for (int half = 0; half < 40; ++half) {
      Eigen::VectorXcd trial = symmetrize(u - lambda * step);
      if (prob.admissible(trial) && prob.worst(trial) < gn) {
        u = trial;
        ok = true;
        break;
      }
      lambda *= 0.5;
    }
    if (!ok) break;
  }
  return u;
}

Eigen::VectorXcd interp_seed(const Eigen::VectorXcd& prev, int m) {
  const int pm = static_cast<int>(prev.size());
  Eigen::VectorXcd out(m);
  for (int j = 0; j < m; ++j) {
    double t = (m > 1) ? static_cast<double>(j) / (m - 1) : 0.0;
    double s = t * (pm - 1);
    int lo = std::min(pm - 1, static_cast<int>(s));
    int hi = std::min(pm - 1, lo + 1);
    double frac = s - lo;
    out[j] = (1.0 - frac) * prev[lo] + frac * prev[hi];
  }
  return out;
}

}  // namespace

FamilyMember build_one_cut_member(int m, const OneCutFamilyOptions& opt) {
  if (m < 2) fail(Err::InvalidArgument, "family members need at least two magnons");
  // doubling chain keeps every Newton run near its target state
  std::vector<int> chain;
  for (int k = m; k > 2; k = (k + 1) / 2) chain.push_back(k);
  chain.push_back(2);
  std::reverse(chain.begin(), chain.end());

  Eigen::VectorXcd prev;
  FamilyMember member;
  for (int k : chain) {
    const double eps = 1.0 / (2.0 * k);
    const int length = opt.filling_inverse * k;
    const Cx kappa = std::polar(opt.kappa_abs, opt.kappa_arg);
    Model model = Model::inhomogeneous_xxx(std::vector<Cx>(length, Cx{0.0, 0.0}), kappa, eps);
    ArrayProblem prob{model, k, eps, std::log(kappa)};
    Eigen::VectorXcd seed(k);
    if (prev.size() == 0) {
      double centre = eps / 2.0 / std::tan(kPi / length);
      for (int j = 0; j < k; ++j) seed[j] = Cx{centre, 1.25 * eps * (j - 0.5 * (k - 1))};
    } else {
      seed = interp_seed(prev, k);
    }
    seed = symmetrize(seed);
    Eigen::VectorXcd x = solve_array(prob, seed, opt.tol, opt.max_sweeps, opt.verbose);
    x = symmetrize(x);
    double worst = prob.worst(x);
    if (!(worst < 1e-11))
      fail(Err::NoConvergence, "one-cut member M=" + std::to_string(k) +
                                   " stalled at residual " + std::to_string(worst));
    prev = x;
    if (k != m) continue;

    member.model = model;
    member.u.roots.assign(x.data(), x.data() + k);
    member.u_residual = worst;
    member.v.roots = member.u.roots;
    for (Cx& r : member.v.roots) r += eps * opt.partner_shift_eps;

    // tight ellipse: the weight function stays O(1) only close to the arrays
    double re_min = 1e9, re_max = -1e9, im_max = 0.0;
    for (const auto& roots : {member.u.roots, member.v.roots})
      for (Cx r : roots) {
        re_min = std::min(re_min, r.real());
        re_max = std::max(re_max, r.real());
        im_max = std::max(im_max, std::abs(r.imag()));
      }
    const Cx pole{0.0, -eps / 2.0};
    double cx = 0.5 * (re_min + re_max);
    double ax = (re_max - re_min) / 2.0 + opt.contour_margin;
    double ay = im_max + opt.contour_margin;
    if (cx - ax < 0.05) ax = cx - 0.05;
    if (ax < 0.08) fail(Err::ContourInvalid, "array too close to the excluded pole cluster");
    Contour contour = make_ellipse(Cx{cx, 0.0}, ax, ay, opt.nodes);
    Contour fine = make_ellipse(Cx{cx, 0.0}, ax, ay, 2 * opt.nodes);
    std::vector<Cx> inside = member.u.roots;
    inside.insert(inside.end(), member.v.roots.begin(), member.v.roots.end());
    contour.validate(inside, {pole});
    fine.validate(inside, {pole});
    member.contour = std::move(contour);
    member.contour_fine = std::move(fine);
  }
  return member;
}

std::vector<FamilyMember> build_one_cut_family(const std::vector<int>& sizes,
                                               const OneCutFamilyOptions& opt) {
  std::vector<FamilyMember> out;
  out.reserve(sizes.size());
  for (int m : sizes) out.push_back(build_one_cut_member(m, opt));
  return out;
}

}  // namespace absp
