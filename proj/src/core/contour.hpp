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
#pragma once

#include <functional>
#include <vector>

#include "model.hpp"

namespace absp {

// Closed smooth contour sampled at n uniform parameter values.  weights hold
// z'(t_k) dt / (2 pi), so that  oint dz/(2 pi) g  =  sum_k weights_k g(z_k).
struct Contour {
  std::vector<Cx> nodes;
  std::vector<Cx> weights;
  std::vector<Cx> second_jet;  // z''(t_k) dt^2, used for diagnostics only

  std::size_t size() const { return nodes.size(); }
  // winding number around a point by argument accumulation (exact integer)
  int winding_number(Cx p) const;
  // throws ContourInvalid unless every `inside` point has winding 1 and every
  // `outside` point winding 0
  void validate(const std::vector<Cx>& inside, const std::vector<Cx>& outside) const;
};

// Axis-aligned ellipse centred at c with semi-axes (ax, ay), n nodes.
Contour make_ellipse(Cx c, double ax, double ay, int n);

// oint dz/(2 pi) of a sampled function.
Cx contour_integral(const Contour& contour, const std::vector<Cx>& values);

// Flags for branch-cut monitoring along the discretised contour: a segment is
// flagged when consecutive weight-function values straddle the cut of
// Li2 / log(1-.) at [1, inf).
struct CutCrossing {
  bool crossed = false;
  int segment = -1;
};
CutCrossing detect_cut_crossing(const std::vector<Cx>& qvals);

// Leading coefficient:  F0 = oint dx/(2 pi) Li2[Q(x)].
Cx f0_coefficient(const Model& model, const RapiditySet& w, const Contour& contour);

// Subleading coefficient, principal-value double integral
//   F1 = -1/2 oint oint dx du/(2 pi)^2 log[1-Q(x)] log[1-Q(u)] / (x-u)^2.
// The double-pole kernel is removed exactly with the symmetric-difference
// decomposition; the surviving integrand is analytic on the diagonal.
Cx f1_coefficient(const Model& model, const RapiditySet& w, const Contour& contour);

// Alternative evaluation through integration by parts (single-pole principal
// value); used for cross-validation in the tests.
Cx f1_coefficient_pv(const Model& model, const RapiditySet& w, const Contour& contour);

struct ExpansionReport {
  int m = 0;
  double epsilon = 0.0;
  Cx log_a_exact{0.0, 0.0};
  Cx f0{0.0, 0.0};
  Cx f1{0.0, 0.0};
  double residual_leading = 0.0;
  double residual_subleading = 0.0;
  double quadrature_error = 0.0;
  std::string error;  // nonempty when this member failed
};

struct FamilyMember {
  Model model;
  RapiditySet u;       // on-shell
  RapiditySet v;       // off-shell partner
  double u_residual = 0.0;
  Contour contour;
  Contour contour_fine;  // doubled node count, for the self-convergence estimate
};

// Evaluates one family member: exact log A via the Fredholm route (branch
// aligned with the expansion modulo 2 pi i), F0, F1 and the residuals.
ExpansionReport evaluate_member(const FamilyMember& member);

std::vector<ExpansionReport> expansion_report(const std::vector<FamilyMember>& family);

}  // namespace absp
