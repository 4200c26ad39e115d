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

#include <Eigen/Dense>
#include <vector>

#include "model.hpp"

namespace absp {

enum class AMethod { RatioDet, FredholmDet, CoulombSum, LogSeries };

struct AFunctionalResult {
  Cx value{0.0, 0.0};
  AMethod method{AMethod::FredholmDet};
  double condition_estimate = 0.0;  // ~ condition number of the factored matrix
  int n_terms = 0;                  // series methods only
  double truncation_estimate = 0.0; // magnitude of the last series increment
  bool trusted = true;              // false when condition_estimate > kUntrustedThreshold
};

// results above this condition estimate are flagged untrusted
inline constexpr double kUntrustedThreshold = 1e12;
// ratio method refuses outright above this
inline constexpr double kIllConditionedThreshold = 1e14;
inline constexpr int kRatioDetMaxN = 64;
inline constexpr int kCoulombMaxN = 16;

namespace internal {
// Test fixture: while alive, the Fredholm kernel is assembled with the sign of
// epsilon flipped.  Used to demonstrate that the cross-method identity suite
// detects a corrupted evaluator.
struct EpsilonSignFixture {
  EpsilonSignFixture();
  ~EpsilonSignFixture();
};
double kernel_epsilon_sign();
}  // namespace internal

// Residue weights Q_j = f(w_j) prod_{k != j} (w_j - w_k + i eps)/(w_j - w_k).
// The residue of the weight function at w_j is i*eps times this.
struct ResidueWeights {
  std::vector<Cx> q;
};
ResidueWeights residue_weights(const Model& model, const RapiditySet& w);

// Kernel matrix K_jk = Res_j / (w_j - w_k + i eps), Res_j = i eps Q_j.
// Entries are assembled in log space so that ladder-like sets (pair
// differences close to -i eps) do not lose the exact factor cancellations.
Eigen::MatrixXcd kernel_matrix(const Model& model, const RapiditySet& w);

// A as a ratio of two N x N determinants (shifted Vandermonde over Vandermonde).
AFunctionalResult a_ratio_det(const Model& model, const RapiditySet& w);
// A = det(1 - K) via pivoted LU.
AFunctionalResult a_fredholm_det(const Model& model, const RapiditySet& w);
// Grand-canonical subset sum with pair factor w_jk^2/(w_jk^2 + eps^2); N <= 16.
AFunctionalResult a_coulomb_sum(const Model& model, const RapiditySet& w);
// log A = -sum_n tr(K^n)/n, requires spectral radius < 1.
AFunctionalResult a_log_series(const Model& model, const RapiditySet& w, int n_max);

struct ScalarProductResult {
  Cx value{0.0, 0.0};
  bool off_shell_warning = false;
  double residual = 0.0;
  AFunctionalResult a;  // underlying A-functional evaluation (Fredholm route)
};

// Bilinear form (v, u) = <Omega| prod C(v_j) prod B(u_j) |Omega> computed as
// (-1)^M prod_j a(v_j) d(u_j) * A_{u u v}[f].  Valid on shell; if the residual
// of u exceeds `tol` the result is returned with a warning flag.
ScalarProductResult scalar_product(const Model& model, const RapiditySet& u, double u_residual,
                                   const RapiditySet& v, double tol = 1e-10);

}  // namespace absp
