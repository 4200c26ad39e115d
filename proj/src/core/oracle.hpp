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

// Explicit operators of the inhomogeneous twisted XXX_1/2 chain on the full
// 2^L dimensional space.  Basis index bit n set = down spin at site n;
// |Omega> = index 0 (all spins up).
struct ChainSpec {
  std::vector<Cx> theta;
  double epsilon = 1.0;
  Cx kappa{1.0, 0.0};

  int length() const { return static_cast<int>(theta.size()); }
  long dim() const { return 1L << theta.size(); }
  static constexpr int kMaxLength = 14;       // vector pipeline cap
  static constexpr int kMaxDenseLength = 10;  // dense operator cap

  void validate() const;
  Model model() const;
};

struct MonodromyBlocks {
  Eigen::MatrixXcd a, b, c, d;
};

// Applies the monodromy matrix at spectral parameter u to psi and returns the
// four block images (A psi, B psi, C psi, D psi).  The Lax operator at site n
// is evaluated at u - theta_n - i eps/2 so the pseudovacuum eigenvalues are
// a(u) = Q_theta(u + i eps/2) and d(u) = Q_theta(u - i eps/2).
struct MonodromyAction {
  Eigen::VectorXcd a, b, c, d;
};
MonodromyAction monodromy_apply(const ChainSpec& chain, Cx u, const Eigen::VectorXcd& psi);

// Dense operator blocks; L <= kMaxDenseLength.
MonodromyBlocks build_monodromy(const ChainSpec& chain, Cx u);

// Bethe vector prod_j B(u_j) |Omega>.
Eigen::VectorXcd bethe_vector(const ChainSpec& chain, const RapiditySet& u);

// Bilinear form <Omega| prod C(v_j) prod B(u_j) |Omega> (no conjugation).
Cx oracle_scalar_product(const ChainSpec& chain, const RapiditySet& v, const RapiditySet& u);

// || T(x)|u> - Lambda(x)|u> || / |||u>||  with T = A + kappa D and Lambda the
// full (unnormalised) transfer eigenvalue a(x) t(x) predicted by the roots.
double oracle_transfer_defect(const ChainSpec& chain, const RapiditySet& u, Cx x);

// Eigenvalue of T(x) on an arbitrary vector, extracted at the largest
// component; also returns the relative defect of the eigenvalue equation.
std::pair<Cx, double> transfer_eigenvalue_on(const ChainSpec& chain, Cx x,
                                             const Eigen::VectorXcd& phi);

// Basis indices of the M-magnon sector.
std::vector<long> sector_basis(int length, int magnons);

// Diagonalises T(v0) restricted to the M-magnon sector and extracts the Bethe
// roots of each eigenstate by solving the T-Q relation for the monic Baxter
// polynomial (linear in its coefficients).  Returns one root set per state.
std::vector<RapiditySet> extract_sector_roots(const ChainSpec& chain, int magnons, Cx v0);

}  // namespace absp
