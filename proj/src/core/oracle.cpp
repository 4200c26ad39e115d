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
#include "oracle.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

namespace absp {

void ChainSpec::validate() const {
  if (theta.empty()) fail(Err::InvalidArgument, "chain needs at least one site");
  if (length() > kMaxLength) fail(Err::TooLarge, "chain length exceeds the oracle cap");
  if (epsilon <= 0.0) fail(Err::InvalidArgument, "epsilon must be positive");
}

Model ChainSpec::model() const { return Model::inhomogeneous_xxx(theta, kappa, epsilon); }

MonodromyAction monodromy_apply(const ChainSpec& chain, Cx u, const Eigen::VectorXcd& psi) {
  chain.validate();
  const long dim = chain.dim();
  if (psi.size() != dim) fail(Err::InvalidArgument, "state dimension mismatch");
  const Cx ie{0.0, chain.epsilon};
  // 2x2 matrix of vectors; entry (r,c) is the (r,c) block of the partial
  // product applied to psi.  Site 1 acts first: M(u) = L_L ... L_1.
  Eigen::VectorXcd V00 = psi, V01 = Eigen::VectorXcd::Zero(dim);
  Eigen::VectorXcd V10 = Eigen::VectorXcd::Zero(dim), V11 = psi;
  Eigen::VectorXcd n00(dim), n01(dim), n10(dim), n11(dim);
  for (int site = 0; site < chain.length(); ++site) {
    const Cx x = u - chain.theta[site] - Cx{0.0, chain.epsilon / 2.0};
    const long mask = 1L << site;
    // L = [[x + ie E11, ie E21], [ie E12, x + ie E22]] acting on site `site`
    for (long i = 0; i < dim; ++i) {
      const bool down = (i & mask) != 0;
      const long flip = i ^ mask;
      if (!down) {
        n00[i] = (x + ie) * V00[i];
        n01[i] = (x + ie) * V01[i];
        n10[i] = x * V10[i] + ie * V00[flip];
        n11[i] = x * V11[i] + ie * V01[flip];
      } else {
        n00[i] = x * V00[i] + ie * V10[flip];
        n01[i] = x * V01[i] + ie * V11[flip];
        n10[i] = (x + ie) * V10[i];
        n11[i] = (x + ie) * V11[i];
      }
    }
    V00.swap(n00);
    V01.swap(n01);
    V10.swap(n10);
    V11.swap(n11);
  }
  return MonodromyAction{std::move(V00), std::move(V01), std::move(V10), std::move(V11)};
}

MonodromyBlocks build_monodromy(const ChainSpec& chain, Cx u) {
  chain.validate();
  if (chain.length() > ChainSpec::kMaxDenseLength)
    fail(Err::TooLarge, "dense monodromy blocks limited to L <= 10");
  const long dim = chain.dim();
  MonodromyBlocks out;
  out.a.resize(dim, dim);
  out.b.resize(dim, dim);
  out.c.resize(dim, dim);
  out.d.resize(dim, dim);
  Eigen::VectorXcd e = Eigen::VectorXcd::Zero(dim);
  for (long col = 0; col < dim; ++col) {
    e[col] = 1.0;
    MonodromyAction act = monodromy_apply(chain, u, e);
    out.a.col(col) = act.a;
    out.b.col(col) = act.b;
    out.c.col(col) = act.c;
    out.d.col(col) = act.d;
    e[col] = 0.0;
  }
  return out;
}

Eigen::VectorXcd bethe_vector(const ChainSpec& chain, const RapiditySet& u) {
  chain.validate();
  if (static_cast<int>(u.size()) > chain.length())
    fail(Err::TooLarge, "more magnons than sites");
  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(chain.dim());
  psi[0] = 1.0;
  for (Cx uj : u.roots) psi = monodromy_apply(chain, uj, psi).b;
  return psi;
}

Cx oracle_scalar_product(const ChainSpec& chain, const RapiditySet& v, const RapiditySet& u) {
  if (u.size() != v.size()) fail(Err::InvalidArgument, "oracle scalar product needs |u| = |v|");
  Eigen::VectorXcd psi = bethe_vector(chain, u);
  for (Cx vj : v.roots) psi = monodromy_apply(chain, vj, psi).c;
  return psi[0];  // coefficient on <Omega|, bilinear (no conjugation)
}

double oracle_transfer_defect(const ChainSpec& chain, const RapiditySet& u, Cx x) {
  Eigen::VectorXcd psi = bethe_vector(chain, u);
  double nrm = psi.norm();
  if (nrm == 0.0) fail(Err::Internal, "Bethe vector vanished");
  MonodromyAction act = monodromy_apply(chain, x, psi);
  Eigen::VectorXcd tpsi = act.a + chain.kappa * act.d;
  Model m = chain.model();
  const Cx ie{0.0, chain.epsilon};
  // full eigenvalue Lambda(x) = a(x) Q_u(x-ie)/Q_u(x) + kappa d(x) Q_u(x+ie)/Q_u(x)
  Cx qx = baxter_eval(u, x);
  if (std::abs(qx) < 1e-250) fail(Err::PoleHit, "transfer defect evaluated at a root");
  Cx lambda = (m.a(x) * baxter_eval(u, x - ie) + chain.kappa * m.d(x) * baxter_eval(u, x + ie)) / qx;
  return (tpsi - lambda * psi).norm() / nrm;
}

std::pair<Cx, double> transfer_eigenvalue_on(const ChainSpec& chain, Cx x,
                                             const Eigen::VectorXcd& phi) {
  MonodromyAction act = monodromy_apply(chain, x, phi);
  Eigen::VectorXcd tphi = act.a + chain.kappa * act.d;
  Eigen::Index imax;
  phi.cwiseAbs().maxCoeff(&imax);
  Cx lambda = tphi[imax] / phi[imax];
  double defect = (tphi - lambda * phi).norm() / phi.norm();
  return {lambda, defect};
}

std::vector<long> sector_basis(int length, int magnons) {
  std::vector<long> basis;
  const long dim = 1L << length;
  for (long i = 0; i < dim; ++i)
    if (__builtin_popcountl(i) == magnons) basis.push_back(i);
  return basis;
}

std::vector<RapiditySet> extract_sector_roots(const ChainSpec& chain, int magnons, Cx v0) {
  chain.validate();
  const int m = magnons;
  if (m < 1 || m > chain.length()) fail(Err::InvalidArgument, "bad magnon number");
  const std::vector<long> basis = sector_basis(chain.length(), m);
  const int sdim = static_cast<int>(basis.size());
  const long dim = chain.dim();
  Eigen::MatrixXcd T(sdim, sdim);
  Eigen::VectorXcd e = Eigen::VectorXcd::Zero(dim);
  for (int col = 0; col < sdim; ++col) {
    e[basis[col]] = 1.0;
    MonodromyAction act = monodromy_apply(chain, v0, e);
    Eigen::VectorXcd t = act.a + chain.kappa * act.d;
    for (int row = 0; row < sdim; ++row) T(row, col) = t[basis[row]];
    e[basis[col]] = 0.0;
  }
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(T);
  if (es.info() != Eigen::Success) fail(Err::Internal, "sector diagonalisation failed");

  Model model = chain.model();
  const Cx ie{0.0, chain.epsilon};
  std::vector<RapiditySet> out;
  for (int s = 0; s < sdim; ++s) {
    Eigen::VectorXcd phi = Eigen::VectorXcd::Zero(dim);
    for (int row = 0; row < sdim; ++row) phi[basis[row]] = es.eigenvectors()(row, s);
    // sample the commuting family at m+2 generic points and solve the T-Q
    // relation  Lambda(x) Q(x) = a(x) Q(x-ie) + kappa d(x) Q(x+ie)
    // for the monic Q of degree m (linear in the coefficients).
    const int ns = m + 2;
    Eigen::MatrixXcd A(ns, m);
    Eigen::VectorXcd rhs(ns);
    bool ok = true;
    for (int i = 0; i < ns; ++i) {
      Cx x{0.37 + 0.215 * i, 0.31 - 0.17 * i + 0.023 * i * i};
      auto [lambda, defect] = transfer_eigenvalue_on(chain, x, phi);
      if (defect > 1e-8) ok = false;
      Cx ax = model.a(x), dx = model.d(x);
      Cx pw{1.0, 0.0}, pm{1.0, 0.0}, pp{1.0, 0.0};
      for (int k = 0; k < m; ++k) {
        A(i, k) = lambda * pw - ax * pm - chain.kappa * dx * pp;
        pw *= x;
        pm *= (x - ie);
        pp *= (x + ie);
      }
      rhs(i) = -(lambda * pw - ax * pm - chain.kappa * dx * pp);
    }
    if (!ok) continue;  // species with degenerate eigenvalue; skip
    Eigen::VectorXcd c = A.colPivHouseholderQr().solve(rhs);
    // roots of v^m + c_{m-1} v^{m-1} + ... + c_0 via companion matrix
    Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(m, m);
    for (int i = 1; i < m; ++i) comp(i, i - 1) = 1.0;
    for (int i = 0; i < m; ++i) comp(i, m - 1) = -c(i);
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> roots(comp, false);
    RapiditySet set;
    for (int i = 0; i < m; ++i) set.roots.push_back(roots.eigenvalues()(i));
    out.push_back(std::move(set));
  }
  return out;
}

}  // namespace absp
