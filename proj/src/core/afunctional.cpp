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
#include "afunctional.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

namespace absp {

namespace internal {
namespace {
thread_local double g_eps_sign = 1.0;
}
EpsilonSignFixture::EpsilonSignFixture() { g_eps_sign = -1.0; }
EpsilonSignFixture::~EpsilonSignFixture() { g_eps_sign = 1.0; }
double kernel_epsilon_sign() { return g_eps_sign; }
}  // namespace internal

namespace {

// The shifted-pair check rejects |w_j - w_k + i eps| ~ 0.  It guards the
// evaluators whose intermediate quantities blow up there (residue weights and
// the subset sum).  The determinant routes stay finite in that limit — the
// offending factor cancels inside each kernel entry — so they only reject
// coincident roots.
void check_pairs(const RapiditySet& w, double eps, bool reject_eps_collision) {
  w.validate_distinct();
  if (!reject_eps_collision) return;
  const double tol = w.coincidence_scale();
  for (std::size_t j = 0; j < w.roots.size(); ++j)
    for (std::size_t k = 0; k < w.roots.size(); ++k) {
      if (j == k) continue;
      if (std::abs(w.roots[j] - w.roots[k] + Cx{0.0, eps}) < tol)
        fail(Err::DegenerateRoots, "pair difference collides with -i eps");
    }
}

double rcond_estimate(const Eigen::PartialPivLU<Eigen::MatrixXcd>& lu, double norm) {
  // cheap reciprocal-condition estimate from the LU diagonal
  const auto& U = lu.matrixLU();
  double dmin = std::numeric_limits<double>::infinity();
  double dmax = 0.0;
  for (Eigen::Index i = 0; i < U.rows(); ++i) {
    double d = std::abs(U(i, i));
    dmin = std::min(dmin, d);
    dmax = std::max(dmax, d);
  }
  if (dmin == 0.0) return 0.0;
  double scale = std::max(norm, dmax);
  return dmin / scale;
}

}  // namespace

ResidueWeights residue_weights(const Model& model, const RapiditySet& w) {
  check_pairs(w, model.epsilon(), /*reject_eps_collision=*/true);
  const Cx ie{0.0, model.epsilon()};
  ResidueWeights out;
  out.q.reserve(w.size());
  for (std::size_t j = 0; j < w.size(); ++j) {
    Cx q = model.f(w.roots[j]);
    for (std::size_t k = 0; k < w.size(); ++k) {
      if (k == j) continue;
      q *= (w.roots[j] - w.roots[k] + ie) / (w.roots[j] - w.roots[k]);
    }
    out.q.push_back(q);
  }
  return out;
}

Eigen::MatrixXcd kernel_matrix(const Model& model, const RapiditySet& w) {
  check_pairs(w, model.epsilon(), /*reject_eps_collision=*/false);
  const int n = static_cast<int>(w.size());
  const Cx ie{0.0, internal::kernel_epsilon_sign() * model.epsilon()};
  Eigen::MatrixXcd K(n, n);
  // pair logs lg(j,m) = log(w_jm + ie) - log(w_jm); -inf on exact ladders
  Eigen::MatrixXcd lg(n, n);
  std::vector<Cx> logf(n), rowsum(n, Cx{0.0, 0.0});
  for (int j = 0; j < n; ++j) {
    logf[j] = model.log_f(w.roots[j]);
    for (int m = 0; m < n; ++m) {
      if (m == j) continue;
      Cx d = w.roots[j] - w.roots[m];
      lg(j, m) = std::log(d + ie) - std::log(d);
      rowsum[j] += lg(j, m);
    }
  }
  const Cx logie = std::log(ie);
  for (int j = 0; j < n; ++j) {
    K(j, j) = std::exp(logf[j] + rowsum[j]);
    for (int k = 0; k < n; ++k) {
      if (k == j) continue;
      Cx d = w.roots[j] - w.roots[k];
      Cx expo = logf[j] + logie + rowsum[j] - lg(j, k) - std::log(d);
      if (!std::isfinite(expo.real())) {
        // entry contains the cancelling pair factor; assemble it with the
        // factor skipped instead of divided out
        expo = logf[j] + logie - std::log(d);
        for (int m = 0; m < n; ++m) {
          if (m == j || m == k) continue;
          expo += lg(j, m);
        }
      }
      K(j, k) = std::exp(expo);
    }
  }
  return K;
}

AFunctionalResult a_ratio_det(const Model& model, const RapiditySet& w) {
  check_pairs(w, model.epsilon(), /*reject_eps_collision=*/false);
  const int n = static_cast<int>(w.size());
  if (n > kRatioDetMaxN) fail(Err::TooLarge, "ratio-determinant limited to N <= 64");
  AFunctionalResult res;
  res.method = AMethod::RatioDet;
  if (n == 0) {
    res.value = 1.0;
    return res;
  }
  const Cx ie{0.0, model.epsilon()};
  Eigen::MatrixXcd num(n, n), van(n, n);
  for (int j = 0; j < n; ++j) {
    Cx wj = w.roots[j];
    Cx fj = model.f(wj);
    Cx pw{1.0, 0.0}, ps{1.0, 0.0};
    for (int k = 0; k < n; ++k) {
      van(j, k) = pw;
      num(j, k) = pw - fj * ps;
      pw *= wj;
      ps *= (wj + ie);
    }
  }
  Eigen::PartialPivLU<Eigen::MatrixXcd> lu_num(num);
  Eigen::PartialPivLU<Eigen::MatrixXcd> lu_van(van);
  double rc = rcond_estimate(lu_van, van.cwiseAbs().maxCoeff());
  res.condition_estimate = rc > 0.0 ? 1.0 / rc : std::numeric_limits<double>::infinity();
  if (res.condition_estimate > kIllConditionedThreshold)
    fail(Err::IllConditioned, "Vandermonde factor too ill-conditioned for the ratio determinant");
  res.trusted = res.condition_estimate <= kUntrustedThreshold;
  Cx dv = lu_van.determinant();
  if (dv == Cx{0.0, 0.0}) fail(Err::IllConditioned, "Vandermonde determinant underflow");
  res.value = lu_num.determinant() / dv;
  return res;
}

AFunctionalResult a_fredholm_det(const Model& model, const RapiditySet& w) {
  AFunctionalResult res;
  res.method = AMethod::FredholmDet;
  const int n = static_cast<int>(w.size());
  if (n == 0) {
    res.value = 1.0;
    return res;
  }
  Eigen::MatrixXcd K = kernel_matrix(model, w);
  Eigen::MatrixXcd A = Eigen::MatrixXcd::Identity(n, n) - K;
  Eigen::PartialPivLU<Eigen::MatrixXcd> lu(A);
  double rc = rcond_estimate(lu, A.cwiseAbs().maxCoeff());
  res.condition_estimate = rc > 0.0 ? 1.0 / rc : std::numeric_limits<double>::infinity();
  res.trusted = res.condition_estimate <= kUntrustedThreshold;
  res.value = lu.determinant();
  return res;
}

AFunctionalResult a_coulomb_sum(const Model& model, const RapiditySet& w) {
  check_pairs(w, model.epsilon(), /*reject_eps_collision=*/true);
  const int n = static_cast<int>(w.size());
  if (n > kCoulombMaxN) fail(Err::TooLarge, "subset sum limited to N <= 16");
  AFunctionalResult res;
  res.method = AMethod::CoulombSum;
  const double eps = model.epsilon();
  ResidueWeights rw = n > 0 ? residue_weights(model, w) : ResidueWeights{};
  Cx total{1.0, 0.0};  // empty subset
  const unsigned count = 1u << n;
  for (unsigned mask = 1; mask < count; ++mask) {
    Cx term{1.0, 0.0};
    int bits = 0;
    for (int j = 0; j < n; ++j) {
      if (!(mask & (1u << j))) continue;
      ++bits;
      term *= rw.q[j];
      for (int k = j + 1; k < n; ++k) {
        if (!(mask & (1u << k))) continue;
        Cx d = w.roots[j] - w.roots[k];
        term *= d * d / (d * d + eps * eps);
      }
    }
    total += (bits % 2 ? -term : term);
  }
  res.value = total;
  res.n_terms = static_cast<int>(count);
  return res;
}

AFunctionalResult a_log_series(const Model& model, const RapiditySet& w, int n_max) {
  AFunctionalResult res;
  res.method = AMethod::LogSeries;
  const int n = static_cast<int>(w.size());
  if (n == 0) {
    res.value = 1.0;
    return res;
  }
  if (n_max < 1) fail(Err::InvalidArgument, "n_max must be at least 1");
  Eigen::MatrixXcd K = kernel_matrix(model, w);
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(K, /*computeEigenvectors=*/false);
  double radius = es.eigenvalues().cwiseAbs().maxCoeff();
  if (radius >= 1.0) fail(Err::SeriesDiverges, "kernel spectral radius >= 1, log series diverges");
  Cx logsum{0.0, 0.0};
  Eigen::MatrixXcd P = K;
  double last = 0.0;
  int used = 0;
  for (int m = 1; m <= n_max; ++m) {
    Cx inc = -P.trace() / static_cast<double>(m);
    logsum += inc;
    last = std::abs(inc);
    used = m;
    if (m < n_max) P = P * K;
  }
  res.value = std::exp(logsum);
  res.n_terms = used;
  res.truncation_estimate = last;
  return res;
}

ScalarProductResult scalar_product(const Model& model, const RapiditySet& u, double u_residual,
                                   const RapiditySet& v, double tol) {
  if (u.size() != v.size()) fail(Err::InvalidArgument, "scalar product needs |u| == |v|");
  ScalarProductResult out;
  out.residual = u_residual;
  out.off_shell_warning = !(u_residual < tol);
  const std::size_t m = u.size();
  if (m == 0) {
    out.value = 1.0;
    out.a.value = 1.0;
    return out;
  }
  RapiditySet w;
  w.roots = u.roots;
  w.roots.insert(w.roots.end(), v.roots.begin(), v.roots.end());
  out.a = a_fredholm_det(model, w);
  Cx pref{1.0, 0.0};
  for (Cx vj : v.roots) pref *= model.a(vj);
  for (Cx uj : u.roots) pref *= model.d(uj);
  double sign = (m % 2 == 0) ? 1.0 : -1.0;
  out.value = sign * pref * out.a.value;
  return out;
}

}  // namespace absp
