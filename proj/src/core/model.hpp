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

#include <optional>
#include <vector>

#include "types.hpp"

namespace absp {

// Rational function in product form: scale * prod (v - roots) / prod (v - poles).
// Product form is kept throughout; expanded coefficients would lose accuracy for
// clustered roots and large degree.
struct RationalFunction {
  Cx scale{1.0, 0.0};
  std::vector<Cx> roots;
  std::vector<Cx> poles;

  Cx eval(Cx v) const;
  // log of the value with per-factor principal logs (sum over factors)
  Cx log_eval(Cx v) const;
  // logarithmic derivative  sum 1/(v-r) - sum 1/(v-p)
  Cx log_deriv(Cx v) const;
};

// Multiset of rapidities. Degeneracy is checked against the relative tolerance
// |w_j - w_k| < tol * (1 + max|w|).
struct RapiditySet {
  std::vector<Cx> roots;

  std::size_t size() const { return roots.size(); }
  static constexpr double kCoincidenceTol = 1e-12;
  // throws DegenerateRoots on coincident entries
  void validate_distinct() const;
  double coincidence_scale() const;
};

// Baxter polynomial Q_w(v) = prod_i (v - w_i); empty set gives 1.
Cx baxter_eval(const RapiditySet& w, Cx v);
// per-factor principal log of Q_w(v)
Cx baxter_log(const RapiditySet& w, Cx v);
// d/dv log Q_w(v) = sum 1/(v - w_i)
Cx baxter_log_deriv(const RapiditySet& w, Cx v);

// Functional data of the generalised model: a(u), d(u), twist kappa, scale
// epsilon. Restricted to rational a, d (either the inhomogeneous chain form or
// explicit root/pole lists).
class Model {
 public:
  enum class Kind { InhomogeneousXXX, CustomRational };

  static Model inhomogeneous_xxx(std::vector<Cx> theta, Cx kappa, double epsilon);
  static Model custom_rational(RationalFunction a, RationalFunction d, Cx kappa, double epsilon);

  Kind kind() const { return kind_; }
  Cx kappa() const { return kappa_; }
  double epsilon() const { return epsilon_; }
  const std::vector<Cx>& theta() const { return theta_; }
  int chain_length() const { return static_cast<int>(theta_.size()); }

  Cx a(Cx v) const;
  Cx d(Cx v) const;
  Cx log_a(Cx v) const;
  Cx log_d(Cx v) const;
  // d/dv log a, d/dv log d
  Cx dlog_a(Cx v) const;
  Cx dlog_d(Cx v) const;

  // f(v) = kappa d(v)/a(v); throws ZeroDenominator when |a(v)| is negligible
  Cx f(Cx v) const;
  Cx log_f(Cx v) const;   // log kappa + log d - log a, per-factor principal
  Cx dlog_f(Cx v) const;

  const RationalFunction& a_fn() const { return a_; }
  const RationalFunction& d_fn() const { return d_; }

  Model() = default;

 private:
  Kind kind_{Kind::CustomRational};
  Cx kappa_{1.0, 0.0};
  double epsilon_{1.0};
  std::vector<Cx> theta_;      // inhomogeneous form only
  RationalFunction a_, d_;     // always populated (derived from theta for chains)
};

// Weight function Q(z) = f(z) Q_w(z+i eps)/Q_w(z); PoleHit at roots of Q_w.
Cx weight_function(const Model& model, const RapiditySet& w, Cx z);
// log Q(z) with per-factor principal logs (stable for large sets)
Cx weight_function_log(const Model& model, const RapiditySet& w, Cx z);
// d/dz log Q(z)
Cx weight_function_dlog(const Model& model, const RapiditySet& w, Cx z);

// Pseudo-momentum p(v):  2 i p(v) = log[Q_u(v+ie)/Q_u(v-ie)] - log[a/d] + log kappa,
// each log on its principal branch of the assembled ratio.  Reported modulo pi.
Cx pseudo_momentum(const Model& model, const RapiditySet& u, Cx v);
// Tracked variant: per-factor principal logs, suitable for sampling along paths
// that stay clear of the factor cuts.  Not reduced modulo pi.
Cx pseudo_momentum_tracked(const Model& model, const RapiditySet& u, Cx v);

}  // namespace absp
