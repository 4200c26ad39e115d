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
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "core/afunctional.hpp"
#include "core/oracle.hpp"
#include "core/solver.hpp"

using namespace absp;

namespace {

ChainSpec random_chain(std::mt19937_64& rng, int length, double spread = 0.35) {
  std::uniform_real_distribution<double> u(-spread, spread);
  ChainSpec chain;
  for (int i = 0; i < length; ++i) chain.theta.push_back(Cx{u(rng), u(rng)});
  chain.epsilon = 1.0;
  chain.kappa = std::polar(0.8 + 0.6 * std::abs(u(rng)), u(rng) * 4.0);
  return chain;
}

}  // namespace

TEST_CASE("single-site monodromy closed forms") {
  ChainSpec chain{{Cx{0.0, 0.0}}, 1.0, Cx{1.0, 0.0}};
  Cx u{0.7, 0.3};
  MonodromyBlocks blocks = build_monodromy(chain, u);
  // <up|A|up> = u + i/2 = Q_theta(u + i/2)
  CHECK(std::abs(blocks.a(0, 0) - (u + Cx{0.0, 0.5})) < 1e-14);
  CHECK(std::abs(blocks.d(0, 0) - (u - Cx{0.0, 0.5})) < 1e-14);
  // <down|B|up> = i eps
  CHECK(std::abs(blocks.b(1, 0) - Cx{0.0, 1.0}) < 1e-14);
  CHECK(std::abs(blocks.c(0, 1) - Cx{0.0, 1.0}) < 1e-14);
}

TEST_CASE("pseudovacuum relations") {
  std::mt19937_64 rng(31);
  ChainSpec chain = random_chain(rng, 4);
  Model model = chain.model();
  Eigen::VectorXcd omega = Eigen::VectorXcd::Zero(chain.dim());
  omega[0] = 1.0;
  std::uniform_real_distribution<double> u(-1.5, 1.5);
  for (int rep = 0; rep < 20; ++rep) {
    Cx x{u(rng), u(rng)};
    MonodromyAction act = monodromy_apply(chain, x, omega);
    CHECK(act.c.norm() < 1e-12);  // C(u)|Omega> = 0
    CHECK((act.a - model.a(x) * omega).norm() <= 1e-12 * std::abs(model.a(x)));
    CHECK((act.d - model.d(x) * omega).norm() <= 1e-12 * std::abs(model.d(x)));
  }
}

TEST_CASE("vacuum eigenvalues match the shifted inhomogeneity polynomials") {
  std::mt19937_64 rng(37);
  ChainSpec chain = random_chain(rng, 6);
  Eigen::VectorXcd omega = Eigen::VectorXcd::Zero(chain.dim());
  omega[0] = 1.0;
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  const Cx half{0.0, chain.epsilon / 2.0};
  for (int rep = 0; rep < 30; ++rep) {
    Cx x{u(rng), u(rng)};
    MonodromyAction act = monodromy_apply(chain, x, omega);
    RapiditySet theta{chain.theta};
    Cx a_expected = baxter_eval(theta, x + half);
    Cx d_expected = baxter_eval(theta, x - half);
    CHECK(std::abs(act.a[0] - a_expected) <= 1e-12 * std::abs(a_expected));
    CHECK(std::abs(act.d[0] - d_expected) <= 1e-12 * std::abs(d_expected));
  }
}

TEST_CASE("B operators commute and conserve magnon number") {
  std::mt19937_64 rng(41);
  ChainSpec chain = random_chain(rng, 5);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  Cx u{dist(rng), dist(rng)}, v{dist(rng), dist(rng)};
  MonodromyBlocks bu = build_monodromy(chain, u);
  MonodromyBlocks bv = build_monodromy(chain, v);
  Eigen::MatrixXcd comm = bu.b * bv.b - bv.b * bu.b;
  CHECK(comm.norm() <= 1e-10 * bu.b.norm() * bv.b.norm());

  // B raises the magnon number by exactly one
  for (long col = 0; col < chain.dim(); ++col) {
    int nc = __builtin_popcountl(col);
    for (long row = 0; row < chain.dim(); ++row) {
      if (__builtin_popcountl(row) != nc + 1)
        CHECK(std::abs(bu.b(row, col)) <= 1e-14 * bu.b.norm());
    }
  }
}

TEST_CASE("transfer matrices commute") {
  std::mt19937_64 rng(47);
  ChainSpec chain = random_chain(rng, 5);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  Cx u{dist(rng), dist(rng)}, v{dist(rng), dist(rng)};
  MonodromyBlocks bu = build_monodromy(chain, u);
  MonodromyBlocks bv = build_monodromy(chain, v);
  Eigen::MatrixXcd tu = bu.a + chain.kappa * bu.d;
  Eigen::MatrixXcd tv = bv.a + chain.kappa * bv.d;
  Eigen::MatrixXcd comm = tu * tv - tv * tu;
  CHECK(comm.norm() <= 1e-10 * tu.norm() * tv.norm());
}

TEST_CASE("single-site scalar product pinned value") {
  // L = 1: C(v) B(u) |Omega> = (i eps)^2 |Omega> regardless of u, v
  ChainSpec chain{{Cx{0.0, 0.0}}, 1.0, Cx{1.0, 0.0}};
  RapiditySet u{{Cx{1.0, 0.0}}};
  RapiditySet v{{Cx{2.0, 0.0}}};
  Cx got = oracle_scalar_product(chain, v, u);
  CHECK(std::abs(got - Cx{-1.0, 0.0}) < 1e-14);
}

TEST_CASE("scalar product is symmetric under permutations of u") {
  std::mt19937_64 rng(53);
  ChainSpec chain = random_chain(rng, 4);
  RapiditySet u{{Cx{0.4, 0.1}, Cx{-0.3, 0.2}}};
  RapiditySet v{{Cx{0.1, -0.5}, Cx{0.8, 0.3}}};
  Cx a = oracle_scalar_product(chain, v, u);
  std::swap(u.roots[0], u.roots[1]);
  Cx b = oracle_scalar_product(chain, v, u);
  CHECK(std::abs(a - b) <= 1e-12 * std::abs(a));
}

TEST_CASE("determinant formula matches the oracle on shell") {
  std::mt19937_64 rng(59);
  std::uniform_real_distribution<double> dist(-0.6, 0.6);
  for (auto [length, magnons] : {std::pair{4, 1}, std::pair{4, 2}, std::pair{6, 2}}) {
    ChainSpec chain = random_chain(rng, length);
    Model model = chain.model();
    std::vector<RapiditySet> candidates = extract_sector_roots(chain, magnons, Cx{0.29, 0.17});
    REQUIRE(!candidates.empty());
    int checked = 0;
    for (RapiditySet& cand : candidates) {
      RapiditySet polished = polish_residue_form(model, cand);
      double residual;
      try {
        residual = bethe_residual(model, polished);
      } catch (const Error&) {
        continue;
      }
      if (!(residual < 1e-12)) continue;
      double spread = 0.0;
      for (Cx r : polished.roots) spread = std::max(spread, std::abs(r));
      if (spread > 15.0) continue;
      RapiditySet voff;
      for (int i = 0; i < magnons; ++i) voff.roots.push_back(Cx{dist(rng), dist(rng)});
      Cx oracle = oracle_scalar_product(chain, voff, polished);
      ScalarProductResult formula = scalar_product(model, polished, residual, voff);
      CHECK(!formula.off_shell_warning);
      CHECK(std::abs(oracle - formula.value) <= 1e-8 * std::abs(oracle));
      if (++checked >= 2) break;
    }
    CHECK(checked >= 1);
  }
}

TEST_CASE("norm-type value against the oracle") {
  // v near u probes the norm regime without the coincident-root singularity
  std::mt19937_64 rng(61);
  ChainSpec chain = random_chain(rng, 4);
  Model model = chain.model();
  std::vector<RapiditySet> candidates = extract_sector_roots(chain, 2, Cx{0.31, 0.23});
  REQUIRE(!candidates.empty());
  int checked = 0;
  for (RapiditySet& cand : candidates) {
    RapiditySet u = polish_residue_form(model, cand);
    double residual;
    try {
      residual = bethe_residual(model, u);
    } catch (const Error&) {
      continue;
    }
    if (!(residual < 1e-12)) continue;
    double spread = 0.0;
    for (Cx r : u.roots) spread = std::max(spread, std::abs(r));
    if (spread > 15.0) continue;
    RapiditySet v = u;
    v.roots[0] += Cx{0.011, -0.007};
    v.roots[1] += Cx{-0.013, 0.009};
    Cx oracle = oracle_scalar_product(chain, v, u);
    ScalarProductResult formula = scalar_product(model, u, residual, v);
    CHECK(std::abs(oracle - formula.value) <= 1e-8 * std::abs(oracle));
    ++checked;
    break;
  }
  CHECK(checked == 1);
}

TEST_CASE("transfer defect vanishes on shell and not off shell") {
  std::mt19937_64 rng(67);
  ChainSpec chain = random_chain(rng, 6);
  Model model = chain.model();
  std::vector<RapiditySet> candidates = extract_sector_roots(chain, 2, Cx{0.27, 0.19});
  REQUIRE(!candidates.empty());
  bool done = false;
  for (RapiditySet& cand : candidates) {
    RapiditySet u = polish_residue_form(model, cand);
    double residual;
    try {
      residual = bethe_residual(model, u);
    } catch (const Error&) {
      continue;
    }
    if (!(residual < 1e-12)) continue;
    double spread = 0.0;
    for (Cx r : u.roots) spread = std::max(spread, std::abs(r));
    if (spread > 15.0) continue;
    CHECK(oracle_transfer_defect(chain, u, Cx{0.41, 0.37}) < 1e-8);
    RapiditySet off = u;
    off.roots[0] += 0.05;
    CHECK(oracle_transfer_defect(chain, off, Cx{0.41, 0.37}) > 1e-4);
    done = true;
    break;
  }
  CHECK(done);
}

TEST_CASE("oracle size caps") {
  ChainSpec chain;
  chain.theta.assign(15, Cx{0.0, 0.0});
  chain.epsilon = 1.0;
  CHECK_THROWS_AS(chain.validate(), Error);

  ChainSpec dense;
  dense.theta.assign(11, Cx{0.0, 0.0});
  dense.epsilon = 1.0;
  CHECK_THROWS_AS(build_monodromy(dense, Cx{0.1, 0.0}), Error);
}
