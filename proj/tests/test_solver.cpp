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

#include "core/solver.hpp"

using namespace absp;

namespace {

Model homogeneous_chain(int length, Cx kappa, double eps = 1.0) {
  return Model::inhomogeneous_xxx(std::vector<Cx>(length, Cx{0.0, 0.0}), kappa, eps);
}

}  // namespace

TEST_CASE("residual closed forms for one magnon") {
  // a == d == 1: the ratio Q+(u)/Q-(u) at the root equals -1, so the residual
  // is |1 - kappa| for any single rapidity
  for (Cx kappa : {Cx{2.0, 0.0}, Cx{0.0, 1.0}, Cx{-3.0, 0.0}}) {
    Model m = Model::custom_rational(RationalFunction{}, RationalFunction{}, kappa, 1.0);
    for (Cx u0 : {Cx{0.3, 0.1}, Cx{-1.2, 0.7}}) {
      RapiditySet u{{u0}};
      CHECK(bethe_residual(m, u) == doctest::Approx(std::abs(Cx{1.0, 0.0} - kappa)).epsilon(1e-12));
    }
  }
}

TEST_CASE("one-magnon states of the homogeneous four-site chain") {
  // residue-cancellation form reduces to ((u+i/2)/(u-i/2))^4 = 1 at kappa = 1;
  // the finite roots are 1/2, 0, -1/2
  Model m = homogeneous_chain(4, Cx{1.0, 0.0});
  const double expected_roots[3] = {0.5, 0.0, -0.5};
  const int modes[3] = {0, -1, -2};
  for (int i = 0; i < 3; ++i) {
    BetheState st = solve_bethe(m, {modes[i]}, RapiditySet{});
    REQUIRE(st.on_shell);
    CHECK(st.residual < 1e-12);
    CHECK(std::abs(st.roots.roots[0] - Cx{expected_roots[i], 0.0}) < 1e-10);
    // independent quartic check: the root satisfies the polynomial equation
    Cx r = st.roots.roots[0];
    Cx lhs = std::pow((r + Cx{0.0, 0.5}) / (r - Cx{0.0, 0.5}), 4);
    CHECK(std::abs(lhs - Cx{1.0, 0.0}) < 1e-10);
    // mode numbers recovered from the counting function
    CHECK(mode_numbers_of(m, st.roots)[0] == modes[i]);
  }
}

TEST_CASE("empty mode list yields the vacuum state") {
  Model m = homogeneous_chain(4, Cx{1.0, 0.0});
  BetheState st = solve_bethe(m, {}, RapiditySet{});
  CHECK(st.on_shell);
  CHECK(st.roots.size() == 0);
  CHECK(st.residual == 0.0);
}

TEST_CASE("re-solving from the solution converges immediately") {
  Model m = homogeneous_chain(4, Cx{1.0, 0.0});
  BetheState st = solve_bethe(m, {0}, RapiditySet{});
  REQUIRE(st.on_shell);
  BetheState again = solve_bethe(m, {0}, st.roots);
  CHECK(again.on_shell);
  CHECK(again.iterations <= 1);
}

TEST_CASE("symmetric two-magnon state reflects") {
  // theta symmetric under negation, opposite mode numbers: the roots must come
  // out as a u, -u pair
  std::vector<Cx> theta{Cx{0.4, 0.0}, Cx{-0.4, 0.0}, Cx{0.15, 0.0}, Cx{-0.15, 0.0}};
  Model m = Model::inhomogeneous_xxx(theta, Cx{1.0, 0.0}, 1.0);
  BetheState st = solve_bethe(m, {0, -1}, RapiditySet{});
  REQUIRE(st.on_shell);
  REQUIRE(st.roots.size() == 2);
  Cx sum = st.roots.roots[0] + st.roots.roots[1];
  CHECK(std::abs(sum) < 1e-9);
  CHECK(st.residual < 1e-12);
}

TEST_CASE("solver output is seed-permutation invariant") {
  Model m = homogeneous_chain(6, Cx{1.0, 0.0});
  RapiditySet guess{{Cx{0.55, 0.02}, Cx{-0.35, -0.01}}};
  BetheState a = solve_bethe(m, {0, -2}, guess);
  RapiditySet swapped{{guess.roots[1], guess.roots[0]}};
  BetheState b = solve_bethe(m, {-2, 0}, swapped);
  REQUIRE(a.on_shell);
  REQUIRE(b.on_shell);
  // compare as sets
  double match = 1e9;
  for (int perm = 0; perm < 2; ++perm) {
    double d = std::abs(a.roots.roots[0] - b.roots.roots[perm]) +
               std::abs(a.roots.roots[1] - b.roots.roots[1 - perm]);
    match = std::min(match, d);
  }
  CHECK(match < 1e-10);
}

TEST_CASE("Newton converges quadratically near the solution") {
  Model m = homogeneous_chain(4, Cx{1.0, 0.0});
  BetheState exact = solve_bethe(m, {0}, RapiditySet{});
  REQUIRE(exact.on_shell);
  RapiditySet seed = exact.roots;
  seed.roots[0] += Cx{7e-3, 3e-3};
  BetheState st = solve_bethe(m, {0}, seed, 1e-14, 30);
  REQUIRE(st.on_shell);
  // successive residuals below 1e-3 drop at least quadratically-fast
  const auto& hist = st.residual_history;
  bool quadratic_window = false;
  for (std::size_t i = 0; i + 1 < hist.size(); ++i) {
    if (hist[i] < 1e-3 && hist[i] > 1e-12 && hist[i + 1] > 0.0) {
      quadratic_window = true;
      CHECK(hist[i + 1] <= 50.0 * hist[i] * hist[i]);
    }
    if (i + 1 < hist.size() && hist[i + 1] > 0 && hist[i] > 0) CHECK(hist[i + 1] <= hist[i] * 1.000001);
  }
  CHECK(quadratic_window);
}

TEST_CASE("transfer eigenvalue") {
  SUBCASE("vacuum closed form") {
    Model m = homogeneous_chain(3, Cx{0.7, 0.2});
    RapiditySet empty;
    Cx v{0.9, 0.4};
    Cx expected = Cx{1.0, 0.0} + Cx{0.7, 0.2} * m.d(v) / m.a(v);
    CHECK(std::abs(transfer_eigenvalue(m, empty, v) - expected) < 1e-13);
  }
  SUBCASE("regular at the roots on shell") {
    Model m = homogeneous_chain(4, Cx{1.0, 0.0});
    BetheState st = solve_bethe(m, {0}, RapiditySet{});
    REQUIRE(st.on_shell);
    // contour integral of t around the root shrinks with the radius
    Cx root = st.roots.roots[0];
    for (double radius : {1e-2, 1e-3}) {
      Cx integral{0.0, 0.0};
      const int n = 64;
      for (int k = 0; k < n; ++k) {
        double t = 2.0 * kPi * k / n;
        Cx z = root + radius * Cx{std::cos(t), std::sin(t)};
        Cx dz = radius * Cx{-std::sin(t), std::cos(t)} * (2.0 * kPi / n);
        integral += transfer_eigenvalue(m, st.roots, z) * dz;
      }
      CHECK(std::abs(integral) < 1e-8);
    }
  }
  SUBCASE("pole hit at a root is reported") {
    Model m = homogeneous_chain(4, Cx{1.0, 0.0});
    RapiditySet u{{Cx{0.5, 0.0}}};
    CHECK_THROWS_AS(transfer_eigenvalue(m, u, Cx{0.5, 0.0}), Error);
  }
}

TEST_CASE("invalid solver inputs") {
  Model m = homogeneous_chain(4, Cx{1.0, 0.0});
  CHECK_THROWS_AS(solve_bethe(m, {0}, RapiditySet{{Cx{0, 0}, Cx{1, 0}}}), Error);
  CHECK_THROWS_AS(solve_bethe(m, {0}, RapiditySet{}, -1.0), Error);
}
