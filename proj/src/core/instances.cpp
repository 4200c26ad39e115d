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
#include "instances.hpp"

#include <algorithm>
#include <cmath>

namespace absp {

namespace {

Cx sample_box(std::mt19937_64& rng, double re0, double re1, double im0, double im1) {
  std::uniform_real_distribution<double> ure(re0, re1), uim(im0, im1);
  return {ure(rng), uim(rng)};
}

}  // namespace

RandomInstance random_instance(std::mt19937_64& rng, int n, double epsilon) {
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  RapiditySet w;
  const double box = 2.2;
  int guard = 0;
  while (static_cast<int>(w.roots.size()) < n) {
    Cx cand = sample_box(rng, -box, box, -box, box);
    bool ok = true;
    for (Cx r : w.roots) {
      if (std::abs(cand - r) < 0.08) ok = false;
      if (std::abs(cand - r + Cx{0.0, epsilon}) < 0.05) ok = false;
      if (std::abs(cand - r - Cx{0.0, epsilon}) < 0.05) ok = false;
    }
    if (ok) w.roots.push_back(cand);
    if (++guard > 100000) fail(Err::Internal, "instance sampling stalled");
  }
  // f data: random rational of degree 2 with poles outside the box
  RationalFunction a, d;
  a.scale = Cx{1.0, 0.0};
  d.scale = std::polar(0.35 + 0.5 * u01(rng), 2.0 * kPi * u01(rng));
  for (int i = 0; i < 2; ++i) {
    double angle = 2.0 * kPi * u01(rng);
    double radius = 4.5 + 2.0 * u01(rng);
    a.roots.push_back(std::polar(radius, angle));  // poles of f stay outside
    d.roots.push_back(sample_box(rng, -1.5, 1.5, -1.5, 1.5));
  }
  Cx kappa = std::polar(0.6 + 0.8 * u01(rng), 2.0 * kPi * u01(rng));
  Model model = Model::custom_rational(std::move(a), std::move(d), kappa, epsilon);
  return {std::move(model), std::move(w)};
}

std::vector<PropertyResult> verify_identities(const VerifyOptions& options) {
  std::vector<PropertyResult> out;
  std::mt19937_64 rng(options.seed);

  auto finish = [](PropertyResult& p) { p.pass = p.instances == 0 || p.max_deviation < p.threshold; };

  // 1. ratio vs Fredholm
  PropertyResult ratio{"ratio_vs_fredholm", 0, 0.0, 1e-9, options.seed, -1, false};
  // 2. subset sum vs Fredholm
  PropertyResult coulomb{"coulomb_vs_fredholm", 0, 0.0, 1e-10, options.seed, -1, false};
  // 3. permutation symmetry
  PropertyResult perm{"s2m_symmetry", 0, 0.0, 1e-10, options.seed, -1, false};
  // 4. N = 1 closed form
  PropertyResult none{"n1_closed_form", 0, 0.0, 1e-14, options.seed, -1, false};
  // 5. log series limit
  PropertyResult series{"log_series_vs_fredholm", 0, 0.0, 1e-10, options.seed, -1, false};

  for (int i = 0; i < options.instances; ++i) {
    int n = options.sizes[i % options.sizes.size()];
    RandomInstance inst = random_instance(rng, n);
    AFunctionalResult fred;
    try {
      if (options.inject_epsilon_flip) {
        internal::EpsilonSignFixture flip;
        fred = a_fredholm_det(inst.model, inst.w);
      } else {
        fred = a_fredholm_det(inst.model, inst.w);
      }
      AFunctionalResult rat = a_ratio_det(inst.model, inst.w);
      if (rat.condition_estimate < options.condition_cap) {
        double dev = std::abs(rat.value - fred.value) / std::max(1e-300, std::abs(fred.value));
        ratio.instances++;
        if (dev > ratio.max_deviation) {
          ratio.max_deviation = dev;
          ratio.worst_index = i;
        }
      }
      if (n <= kCoulombMaxN) {
        AFunctionalResult cs = a_coulomb_sum(inst.model, inst.w);
        double dev = std::abs(cs.value - fred.value) / std::max(1e-300, std::abs(fred.value));
        coulomb.instances++;
        if (dev > coulomb.max_deviation) {
          coulomb.max_deviation = dev;
          coulomb.worst_index = i;
        }
      }
      // permutations
      {
        std::vector<Cx> base = inst.w.roots;
        double dev = 0.0;
        for (int p = 0; p < 20; ++p) {
          std::shuffle(base.begin(), base.end(), rng);
          RapiditySet perm_set;
          perm_set.roots = base;
          AFunctionalResult pv = a_fredholm_det(inst.model, perm_set);
          dev = std::max(dev, std::abs(pv.value - fred.value) /
                                  std::max(1e-300, std::abs(fred.value)));
        }
        perm.instances++;
        if (dev > perm.max_deviation) {
          perm.max_deviation = dev;
          perm.worst_index = i;
        }
      }
    } catch (const Error&) {
      continue;  // skip pathological draws; determinism keeps this reproducible
    }
  }

  // N=1 contract on its own draws
  for (int i = 0; i < std::max(50, options.instances / 4); ++i) {
    RandomInstance inst = random_instance(rng, 1);
    Cx expected = 1.0 - inst.model.f(inst.w.roots[0]);
    for (auto evaluate : {a_ratio_det, a_fredholm_det, a_coulomb_sum}) {
      Cx got = evaluate(inst.model, inst.w).value;
      double dev = std::abs(got - expected) / (1.0 + std::abs(expected));
      none.instances++;
      if (dev > none.max_deviation) {
        none.max_deviation = dev;
        none.worst_index = i;
      }
    }
  }

  // log series with damped f to keep the spectral radius below one
  for (int i = 0; i < std::max(20, options.instances / 10); ++i) {
    RandomInstance inst = random_instance(rng, 6);
    RationalFunction d = inst.model.d_fn();
    d.scale *= 0.02;
    Model damped = Model::custom_rational(RationalFunction(inst.model.a_fn()), std::move(d),
                                          inst.model.kappa(), inst.model.epsilon());
    try {
      AFunctionalResult fred = a_fredholm_det(damped, inst.w);
      AFunctionalResult ls = a_log_series(damped, inst.w, 40);
      double dev = std::abs(ls.value - fred.value) / std::max(1e-300, std::abs(fred.value));
      series.instances++;
      if (dev > series.max_deviation) {
        series.max_deviation = dev;
        series.worst_index = i;
      }
    } catch (const Error&) {
      continue;
    }
  }

  finish(ratio);
  finish(coulomb);
  finish(perm);
  finish(none);
  finish(series);
  out.push_back(ratio);
  out.push_back(coulomb);
  out.push_back(perm);
  out.push_back(none);
  out.push_back(series);
  return out;
}

}  // namespace absp
