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

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "afunctional.hpp"
#include "model.hpp"

namespace absp {

// Random well-conditioned instance: rapidities in a complex box with a
// degeneracy guard, f from a random low-degree rational with poles outside
// the box, moderate twist.
struct RandomInstance {
  Model model;
  RapiditySet w;
};
RandomInstance random_instance(std::mt19937_64& rng, int n, double epsilon = 1.0);

struct PropertyResult {
  std::string name;
  int instances = 0;
  double max_deviation = 0.0;
  double threshold = 0.0;
  std::uint64_t worst_seed = 0;
  int worst_index = -1;
  bool pass = false;
};

struct VerifyOptions {
  std::uint64_t seed = 1;
  int instances = 200;
  std::vector<int> sizes{2, 4, 6, 8, 10, 12};
  double condition_cap = 1e10;
  // test fixture: evaluate the Fredholm route with the sign of epsilon flipped
  bool inject_epsilon_flip = false;
};

// Cross-method identity suites (ratio vs Fredholm vs subset sum, permutation
// symmetry, N=1 contract, log-series convergence).
std::vector<PropertyResult> verify_identities(const VerifyOptions& options);

}  // namespace absp
