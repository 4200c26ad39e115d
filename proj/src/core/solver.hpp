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

#include <vector>

#include "model.hpp"

namespace absp {

struct BetheState {
  RapiditySet roots;
  std::vector<int> mode_numbers;
  double residual = 0.0;  // max_j |a/d + kappa Q+(u_j)/Q-(u_j)| at the roots
  int iterations = 0;
  bool on_shell = false;
  std::vector<double> residual_history;  // per Newton iteration, for convergence studies
};

// max_j | a(u_j)/d(u_j) + kappa Q_u(u_j + i eps)/Q_u(u_j - i eps) |.
// The equations hold with zero right-hand side exactly when the transfer
// eigenvalue is regular at every root.
double bethe_residual(const Model& model, const RapiditySet& u);

// Counting function: twice the tracked pseudo-momentum.  At a solution,
// counting(u_j) = 2 pi n_j - pi with integer mode numbers n_j.
Cx counting_function(const Model& model, const RapiditySet& u, Cx v);

// Mode numbers of a solved state under the per-factor principal branch.
std::vector<int> mode_numbers_of(const Model& model, const RapiditySet& u);

// Damped Newton on G_j = counting(u_j) - (2 pi n_j - pi) with analytic
// Jacobian.  Empty initial_guess selects string-hypothesis seeds.
BetheState solve_bethe(const Model& model, const std::vector<int>& mode_numbers,
                       const RapiditySet& initial_guess, double tol = 1e-13, int max_iter = 80);

// Transfer eigenvalue normalised by a(v):
//   t(v) = Q_u(v - ie)/Q_u(v) + kappa (d/a)(v) Q_u(v + ie)/Q_u(v)
Cx transfer_eigenvalue(const Model& model, const RapiditySet& u, Cx v);

// Newton polish on the pole-cancellation form; keeps mode structure implicit.
// Used to refine nearly-converged root sets (e.g. oracle-extracted ones).
RapiditySet polish_residue_form(const Model& model, const RapiditySet& guess, double tol = 1e-13,
                                int max_iter = 60);

// Default string-hypothesis seeds for the given mode numbers.
RapiditySet string_seeds(const Model& model, const std::vector<int>& mode_numbers);

}  // namespace absp
