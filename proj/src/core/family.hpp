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

#include "contour.hpp"

namespace absp {

// Parameters of the bundled one-cut family used for the semiclassical
// comparison.  Each member is an M-magnon condensed array of the homogeneous
// twisted model with L = filling_inverse * M sites and eps = 1/(2M); the
// off-shell partner is the array translated by `partner_shift`.
struct OneCutFamilyOptions {
  int filling_inverse = 8;
  double kappa_abs = 0.82;       // |kappa| melts the array interior when != 1
  double kappa_arg = 0.0;
  // off-shell partner: the array translated by partner_shift_eps * eps, an
  // O(eps) displacement that keeps the union admissible for the expansion
  Cx partner_shift_eps{0.55, 0.0};
  double contour_margin = 0.12;
  int nodes = 512;
  double tol = 1e-13;
  int max_sweeps = 400;
  bool verbose = false;  // stage diagnostics on stderr
};

// Solves the condensed-array Bethe equations in string coordinates: the
// unknowns are the anchor position and the logarithms of the rung deviations,
// so arbitrarily tight arrays remain resolvable.  Returns the member with its
// fitted contours.  Throws NoConvergence if the sweep stalls.
FamilyMember build_one_cut_member(int m, const OneCutFamilyOptions& opt = {});

std::vector<FamilyMember> build_one_cut_family(const std::vector<int>& sizes,
                                               const OneCutFamilyOptions& opt = {});

}  // namespace absp
