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
#include "dilog.hpp"

#include <cmath>

namespace absp {

namespace {

// Bernoulli-series kernel: Li2(z) = sum_k B_k u^{k+1}/(k+1)!,  u = -log(1-z).
// Valid for |u| < 2 pi; the callers keep Re z <= 1/2 and |z| <= 1 so the
// series converges fast.
Cx dilog_kernel(Cx z) {
  static const double coeff[] = {
      // B_{2m} / (2m+1)!   for m = 1..15
      1.0 / 36.0,
      -1.0 / 3600.0,
      1.0 / 211680.0,
      -1.0 / 10886400.0,
      1.0 / 526901760.0,
      -4.0647616451442255e-11,
      8.9216910204564526e-13,
      -1.9939295860721076e-14,
      4.5189800296199182e-16,
      -1.0356517612181247e-17,
      2.3952186210261867e-19,
      -5.5817858743250093e-21,
      1.3091507554183213e-22,
      -3.0874198024267403e-24,
      7.3159756527022034e-26,
  };
  const Cx u = -std::log(1.0 - z);
  const Cx u2 = u * u;
  Cx sum = u - u2 / 4.0;
  Cx up = u * u2;  // u^3
  for (double c : coeff) {
    Cx term = c * up;
    sum += term;
    if (std::norm(term) < 1e-64 * std::norm(sum)) break;
    up *= u2;
  }
  return sum;
}

}  // namespace

Cx dilog(Cx z) {
  const double pi2_6 = kPi * kPi / 6.0;
  if (z == Cx{0.0, 0.0}) return {0.0, 0.0};
  if (z == Cx{1.0, 0.0}) return {pi2_6, 0.0};
  Cx pre{0.0, 0.0};
  double sign = 1.0;
  if (std::abs(z) > 1.0) {
    // Li2(z) = -Li2(1/z) - pi^2/6 - log^2(-z)/2
    Cx lg = std::log(-z);
    pre = -pi2_6 - 0.5 * lg * lg;
    sign = -1.0;
    z = 1.0 / z;
  }
  Cx val;
  if (z.real() > 0.5) {
    // Li2(z) = pi^2/6 - log(z) log(1-z) - Li2(1-z)
    val = pi2_6 - std::log(z) * std::log(1.0 - z) - dilog_kernel(1.0 - z);
  } else {
    val = dilog_kernel(z);
  }
  return pre + sign * val;
}

}  // namespace absp
