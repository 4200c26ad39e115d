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

#include <complex>
#include <stdexcept>
#include <string>

namespace absp {

using Cx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;

// Error taxonomy shared with the C API (codes must stay in sync with absp.h).
enum class Err {
  InvalidArgument = 1,
  Parse = 2,
  ZeroDenominator = 3,
  PoleHit = 4,
  DegenerateRoots = 5,
  IllConditioned = 6,
  TooLarge = 7,
  SeriesDiverges = 8,
  NoConvergence = 9,
  JacobianSingular = 10,
  OffShell = 11,
  LogSingularity = 12,
  BranchCutCrossing = 13,
  ContourInvalid = 14,
  Io = 15,
  Internal = 16,
};

class Error : public std::runtime_error {
 public:
  Error(Err code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Err code() const { return code_; }

 private:
  Err code_;
};

[[noreturn]] inline void fail(Err code, const std::string& what) { throw Error(code, what); }

inline bool is_finite(Cx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

}  // namespace absp
