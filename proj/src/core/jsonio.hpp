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

#include <string>

#include "contour.hpp"
#include "solver.hpp"

namespace absp {

// Model definition file:
//   {"type": "inhomogeneous_xxx", "L": n, "theta": [[re,im],...],
//    "kappa": [re,im], "epsilon": x}
//   {"type": "custom_rational", "kappa": [re,im], "epsilon": x,
//    "a": {"scale": [re,im], "roots": [...], "poles": [...]}, "d": {...}}
Model model_from_json(const std::string& text);
Model model_from_file(const std::string& path);
std::string model_to_json(const Model& model);

// {"roots": [[re,im],...]}
RapiditySet rapidities_from_json(const std::string& text);
RapiditySet rapidities_from_file(const std::string& path);
std::string rapidities_to_json(const RapiditySet& set);

// {"roots": ..., "mode_numbers": [...], "residual": r, "iterations": n,
//  "on_shell": b}
BetheState state_from_json(const std::string& text);
BetheState state_from_file(const std::string& path);
std::string state_to_json(const BetheState& state);

// Family file: {"members": [{"model": {...}, "u": [...], "v": [...],
//   "u_residual": r, "contour": {"center": [re,im], "ax": a, "ay": b,
//   "nodes": n}}]}
std::vector<FamilyMember> family_from_json(const std::string& text);
std::vector<FamilyMember> family_from_file(const std::string& path);
std::string family_to_json(const std::vector<FamilyMember>& family);

// CSV table for the expansion reports (17 significant digits per value).
std::string expansion_csv(const std::vector<ExpansionReport>& reports);

// Atomic write: temp file in the target directory, then rename.
void write_file_atomic(const std::string& path, const std::string& content);
std::string read_file(const std::string& path);

// number formatting used by every emitter
std::string fmt_double(double x);
std::string fmt_complex(Cx z);  // [re, im]

}  // namespace absp
