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
#include "jsonio.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace absp {

using nlohmann::json;

std::string fmt_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

std::string fmt_complex(Cx z) {
  return "[" + fmt_double(z.real()) + ", " + fmt_double(z.imag()) + "]";
}

namespace {

Cx parse_complex(const json& j) {
  if (!j.is_array() || j.size() != 2) fail(Err::Parse, "complex values are [re, im] pairs");
  return {j[0].get<double>(), j[1].get<double>()};
}

std::vector<Cx> parse_complex_list(const json& j) {
  std::vector<Cx> out;
  for (const auto& e : j) out.push_back(parse_complex(e));
  return out;
}

std::string emit_complex_list(const std::vector<Cx>& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ", ";
    s += fmt_complex(v[i]);
  }
  return s + "]";
}

json parse(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) fail(Err::Parse, "invalid JSON");
  return j;
}

RationalFunction parse_rational(const json& j) {
  RationalFunction r;
  if (j.contains("scale")) r.scale = parse_complex(j.at("scale"));
  if (j.contains("roots")) r.roots = parse_complex_list(j.at("roots"));
  if (j.contains("poles")) r.poles = parse_complex_list(j.at("poles"));
  return r;
}

std::string emit_rational(const RationalFunction& r) {
  std::string s = "{\"scale\": " + fmt_complex(r.scale);
  s += ", \"roots\": " + emit_complex_list(r.roots);
  s += ", \"poles\": " + emit_complex_list(r.poles) + "}";
  return s;
}

}  // namespace

Model model_from_json(const std::string& text) {
  json j = parse(text);
  try {
    std::string type = j.at("type").get<std::string>();
    Cx kappa = parse_complex(j.at("kappa"));
    double epsilon = j.at("epsilon").get<double>();
    if (type == "inhomogeneous_xxx") {
      std::vector<Cx> theta = parse_complex_list(j.at("theta"));
      if (j.contains("L") && j.at("L").get<int>() != static_cast<int>(theta.size()))
        fail(Err::Parse, "L does not match the number of inhomogeneities");
      return Model::inhomogeneous_xxx(std::move(theta), kappa, epsilon);
    }
    if (type == "custom_rational") {
      return Model::custom_rational(parse_rational(j.at("a")), parse_rational(j.at("d")), kappa,
                                    epsilon);
    }
    fail(Err::Parse, "unknown model type: " + type);
  } catch (const json::exception& e) {
    fail(Err::Parse, std::string("model JSON: ") + e.what());
  }
}

std::string model_to_json(const Model& model) {
  std::string s = "{";
  if (model.kind() == Model::Kind::InhomogeneousXXX) {
    s += "\"type\": \"inhomogeneous_xxx\", \"L\": " + std::to_string(model.chain_length());
    s += ", \"theta\": " + emit_complex_list(model.theta());
  } else {
    s += "\"type\": \"custom_rational\"";
    s += ", \"a\": " + emit_rational(model.a_fn());
    s += ", \"d\": " + emit_rational(model.d_fn());
  }
  s += ", \"kappa\": " + fmt_complex(model.kappa());
  s += ", \"epsilon\": " + fmt_double(model.epsilon());
  return s + "}";
}

RapiditySet rapidities_from_json(const std::string& text) {
  json j = parse(text);
  RapiditySet out;
  try {
    out.roots = parse_complex_list(j.is_array() ? j : j.at("roots"));
  } catch (const json::exception& e) {
    fail(Err::Parse, std::string("rapidity JSON: ") + e.what());
  }
  return out;
}

std::string rapidities_to_json(const RapiditySet& set) {
  return "{\"roots\": " + emit_complex_list(set.roots) + "}";
}

BetheState state_from_json(const std::string& text) {
  json j = parse(text);
  BetheState state;
  try {
    state.roots.roots = parse_complex_list(j.at("roots"));
    if (j.contains("mode_numbers"))
      state.mode_numbers = j.at("mode_numbers").get<std::vector<int>>();
    if (j.contains("residual")) state.residual = j.at("residual").get<double>();
    if (j.contains("iterations")) state.iterations = j.at("iterations").get<int>();
    if (j.contains("on_shell")) state.on_shell = j.at("on_shell").get<bool>();
  } catch (const json::exception& e) {
    fail(Err::Parse, std::string("state JSON: ") + e.what());
  }
  return state;
}

std::string state_to_json(const BetheState& state) {
  std::string s = "{\"roots\": " + emit_complex_list(state.roots.roots);
  s += ", \"mode_numbers\": [";
  for (std::size_t i = 0; i < state.mode_numbers.size(); ++i) {
    if (i) s += ", ";
    s += std::to_string(state.mode_numbers[i]);
  }
  s += "]";
  s += ", \"residual\": " + fmt_double(state.residual);
  s += ", \"iterations\": " + std::to_string(state.iterations);
  s += std::string(", \"on_shell\": ") + (state.on_shell ? "true" : "false");
  return s + "}";
}

std::vector<FamilyMember> family_from_json(const std::string& text) {
  json j = parse(text);
  std::vector<FamilyMember> out;
  try {
    for (const auto& jm : j.at("members")) {
      Model model = model_from_json(jm.at("model").dump());
      FamilyMember member{std::move(model), RapiditySet{}, RapiditySet{}, 0.0, Contour{}, Contour{}};
      member.u.roots = parse_complex_list(jm.at("u"));
      member.v.roots = parse_complex_list(jm.at("v"));
      if (jm.contains("u_residual")) member.u_residual = jm.at("u_residual").get<double>();
      const auto& jc = jm.at("contour");
      Cx center = parse_complex(jc.at("center"));
      double ax = jc.at("ax").get<double>();
      double ay = jc.at("ay").get<double>();
      int nodes = jc.at("nodes").get<int>();
      member.contour = make_ellipse(center, ax, ay, nodes);
      member.contour_fine = make_ellipse(center, ax, ay, 2 * nodes);
      out.push_back(std::move(member));
    }
  } catch (const json::exception& e) {
    fail(Err::Parse, std::string("family JSON: ") + e.what());
  }
  return out;
}

std::string family_to_json(const std::vector<FamilyMember>& family) {
  std::string s = "{\"members\": [";
  for (std::size_t i = 0; i < family.size(); ++i) {
    const FamilyMember& m = family[i];
    if (i) s += ", ";
    s += "{\"model\": " + model_to_json(m.model);
    s += ", \"u\": " + emit_complex_list(m.u.roots);
    s += ", \"v\": " + emit_complex_list(m.v.roots);
    s += ", \"u_residual\": " + fmt_double(m.u_residual);
    // recover the ellipse data from the stored nodes
    Cx c{0.0, 0.0};
    for (Cx z : m.contour.nodes) c += z;
    c /= static_cast<double>(m.contour.size());
    double ax = 0.0, ay = 0.0;
    for (Cx z : m.contour.nodes) {
      ax = std::max(ax, std::abs(z.real() - c.real()));
      ay = std::max(ay, std::abs(z.imag() - c.imag()));
    }
    s += ", \"contour\": {\"center\": " + fmt_complex(c) + ", \"ax\": " + fmt_double(ax) +
         ", \"ay\": " + fmt_double(ay) + ", \"nodes\": " + std::to_string(m.contour.size()) + "}}";
  }
  return s + "]}";
}

std::string expansion_csv(const std::vector<ExpansionReport>& reports) {
  std::ostringstream os;
  os << "M,epsilon,re_log_a_exact,im_log_a_exact,re_f0,im_f0,re_f1,im_f1,"
        "residual_leading,residual_subleading,quadrature_error_estimate\n";
  for (const ExpansionReport& r : reports) {
    os << r.m << ',' << fmt_double(r.epsilon) << ',' << fmt_double(r.log_a_exact.real()) << ','
       << fmt_double(r.log_a_exact.imag()) << ',' << fmt_double(r.f0.real()) << ','
       << fmt_double(r.f0.imag()) << ',' << fmt_double(r.f1.real()) << ','
       << fmt_double(r.f1.imag()) << ',' << fmt_double(r.residual_leading) << ','
       << fmt_double(r.residual_subleading) << ',' << fmt_double(r.quadrature_error) << '\n';
  }
  return os.str();
}

void write_file_atomic(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  fs::path target(path);
  fs::path dir = target.parent_path();
  if (dir.empty()) dir = ".";
  fs::path tmp = dir / (target.filename().string() + ".tmp");
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) fail(Err::Io, "cannot open " + tmp.string());
    out << content;
    if (!out.good()) fail(Err::Io, "short write to " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) fail(Err::Io, "rename failed: " + ec.message());
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(Err::Io, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Model model_from_file(const std::string& path) { return model_from_json(read_file(path)); }
RapiditySet rapidities_from_file(const std::string& path) {
  return rapidities_from_json(read_file(path));
}
BetheState state_from_file(const std::string& path) { return state_from_json(read_file(path)); }
std::vector<FamilyMember> family_from_file(const std::string& path) {
  return family_from_json(read_file(path));
}

}  // namespace absp
