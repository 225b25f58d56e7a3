// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "hdxcolor/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "hdxcolor/errors.hpp"

namespace hdxcolor {
namespace {

std::vector<double> numbers_from(const Json& j) {
  std::vector<double> out;
  for (const auto& x : j) out.push_back(number_from_json(x));
  return out;
}

Json numbers_to(const std::vector<double>& xs) {
  Json out = Json::array();
  for (double x : xs) out.push_back(number_to_json(x));
  return out;
}

template <typename T>
Json list_to(const std::vector<T>& xs) {
  Json out = Json::array();
  for (const auto& x : xs) out.push_back(to_json(x));
  return out;
}

Json optional_bool(const std::optional<bool>& b) { return b ? Json(*b) : Json(nullptr); }

std::optional<bool> optional_bool_from(const Json& j) {
  if (j.is_null()) return std::nullopt;
  return j.get<bool>();
}

int parse_int(const std::string& text, const std::string& what) {
  std::size_t used = 0;
  int value = 0;
  try {
    value = std::stoi(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size()) throw InvalidInput("bad " + what + " '" + text + "'");
  return value;
}

}  // namespace

Graph parse_graph(std::istream& in) {
  std::string line;
  std::vector<std::string> lines;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t\r") != std::string::npos) lines.push_back(line);
  }
  if (lines.empty()) throw InvalidInput("graph file is empty");
  std::istringstream head(lines[0]);
  long long n = -1;
  long long m = -1;
  std::string extra;
  if (!(head >> n >> m) || (head >> extra) || n < 0 || m < 0) {
    throw InvalidInput("graph header must be 'n m' with non-negative integers");
  }
  if (static_cast<long long>(lines.size()) - 1 != m) {
    throw InvalidInput("graph header announces " + std::to_string(m) + " edges but file has " +
                       std::to_string(lines.size() - 1));
  }
  std::vector<Edge> edges;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    std::istringstream row(lines[i]);
    long long u = -1;
    long long v = -1;
    if (!(row >> u >> v) || (row >> extra)) {
      throw InvalidInput("edge line " + std::to_string(i) + " must be 'u v'");
    }
    if (u < 0 || v < 0 || u >= n || v >= n) {
      throw InvalidInput("edge line " + std::to_string(i) + " names a vertex outside 0.." +
                         std::to_string(n - 1));
    }
    edges.emplace_back(static_cast<int>(u), static_cast<int>(v));
  }
  return Graph::from_edges(static_cast<int>(n), edges);
}

Graph read_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open graph file '" + path + "'");
  return parse_graph(in);
}

std::vector<std::vector<int>> parse_lists(const Json& doc, int element_count) {
  if (!doc.is_object()) throw InvalidInput("lists file must hold a JSON object");
  std::vector<std::vector<int>> lists(element_count);
  std::vector<bool> given(element_count, false);
  int all = 0;
  for (const auto& [key, value] : doc.items()) {
    if (key == "all") {
      if (!value.is_number_integer() || value.get<int>() < 1) {
        throw InvalidInput("\"all\" must be a positive integer");
      }
      all = value.get<int>();
      continue;
    }
    const int id = parse_int(key, "element id");
    if (id < 0 || id >= element_count) {
      throw InvalidInput("list for unknown element " + key);
    }
    if (!value.is_array()) throw InvalidInput("list of element " + key + " must be an array");
    for (const auto& c : value) {
      if (!c.is_number_integer()) throw InvalidInput("colors must be integers");
      lists[id].push_back(c.get<int>());
    }
    given[id] = true;
  }
  for (int x = 0; x < element_count; ++x) {
    if (given[x]) continue;
    if (all == 0) throw InvalidInput("no list for element " + std::to_string(x));
    for (int c = 1; c <= all; ++c) lists[x].push_back(c);
  }
  return lists;
}

ListColoringInstance load_instance(const std::string& graph_path, const std::string& lists,
                                   ElementKind kind) {
  Graph g = read_graph_file(graph_path);
  const int elements = kind == ElementKind::kVertex ? g.vertex_count() : g.edge_count();
  if (lists.rfind("all:", 0) == 0) {
    const int q = parse_int(lists.substr(4), "palette size");
    if (q < 1) throw InvalidInput("palette size must be positive");
    return ListColoringInstance::uniform(kind, std::move(g), q);
  }
  std::ifstream in(lists);
  if (!in) throw InvalidInput("cannot open lists file '" + lists + "'");
  Json doc;
  try {
    doc = Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw InvalidInput("lists file '" + lists + "' is not valid JSON: " + e.what());
  }
  return ListColoringInstance(kind, std::move(g), parse_lists(doc, elements));
}

Json number_to_json(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return x;
}

double number_from_json(const Json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  }
  throw InvalidInput("expected a number");
}

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

Json to_json(const FaceVerdict& v) {
  return {{"key", v.key},
          {"codim", v.codim},
          {"lambda2", number_to_json(v.lambda2)},
          {"rho", number_to_json(v.rho)},
          {"base_ok", optional_bool(v.base_ok)},
          {"threshold_ok", optional_bool(v.threshold_ok)},
          {"recursive_ok", optional_bool(v.recursive_ok)},
          {"product_ok", optional_bool(v.product_ok)},
          {"passed", v.passed},
          {"certified", v.certified},
          {"sound", v.sound}};
}

FaceVerdict face_verdict_from_json(const Json& j) {
  FaceVerdict v;
  v.key = j.at("key").get<std::string>();
  v.codim = j.at("codim").get<int>();
  v.lambda2 = number_from_json(j.at("lambda2"));
  v.rho = number_from_json(j.at("rho"));
  v.base_ok = optional_bool_from(j.at("base_ok"));
  v.threshold_ok = optional_bool_from(j.at("threshold_ok"));
  v.recursive_ok = optional_bool_from(j.at("recursive_ok"));
  v.product_ok = optional_bool_from(j.at("product_ok"));
  v.passed = j.at("passed").get<bool>();
  v.certified = j.at("certified").get<bool>();
  v.sound = j.at("sound").get<bool>();
  return v;
}

Json to_json(const CertificateReport& r) {
  return {{"variant", to_string(r.variant)},
          {"dimension", r.dimension},
          {"faces", list_to(r.faces)},
          {"mu", numbers_to(r.mu)},
          {"gamma", numbers_to(r.gamma)},
          {"down_up_bound", number_to_json(r.down_up_bound)},
          {"overall_pass", r.overall_pass},
          {"soundness_violations", r.soundness_violations}};
}

CertificateReport certificate_report_from_json(const Json& j) {
  CertificateReport r;
  r.variant = parse_variant(j.at("variant").get<std::string>());
  r.dimension = j.at("dimension").get<int>();
  for (const auto& f : j.at("faces")) r.faces.push_back(face_verdict_from_json(f));
  r.mu = numbers_from(j.at("mu"));
  r.gamma = numbers_from(j.at("gamma"));
  r.down_up_bound = number_from_json(j.at("down_up_bound"));
  r.overall_pass = j.at("overall_pass").get<bool>();
  r.soundness_violations = j.at("soundness_violations").get<int>();
  return r;
}

Json to_json(const SpectralProfile& p) {
  Json levels = Json::array();
  for (std::size_t i = 0; i < p.gamma.size(); ++i) {
    levels.push_back({{"level", static_cast<int>(i) - 1}, {"gamma", number_to_json(p.gamma[i])}});
  }
  Json faces = Json::object();
  for (const auto& [key, value] : p.face_lambda2) faces[key] = number_to_json(value);
  return {{"dimension", p.dimension}, {"levels", levels}, {"faces", faces}};
}

SpectralProfile spectral_profile_from_json(const Json& j) {
  SpectralProfile p;
  p.dimension = j.at("dimension").get<int>();
  for (const auto& level : j.at("levels")) p.gamma.push_back(number_from_json(level.at("gamma")));
  for (const auto& [key, value] : j.at("faces").items()) p.face_lambda2[key] = number_from_json(value);
  return p;
}

Json to_json(const SpectrumReport& r) {
  return {{"facets", r.facets},
          {"profile", to_json(r.profile)},
          {"down_up", {{"lambda2", number_to_json(r.lambda2)},
                       {"gap", number_to_json(r.gap)},
                       {"ergodic", r.ergodic},
                       {"reducible", !r.ergodic}}},
          {"local_bound", number_to_json(r.local_bound)},
          {"local_bound_corrected", number_to_json(r.local_bound_corrected)}};
}

SpectrumReport spectrum_report_from_json(const Json& j) {
  SpectrumReport r;
  r.facets = j.at("facets").get<int>();
  r.profile = spectral_profile_from_json(j.at("profile"));
  const Json& du = j.at("down_up");
  r.lambda2 = number_from_json(du.at("lambda2"));
  r.gap = number_from_json(du.at("gap"));
  r.ergodic = du.at("ergodic").get<bool>();
  r.local_bound = number_from_json(j.at("local_bound"));
  r.local_bound_corrected = number_from_json(j.at("local_bound_corrected"));
  return r;
}

Json to_json(const MixingReport& r) {
  return {{"facets", r.facets},
          {"dimension", r.dimension},
          {"lambda2", number_to_json(r.lambda2)},
          {"gap", number_to_json(r.gap)},
          {"ergodic", r.ergodic},
          {"gamma", numbers_to(r.gamma)},
          {"local_bound", number_to_json(r.local_bound)},
          {"local_bound_corrected", number_to_json(r.local_bound_corrected)},
          {"stationary_deviation", number_to_json(r.stationary_deviation)},
          {"worst_start", r.worst_start},
          {"tv", numbers_to(r.tv)},
          {"t_mix", r.t_mix ? Json(*r.t_mix) : Json(nullptr)},
          {"t_mix_unbounded", r.t_mix_unbounded}};
}

MixingReport mixing_report_from_json(const Json& j) {
  MixingReport r;
  r.facets = j.at("facets").get<int>();
  r.dimension = j.at("dimension").get<int>();
  r.lambda2 = number_from_json(j.at("lambda2"));
  r.gap = number_from_json(j.at("gap"));
  r.ergodic = j.at("ergodic").get<bool>();
  r.gamma = numbers_from(j.at("gamma"));
  r.local_bound = number_from_json(j.at("local_bound"));
  r.local_bound_corrected = number_from_json(j.at("local_bound_corrected"));
  r.stationary_deviation = number_from_json(j.at("stationary_deviation"));
  r.worst_start = j.at("worst_start").get<std::string>();
  r.tv = numbers_from(j.at("tv"));
  if (!j.at("t_mix").is_null()) r.t_mix = j.at("t_mix").get<int>();
  r.t_mix_unbounded = j.at("t_mix_unbounded").get<bool>();
  return r;
}

Json to_json(const ChainResult& r) {
  return {{"seed", r.seed},
          {"steps", r.state.steps},
          {"changes", r.state.changes},
          {"frozen", r.state.frozen},
          {"initial", r.initial},
          {"coloring", r.state.coloring}};
}

ChainResult chain_result_from_json(const Json& j) {
  ChainResult r;
  r.seed = j.at("seed").get<std::uint64_t>();
  r.state.steps = j.at("steps").get<long long>();
  r.state.changes = j.at("changes").get<long long>();
  r.state.frozen = j.at("frozen").get<long long>();
  r.initial = j.at("initial").get<std::vector<int>>();
  r.state.coloring = j.at("coloring").get<std::vector<int>>();
  return r;
}

Json to_json(const ConditionVerdict& v) {
  return {{"key", v.key},
          {"codim", v.codim},
          {"scalar_ok", v.scalar_ok},
          {"threshold_ok", v.threshold_ok},
          {"worst_slack", number_to_json(v.worst_slack)}};
}

ConditionVerdict condition_verdict_from_json(const Json& j) {
  ConditionVerdict v;
  v.key = j.at("key").get<std::string>();
  v.codim = j.at("codim").get<int>();
  v.scalar_ok = j.at("scalar_ok").get<bool>();
  v.threshold_ok = j.at("threshold_ok").get<bool>();
  v.worst_slack = number_from_json(j.at("worst_slack"));
  return v;
}

Json to_json(const BoundCheck& c) {
  return {{"key", c.key}, {"ok", c.ok}, {"worst", number_to_json(c.worst)}};
}

BoundCheck bound_check_from_json(const Json& j) {
  return {j.at("key").get<std::string>(), j.at("ok").get<bool>(), number_from_json(j.at("worst"))};
}

Json to_json(const PairingRecord& r) {
  return {{"key", r.key},
          {"codim", r.codim},
          {"lambda2", number_to_json(r.lambda2)},
          {"bound", number_to_json(r.bound)},
          {"conditions_hold", r.conditions_hold},
          {"sound", r.sound}};
}

PairingRecord pairing_record_from_json(const Json& j) {
  PairingRecord r;
  r.key = j.at("key").get<std::string>();
  r.codim = j.at("codim").get<int>();
  r.lambda2 = number_from_json(j.at("lambda2"));
  r.bound = number_from_json(j.at("bound"));
  r.conditions_hold = j.at("conditions_hold").get<bool>();
  r.sound = j.at("sound").get<bool>();
  return r;
}

Json family_to_json(const WeightedComplex& X, const FaceMatrices& family) {
  Json out = Json::object();
  for (const auto& [face, m] : family) {
    Json index = Json::array();
    for (int y : m.index) index.push_back(X.key(Face().with(y)));
    Json values = Json::array();
    for (Eigen::Index a = 0; a < m.values.rows(); ++a) {
      for (Eigen::Index b = 0; b < m.values.cols(); ++b) values.push_back(m.values(a, b));
    }
    out[X.key(face)] = {{"index", index}, {"values", values}};
  }
  return out;
}

FaceMatrices family_from_json(const WeightedComplex& X, const Json& j) {
  FaceMatrices out;
  for (const auto& [key, entry] : j.items()) {
    SupportMatrix m;
    for (const auto& g : entry.at("index")) {
      const auto idx = X.parse_key(g.get<std::string>()).indices();
      if (idx.size() != 1) throw InvalidInput("bad ground key " + g.dump());
      m.index.push_back(idx[0]);
    }
    const auto n = static_cast<Eigen::Index>(m.index.size());
    const auto values = entry.at("values").get<std::vector<double>>();
    if (static_cast<Eigen::Index>(values.size()) != n * n) {
      throw InvalidInput("matrix for {" + key + "} has the wrong size");
    }
    m.values.resize(n, n);
    for (Eigen::Index a = 0; a < n; ++a) {
      for (Eigen::Index b = 0; b < n; ++b) m.values(a, b) = values[a * n + b];
    }
    out.emplace(X.parse_key(key), std::move(m));
  }
  return out;
}

Json certify_document(const ListColoringInstance& inst, const WeightedComplex& X,
                      const RegimeRun& run, bool include_families) {
  const ResolvedParams& p = run.params;
  Json doc;
  doc["command"] = "certify";
  doc["kind"] = to_string(inst.kind());
  doc["regime"] = to_string(p.regime);
  doc["params"] = {{"epsilon", p.epsilon}, {"beta", p.beta}, {"Delta", p.Delta}};
  if (p.regime == Regime::kVertexTree) doc["params"]["root"] = p.root;
  doc["status"] = {{"beta_extra", run.status.beta_extra},
                   {"asymptotic_precondition", run.status.asymptotic_precondition},
                   {"precondition", run.status.description}};
  doc["report"] = to_json(run.report);
  doc["conditions"] = list_to(run.conditions);
  doc["a_bounds"] = list_to(run.a_bounds);
  doc["ingredients"] = list_to(run.ingredients);
  doc["sandwich"] = list_to(run.sandwich);
  doc["entry_bounds"] = list_to(run.entry_bounds);
  Json gamma = Json::object();
  for (const auto& [face, row] : run.gamma) {
    for (const auto& [ground, value] : row) gamma[face][ground] = number_to_json(value);
  }
  doc["gamma"] = gamma;
  Json intermediates = Json::array();
  for (const auto& [face, Abar] : run.family.A_bar) {
    const SupportMatrix& S = run.family.S.at(face);
    Eigen::MatrixXd off = S.values;
    off.diagonal().setZero();
    const bool empty = Abar.values.size() == 0;
    intermediates.push_back(
        {{"key", X.key(face)},
         {"max_abs_A_bar", empty ? 0.0 : Abar.values.cwiseAbs().maxCoeff()},
         {"max_abs_S_offdiag", empty ? 0.0 : off.cwiseAbs().maxCoeff()},
         {"max_S_diag", empty ? 0.0 : S.values.diagonal().maxCoeff()}});
  }
  std::sort(intermediates.begin(), intermediates.end(),
            [](const Json& a, const Json& b) { return a["key"] < b["key"]; });
  doc["intermediates"] = intermediates;
  doc["pairing"] = list_to(run.pairing);
  doc["pairing_violations"] = run.pairing_violations;
  doc["sound"] = run.sound();
  if (include_families) {
    doc["families"] = {{"F", family_to_json(X, run.family.F)},
                       {"A", family_to_json(X, run.family.A)}};
  }
  return doc;
}

std::string gamma_csv(const SpectralProfile& p) {
  std::string out = "level,gamma\n";
  for (std::size_t i = 0; i < p.gamma.size(); ++i) {
    out += std::to_string(static_cast<int>(i) - 1) + "," + format_double(p.gamma[i]) + "\n";
  }
  return out;
}

std::string tv_csv(const MixingReport& r) {
  std::string out = "t,tv\n";
  for (std::size_t t = 0; t < r.tv.size(); ++t) {
    out += std::to_string(t) + "," + format_double(r.tv[t]) + "\n";
  }
  return out;
}

std::string faces_csv(const CertificateReport& r) {
  std::string out = "face,codim,lambda2,rho,passed,certified,sound\n";
  for (const auto& f : r.faces) {
    out += "\"" + f.key + "\"," + std::to_string(f.codim) + "," + format_double(f.lambda2) + "," +
           format_double(f.rho) + "," + (f.passed ? "1" : "0") + "," + (f.certified ? "1" : "0") +
           "," + (f.sound ? "1" : "0") + "\n";
  }
  return out;
}

namespace {

const char* kNumber = R"(["number", "string"])";

std::string schema_text(DocumentKind kind) {
  const std::string num = kNumber;
  const std::string bound_check =
      R"({"type": "object", "required": ["key", "ok", "worst"],
          "properties": {"key": {"type": "string"}, "ok": {"type": "boolean"},
                         "worst": {"type": )" + num + "}}}";
  switch (kind) {
    case DocumentKind::kSample:
      return R"({"type": "object",
        "required": ["command", "kind", "elements", "proper", "chains"],
        "properties": {
          "command": {"enum": ["sample"]},
          "kind": {"enum": ["vertex", "edge"]},
          "elements": {"type": "array"},
          "proper": {"type": "boolean"},
          "chains": {"type": "array", "items": {"type": "object",
            "required": ["seed", "steps", "changes", "frozen", "initial", "coloring"],
            "properties": {
              "seed": {"type": "integer", "minimum": 0},
              "steps": {"type": "integer", "minimum": 0},
              "changes": {"type": "integer", "minimum": 0},
              "frozen": {"type": "integer", "minimum": 0},
              "initial": {"type": "array", "items": {"type": "integer", "minimum": 1}},
              "coloring": {"type": "array", "items": {"type": "integer", "minimum": 1}}}}}}})";
    case DocumentKind::kSpectrum:
      return R"({"type": "object",
        "required": ["command", "facets", "profile", "down_up", "local_bound",
                     "local_bound_corrected"],
        "properties": {
          "command": {"enum": ["spectrum"]},
          "facets": {"type": "integer", "minimum": 0},
          "profile": {"type": "object", "required": ["dimension", "levels", "faces"],
            "properties": {
              "dimension": {"type": "integer"},
              "levels": {"type": "array", "items": {"type": "object",
                "required": ["level", "gamma"],
                "properties": {"level": {"type": "integer"}, "gamma": {"type": )" + num + R"(}}}},
              "faces": {"type": "object", "additionalProperties": {"type": )" + num + R"(}}}},
          "down_up": {"type": "object", "required": ["lambda2", "gap", "ergodic", "reducible"],
            "properties": {"lambda2": {"type": )" + num + R"(}, "gap": {"type": )" + num + R"(},
                           "ergodic": {"type": "boolean"}, "reducible": {"type": "boolean"}}},
          "local_bound": {"type": )" + num + R"(},
          "local_bound_corrected": {"type": )" + num + R"(}}})";
    case DocumentKind::kMix:
      return R"({"type": "object",
        "required": ["command", "facets", "dimension", "lambda2", "gap", "ergodic", "gamma",
                     "local_bound", "local_bound_corrected", "stationary_deviation",
                     "worst_start", "tv", "t_mix", "t_mix_unbounded"],
        "properties": {
          "command": {"enum": ["mix"]},
          "facets": {"type": "integer", "minimum": 0},
          "dimension": {"type": "integer"},
          "lambda2": {"type": )" + num + R"(}, "gap": {"type": )" + num + R"(},
          "ergodic": {"type": "boolean"},
          "gamma": {"type": "array", "items": {"type": )" + num + R"(}},
          "local_bound": {"type": )" + num + R"(},
          "local_bound_corrected": {"type": )" + num + R"(},
          "stationary_deviation": {"type": "number", "minimum": 0},
          "worst_start": {"type": "string"},
          "tv": {"type": "array", "items": {"type": "number", "minimum": 0}},
          "t_mix": {"type": ["integer", "null"]},
          "t_mix_unbounded": {"type": "boolean"}}})";
    case DocumentKind::kCertify:
      return R"({"type": "object",
        "required": ["command", "kind", "regime", "params", "status", "report", "conditions",
                     "a_bounds", "ingredients", "sandwich", "entry_bounds", "gamma",
                     "intermediates", "pairing", "pairing_violations", "sound"],
        "properties": {
          "command": {"enum": ["certify"]},
          "kind": {"enum": ["vertex", "edge"]},
          "regime": {"enum": ["vertex_2delta", "vertex_tree", "edge"]},
          "params": {"type": "object", "required": ["epsilon", "beta", "Delta"],
            "properties": {"epsilon": {"type": "number"}, "beta": {"type": "number"},
                           "Delta": {"type": "integer", "minimum": 1},
                           "root": {"type": "integer", "minimum": 0}}},
          "status": {"type": "object",
            "required": ["beta_extra", "asymptotic_precondition", "precondition"],
            "properties": {"beta_extra": {"type": "boolean"},
                           "asymptotic_precondition": {"type": "boolean"},
                           "precondition": {"type": "string"}}},
          "report": {"type": "object",
            "required": ["variant", "dimension", "faces", "mu", "gamma", "down_up_bound",
                         "overall_pass", "soundness_violations"],
            "properties": {
              "variant": {"enum": ["full", "inductive"]},
              "dimension": {"type": "integer"},
              "faces": {"type": "array", "items": {"type": "object",
                "required": ["key", "codim", "lambda2", "rho", "base_ok", "threshold_ok",
                             "recursive_ok", "product_ok", "passed", "certified", "sound"],
                "properties": {
                  "key": {"type": "string"}, "codim": {"type": "integer", "minimum": 2},
                  "lambda2": {"type": )" + num + R"(}, "rho": {"type": )" + num + R"(},
                  "base_ok": {"type": ["boolean", "null"]},
                  "threshold_ok": {"type": ["boolean", "null"]},
                  "recursive_ok": {"type": ["boolean", "null"]},
                  "product_ok": {"type": ["boolean", "null"]},
                  "passed": {"type": "boolean"}, "certified": {"type": "boolean"},
                  "sound": {"type": "boolean"}}}},
              "mu": {"type": "array", "items": {"type": )" + num + R"(}},
              "gamma": {"type": "array", "items": {"type": )" + num + R"(}},
              "down_up_bound": {"type": )" + num + R"(},
              "overall_pass": {"type": "boolean"},
              "soundness_violations": {"type": "integer", "minimum": 0}}},
          "conditions": {"type": "array", "items": {"type": "object",
            "required": ["key", "codim", "scalar_ok", "threshold_ok", "worst_slack"],
            "properties": {"key": {"type": "string"}, "codim": {"type": "integer", "minimum": 3},
                           "scalar_ok": {"type": "boolean"}, "threshold_ok": {"type": "boolean"},
                           "worst_slack": {"type": )" + num + R"(}}}},
          "a_bounds": {"type": "array", "items": )" + bound_check + R"(},
          "ingredients": {"type": "array", "items": )" + bound_check + R"(},
          "sandwich": {"type": "array", "items": )" + bound_check + R"(},
          "entry_bounds": {"type": "array", "items": )" + bound_check + R"(},
          "gamma": {"type": "object", "additionalProperties": {"type": "object",
            "additionalProperties": {"type": )" + num + R"(}}},
          "intermediates": {"type": "array", "items": {"type": "object",
            "required": ["key", "max_abs_A_bar", "max_abs_S_offdiag", "max_S_diag"]}},
          "pairing": {"type": "array", "items": {"type": "object",
            "required": ["key", "codim", "lambda2", "bound", "conditions_hold", "sound"],
            "properties": {"key": {"type": "string"}, "codim": {"type": "integer", "minimum": 2},
                           "lambda2": {"type": )" + num + R"(}, "bound": {"type": )" + num + R"(},
                           "conditions_hold": {"type": "boolean"}, "sound": {"type": "boolean"}}}},
          "pairing_violations": {"type": "integer", "minimum": 0},
          "sound": {"type": "boolean"},
          "families": {"type": "object"}}})";
  }
  return "{}";
}

bool has_type(const Json& v, const std::string& t) {
  if (t == "object") return v.is_object();
  if (t == "array") return v.is_array();
  if (t == "string") return v.is_string();
  if (t == "boolean") return v.is_boolean();
  if (t == "null") return v.is_null();
  if (t == "integer") return v.is_number_integer();
  if (t == "number") return v.is_number();
  return false;
}

void validate_at(const Json& v, const Json& s, const std::string& path,
                 std::vector<std::string>& errors) {
  if (s.contains("type")) {
    bool ok = false;
    if (s["type"].is_array()) {
      for (const auto& t : s["type"]) ok = ok || has_type(v, t.get<std::string>());
    } else {
      ok = has_type(v, s["type"].get<std::string>());
    }
    if (!ok) {
      errors.push_back(path + ": expected type " + s["type"].dump());
      return;
    }
  }
  if (s.contains("enum") && std::find(s["enum"].begin(), s["enum"].end(), v) == s["enum"].end()) {
    errors.push_back(path + ": value " + v.dump() + " not in " + s["enum"].dump());
  }
  if (s.contains("minimum") && v.is_number() && v.get<double>() < s["minimum"].get<double>()) {
    errors.push_back(path + ": below minimum " + s["minimum"].dump());
  }
  if (v.is_object()) {
    if (s.contains("required")) {
      for (const auto& key : s["required"]) {
        if (!v.contains(key.get<std::string>())) {
          errors.push_back(path + ": missing \"" + key.get<std::string>() + "\"");
        }
      }
    }
    for (const auto& [key, child] : v.items()) {
      if (s.contains("properties") && s["properties"].contains(key)) {
        validate_at(child, s["properties"][key], path + "/" + key, errors);
      } else if (s.contains("additionalProperties") && s["additionalProperties"].is_object()) {
        validate_at(child, s["additionalProperties"], path + "/" + key, errors);
      }
    }
  }
  if (v.is_array() && s.contains("items")) {
    for (std::size_t i = 0; i < v.size(); ++i) {
      validate_at(v[i], s["items"], path + "/" + std::to_string(i), errors);
    }
  }
}

}  // namespace

const Json& schema(DocumentKind kind) {
  static const Json sample = Json::parse(schema_text(DocumentKind::kSample));
  static const Json spectrum = Json::parse(schema_text(DocumentKind::kSpectrum));
  static const Json certify = Json::parse(schema_text(DocumentKind::kCertify));
  static const Json mix = Json::parse(schema_text(DocumentKind::kMix));
  switch (kind) {
    case DocumentKind::kSample:
      return sample;
    case DocumentKind::kSpectrum:
      return spectrum;
    case DocumentKind::kCertify:
      return certify;
    case DocumentKind::kMix:
      return mix;
  }
  return sample;
}

std::vector<std::string> validate(const Json& doc, const Json& schema) {
  std::vector<std::string> errors;
  validate_at(doc, schema, "", errors);
  return errors;
}

}  // namespace hdxcolor
