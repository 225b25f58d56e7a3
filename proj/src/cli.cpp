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

#include "hdxcolor/cli.hpp"

#include <fstream>
#include <iostream>
#include <numeric>

#include <CLI11.hpp>

#include "hdxcolor/certificates.hpp"
#include "hdxcolor/complex.hpp"
#include "hdxcolor/errors.hpp"
#include "hdxcolor/io.hpp"
#include "hdxcolor/sampler.hpp"

namespace hdxcolor {
namespace {

void require(bool ok, const std::string& message) {
  if (!ok) throw InvalidInput(message);
}

void validate_config(const RunConfig& c) {
  require(!c.graph.empty(), "--graph is required");
  require(!c.lists.empty(), "--lists is required");
  require(c.format == "json" || c.format == "csv", "--format must be json or csv");
  require(c.facet_limit > 0, "--facet-limit must be positive");
  if (c.command == "sample") {
    require(c.steps >= 0, "--steps must be non-negative");
    require(c.chains >= 1, "--chains must be at least 1");
  }
  if (c.command == "certify") require(!c.regime.empty(), "--regime is required");
  if (c.command == "mix") require(c.horizon >= 0, "--horizon must be non-negative");
}

ListColoringInstance instance_of(const RunConfig& c) {
  return load_instance(c.graph, c.lists, parse_element_kind(c.kind));
}

void write(const RunConfig& c, const std::string& text) {
  if (c.output == "-") {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream out(c.output);
  if (!out) throw InvalidInput("cannot write '" + c.output + "'");
  out << text;
}

void write_json(const RunConfig& c, const Json& doc) { write(c, doc.dump(2) + "\n"); }

}  // namespace

int cmd_sample(const RunConfig& c, std::ostream& err) {
  validate_config(c);
  const ListColoringInstance inst = instance_of(c);
  std::vector<std::uint64_t> seeds(c.chains);
  std::iota(seeds.begin(), seeds.end(), c.seed);
  const auto results = run_chains(inst, c.steps, seeds);

  bool proper = true;
  for (const auto& r : results) {
    PartialColoring full;
    for (int x = 0; x < inst.element_count(); ++x) full[x] = r.state.coloring[x];
    proper = proper && is_proper(inst, full);
  }
  if (!proper) err << "sample: final coloring is not proper\n";

  const ChainResult& first = results.front();
  if (c.format == "csv") {
    std::string out = inst.kind() == ElementKind::kVertex ? "vertex,color\n" : "edge,u,v,color\n";
    for (int x = 0; x < inst.element_count(); ++x) {
      out += std::to_string(x) + ",";
      if (inst.kind() == ElementKind::kEdge) {
        const Edge& e = inst.graph().edges()[x];
        out += std::to_string(e.first) + "," + std::to_string(e.second) + ",";
      }
      out += std::to_string(first.state.coloring[x]) + "\n";
    }
    write(c, out);
    return kExitOk;
  }
  Json elements = Json::array();
  for (int x = 0; x < inst.element_count(); ++x) {
    Json row = {{"id", x}, {"color", first.state.coloring[x]}};
    if (inst.kind() == ElementKind::kEdge) {
      row["u"] = inst.graph().edges()[x].first;
      row["v"] = inst.graph().edges()[x].second;
    }
    elements.push_back(row);
  }
  Json chains = Json::array();
  for (const auto& r : results) chains.push_back(to_json(r));
  write_json(c, {{"command", "sample"},
                 {"kind", to_string(inst.kind())},
                 {"elements", elements},
                 {"proper", proper},
                 {"chains", chains}});
  return kExitOk;
}

int cmd_spectrum(const RunConfig& c, std::ostream& err) {
  validate_config(c);
  const ListColoringInstance inst = instance_of(c);
  const SpectrumReport report = exact_spectrum(inst, c.facet_limit);
  if (!report.ergodic) err << "spectrum: down-up walk is reducible\n";
  if (c.format == "csv") {
    write(c, gamma_csv(report.profile));
    return kExitOk;
  }
  Json doc = to_json(report);
  doc["command"] = "spectrum";
  write_json(c, doc);
  return kExitOk;
}

int cmd_certify(const RunConfig& c, std::ostream& err) {
  validate_config(c);
  const ListColoringInstance inst = instance_of(c);
  CertificateParams params;
  params.regime = parse_regime(c.regime);
  params.epsilon = c.epsilon;
  params.beta = c.beta;
  params.Delta = c.Delta;
  params.root = c.root;
  const WeightedComplex X = build_complex(inst, c.facet_limit);
  const RegimeRun run = run_regime(inst, X, params);
  if (!run.status.asymptotic_precondition) {
    err << "certify: regime precondition not met (" << run.status.description
        << "); conditions are checked numerically anyway\n";
  }
  if (c.format == "csv") {
    write(c, faces_csv(run.report));
  } else {
    write_json(c, certify_document(inst, X, run, c.emit_families));
  }
  if (!run.sound()) {
    err << "certify: soundness violated (" << run.pairing_violations << " pairing, "
        << run.report.soundness_violations << " certificate)\n";
    return kExitUnsound;
  }
  return kExitOk;
}

int cmd_mix(const RunConfig& c, std::ostream& err) {
  validate_config(c);
  const ListColoringInstance inst = instance_of(c);
  const long long limit = std::min<long long>(c.facet_limit, kDenseFacetLimit);
  const MixingReport report = exact_mixing(inst, limit, c.horizon);
  if (report.t_mix_unbounded) err << "mix: down-up walk is reducible; t_mix unbounded\n";
  if (c.format == "csv") {
    write(c, tv_csv(report));
    return kExitOk;
  }
  Json doc = to_json(report);
  doc["command"] = "mix";
  write_json(c, doc);
  return kExitOk;
}

int run_command(const RunConfig& config, std::ostream& err) {
  try {
    if (config.command == "sample") return cmd_sample(config, err);
    if (config.command == "spectrum") return cmd_spectrum(config, err);
    if (config.command == "certify") return cmd_certify(config, err);
    if (config.command == "mix") return cmd_mix(config, err);
    err << "unknown command '" << config.command << "'\n";
    return kExitInput;
  } catch (const InitializationFailure& e) {
    err << "error: " << e.what() << "\n";
    return kExitInit;
  } catch (const ResourceLimit& e) {
    err << "error: " << e.what() << "\n";
    return kExitResource;
  } catch (const std::bad_alloc&) {
    err << "error: out of memory\n";
    return kExitResource;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  }
}

int run_cli(int argc, char** argv) {
  CLI::App app{"Glauber sampling and trickle-down certificates for list colorings"};
  app.require_subcommand(1);
  RunConfig config;

  auto common = [&config](CLI::App* sub) {
    sub->add_option("--graph", config.graph, "graph file: 'n m' then m lines 'u v'")->required();
    sub->add_option("--lists", config.lists, "lists JSON file or all:q")->required();
    sub->add_option("--kind", config.kind, "vertex or edge")
        ->check(CLI::IsMember({"vertex", "edge"}));
    sub->add_option("--facet-limit", config.facet_limit, "maximum number of proper colorings");
    sub->add_option("--output", config.output, "output path, - for stdout");
    sub->add_option("--format", config.format, "json or csv")
        ->check(CLI::IsMember({"json", "csv"}));
  };

  auto* sample = app.add_subcommand("sample", "run Glauber dynamics");
  common(sample);
  sample->add_option("--steps", config.steps, "steps per chain");
  sample->add_option("--seed", config.seed, "seed of the first chain");
  sample->add_option("--chains", config.chains, "independent chains with seeds seed, seed+1, ...");

  auto* spectrum = app.add_subcommand("spectrum", "local spectral profile and down-up gap");
  common(spectrum);

  auto* certify = app.add_subcommand("certify", "build and verify a matrix certificate");
  common(certify);
  certify->add_option("--regime", config.regime, "vertex_2delta, vertex_tree or edge")
      ->required()
      ->check(CLI::IsMember({"vertex_2delta", "vertex_tree", "edge"}));
  certify->add_option("--epsilon", config.epsilon, "slack parameter");
  certify->add_option("--beta", config.beta, "list excess, regime default when omitted");
  certify->add_option("--Delta", config.Delta, "degree bound, max degree when omitted");
  certify->add_option("--root", config.root, "tree root for vertex_tree");
  certify->add_flag("--emit-families", config.emit_families, "include F and A matrices");

  auto* mix = app.add_subcommand("mix", "exact total variation curve of the down-up walk");
  common(mix);
  mix->add_option("--horizon", config.horizon, "last time step");
  mix->add_option("--seed", config.seed, "accepted for symmetry; the computation is exact");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }
  config.command = app.get_subcommands().front()->get_name();
  return run_command(config, std::cerr);
}

}  // namespace hdxcolor
