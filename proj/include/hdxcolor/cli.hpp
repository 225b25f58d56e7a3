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

#ifndef HDXCOLOR_CLI_HPP_
#define HDXCOLOR_CLI_HPP_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace hdxcolor {

// Exit codes shared by every command.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 1;
inline constexpr int kExitInit = 2;
inline constexpr int kExitResource = 3;
inline constexpr int kExitUnsound = 4;

struct RunConfig {
  std::string command;
  std::string graph;
  std::string lists;
  std::string kind = "vertex";
  std::string regime;
  double epsilon = 1.0;
  std::optional<double> beta;
  std::optional<int> Delta;
  int root = 0;
  std::uint64_t seed = 0;
  long long steps = 1000;
  int chains = 1;
  int horizon = 50;
  long long facet_limit = 200000;
  std::string output = "-";
  std::string format = "json";
  bool emit_families = false;
};

int cmd_sample(const RunConfig& config, std::ostream& err);
int cmd_spectrum(const RunConfig& config, std::ostream& err);
int cmd_certify(const RunConfig& config, std::ostream& err);
int cmd_mix(const RunConfig& config, std::ostream& err);

// Dispatches on config.command and maps library errors to exit codes.
int run_command(const RunConfig& config, std::ostream& err);

// Parses argv and runs the selected command.
int run_cli(int argc, char** argv);

}  // namespace hdxcolor

#endif  // HDXCOLOR_CLI_HPP_
