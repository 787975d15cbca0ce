// Copyright 2026 The GroundNav Authors
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

#ifndef GROUNDNAV_CLI__CLI_HPP_
#define GROUNDNAV_CLI__CLI_HPP_

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "groundnav/metrics.hpp"

namespace groundnav::cli
{

enum ExitCode : int
{
  kOk = 0,
  kConfigError = 2,
  kDataError = 3,
  kTransportError = 4,
  kGroundingFailure = 5,
};

/// Settings shared by every subcommand. Defaults, then the --config file,
/// then explicit flags.
struct Config
{
  metrics::Weights weights;
  std::map<std::string, double> camera;  // fov_x_deg, fov_y_deg, width_px, height_px, mount_height
  int omega = 8;
  std::string grounder = "scripted";  // scripted | perturbed | canned | remote
  std::string endpoint = "http://127.0.0.1:8080";
  std::string transcript;
  double noise_sigma = 0.0;
  std::string out = "out";
  std::uint64_t seed = 0;
  int k_max = 5;
  int workers = 1;
  double inflation = 0.0;

  void validate() const;
};

/// Reads a JSON config document. Unknown keys are a config error.
Config parse_config(const std::string & text, Config base = {});
Config load_config(const std::string & path, Config base = {});

/// Applies camera overrides on top of the scene's camera.
void apply_camera_overrides(world::Scene & scene, const std::map<std::string, double> & overrides);

/// Maps an exception to its exit code.
int exit_code_for(const std::exception & e);

/// Full command-line entry point. `in` feeds the ground REPL.
int run(const std::vector<std::string> & args, std::istream & in, std::ostream & out, std::ostream & err);

}  // namespace groundnav::cli

#endif  // GROUNDNAV_CLI__CLI_HPP_
