/*
 * Copyright 2026 The chainmetric Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "chainmetric/euclid_sampler.hpp"

namespace chainmetric::cli {

enum class WeightKind { std_phi, ray_psi };

// Settings shared by every subcommand. A JSON config file supplies defaults and
// command-line flags override it.
struct RunConfig {
  std::optional<int> dimension;
  WeightKind weight_kind = WeightKind::std_phi;
  double delta = 0.6;
  SamplerConfig sampler;
  std::uint64_t seed = 1;
  std::string output;
};

// Keys: dimension, weight ("std_phi" | "ray_psi"), delta, max_sphere_index,
// angular_resolution, radial_steps, graph_mode ("complete" | "structured" |
// "auto"), neighbours, seed, output. Unknown keys and wrong types throw
// std::invalid_argument.
RunConfig load_config(const std::string& json_text);

constexpr int kExitOk = 0;
constexpr int kExitCertificate = 1;
constexpr int kExitConfig = 2;

// args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace chainmetric::cli
