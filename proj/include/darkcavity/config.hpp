// Copyright 2026 The darkcavity Authors
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

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "darkcavity/model.hpp"

namespace darkcavity {

struct CouplingSpec {
    enum class Kind { Uniform, Localized, Explicit };

    Kind kind = Kind::Uniform;
    double g = 0.0;
    double perturbation = 0.0;
    std::uint64_t seed = 0;
    MatrixXc matrix;  // Explicit only
};

struct SweepConfig {
    double delta_min = -6.0;
    double delta_max = 6.0;
    int count = 401;
    std::optional<double> pinned_delta_c;
};

struct OracleConfig {
    int n_max = 3;
    std::vector<double> drive_ladder{1e-2, 1e-3, 1e-4};
};

struct ObservabilityConfig {
    double target_lambda = 1.0;
    std::optional<double> single_atom_g;
    double strong_factor = 10.0;
};

struct OutputConfig {
    std::string path;  // empty: standard output
    int precision = 17;
};

/// One experiment, read from a JSON file with the blocks
/// system / sweep / oracle / observability / output.
/// Unknown keys anywhere are rejected. kappa is the unit and is not configurable.
struct ExperimentConfig {
    int n_modes = 1;
    int n_atoms = 1;
    double gamma = 0.0;
    double delta_c = 0.0;
    double delta_a = 0.0;
    VectorXc drives;
    CouplingSpec coupling;
    double rank_tolerance = kDefaultRankTolerance;

    std::optional<SweepConfig> sweep;
    std::optional<OracleConfig> oracle;
    ObservabilityConfig observability;
    OutputConfig output;
};

/// Throws ValidationError (with the offending key) on malformed input.
ExperimentConfig parse_config(const std::string& text);
ExperimentConfig load_config(const std::string& path);

/// Canonical compact JSON with every default filled in. Re-parses to an
/// equivalent config.
std::string resolved_config(const ExperimentConfig& config);

/// 64-bit FNV-1a of resolved_config, as 16 hex digits.
std::string config_hash(const ExperimentConfig& config);

SystemParams build_params(const ExperimentConfig& config);

/// count evenly spaced points from delta_min to delta_max inclusive.
std::vector<double> detuning_grid(const SweepConfig& sweep);

}  // namespace darkcavity
