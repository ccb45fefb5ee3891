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

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "darkcavity/analytic.hpp"
#include "darkcavity/config.hpp"
#include "darkcavity/weaksolver.hpp"

namespace darkcavity {

/// Sweep rows as CSV: '#' comment lines (tool, config hash, resolved config),
/// a header row, then one row per grid point in grid order.
void write_sweep_csv(std::ostream& out, const SweepResult& result,
                     const ExperimentConfig& config);

/// Requires a sweep block.
SweepResult run_sweep(const ExperimentConfig& config, int threads = 1);

struct DarkStateCheck {
    double delta_c = 0.0;
    double hamiltonian_norm = 0.0;
    double residual = 0.0;           // ||H psi_D|| at Delta_A = 0
    double relative_residual = 0.0;  // residual / ||H||
    double fidelity = 0.0;           // <psi_D|rho_stat|psi_D>
    double cavity_population = 0.0;
    double norm = 1.0;
    ObservabilityReport observability;
};

/// Dark state of the configured system evaluated at Delta_A = 0 (Delta_C as
/// configured). NoDarkStateError propagates unchanged.
DarkStateCheck run_darkstate_check(const ExperimentConfig& config);

void write_darkstate_text(std::ostream& out, const DarkStateCheck& check);
std::string darkstate_json(const DarkStateCheck& check);

ObservabilityReport run_observability(const ExperimentConfig& config);
void write_observability_text(std::ostream& out, const ObservabilityReport& report);
std::string observability_json(const ObservabilityReport& report);

struct OracleRow {
    double eta = 0.0;
    double pop_weak = 0.0;
    double pop_fock = 0.0;
    double relative_gap = 0.0;  // |fock - weak| / weak, 0 when both vanish
    bool truncation_warning = false;
};

struct OracleTable {
    std::vector<OracleRow> rows;
    /// Slope of log(gap) against log(eta); empty with fewer than two nonzero gaps.
    std::optional<double> fitted_order;
    /// fitted order within 0.5 of 2 (or no fit possible).
    bool order_ok = true;
};

/// Compares weak and truncated-Fock cavity populations along the drive ladder.
/// The drive vector is rescaled so that its largest entry equals each ladder
/// value (mode 1 is driven when the configured drives vanish). Budgets are
/// checked before the first solve.
OracleTable run_oracle_compare(const ExperimentConfig& config);
void write_oracle_csv(std::ostream& out, const OracleTable& table, const ExperimentConfig& config);

void write_decomposition_text(std::ostream& out, const CollectiveDecomposition& decomposition);
std::string decomposition_json(const CollectiveDecomposition& decomposition);

/// Least-squares slope of log(y) against log(x) over points with x, y > 0.
std::optional<double> fit_power_law_order(const std::vector<double>& x,
                                          const std::vector<double>& y);

}  // namespace darkcavity
