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
#include <string>
#include <vector>

#include "darkcavity/model.hpp"

namespace darkcavity {

// Closed-form single-mode results at atom-cavity resonance (Delta_A = Delta_C = Delta).

/// Sum of the two vacuum-Rabi Lorentzians at Delta = -/+ lambda/2.
double two_lorentzian_population(double delta, double lambda, double eta, double gamma,
                                 double kappa = 1.0);

/// Exact weak-excitation cavity population without spontaneous emission.
double population_gamma_zero(double delta, double lambda, double eta, double kappa = 1.0);

/// Exact weak-excitation cavity population at Delta = 0.
double population_delta_zero(double gamma, double lambda, double eta, double kappa = 1.0);

/// Approximate full width of the zero-detuning anti-resonance.
double anti_resonance_width(double lambda, double eta, double kappa = 1.0);

/// Population of the driven collective system below threshold 4 eta/(N g) < 1,
/// -1/4 log(1 - (4 eta/(N g))^2). Throws ThresholdError at or above threshold.
double driven_collective_population(double eta, double g, int n_atoms);

/// Small-drive form (2 eta/(N g))^2.
double driven_collective_weak_drive(double eta, double g, int n_atoms);

/// |Psi_D> = (|0> - sum_j 2 eta~_j/lambda_j |A~_j>) / norm.
struct DarkState {
    Complex ground_amplitude;
    VectorXc atomic_amplitudes;  // on the collective atomic states, length N
    double norm = 1.0;           // norm^2 = 1 + 4 sum_j |eta~_j|^2 / lambda_j^2
    VectorXc collective_state;   // normalized, weak basis ordering, collective states

    /// The same state in the original |0>, |C_k>, |A_l> basis.
    VectorXc original_state(const CollectiveDecomposition& decomposition) const;
};

/// Throws NoDarkStateError when a driven collective cavity mode has no
/// retained singular value (|eta~_j| > drive_tolerance * max|eta~| for j >= rank).
DarkState dark_state(const CollectiveDecomposition& decomposition, double drive_tolerance = 1e-12);

/// ||H psi|| with the weak Hamiltonian of params.
double hamiltonian_residual(const SystemParams& params, const VectorXc& psi);

struct ModeObservability {
    double lambda = 0.0;
    double drive = 0.0;          // |eta~_j|
    double splitting_ratio = 0.0;  // lambda^2 / (kappa^2 + 16 eta^2); condition 1 needs <= 1
    bool distinguishable = false;
    double suppression_ratio = 0.0;  // lambda^2 / ((2 gamma/kappa)(8 eta^2 + kappa^2))
    bool suppressed = false;         // suppression_ratio >= strong_factor
    bool in_window = false;          // sqrt(2 gamma kappa) < lambda <= kappa
    bool order_kappa = false;        // kappa/3 <= lambda <= 3 kappa
    double width = 0.0;
};

struct ObservabilityOptions {
    /// Collective splitting the experiment aims for.
    double target_lambda = 1.0;
    /// Single-atom coupling used for the atom-number estimate; taken as the
    /// RMS coupling entry when unset.
    std::optional<double> single_atom_g;
    /// Factor that operationalizes "much greater than" in the suppression condition.
    double strong_factor = 10.0;
    /// Largest |eta|/kappa accepted as weak driving.
    double weak_drive_limit = 0.1;
};

struct ObservabilityReport {
    std::vector<ModeObservability> modes;
    double window_lower = 0.0;  // sqrt(2 gamma kappa)
    double window_upper = 0.0;  // kappa
    bool window_empty = false;
    bool any_mode_order_kappa = false;
    bool weak_drive = false;
    double max_drive = 0.0;
    double single_atom_g = 0.0;
    double target_lambda = 0.0;
    double atoms_required = 0.0;  // (target_lambda / g)^2, infinity when g = 0
    bool observable = false;
    std::string verdict;  // "observable" or "not observable"
};

ObservabilityReport observability_report(const SystemParams& params,
                                         const CollectiveDecomposition& decomposition,
                                         const ObservabilityOptions& options = {});

/// Atom number giving collective splitting target_lambda with single-atom coupling g.
double atoms_required(double target_lambda, double g);

struct DipWidth {
    double width = 0.0;
    double left = 0.0;
    double right = 0.0;
    double half_level = 0.0;
};

/// Full width of the dip around the grid minimum nearest Delta = 0, measured
/// between the points where the population climbs to half of the adjacent
/// shoulder maximum (linear interpolation). Empty if either shoulder is missing.
std::optional<DipWidth> measure_dip_width(const std::vector<double>& deltas,
                                          const std::vector<double>& populations);

}  // namespace darkcavity
