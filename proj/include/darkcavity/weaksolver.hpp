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

#include "darkcavity/lindblad.hpp"
#include "darkcavity/model.hpp"

namespace darkcavity {

/// Single-excitation basis {|0>, |C_1..C_M>, |A_1..A_N>}.
struct WeakBasis {
    int n_modes = 1;
    int n_atoms = 1;

    static WeakBasis for_params(const SystemParams& params) {
        return {params.n_modes, params.n_atoms};
    }
    Eigen::Index dimension() const { return 1 + n_modes + n_atoms; }
    static constexpr Eigen::Index ground() { return 0; }
    Eigen::Index cavity(int k) const { return 1 + k; }
    Eigen::Index atom(int l) const { return 1 + n_modes + l; }
};

/// Weak-excitation Hamiltonian in the rotating frame (offset removed):
/// -Delta_C on cavity states, -Delta_A on atomic states, g_kl/2 between
/// |C_k> and |A_l>, eta_k from |0> to |C_k>.
MatrixXc build_hamiltonian(const SystemParams& params);

/// Cavity jumps |0><C_k| at kappa and atomic jumps |0><A_l| at gamma.
std::vector<JumpOperator> build_jump_operators(const SystemParams& params);

Liouvillian build_liouvillian(const SystemParams& params);

/// Unitary whose columns are |0>, the collective cavity states U e_j and the
/// collective atomic states W e_j, written in the original weak basis.
MatrixXc collective_transform(const CollectiveDecomposition& decomposition);

/// Same model assembled directly in the collective basis from the singular
/// values and rotated drives: uncoupled block h_0, paired blocks h_j and the
/// collective drive.
MatrixXc build_collective_hamiltonian(const SystemParams& params,
                                      const CollectiveDecomposition& decomposition);
Liouvillian build_collective_liouvillian(const SystemParams& params,
                                         const CollectiveDecomposition& decomposition);

struct StationaryState {
    DensityMatrix rho;
    double residual = 0.0;
    double asymmetry = 0.0;
    double rcond = 0.0;
    std::vector<double> mode_populations;  // <|C_m><C_m|>
    double total_cavity_population = 0.0;
    std::vector<double> atom_excitations;  // <|A_l><A_l|>
    double ground_weight = 0.0;
};

/// Populations read off a weak-basis density matrix.
void fill_observables(StationaryState& state, const WeakBasis& basis);

/// Stationary state of the weak model, reached from |0>.
StationaryState solve_stationary(const Liouvillian& liouvillian, const WeakBasis& basis,
                                 const SolveOptions& options = {});

/// build_liouvillian + solve_stationary.
StationaryState solve_stationary(const SystemParams& params, const SolveOptions& options = {});

struct SweepRow {
    double delta = 0.0;
    bool ok = false;
    std::string status;  // "ok" or the error message
    std::vector<double> mode_populations;
    double total_cavity_population = 0.0;
    double ground_weight = 0.0;
    std::vector<double> atom_excitations;
    double residual = 0.0;
};

struct SweepResult {
    int n_modes = 0;
    int n_atoms = 0;
    std::vector<SweepRow> rows;

    std::vector<double> deltas() const;
    std::vector<double> total_populations() const;
};

struct SweepOptions {
    /// Keep Delta_C fixed while Delta_A follows the grid.
    std::optional<double> pinned_delta_c;
    int threads = 1;
    SolveOptions solve;
};

/// Solves each grid point with Delta_A = Delta (and Delta_C = Delta unless
/// pinned). Failed points are recorded with ok = false and the sweep continues.
SweepResult sweep_detuning(const SystemParams& params, const std::vector<double>& delta_values,
                           const SweepOptions& options = {});

}  // namespace darkcavity
