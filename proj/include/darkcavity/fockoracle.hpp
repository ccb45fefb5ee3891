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

#include <vector>

#include "darkcavity/lindblad.hpp"
#include "darkcavity/model.hpp"

namespace darkcavity {

struct FockState {
    std::vector<int> photons;  // per mode, 0..n_max
    std::vector<int> excited;  // per atom, 0 (ground) or 1
};

/// Product basis of M truncated oscillators and N two-level atoms.
///
/// index = sum_k n_k (n_max+1)^k + (n_max+1)^M sum_l s_l 2^l, so index 0 is
/// the vacuum with every atom in its ground state.
class FockBasis {
public:
    FockBasis(int n_modes, int n_atoms, int n_max);

    int n_modes() const { return n_modes_; }
    int n_atoms() const { return n_atoms_; }
    int n_max() const { return n_max_; }
    Eigen::Index dimension() const { return dimension_; }

    Eigen::Index index(const FockState& state) const;
    FockState decode(Eigen::Index index) const;

    /// Photon number of mode k in basis state `index`.
    int photons(Eigen::Index index, int mode) const;
    /// 1 when atom l is excited in basis state `index`.
    int excited(Eigen::Index index, int atom) const;

private:
    int n_modes_;
    int n_atoms_;
    int n_max_;
    Eigen::Index mode_block_;  // (n_max+1)^M
    Eigen::Index dimension_;
};

struct FockBudget {
    Eigen::Index max_hamiltonian_dimension = 4096;
    Eigen::Index max_solve_dimension = 64;
};

/// Throws ResourceError when (n_max+1)^M 2^N exceeds the budget.
FockBasis make_fock_basis(const SystemParams& params, int n_max, const FockBudget& budget = {});

MatrixXc annihilation_operator(const FockBasis& basis, int mode);
MatrixXc lowering_operator(const FockBasis& basis, int atom);
/// sum_k a_k^+ a_k + sum_l (sigma_l^z + 1)/2, diagonal.
MatrixXc excitation_number_operator(const FockBasis& basis);

/// -Delta_C sum a^+a - Delta_A/2 sum sigma^z + 1/2 sum (g a^+ sigma^- + h.c.)
/// + sum (eta a^+ + eta^* a); a^+ annihilates the top Fock level.
MatrixXc build_full_hamiltonian(const SystemParams& params, int n_max,
                                const FockBudget& budget = {});

/// Cavity jumps a_k at kappa, atomic jumps sigma_l^- at gamma.
Liouvillian build_full_liouvillian(const SystemParams& params, int n_max,
                                   const FockBudget& budget = {});

/// The (1 + M + N) single-excitation block of the full Hamiltonian in weak
/// basis order, shifted so that the |0> entry is zero.
MatrixXc single_excitation_block(const SystemParams& params, int n_max);

struct FockOptions {
    FockBudget budget;
    SolveOptions solve;
    /// Warn when a mode's top-level population exceeds this fraction of <a^+a>.
    double truncation_threshold = 1e-6;
};

struct FockStationaryState {
    DensityMatrix rho;
    double residual = 0.0;
    std::vector<double> mode_populations;  // <a_k^+ a_k>
    double total_cavity_population = 0.0;
    std::vector<double> atom_excitations;
    std::vector<double> top_level_population;
    bool truncation_warning = false;
};

FockStationaryState solve_full_stationary(const SystemParams& params, int n_max,
                                          const FockOptions& options = {});

struct GroundStateResult {
    double energy = 0.0;
    double photon_number = 0.0;          // <a^+ a>
    double excitation_per_atom = 0.0;    // <sum_l (sigma^z_l + 1)/2> / N
    double vacuum_overlap = 0.0;         // |<0, g..g|psi>|^2
    double top_level_population = 0.0;
    bool truncation_warning = false;
    Eigen::Index cluster_size = 0;       // degeneracy of the selected eigenvalue
    double threshold_ratio = 0.0;        // 4 eta / (N g)
};

/// Eigenstate of the isolated (lossless) single-mode system that continues
/// the undriven ground state |0, g..g>: the eigenvalue whose eigenvector has
/// the largest vacuum overlap is selected and the vacuum is projected onto
/// its (possibly degenerate) eigenspace.
///
/// Requires M = 1, uniform real coupling g > 0 and 4|eta|/(N g) < 1.
GroundStateResult ground_state_population(const SystemParams& params, int n_max,
                                          const FockOptions& options = {});

}  // namespace darkcavity
