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

#include "darkcavity/fockoracle.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "darkcavity/errors.hpp"

namespace darkcavity {

FockBasis::FockBasis(int n_modes, int n_atoms, int n_max)
    : n_modes_(n_modes), n_atoms_(n_atoms), n_max_(n_max) {
    if (n_modes < 1 || n_atoms < 0 || n_max < 1) {
        throw DimensionError("Fock basis needs M >= 1, N >= 0 and n_max >= 1");
    }
    if (n_atoms > 24) {
        throw ResourceError("too many atoms for an explicit product basis");
    }
    mode_block_ = 1;
    for (int k = 0; k < n_modes; ++k) {
        mode_block_ *= n_max + 1;
        if (mode_block_ > (Eigen::Index{1} << 40)) {
            throw ResourceError("Fock basis dimension overflows");
        }
    }
    dimension_ = mode_block_ * (Eigen::Index{1} << n_atoms);
}

Eigen::Index FockBasis::index(const FockState& state) const {
    if (static_cast<int>(state.photons.size()) != n_modes_ ||
        static_cast<int>(state.excited.size()) != n_atoms_) {
        throw DimensionError("occupation vector has the wrong length");
    }
    Eigen::Index idx = 0;
    Eigen::Index stride = 1;
    for (int k = 0; k < n_modes_; ++k) {
        const int n = state.photons[static_cast<std::size_t>(k)];
        if (n < 0 || n > n_max_) {
            throw DimensionError("photon number outside the truncation");
        }
        idx += n * stride;
        stride *= n_max_ + 1;
    }
    Eigen::Index bits = 0;
    for (int l = 0; l < n_atoms_; ++l) {
        const int s = state.excited[static_cast<std::size_t>(l)];
        if (s != 0 && s != 1) {
            throw DimensionError("atomic occupation must be 0 or 1");
        }
        bits |= Eigen::Index{s} << l;
    }
    return idx + mode_block_ * bits;
}

FockState FockBasis::decode(Eigen::Index index) const {
    if (index < 0 || index >= dimension_) {
        throw DimensionError("basis index out of range");
    }
    FockState state;
    for (int k = 0; k < n_modes_; ++k) {
        state.photons.push_back(photons(index, k));
    }
    for (int l = 0; l < n_atoms_; ++l) {
        state.excited.push_back(excited(index, l));
    }
    return state;
}

int FockBasis::photons(Eigen::Index index, int mode) const {
    Eigen::Index rest = index % mode_block_;
    for (int k = 0; k < mode; ++k) {
        rest /= n_max_ + 1;
    }
    return static_cast<int>(rest % (n_max_ + 1));
}

int FockBasis::excited(Eigen::Index index, int atom) const {
    return static_cast<int>(((index / mode_block_) >> atom) & 1);
}

FockBasis make_fock_basis(const SystemParams& params, int n_max, const FockBudget& budget) {
    params.validate();
    FockBasis basis(params.n_modes, params.n_atoms, n_max);
    if (basis.dimension() > budget.max_hamiltonian_dimension) {
        throw ResourceError("Fock dimension " + std::to_string(basis.dimension()) +
                            " exceeds the budget " +
                            std::to_string(budget.max_hamiltonian_dimension));
    }
    return basis;
}

namespace {

Eigen::Index mode_stride(const FockBasis& basis, int mode) {
    Eigen::Index stride = 1;
    for (int k = 0; k < mode; ++k) {
        stride *= basis.n_max() + 1;
    }
    return stride;
}

Eigen::Index atom_stride(const FockBasis& basis, int atom) {
    Eigen::Index block = 1;
    for (int k = 0; k < basis.n_modes(); ++k) {
        block *= basis.n_max() + 1;
    }
    return block << atom;
}

}  // namespace

MatrixXc annihilation_operator(const FockBasis& basis, int mode) {
    const Eigen::Index d = basis.dimension();
    const Eigen::Index stride = mode_stride(basis, mode);
    MatrixXc a = MatrixXc::Zero(d, d);
    for (Eigen::Index i = 0; i < d; ++i) {
        const int n = basis.photons(i, mode);
        if (n > 0) {
            a(i - stride, i) = std::sqrt(static_cast<double>(n));
        }
    }
    return a;
}

MatrixXc lowering_operator(const FockBasis& basis, int atom) {
    const Eigen::Index d = basis.dimension();
    const Eigen::Index stride = atom_stride(basis, atom);
    MatrixXc s = MatrixXc::Zero(d, d);
    for (Eigen::Index i = 0; i < d; ++i) {
        if (basis.excited(i, atom) == 1) {
            s(i - stride, i) = 1.0;
        }
    }
    return s;
}

MatrixXc excitation_number_operator(const FockBasis& basis) {
    const Eigen::Index d = basis.dimension();
    MatrixXc n = MatrixXc::Zero(d, d);
    for (Eigen::Index i = 0; i < d; ++i) {
        int count = 0;
        for (int k = 0; k < basis.n_modes(); ++k) {
            count += basis.photons(i, k);
        }
        for (int l = 0; l < basis.n_atoms(); ++l) {
            count += basis.excited(i, l);
        }
        n(i, i) = count;
    }
    return n;
}

MatrixXc build_full_hamiltonian(const SystemParams& params, int n_max, const FockBudget& budget) {
    const FockBasis basis = make_fock_basis(params, n_max, budget);
    const Eigen::Index d = basis.dimension();
    MatrixXc h = MatrixXc::Zero(d, d);

    for (Eigen::Index i = 0; i < d; ++i) {
        double diagonal = 0.0;
        for (int k = 0; k < params.n_modes; ++k) {
            diagonal -= params.delta_c * basis.photons(i, k);
        }
        for (int l = 0; l < params.n_atoms; ++l) {
            const double sigma_z = basis.excited(i, l) == 1 ? 1.0 : -1.0;
            diagonal -= 0.5 * params.delta_a * sigma_z;
        }
        h(i, i) = diagonal;

        for (int k = 0; k < params.n_modes; ++k) {
            const int n = basis.photons(i, k);
            if (n == n_max) {
                continue;  // a^+ annihilates the top level
            }
            const Eigen::Index raised = i + mode_stride(basis, k);
            const double amp = std::sqrt(static_cast<double>(n + 1));

            // eta a^+ + eta^* a
            h(raised, i) += params.drives(k) * amp;
            h(i, raised) += std::conj(params.drives(k)) * amp;

            // 1/2 (g a^+ sigma^- + g^* a sigma^+)
            for (int l = 0; l < params.n_atoms; ++l) {
                if (basis.excited(i, l) == 0) {
                    continue;
                }
                const Eigen::Index target = raised - atom_stride(basis, l);
                h(target, i) += 0.5 * params.coupling(k, l) * amp;
                h(i, target) += 0.5 * std::conj(params.coupling(k, l)) * amp;
            }
        }
    }
    return h;
}

Liouvillian build_full_liouvillian(const SystemParams& params, int n_max,
                                   const FockBudget& budget) {
    const FockBasis basis = make_fock_basis(params, n_max, budget);
    std::vector<JumpOperator> jumps;
    for (int k = 0; k < params.n_modes; ++k) {
        jumps.push_back({params.kappa, annihilation_operator(basis, k)});
    }
    if (params.gamma > 0.0) {
        for (int l = 0; l < params.n_atoms; ++l) {
            jumps.push_back({params.gamma, lowering_operator(basis, l)});
        }
    }
    return Liouvillian(build_full_hamiltonian(params, n_max, budget), std::move(jumps));
}

MatrixXc single_excitation_block(const SystemParams& params, int n_max) {
    const FockBasis basis = make_fock_basis(params, n_max);
    const MatrixXc full = build_full_hamiltonian(params, n_max);

    const int m = params.n_modes;
    const int n = params.n_atoms;
    std::vector<Eigen::Index> picks;
    FockState state{std::vector<int>(static_cast<std::size_t>(m), 0),
                    std::vector<int>(static_cast<std::size_t>(n), 0)};
    picks.push_back(basis.index(state));
    for (int k = 0; k < m; ++k) {
        FockState c = state;
        c.photons[static_cast<std::size_t>(k)] = 1;
        picks.push_back(basis.index(c));
    }
    for (int l = 0; l < n; ++l) {
        FockState a = state;
        a.excited[static_cast<std::size_t>(l)] = 1;
        picks.push_back(basis.index(a));
    }

    const auto size = static_cast<Eigen::Index>(picks.size());
    MatrixXc block(size, size);
    for (Eigen::Index r = 0; r < size; ++r) {
        for (Eigen::Index c = 0; c < size; ++c) {
            block(r, c) = full(picks[static_cast<std::size_t>(r)], picks[static_cast<std::size_t>(c)]);
        }
    }
    // The vacuum carries +N Delta_A / 2 in the full model and 0 in the weak one.
    const Complex offset = block(0, 0);
    block -= offset * MatrixXc::Identity(size, size);
    return block;
}

FockStationaryState solve_full_stationary(const SystemParams& params, int n_max,
                                          const FockOptions& options) {
    const FockBasis basis = make_fock_basis(params, n_max, options.budget);
    if (basis.dimension() > options.budget.max_solve_dimension) {
        throw ResourceError("Fock dimension " + std::to_string(basis.dimension()) +
                            " exceeds the stationary-solve budget " +
                            std::to_string(options.budget.max_solve_dimension));
    }
    const Liouvillian liouvillian = build_full_liouvillian(params, n_max, options.budget);
    SolveOptions solve = options.solve;
    solve.reference_state = 0;
    solve.max_dimension = std::min(solve.max_dimension, options.budget.max_solve_dimension);
    StationarySolution solved = solve_stationary_density(liouvillian, solve);

    FockStationaryState out;
    out.rho = std::move(solved.rho);
    out.residual = solved.residual;
    out.mode_populations.assign(static_cast<std::size_t>(params.n_modes), 0.0);
    out.top_level_population.assign(static_cast<std::size_t>(params.n_modes), 0.0);
    out.atom_excitations.assign(static_cast<std::size_t>(params.n_atoms), 0.0);
    for (Eigen::Index i = 0; i < basis.dimension(); ++i) {
        const double p = out.rho.data(i, i).real();
        for (int k = 0; k < params.n_modes; ++k) {
            const int n = basis.photons(i, k);
            out.mode_populations[static_cast<std::size_t>(k)] += n * p;
            if (n == n_max) {
                out.top_level_population[static_cast<std::size_t>(k)] += p;
            }
        }
        for (int l = 0; l < params.n_atoms; ++l) {
            out.atom_excitations[static_cast<std::size_t>(l)] += basis.excited(i, l) * p;
        }
    }
    for (int k = 0; k < params.n_modes; ++k) {
        const auto kk = static_cast<std::size_t>(k);
        out.total_cavity_population += out.mode_populations[kk];
        if (out.top_level_population[kk] > options.truncation_threshold * out.mode_populations[kk] &&
            out.top_level_population[kk] > 0.0) {
            out.truncation_warning = true;
        }
    }
    return out;
}

GroundStateResult ground_state_population(const SystemParams& params, int n_max,
                                          const FockOptions& options) {
    params.validate();
    if (params.n_modes != 1) {
        throw ValidationError("ground-state population is defined for a single mode");
    }
    const Complex g0 = params.coupling(0, 0);
    if (!(g0.real() > 0.0) || g0.imag() != 0.0) {
        throw ValidationError("ground-state population needs a real positive coupling");
    }
    for (int l = 0; l < params.n_atoms; ++l) {
        if (std::abs(params.coupling(0, l) - g0) > 1e-12 * std::abs(g0)) {
            throw ValidationError("ground-state population needs uniform coupling");
        }
    }
    const double g = g0.real();
    const double eta = std::abs(params.drives(0));

    GroundStateResult out;
    out.threshold_ratio = 4.0 * eta / (params.n_atoms * g);
    if (!(out.threshold_ratio < 1.0)) {
        throw ThresholdError("drive at or above threshold: 4 eta/(N g) = " +
                             std::to_string(out.threshold_ratio));
    }

    const FockBasis basis = make_fock_basis(params, n_max, options.budget);
    const MatrixXc h = build_full_hamiltonian(params, n_max, options.budget);
    Eigen::SelfAdjointEigenSolver<MatrixXc> eig(h);
    if (eig.info() != Eigen::Success) {
        throw NumericalError("Hamiltonian diagonalization failed", 0.0);
    }
    const Eigen::VectorXd& energies = eig.eigenvalues();
    const MatrixXc& vectors = eig.eigenvectors();

    Eigen::Index best = 0;
    for (Eigen::Index j = 1; j < energies.size(); ++j) {
        if (std::norm(vectors(0, j)) > std::norm(vectors(0, best))) {
            best = j;
        }
    }
    out.energy = energies(best);
    const double scale = std::max(1.0, energies.cwiseAbs().maxCoeff());
    const double tol = 1e-9 * scale;

    VectorXc psi = VectorXc::Zero(basis.dimension());
    for (Eigen::Index j = 0; j < energies.size(); ++j) {
        if (std::abs(energies(j) - out.energy) <= tol) {
            psi += std::conj(vectors(0, j)) * vectors.col(j);
            ++out.cluster_size;
        }
    }
    psi.normalize();
    out.vacuum_overlap = std::norm(psi(0));

    double excitations = 0.0;
    for (Eigen::Index i = 0; i < basis.dimension(); ++i) {
        const double p = std::norm(psi(i));
        const int n = basis.photons(i, 0);
        out.photon_number += n * p;
        if (n == n_max) {
            out.top_level_population += p;
        }
        for (int l = 0; l < params.n_atoms; ++l) {
            excitations += basis.excited(i, l) * p;
        }
    }
    out.excitation_per_atom = excitations / params.n_atoms;
    out.truncation_warning = out.top_level_population > 0.0 &&
                             out.top_level_population >
                                 options.truncation_threshold * out.photon_number;
    return out;
}

}  // namespace darkcavity
