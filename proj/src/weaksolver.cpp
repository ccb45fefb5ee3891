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

#include "darkcavity/weaksolver.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <thread>

#include "darkcavity/errors.hpp"

namespace darkcavity {

MatrixXc build_hamiltonian(const SystemParams& params) {
    params.validate();
    const WeakBasis basis = WeakBasis::for_params(params);
    MatrixXc h = MatrixXc::Zero(basis.dimension(), basis.dimension());
    for (int k = 0; k < params.n_modes; ++k) {
        const auto c = basis.cavity(k);
        h(c, c) = -params.delta_c;
        h(c, WeakBasis::ground()) = params.drives(k);
        h(WeakBasis::ground(), c) = std::conj(params.drives(k));
        for (int l = 0; l < params.n_atoms; ++l) {
            const auto a = basis.atom(l);
            h(c, a) = 0.5 * params.coupling(k, l);
            h(a, c) = 0.5 * std::conj(params.coupling(k, l));
        }
    }
    for (int l = 0; l < params.n_atoms; ++l) {
        const auto a = basis.atom(l);
        h(a, a) = -params.delta_a;
    }
    return h;
}

std::vector<JumpOperator> build_jump_operators(const SystemParams& params) {
    const WeakBasis basis = WeakBasis::for_params(params);
    const auto d = basis.dimension();
    std::vector<JumpOperator> jumps;
    for (int k = 0; k < params.n_modes; ++k) {
        MatrixXc op = MatrixXc::Zero(d, d);
        op(WeakBasis::ground(), basis.cavity(k)) = 1.0;
        jumps.push_back({params.kappa, std::move(op)});
    }
    for (int l = 0; l < params.n_atoms; ++l) {
        MatrixXc op = MatrixXc::Zero(d, d);
        op(WeakBasis::ground(), basis.atom(l)) = 1.0;
        jumps.push_back({params.gamma, std::move(op)});
    }
    return jumps;
}

Liouvillian build_liouvillian(const SystemParams& params) {
    return Liouvillian(build_hamiltonian(params), build_jump_operators(params));
}

MatrixXc collective_transform(const CollectiveDecomposition& decomposition) {
    const int m = decomposition.n_modes();
    const int n = decomposition.n_atoms();
    MatrixXc t = MatrixXc::Zero(1 + m + n, 1 + m + n);
    t(0, 0) = 1.0;
    t.block(1, 1, m, m) = decomposition.u;
    t.block(1 + m, 1 + m, n, n) = decomposition.w;
    return t;
}

MatrixXc build_collective_hamiltonian(const SystemParams& params,
                                      const CollectiveDecomposition& decomposition) {
    params.validate();
    const WeakBasis basis = WeakBasis::for_params(params);
    MatrixXc h = MatrixXc::Zero(basis.dimension(), basis.dimension());
    for (int j = 0; j < params.n_modes; ++j) {
        h(basis.cavity(j), basis.cavity(j)) = -params.delta_c;
    }
    for (int j = 0; j < params.n_atoms; ++j) {
        h(basis.atom(j), basis.atom(j)) = -params.delta_a;
    }
    for (int j = 0; j < decomposition.rank; ++j) {
        const double half = 0.5 * decomposition.singular_values(j);
        h(basis.cavity(j), basis.atom(j)) = half;
        h(basis.atom(j), basis.cavity(j)) = half;
    }
    for (int j = 0; j < params.n_modes; ++j) {
        const Complex eta = decomposition.transformed_drives(j);
        h(basis.cavity(j), WeakBasis::ground()) = eta;
        h(WeakBasis::ground(), basis.cavity(j)) = std::conj(eta);
    }
    return h;
}

Liouvillian build_collective_liouvillian(const SystemParams& params,
                                         const CollectiveDecomposition& decomposition) {
    // Jumps to |0> from the collective states have the same elementary form.
    return Liouvillian(build_collective_hamiltonian(params, decomposition),
                       build_jump_operators(params));
}

void fill_observables(StationaryState& state, const WeakBasis& basis) {
    const MatrixXc& rho = state.rho.data;
    state.mode_populations.assign(static_cast<std::size_t>(basis.n_modes), 0.0);
    state.atom_excitations.assign(static_cast<std::size_t>(basis.n_atoms), 0.0);
    state.total_cavity_population = 0.0;
    for (int k = 0; k < basis.n_modes; ++k) {
        const double pop = rho(basis.cavity(k), basis.cavity(k)).real();
        state.mode_populations[static_cast<std::size_t>(k)] = pop;
        state.total_cavity_population += pop;
    }
    for (int l = 0; l < basis.n_atoms; ++l) {
        state.atom_excitations[static_cast<std::size_t>(l)] =
            rho(basis.atom(l), basis.atom(l)).real();
    }
    state.ground_weight = rho(WeakBasis::ground(), WeakBasis::ground()).real();
}

StationaryState solve_stationary(const Liouvillian& liouvillian, const WeakBasis& basis,
                                 const SolveOptions& options) {
    if (liouvillian.dimension() != basis.dimension()) {
        throw DimensionError("Liouvillian does not act on the weak basis");
    }
    SolveOptions opts = options;
    opts.reference_state = WeakBasis::ground();
    StationarySolution solved = solve_stationary_density(liouvillian, opts);

    StationaryState state;
    state.rho = std::move(solved.rho);
    state.residual = solved.residual;
    state.asymmetry = solved.asymmetry;
    state.rcond = solved.rcond;
    fill_observables(state, basis);
    return state;
}

StationaryState solve_stationary(const SystemParams& params, const SolveOptions& options) {
    return solve_stationary(build_liouvillian(params), WeakBasis::for_params(params), options);
}

std::vector<double> SweepResult::deltas() const {
    std::vector<double> out;
    out.reserve(rows.size());
    for (const auto& row : rows) {
        out.push_back(row.delta);
    }
    return out;
}

std::vector<double> SweepResult::total_populations() const {
    std::vector<double> out;
    out.reserve(rows.size());
    for (const auto& row : rows) {
        out.push_back(row.total_cavity_population);
    }
    return out;
}

namespace {

SweepRow solve_point(const SystemParams& params, double delta, const SweepOptions& options) {
    SweepRow row;
    row.delta = delta;
    try {
        SystemParams point = params.with_detuning(delta);
        if (options.pinned_delta_c) {
            point.delta_c = *options.pinned_delta_c;
        }
        const StationaryState state = solve_stationary(point, options.solve);
        row.ok = true;
        row.status = "ok";
        row.mode_populations = state.mode_populations;
        row.total_cavity_population = state.total_cavity_population;
        row.ground_weight = state.ground_weight;
        row.atom_excitations = state.atom_excitations;
        row.residual = state.residual;
    } catch (const std::exception& e) {
        row.ok = false;
        row.status = e.what();
        row.mode_populations.assign(static_cast<std::size_t>(params.n_modes), 0.0);
        row.atom_excitations.assign(static_cast<std::size_t>(params.n_atoms), 0.0);
    }
    return row;
}

}  // namespace

SweepResult sweep_detuning(const SystemParams& params, const std::vector<double>& delta_values,
                           const SweepOptions& options) {
    params.validate();
    if (delta_values.empty()) {
        throw ValidationError("detuning grid is empty");
    }
    SweepResult result;
    result.n_modes = params.n_modes;
    result.n_atoms = params.n_atoms;
    result.rows.resize(delta_values.size());

    const std::size_t workers = std::clamp<std::size_t>(
        static_cast<std::size_t>(std::max(options.threads, 1)), 1, delta_values.size());
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i = next++; i < delta_values.size(); i = next++) {
            result.rows[i] = solve_point(params, delta_values[i], options);
        }
    };
    if (workers == 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        for (std::size_t t = 0; t < workers; ++t) {
            pool.emplace_back(work);
        }
    }
    return result;
}

}  // namespace darkcavity
