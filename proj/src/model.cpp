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

#include "darkcavity/model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "darkcavity/errors.hpp"

namespace darkcavity {

void SystemParams::validate() const {
    if (n_modes < 1 || n_atoms < 1) {
        throw DimensionError("need at least one mode and one atom (got M=" +
                             std::to_string(n_modes) + ", N=" + std::to_string(n_atoms) + ")");
    }
    if (n_modes > n_atoms) {
        throw DimensionError("coupling with M=" + std::to_string(n_modes) + " > N=" +
                             std::to_string(n_atoms) + " is not supported");
    }
    if (drives.size() != n_modes) {
        throw DimensionError("expected " + std::to_string(n_modes) + " drive amplitudes, got " +
                             std::to_string(drives.size()));
    }
    if (coupling.rows() != n_modes || coupling.cols() != n_atoms) {
        throw DimensionError("coupling must be " + std::to_string(n_modes) + "x" +
                             std::to_string(n_atoms));
    }
    if (!(kappa > 0.0) || !std::isfinite(kappa)) {
        throw ValidationError("kappa must be positive");
    }
    if (!(gamma >= 0.0) || !std::isfinite(gamma)) {
        throw ValidationError("gamma must be non-negative");
    }
    if (!std::isfinite(delta_c) || !std::isfinite(delta_a) || !drives.allFinite() ||
        !coupling.allFinite()) {
        throw ValidationError("parameters must be finite");
    }
}

SystemParams SystemParams::with_detuning(double delta) const {
    SystemParams copy = *this;
    copy.delta_a = delta;
    copy.delta_c = delta;
    return copy;
}

SystemParams make_params(const MatrixXc& coupling, const VectorXc& drives, double delta_c,
                         double delta_a, double gamma, double kappa) {
    SystemParams p;
    p.n_modes = static_cast<int>(coupling.rows());
    p.n_atoms = static_cast<int>(coupling.cols());
    p.coupling = coupling;
    p.drives = drives;
    p.delta_c = delta_c;
    p.delta_a = delta_a;
    p.gamma = gamma;
    p.kappa = kappa;
    p.validate();
    return p;
}

MatrixXc CollectiveDecomposition::lambda_matrix() const {
    MatrixXc lambda = MatrixXc::Zero(u.rows(), w.rows());
    for (Eigen::Index j = 0; j < singular_values.size(); ++j) {
        lambda(j, j) = singular_values(j);
    }
    return lambda;
}

MatrixXc CollectiveDecomposition::reconstruct() const {
    return u * lambda_matrix() * w.adjoint();
}

MatrixXc make_uniform_coupling(int n_modes, int n_atoms, double g) {
    if (n_modes < 1 || n_atoms < 1) {
        throw DimensionError("coupling dimensions must be positive");
    }
    return MatrixXc::Constant(n_modes, n_atoms, Complex(g, 0.0));
}

MatrixXc make_localized_coupling(int n_modes, int n_atoms, double g, double perturbation,
                                 std::uint64_t seed) {
    if (n_modes < 1 || n_atoms < 1) {
        throw DimensionError("coupling dimensions must be positive");
    }
    if (n_modes > n_atoms) {
        throw DimensionError("localized coupling requires M <= N");
    }
    if (!(perturbation >= 0.0)) {
        throw ValidationError("perturbation must be non-negative");
    }
    MatrixXc coupling = make_uniform_coupling(n_modes, n_atoms, g);
    if (perturbation == 0.0) {
        return coupling;
    }
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int k = 0; k < n_modes; ++k) {
        for (int l = 0; l < n_atoms; ++l) {
            const double radius = perturbation * unit(rng);
            const double phase = 2.0 * std::numbers::pi * unit(rng);
            coupling(k, l) += std::polar(radius, phase);
        }
    }
    return coupling;
}

namespace {

// Index of the largest-modulus entry; ties resolve to the first index.
Eigen::Index argmax_modulus(const VectorXc& v) {
    Eigen::Index best = 0;
    for (Eigen::Index i = 1; i < v.size(); ++i) {
        if (std::abs(v(i)) > std::abs(v(best))) {
            best = i;
        }
    }
    return best;
}

Complex unit_phase_of(Complex z) {
    const double r = std::abs(z);
    return r > 0.0 ? z / r : Complex(1.0, 0.0);
}

}  // namespace

CollectiveDecomposition decompose(const SystemParams& params, double rank_tolerance) {
    params.validate();
    if (!(rank_tolerance > 0.0 && rank_tolerance < 1.0)) {
        throw ValidationError("rank_tolerance must lie in (0, 1)");
    }
    const int m = params.n_modes;
    const int n = params.n_atoms;

    Eigen::JacobiSVD<MatrixXc> svd(params.coupling, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const Eigen::VectorXd raw = svd.singularValues();
    const MatrixXc raw_u = svd.matrixU();
    const MatrixXc raw_w = svd.matrixV();

    std::vector<int> order(static_cast<std::size_t>(m));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return raw(a) > raw(b); });

    CollectiveDecomposition out;
    out.u.resize(m, m);
    out.w = raw_w;
    out.singular_values.resize(m);
    for (int j = 0; j < m; ++j) {
        const int src = order[static_cast<std::size_t>(j)];
        out.singular_values(j) = raw(src);
        out.u.col(j) = raw_u.col(src);
        out.w.col(j) = raw_w.col(src);
    }

    // Fix the phase freedom u_j -> e^{i phi} u_j, w_j -> e^{i phi} w_j.
    for (int j = 0; j < m; ++j) {
        const Complex phase = unit_phase_of(out.u(argmax_modulus(out.u.col(j)), j));
        out.u.col(j) /= phase;
        out.w.col(j) /= phase;
    }
    // Null-space columns of W carry an independent phase.
    for (int j = m; j < n; ++j) {
        const Complex phase = unit_phase_of(out.w(argmax_modulus(out.w.col(j)), j));
        out.w.col(j) /= phase;
    }

    const double lambda_max = m > 0 ? out.singular_values(0) : 0.0;
    out.rank = 0;
    if (lambda_max > 0.0) {
        for (int j = 0; j < m; ++j) {
            if (out.singular_values(j) > rank_tolerance * lambda_max) {
                ++out.rank;
            }
        }
    }
    out.transformed_drives = out.u.adjoint() * params.drives;
    return out;
}

}  // namespace darkcavity
