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

#include "darkcavity/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "darkcavity/errors.hpp"
#include "darkcavity/weaksolver.hpp"

namespace darkcavity {

namespace {

double sq(double x) { return x * x; }

}  // namespace

double two_lorentzian_population(double delta, double lambda, double eta, double gamma,
                                 double kappa) {
    const double common = 16.0 * sq(eta) + sq(gamma + kappa);
    const double lower = 4.0 * sq(eta) / (16.0 * sq(delta - 0.5 * lambda) + common);
    const double upper = 4.0 * sq(eta) / (16.0 * sq(delta + 0.5 * lambda) + common);
    return lower + upper;
}

double population_gamma_zero(double delta, double lambda, double eta, double kappa) {
    const double d2 = sq(delta);
    const double e2 = sq(eta);
    const double denominator = 16.0 * sq(d2) +
                               4.0 * d2 * (8.0 * e2 + sq(kappa) - 2.0 * sq(lambda)) +
                               sq(4.0 * e2 + sq(lambda));
    if (denominator == 0.0) {
        return 0.0;
    }
    return 16.0 * d2 * e2 / denominator;
}

double population_delta_zero(double gamma, double lambda, double eta, double kappa) {
    const double e2 = sq(eta);
    const double l2 = sq(lambda);
    const double gk = gamma * (gamma + kappa);
    const double numerator = 4.0 * e2 * gamma * (4.0 * e2 + gk);
    const double denominator = gamma * (8.0 * e2 + sq(kappa)) * (4.0 * e2 + gk) +
                               2.0 * kappa * l2 * (2.0 * e2 + gk) + (gamma + kappa) * sq(l2);
    if (denominator == 0.0) {
        return 0.0;
    }
    return numerator / denominator;
}

double anti_resonance_width(double lambda, double eta, double kappa) {
    return (4.0 * sq(eta) + sq(lambda)) / std::sqrt(2.0 * (16.0 * sq(eta) + sq(kappa)));
}

double driven_collective_population(double eta, double g, int n_atoms) {
    if (n_atoms < 1 || !(g > 0.0)) {
        throw ValidationError("collective threshold needs N >= 1 and g > 0");
    }
    const double x = 4.0 * eta / (n_atoms * g);
    if (!(std::abs(x) < 1.0)) {
        throw ThresholdError("drive at or above threshold: 4 eta/(N g) = " + std::to_string(x));
    }
    return -0.25 * std::log1p(-x * x);
}

double driven_collective_weak_drive(double eta, double g, int n_atoms) {
    if (n_atoms < 1 || !(g > 0.0)) {
        throw ValidationError("collective threshold needs N >= 1 and g > 0");
    }
    return sq(2.0 * eta / (n_atoms * g));
}

VectorXc DarkState::original_state(const CollectiveDecomposition& decomposition) const {
    return collective_transform(decomposition) * collective_state;
}

DarkState dark_state(const CollectiveDecomposition& decomposition, double drive_tolerance) {
    const int m = decomposition.n_modes();
    const int n = decomposition.n_atoms();
    const VectorXc& eta = decomposition.transformed_drives;
    const double eta_max = eta.size() > 0 ? eta.cwiseAbs().maxCoeff() : 0.0;

    for (int j = decomposition.rank; j < m; ++j) {
        if (eta_max > 0.0 && std::abs(eta(j)) > drive_tolerance * eta_max) {
            throw NoDarkStateError("collective cavity mode " + std::to_string(j) +
                                   " is driven but uncoupled to the atoms");
        }
    }

    DarkState out;
    out.ground_amplitude = 1.0;
    out.atomic_amplitudes = VectorXc::Zero(n);
    double norm2 = 1.0;
    for (int j = 0; j < decomposition.rank; ++j) {
        const Complex amp = -2.0 * eta(j) / decomposition.singular_values(j);
        out.atomic_amplitudes(j) = amp;
        norm2 += std::norm(amp);
    }
    out.norm = std::sqrt(norm2);

    out.collective_state = VectorXc::Zero(1 + m + n);
    out.collective_state(0) = out.ground_amplitude / out.norm;
    out.collective_state.tail(n) = out.atomic_amplitudes / out.norm;
    return out;
}

double hamiltonian_residual(const SystemParams& params, const VectorXc& psi) {
    return (build_hamiltonian(params) * psi).norm();
}

double atoms_required(double target_lambda, double g) {
    if (g == 0.0) {
        return std::numeric_limits<double>::infinity();
    }
    return sq(target_lambda / g);
}

ObservabilityReport observability_report(const SystemParams& params,
                                         const CollectiveDecomposition& decomposition,
                                         const ObservabilityOptions& options) {
    params.validate();
    const double kappa = params.kappa;
    const double gamma = params.gamma;

    ObservabilityReport report;
    report.window_lower = std::sqrt(2.0 * gamma * kappa);
    report.window_upper = kappa;
    report.window_empty = report.window_lower >= report.window_upper;
    report.max_drive = params.drives.size() > 0 ? params.drives.cwiseAbs().maxCoeff() : 0.0;
    report.weak_drive = report.max_drive <= options.weak_drive_limit * kappa;

    for (int j = 0; j < decomposition.n_modes(); ++j) {
        ModeObservability mode;
        mode.lambda = decomposition.singular_values(j);
        mode.drive = std::abs(decomposition.transformed_drives(j));
        const double l2 = sq(mode.lambda);
        mode.splitting_ratio = l2 / (sq(kappa) + 16.0 * sq(mode.drive));
        mode.distinguishable = mode.splitting_ratio <= 1.0;
        const double suppression_scale = (2.0 * gamma / kappa) * (8.0 * sq(mode.drive) + sq(kappa));
        if (suppression_scale > 0.0) {
            mode.suppression_ratio = l2 / suppression_scale;
        } else {
            mode.suppression_ratio =
                l2 > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
        }
        mode.suppressed = mode.lambda > 0.0 && mode.suppression_ratio >= options.strong_factor;
        mode.in_window = mode.lambda > report.window_lower && mode.lambda <= report.window_upper;
        mode.order_kappa = mode.lambda >= kappa / 3.0 && mode.lambda <= 3.0 * kappa;
        mode.width = anti_resonance_width(mode.lambda, mode.drive, kappa);

        report.any_mode_order_kappa = report.any_mode_order_kappa || mode.order_kappa;
        report.observable = report.observable || (mode.distinguishable && mode.suppressed);
        report.modes.push_back(mode);
    }

    if (options.single_atom_g) {
        report.single_atom_g = *options.single_atom_g;
    } else {
        const double entries = static_cast<double>(params.coupling.size());
        report.single_atom_g = params.coupling.norm() / std::sqrt(entries);
    }
    report.target_lambda = options.target_lambda;
    report.atoms_required = atoms_required(options.target_lambda, report.single_atom_g);
    report.verdict = report.observable ? "observable" : "not observable";
    return report;
}

std::optional<DipWidth> measure_dip_width(const std::vector<double>& deltas,
                                          const std::vector<double>& populations) {
    const std::size_t n = deltas.size();
    if (n < 3 || populations.size() != n) {
        return std::nullopt;
    }
    std::size_t centre = 0;
    for (std::size_t i = 1; i < n; ++i) {
        if (std::abs(deltas[i]) < std::abs(deltas[centre])) {
            centre = i;
        }
    }

    // Climb to the first local maximum on each side.
    std::size_t right_peak = centre;
    while (right_peak + 1 < n && populations[right_peak + 1] >= populations[right_peak]) {
        ++right_peak;
    }
    std::size_t left_peak = centre;
    while (left_peak > 0 && populations[left_peak - 1] >= populations[left_peak]) {
        --left_peak;
    }
    if (right_peak == n - 1 || left_peak == 0 || right_peak == centre || left_peak == centre) {
        return std::nullopt;
    }

    auto crossing = [&](std::size_t inner, std::size_t outer, double level) {
        const double y0 = populations[inner];
        const double y1 = populations[outer];
        const double t = (level - y0) / (y1 - y0);
        return deltas[inner] + t * (deltas[outer] - deltas[inner]);
    };

    DipWidth out;
    const double right_half = 0.5 * populations[right_peak];
    const double left_half = 0.5 * populations[left_peak];
    if (populations[centre] >= std::min(right_half, left_half)) {
        return std::nullopt;
    }
    std::size_t i = centre;
    while (populations[i + 1] < right_half) {
        ++i;
    }
    out.right = crossing(i, i + 1, right_half);
    std::size_t k = centre;
    while (populations[k - 1] < left_half) {
        --k;
    }
    out.left = crossing(k, k - 1, left_half);
    out.width = out.right - out.left;
    out.half_level = 0.5 * (right_half + left_half);
    return out;
}

}  // namespace darkcavity
