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

#include "darkcavity/experiments.hpp"

#include <cmath>
#include <iomanip>
#include <sstream>

#include <json.hpp>

#include "darkcavity/errors.hpp"
#include "darkcavity/fockoracle.hpp"

namespace darkcavity {

namespace {

using nlohmann::json;

std::string fmt(double value, int precision) {
    std::ostringstream s;
    s << std::setprecision(precision) << value;
    return s.str();
}

// The output path is left out of the echo so that the same experiment written
// to two different files produces identical bytes.
void write_preamble(std::ostream& out, const std::string& kind, ExperimentConfig config) {
    config.output.path.clear();
    out << "# darkcavity " << kind << "\n";
    out << "# config-hash: " << config_hash(config) << "\n";
    out << "# config: " << resolved_config(config) << "\n";
}

// CSV status fields must not break the column structure.
std::string sanitize(std::string text) {
    for (char& c : text) {
        if (c == ',' || c == '\n' || c == '\r') {
            c = ';';
        }
    }
    return text;
}

json mode_json(const ModeObservability& mode) {
    auto finite_or_null = [](double v) { return std::isfinite(v) ? json(v) : json(nullptr); };
    return {{"lambda", mode.lambda},
            {"drive", mode.drive},
            {"splitting_ratio", mode.splitting_ratio},
            {"distinguishable", mode.distinguishable},
            {"suppression_ratio", finite_or_null(mode.suppression_ratio)},
            {"suppressed", mode.suppressed},
            {"in_window", mode.in_window},
            {"order_kappa", mode.order_kappa},
            {"width", mode.width}};
}

json report_json(const ObservabilityReport& report) {
    json modes = json::array();
    for (const auto& mode : report.modes) {
        modes.push_back(mode_json(mode));
    }
    return {{"modes", modes},
            {"window_lower", report.window_lower},
            {"window_upper", report.window_upper},
            {"window_empty", report.window_empty},
            {"any_mode_order_kappa", report.any_mode_order_kappa},
            {"weak_drive", report.weak_drive},
            {"max_drive", report.max_drive},
            {"single_atom_g", report.single_atom_g},
            {"target_lambda", report.target_lambda},
            {"atoms_required",
             std::isfinite(report.atoms_required) ? json(report.atoms_required) : json(nullptr)},
            {"observable", report.observable},
            {"verdict", report.verdict}};
}

ObservabilityOptions observability_options(const ExperimentConfig& config) {
    ObservabilityOptions options;
    options.target_lambda = config.observability.target_lambda;
    options.single_atom_g = config.observability.single_atom_g;
    options.strong_factor = config.observability.strong_factor;
    return options;
}

}  // namespace

void write_sweep_csv(std::ostream& out, const SweepResult& result,
                     const ExperimentConfig& config) {
    const int p = config.output.precision;
    write_preamble(out, "sweep", config);
    out << "delta";
    for (int k = 1; k <= result.n_modes; ++k) {
        out << ",pop_mode_" << k;
    }
    out << ",pop_total,ground_weight";
    for (int l = 1; l <= result.n_atoms; ++l) {
        out << ",atom_exc_" << l;
    }
    out << ",residual,status\n";
    for (const auto& row : result.rows) {
        out << fmt(row.delta, p);
        for (double pop : row.mode_populations) {
            out << ',' << fmt(pop, p);
        }
        out << ',' << fmt(row.total_cavity_population, p) << ',' << fmt(row.ground_weight, p);
        for (double exc : row.atom_excitations) {
            out << ',' << fmt(exc, p);
        }
        out << ',' << fmt(row.residual, p) << ',' << sanitize(row.status) << '\n';
    }
}

SweepResult run_sweep(const ExperimentConfig& config, int threads) {
    if (!config.sweep) {
        throw ValidationError("config has no 'sweep' block");
    }
    const SystemParams params = build_params(config);
    SweepOptions options;
    options.pinned_delta_c = config.sweep->pinned_delta_c;
    options.threads = threads;
    return sweep_detuning(params, detuning_grid(*config.sweep), options);
}

DarkStateCheck run_darkstate_check(const ExperimentConfig& config) {
    SystemParams params = build_params(config);
    params.delta_a = 0.0;
    const CollectiveDecomposition decomposition = decompose(params, config.rank_tolerance);
    const DarkState dark = dark_state(decomposition);
    const VectorXc psi = dark.original_state(decomposition);

    DarkStateCheck check;
    check.delta_c = params.delta_c;
    check.hamiltonian_norm = build_hamiltonian(params).norm();
    check.residual = hamiltonian_residual(params, psi);
    check.relative_residual =
        check.hamiltonian_norm > 0.0 ? check.residual / check.hamiltonian_norm : check.residual;
    check.norm = dark.norm;
    const StationaryState state = solve_stationary(params);
    check.fidelity = state.rho.fidelity(psi);
    check.cavity_population = state.total_cavity_population;
    check.observability =
        observability_report(params, decomposition, observability_options(config));
    return check;
}

void write_darkstate_text(std::ostream& out, const DarkStateCheck& check) {
    out << std::setprecision(12);
    out << "dark state (delta_a = 0, delta_c = " << check.delta_c << ")\n";
    out << "  norm                 " << check.norm << "\n";
    out << "  ||H psi_D||          " << check.residual << "\n";
    out << "  ||H psi_D|| / ||H||  " << check.relative_residual << "\n";
    out << "  stationary fidelity  " << check.fidelity << "\n";
    out << "  cavity population    " << check.cavity_population << "\n";
    write_observability_text(out, check.observability);
}

std::string darkstate_json(const DarkStateCheck& check) {
    json root = {{"delta_c", check.delta_c},
                 {"norm", check.norm},
                 {"hamiltonian_norm", check.hamiltonian_norm},
                 {"residual", check.residual},
                 {"relative_residual", check.relative_residual},
                 {"fidelity", check.fidelity},
                 {"cavity_population", check.cavity_population},
                 {"observability", report_json(check.observability)}};
    return root.dump(2);
}

ObservabilityReport run_observability(const ExperimentConfig& config) {
    const SystemParams params = build_params(config);
    const CollectiveDecomposition decomposition = decompose(params, config.rank_tolerance);
    return observability_report(params, decomposition, observability_options(config));
}

void write_observability_text(std::ostream& out, const ObservabilityReport& report) {
    out << std::setprecision(6);
    out << "observability\n";
    out << "  window sqrt(2 gamma kappa) < lambda <= kappa: [" << report.window_lower << ", "
        << report.window_upper << "]" << (report.window_empty ? " (empty)" : "") << "\n";
    for (std::size_t j = 0; j < report.modes.size(); ++j) {
        const auto& m = report.modes[j];
        out << "  mode " << j + 1 << ": lambda " << m.lambda << ", |eta~| " << m.drive
            << ", splitting ratio " << m.splitting_ratio << (m.distinguishable ? " ok" : " no")
            << ", suppression ratio " << m.suppression_ratio << (m.suppressed ? " ok" : " no")
            << ", width " << m.width << (m.in_window ? ", in window" : "") << "\n";
    }
    out << "  splitting of order kappa: " << (report.any_mode_order_kappa ? "yes" : "no") << "\n";
    out << "  weak driving (max |eta| " << report.max_drive
        << "): " << (report.weak_drive ? "yes" : "no") << "\n";
    out << "  atoms for lambda = " << report.target_lambda << " at g = " << report.single_atom_g
        << ": " << report.atoms_required << "\n";
    out << "  verdict: " << report.verdict << "\n";
}

std::string observability_json(const ObservabilityReport& report) {
    return report_json(report).dump(2);
}

std::optional<double> fit_power_law_order(const std::vector<double>& x,
                                          const std::vector<double>& y) {
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    int count = 0;
    for (std::size_t i = 0; i < x.size() && i < y.size(); ++i) {
        if (x[i] > 0.0 && y[i] > 0.0) {
            const double lx = std::log(x[i]);
            const double ly = std::log(y[i]);
            sx += lx;
            sy += ly;
            sxx += lx * lx;
            sxy += lx * ly;
            ++count;
        }
    }
    if (count < 2) {
        return std::nullopt;
    }
    const double denom = count * sxx - sx * sx;
    if (denom == 0.0) {
        return std::nullopt;
    }
    return (count * sxy - sx * sy) / denom;
}

OracleTable run_oracle_compare(const ExperimentConfig& config) {
    if (!config.oracle) {
        throw ValidationError("config has no 'oracle' block");
    }
    const SystemParams base = build_params(config);
    const int n_max = config.oracle->n_max;
    FockOptions fock;
    // Budget check before any solve.
    const FockBasis basis = make_fock_basis(base, n_max, fock.budget);
    if (basis.dimension() > fock.budget.max_solve_dimension) {
        throw ResourceError("Fock dimension " + std::to_string(basis.dimension()) +
                            " exceeds the stationary-solve budget " +
                            std::to_string(fock.budget.max_solve_dimension));
    }

    VectorXc direction = base.drives;
    const double largest = direction.cwiseAbs().maxCoeff();
    if (largest > 0.0) {
        direction /= largest;
    } else {
        direction = VectorXc::Unit(base.n_modes, 0);
    }

    OracleTable table;
    std::vector<double> etas;
    std::vector<double> gaps;
    for (double eta : config.oracle->drive_ladder) {
        SystemParams params = base;
        params.drives = eta * direction;
        const StationaryState weak = solve_stationary(params);
        const FockStationaryState full = solve_full_stationary(params, n_max, fock);
        OracleRow row;
        row.eta = eta;
        row.pop_weak = weak.total_cavity_population;
        row.pop_fock = full.total_cavity_population;
        const double diff = std::abs(row.pop_fock - row.pop_weak);
        row.relative_gap = row.pop_weak != 0.0 ? diff / std::abs(row.pop_weak) : diff;
        row.truncation_warning = full.truncation_warning;
        table.rows.push_back(row);
        etas.push_back(eta);
        gaps.push_back(row.relative_gap);
    }
    table.fitted_order = fit_power_law_order(etas, gaps);
    table.order_ok = !table.fitted_order || std::abs(*table.fitted_order - 2.0) <= 0.5;
    return table;
}

void write_oracle_csv(std::ostream& out, const OracleTable& table,
                      const ExperimentConfig& config) {
    const int p = config.output.precision;
    write_preamble(out, "oracle", config);
    if (table.fitted_order) {
        out << "# fitted-order: " << fmt(*table.fitted_order, p) << "\n";
    } else {
        out << "# fitted-order: none\n";
    }
    out << "eta,pop_weak,pop_fock,relative_gap,truncation_warning\n";
    for (const auto& row : table.rows) {
        out << fmt(row.eta, p) << ',' << fmt(row.pop_weak, p) << ',' << fmt(row.pop_fock, p)
            << ',' << fmt(row.relative_gap, p) << ',' << (row.truncation_warning ? 1 : 0) << '\n';
    }
}

void write_decomposition_text(std::ostream& out, const CollectiveDecomposition& decomposition) {
    out << std::setprecision(10);
    out << "rank " << decomposition.rank << "\n";
    out << "singular values";
    for (Eigen::Index j = 0; j < decomposition.singular_values.size(); ++j) {
        out << ' ' << decomposition.singular_values(j);
    }
    out << "\ntransformed drives";
    for (Eigen::Index j = 0; j < decomposition.transformed_drives.size(); ++j) {
        out << ' ' << decomposition.transformed_drives(j);
    }
    out << "\nU =\n" << decomposition.u << "\nW =\n" << decomposition.w << "\n";
}

std::string decomposition_json(const CollectiveDecomposition& decomposition) {
    auto matrix_json = [](const MatrixXc& m) {
        json rows = json::array();
        for (Eigen::Index i = 0; i < m.rows(); ++i) {
            json row = json::array();
            for (Eigen::Index j = 0; j < m.cols(); ++j) {
                row.push_back(json::array({m(i, j).real(), m(i, j).imag()}));
            }
            rows.push_back(row);
        }
        return rows;
    };
    json sv = json::array();
    for (Eigen::Index j = 0; j < decomposition.singular_values.size(); ++j) {
        sv.push_back(decomposition.singular_values(j));
    }
    json drives = json::array();
    for (Eigen::Index j = 0; j < decomposition.transformed_drives.size(); ++j) {
        const Complex z = decomposition.transformed_drives(j);
        drives.push_back(json::array({z.real(), z.imag()}));
    }
    json root = {{"rank", decomposition.rank},
                 {"singular_values", sv},
                 {"transformed_drives", drives},
                 {"u", matrix_json(decomposition.u)},
                 {"w", matrix_json(decomposition.w)}};
    return root.dump(2);
}

}  // namespace darkcavity
