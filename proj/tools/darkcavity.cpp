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

// darkcavity: command-line front end for sweeps, dark-state checks,
// observability reports, Fock oracle comparisons and SVD dumps.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "darkcavity/config.hpp"
#include "darkcavity/errors.hpp"
#include "darkcavity/experiments.hpp"

namespace {

enum ExitCode { kOk = 0, kValidation = 1, kNumerical = 2, kResource = 3 };

struct Common {
    std::string config_path;
    std::string out_path;
    std::optional<std::uint64_t> seed;
    int threads = 1;
    bool json = false;
};

void add_common(CLI::App* sub, Common& common, bool with_json) {
    sub->add_option("--config", common.config_path, "experiment config (JSON)")->required();
    sub->add_option("--out", common.out_path, "output file (default: config output.path or stdout)");
    sub->add_option("--seed", common.seed, "override the coupling seed");
    sub->add_option("--threads", common.threads, "worker threads for sweeps")
        ->check(CLI::Range(1, 256));
    if (with_json) {
        sub->add_flag("--json", common.json, "machine-readable report");
    }
}

// output.path in the config names the CSV of sweep and oracle runs; reports
// go to stdout unless --out is given.
darkcavity::ExperimentConfig load(const Common& common, bool csv_command) {
    darkcavity::ExperimentConfig config = darkcavity::load_config(common.config_path);
    if (common.seed) {
        config.coupling.seed = *common.seed;
    }
    if (!csv_command) {
        config.output.path.clear();
    }
    if (!common.out_path.empty()) {
        config.output.path = common.out_path;
    }
    return config;
}

void emit(const darkcavity::ExperimentConfig& config, const std::string& text) {
    if (config.output.path.empty()) {
        std::cout << text;
        std::cout.flush();
        return;
    }
    std::ofstream file(config.output.path, std::ios::binary | std::ios::trunc);
    if (!file) {
        throw darkcavity::IoError("cannot open '" + config.output.path + "' for writing");
    }
    file << text;
    file.close();
    if (!file) {
        throw darkcavity::IoError("failed writing '" + config.output.path + "'");
    }
}

int cmd_sweep(const Common& common) {
    const auto config = load(common, true);
    const auto result = darkcavity::run_sweep(config, common.threads);
    std::ostringstream out;
    darkcavity::write_sweep_csv(out, result, config);
    emit(config, out.str());
    return kOk;
}

int cmd_darkstate(const Common& common) {
    const auto config = load(common, false);
    const auto check = darkcavity::run_darkstate_check(config);
    std::ostringstream out;
    if (common.json) {
        out << darkcavity::darkstate_json(check) << '\n';
    } else {
        darkcavity::write_darkstate_text(out, check);
    }
    emit(config, out.str());
    return kOk;
}

int cmd_observability(const Common& common) {
    const auto config = load(common, false);
    const auto report = darkcavity::run_observability(config);
    std::ostringstream out;
    if (common.json) {
        out << darkcavity::observability_json(report) << '\n';
    } else {
        darkcavity::write_observability_text(out, report);
    }
    emit(config, out.str());
    return kOk;
}

int cmd_oracle(const Common& common) {
    const auto config = load(common, true);
    const auto table = darkcavity::run_oracle_compare(config);
    std::ostringstream out;
    darkcavity::write_oracle_csv(out, table, config);
    emit(config, out.str());
    if (!table.order_ok) {
        std::cerr << "error: fitted convergence order " << *table.fitted_order
                  << " deviates from 2 by more than 0.5\n";
        return kNumerical;
    }
    return kOk;
}

int cmd_svd(const Common& common) {
    const auto config = load(common, false);
    const auto params = darkcavity::build_params(config);
    const auto decomposition = darkcavity::decompose(params, config.rank_tolerance);
    std::ostringstream out;
    if (common.json) {
        out << darkcavity::decomposition_json(decomposition) << '\n';
    } else {
        darkcavity::write_decomposition_text(out, decomposition);
    }
    emit(config, out.str());
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Dark-state toolkit for driven, lossy Tavis-Cummings systems"};
    app.require_subcommand(1);

    Common common;
    auto* sweep = app.add_subcommand("sweep", "stationary populations over a detuning grid (CSV)");
    auto* darkstate = app.add_subcommand("darkstate", "dark-state residual, fidelity and observability");
    auto* observability = app.add_subcommand("observability", "observability conditions per collective mode");
    auto* oracle = app.add_subcommand("oracle", "weak model against the truncated Fock model (CSV)");
    auto* svd = app.add_subcommand("svd", "collective decomposition of the coupling matrix");
    add_common(sweep, common, false);
    add_common(darkstate, common, true);
    add_common(observability, common, true);
    add_common(oracle, common, false);
    add_common(svd, common, true);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kValidation;
    }

    try {
        if (sweep->parsed()) return cmd_sweep(common);
        if (darkstate->parsed()) return cmd_darkstate(common);
        if (observability->parsed()) return cmd_observability(common);
        if (oracle->parsed()) return cmd_oracle(common);
        if (svd->parsed()) return cmd_svd(common);
    } catch (const darkcavity::ResourceError& e) {
        std::cerr << "resource error: " << e.what() << '\n';
        return kResource;
    } catch (const darkcavity::NumericalError& e) {
        std::cerr << "numerical error: " << e.what() << " (rcond " << e.condition_estimate()
                  << ")\n";
        return kNumerical;
    } catch (const darkcavity::DegeneracyError& e) {
        std::cerr << "degeneracy error: " << e.what() << '\n';
        return kNumerical;
    } catch (const darkcavity::NoDarkStateError& e) {
        std::cerr << "no dark state: " << e.what() << '\n';
        return kNumerical;
    } catch (const darkcavity::IoError& e) {
        std::cerr << "i/o error: " << e.what() << '\n';
        return kValidation;
    } catch (const darkcavity::Error& e) {
        // validation, dimension and threshold errors
        std::cerr << "error: " << e.what() << '\n';
        return kValidation;
    }
    return kValidation;
}
