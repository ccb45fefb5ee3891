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

#include "darkcavity/config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "darkcavity/errors.hpp"

namespace darkcavity {

namespace {

using nlohmann::json;

void reject_unknown(const json& block, const std::string& where,
                    const std::set<std::string>& allowed) {
    if (!block.is_object()) {
        throw ValidationError(where + " must be an object");
    }
    for (const auto& [key, value] : block.items()) {
        if (!allowed.contains(key)) {
            throw ValidationError("unknown key '" + where + "." + key + "'");
        }
    }
}

double get_number(const json& block, const std::string& key, const std::string& where) {
    const auto it = block.find(key);
    if (it == block.end()) {
        throw ValidationError("missing key '" + where + "." + key + "'");
    }
    if (!it->is_number()) {
        throw ValidationError("'" + where + "." + key + "' must be a number");
    }
    const double value = it->get<double>();
    if (!std::isfinite(value)) {
        throw ValidationError("'" + where + "." + key + "' must be finite");
    }
    return value;
}

double number_or(const json& block, const std::string& key, const std::string& where,
                 double fallback) {
    return block.contains(key) ? get_number(block, key, where) : fallback;
}

int get_int(const json& block, const std::string& key, const std::string& where) {
    const auto it = block.find(key);
    if (it == block.end()) {
        throw ValidationError("missing key '" + where + "." + key + "'");
    }
    if (!it->is_number_integer()) {
        throw ValidationError("'" + where + "." + key + "' must be an integer");
    }
    return it->get<int>();
}

Complex parse_complex(const json& value, const std::string& where) {
    if (value.is_number()) {
        return {value.get<double>(), 0.0};
    }
    if (value.is_array() && value.size() == 2 && value[0].is_number() && value[1].is_number()) {
        return {value[0].get<double>(), value[1].get<double>()};
    }
    throw ValidationError("'" + where + "' must be a number or a [re, im] pair");
}

json complex_to_json(Complex z) {
    if (z.imag() == 0.0) {
        return z.real();
    }
    return json::array({z.real(), z.imag()});
}

CouplingSpec parse_coupling(const json& block, int m, int n) {
    const std::string where = "system.coupling";
    if (!block.is_object() || !block.contains("kind") || !block["kind"].is_string()) {
        throw ValidationError(where + " needs a string 'kind'");
    }
    CouplingSpec spec;
    const std::string kind = block["kind"].get<std::string>();
    if (kind == "uniform") {
        reject_unknown(block, where, {"kind", "g"});
        spec.kind = CouplingSpec::Kind::Uniform;
        spec.g = get_number(block, "g", where);
    } else if (kind == "localized") {
        reject_unknown(block, where, {"kind", "g", "perturbation", "seed"});
        spec.kind = CouplingSpec::Kind::Localized;
        spec.g = get_number(block, "g", where);
        spec.perturbation = get_number(block, "perturbation", where);
        if (spec.perturbation < 0.0) {
            throw ValidationError(where + ".perturbation must be non-negative");
        }
        if (block.contains("seed")) {
            if (!block["seed"].is_number_unsigned()) {
                throw ValidationError(where + ".seed must be a non-negative integer");
            }
            spec.seed = block["seed"].get<std::uint64_t>();
        }
    } else if (kind == "explicit") {
        reject_unknown(block, where, {"kind", "matrix"});
        spec.kind = CouplingSpec::Kind::Explicit;
        const auto it = block.find("matrix");
        if (it == block.end() || !it->is_array() || static_cast<int>(it->size()) != m) {
            throw ValidationError(where + ".matrix must have " + std::to_string(m) + " rows");
        }
        spec.matrix.resize(m, n);
        for (int k = 0; k < m; ++k) {
            const json& row = (*it)[static_cast<std::size_t>(k)];
            if (!row.is_array() || static_cast<int>(row.size()) != n) {
                throw ValidationError(where + ".matrix rows must have " + std::to_string(n) +
                                      " entries");
            }
            for (int l = 0; l < n; ++l) {
                spec.matrix(k, l) = parse_complex(row[static_cast<std::size_t>(l)],
                                                  where + ".matrix");
            }
        }
    } else {
        throw ValidationError(where + ".kind must be uniform, localized or explicit");
    }
    return spec;
}

json coupling_to_json(const CouplingSpec& spec) {
    switch (spec.kind) {
        case CouplingSpec::Kind::Uniform:
            return {{"kind", "uniform"}, {"g", spec.g}};
        case CouplingSpec::Kind::Localized:
            return {{"kind", "localized"},
                    {"g", spec.g},
                    {"perturbation", spec.perturbation},
                    {"seed", spec.seed}};
        case CouplingSpec::Kind::Explicit: {
            json rows = json::array();
            for (Eigen::Index k = 0; k < spec.matrix.rows(); ++k) {
                json row = json::array();
                for (Eigen::Index l = 0; l < spec.matrix.cols(); ++l) {
                    row.push_back(complex_to_json(spec.matrix(k, l)));
                }
                rows.push_back(row);
            }
            return {{"kind", "explicit"}, {"matrix", rows}};
        }
    }
    return {};
}

}  // namespace

ExperimentConfig parse_config(const std::string& text) {
    json root;
    try {
        root = json::parse(text, nullptr, true, /*ignore_comments=*/true);
    } catch (const json::parse_error& e) {
        throw ValidationError(std::string("config is not valid JSON: ") + e.what());
    }
    reject_unknown(root, "config", {"system", "sweep", "oracle", "observability", "output"});
    if (!root.contains("system")) {
        throw ValidationError("missing block 'system'");
    }

    ExperimentConfig cfg;
    const json& sys = root["system"];
    reject_unknown(sys, "system", {"modes", "atoms", "gamma", "delta_c", "delta_a", "drives",
                                   "coupling", "rank_tolerance"});
    cfg.n_modes = get_int(sys, "modes", "system");
    cfg.n_atoms = get_int(sys, "atoms", "system");
    if (cfg.n_modes < 1 || cfg.n_atoms < 1) {
        throw ValidationError("system.modes and system.atoms must be positive");
    }
    if (cfg.n_modes > cfg.n_atoms) {
        throw ValidationError("system.modes must not exceed system.atoms");
    }
    cfg.gamma = number_or(sys, "gamma", "system", 0.0);
    if (cfg.gamma < 0.0) {
        throw ValidationError("system.gamma must be non-negative");
    }
    cfg.delta_c = number_or(sys, "delta_c", "system", 0.0);
    cfg.delta_a = number_or(sys, "delta_a", "system", 0.0);
    cfg.rank_tolerance = number_or(sys, "rank_tolerance", "system", kDefaultRankTolerance);
    if (!(cfg.rank_tolerance > 0.0 && cfg.rank_tolerance < 1.0)) {
        throw ValidationError("system.rank_tolerance must lie in (0, 1)");
    }

    const auto drives = sys.find("drives");
    if (drives == sys.end() || !drives->is_array() ||
        static_cast<int>(drives->size()) != cfg.n_modes) {
        throw ValidationError("system.drives must list " + std::to_string(cfg.n_modes) +
                              " amplitudes");
    }
    cfg.drives.resize(cfg.n_modes);
    for (int k = 0; k < cfg.n_modes; ++k) {
        cfg.drives(k) = parse_complex((*drives)[static_cast<std::size_t>(k)], "system.drives");
    }
    if (!sys.contains("coupling")) {
        throw ValidationError("missing key 'system.coupling'");
    }
    cfg.coupling = parse_coupling(sys["coupling"], cfg.n_modes, cfg.n_atoms);

    if (root.contains("sweep")) {
        const json& sw = root["sweep"];
        reject_unknown(sw, "sweep", {"delta_min", "delta_max", "count", "pinned_delta_c"});
        SweepConfig sweep;
        sweep.delta_min = get_number(sw, "delta_min", "sweep");
        sweep.delta_max = get_number(sw, "delta_max", "sweep");
        sweep.count = get_int(sw, "count", "sweep");
        if (sweep.count < 1) {
            throw ValidationError("sweep.count must be positive");
        }
        if (sweep.count > 1 && !(sweep.delta_max > sweep.delta_min)) {
            throw ValidationError("sweep.delta_max must exceed sweep.delta_min");
        }
        if (sw.contains("pinned_delta_c") && !sw["pinned_delta_c"].is_null()) {
            sweep.pinned_delta_c = get_number(sw, "pinned_delta_c", "sweep");
        }
        cfg.sweep = sweep;
    }

    if (root.contains("oracle")) {
        const json& orc = root["oracle"];
        reject_unknown(orc, "oracle", {"n_max", "drive_ladder"});
        OracleConfig oracle;
        oracle.n_max = get_int(orc, "n_max", "oracle");
        if (oracle.n_max < 1) {
            throw ValidationError("oracle.n_max must be at least 1");
        }
        if (orc.contains("drive_ladder")) {
            const json& ladder = orc["drive_ladder"];
            if (!ladder.is_array() || ladder.empty()) {
                throw ValidationError("oracle.drive_ladder must be a non-empty array");
            }
            oracle.drive_ladder.clear();
            for (const auto& v : ladder) {
                if (!v.is_number() || v.get<double>() < 0.0) {
                    throw ValidationError("oracle.drive_ladder entries must be non-negative");
                }
                oracle.drive_ladder.push_back(v.get<double>());
            }
        }
        cfg.oracle = oracle;
    }

    if (root.contains("observability")) {
        const json& obs = root["observability"];
        reject_unknown(obs, "observability", {"target_lambda", "single_atom_g", "strong_factor"});
        cfg.observability.target_lambda =
            number_or(obs, "target_lambda", "observability", cfg.observability.target_lambda);
        if (obs.contains("single_atom_g") && !obs["single_atom_g"].is_null()) {
            cfg.observability.single_atom_g = get_number(obs, "single_atom_g", "observability");
        }
        cfg.observability.strong_factor =
            number_or(obs, "strong_factor", "observability", cfg.observability.strong_factor);
        if (!(cfg.observability.strong_factor >= 1.0)) {
            throw ValidationError("observability.strong_factor must be at least 1");
        }
    }

    if (root.contains("output")) {
        const json& out = root["output"];
        reject_unknown(out, "output", {"path", "precision"});
        if (out.contains("path")) {
            if (!out["path"].is_string()) {
                throw ValidationError("output.path must be a string");
            }
            cfg.output.path = out["path"].get<std::string>();
        }
        if (out.contains("precision")) {
            cfg.output.precision = get_int(out, "precision", "output");
        }
        if (cfg.output.precision < 15 || cfg.output.precision > 17) {
            throw ValidationError("output.precision must be between 15 and 17");
        }
    }
    return cfg;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot read config '" + path + "'");
    }
    std::ostringstream text;
    text << in.rdbuf();
    return parse_config(text.str());
}

std::string resolved_config(const ExperimentConfig& config) {
    json drives = json::array();
    for (Eigen::Index k = 0; k < config.drives.size(); ++k) {
        drives.push_back(complex_to_json(config.drives(k)));
    }
    json root;
    root["system"] = {{"modes", config.n_modes},
                      {"atoms", config.n_atoms},
                      {"gamma", config.gamma},
                      {"delta_c", config.delta_c},
                      {"delta_a", config.delta_a},
                      {"drives", drives},
                      {"coupling", coupling_to_json(config.coupling)},
                      {"rank_tolerance", config.rank_tolerance}};
    if (config.sweep) {
        json sw = {{"delta_min", config.sweep->delta_min},
                   {"delta_max", config.sweep->delta_max},
                   {"count", config.sweep->count}};
        sw["pinned_delta_c"] = config.sweep->pinned_delta_c ? json(*config.sweep->pinned_delta_c)
                                                            : json(nullptr);
        root["sweep"] = sw;
    }
    if (config.oracle) {
        root["oracle"] = {{"n_max", config.oracle->n_max},
                          {"drive_ladder", config.oracle->drive_ladder}};
    }
    json obs = {{"target_lambda", config.observability.target_lambda},
                {"strong_factor", config.observability.strong_factor}};
    obs["single_atom_g"] = config.observability.single_atom_g
                               ? json(*config.observability.single_atom_g)
                               : json(nullptr);
    root["observability"] = obs;
    root["output"] = {{"path", config.output.path}, {"precision", config.output.precision}};
    return root.dump();
}

std::string config_hash(const ExperimentConfig& config) {
    std::uint64_t hash = 0xcbf29ce484222325ULL;
    for (const unsigned char c : resolved_config(config)) {
        hash ^= c;
        hash *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(hash));
    return buf;
}

SystemParams build_params(const ExperimentConfig& config) {
    MatrixXc coupling;
    switch (config.coupling.kind) {
        case CouplingSpec::Kind::Uniform:
            coupling = make_uniform_coupling(config.n_modes, config.n_atoms, config.coupling.g);
            break;
        case CouplingSpec::Kind::Localized:
            coupling = make_localized_coupling(config.n_modes, config.n_atoms, config.coupling.g,
                                               config.coupling.perturbation, config.coupling.seed);
            break;
        case CouplingSpec::Kind::Explicit:
            coupling = config.coupling.matrix;
            break;
    }
    return make_params(coupling, config.drives, config.delta_c, config.delta_a, config.gamma);
}

std::vector<double> detuning_grid(const SweepConfig& sweep) {
    std::vector<double> grid;
    grid.reserve(static_cast<std::size_t>(sweep.count));
    if (sweep.count == 1) {
        grid.push_back(sweep.delta_min);
        return grid;
    }
    const double step = (sweep.delta_max - sweep.delta_min) / (sweep.count - 1);
    for (int i = 0; i < sweep.count; ++i) {
        grid.push_back(i + 1 == sweep.count ? sweep.delta_max : sweep.delta_min + i * step);
    }
    return grid;
}

}  // namespace darkcavity
