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

#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#ifndef DARKCAVITY_CLI
#error "DARKCAVITY_CLI must name the command-line binary"
#endif

namespace fs = std::filesystem;

namespace {

struct Scratch {
    fs::path dir;
    Scratch() {
        dir = fs::temp_directory_path() / ("darkcavity_cli_" + std::to_string(::getpid()));
        fs::create_directories(dir);
    }
    ~Scratch() { fs::remove_all(dir); }

    fs::path write(const std::string& name, const std::string& text) const {
        const fs::path p = dir / name;
        std::ofstream(p) << text;
        return p;
    }
};

int run(const std::string& args) {
    const std::string cmd = std::string(DARKCAVITY_CLI) + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

const char* kSweep = R"({
  "system": {"modes": 2, "atoms": 4, "gamma": 0.01, "drives": [0.1, 0.1],
             "coupling": {"kind": "localized", "g": 0.4, "perturbation": 0.3, "seed": 1}},
  "sweep": {"delta_min": -2, "delta_max": 2, "count": 21}
})";

}  // namespace

TEST_CASE("sweep output is byte-identical for identical inputs") {
    Scratch s;
    const auto cfg = s.write("sweep.json", kSweep);
    const auto a = s.dir / "a.csv";
    const auto b = s.dir / "b.csv";
    CHECK(run("sweep --config " + cfg.string() + " --out " + a.string()) == 0);
    CHECK(run("sweep --config " + cfg.string() + " --out " + b.string() + " --threads 3") == 0);
    CHECK(slurp(a) == slurp(b));
    CHECK(slurp(a).find("\ndelta,pop_mode_1,pop_mode_2,pop_total") != std::string::npos);

    // the seed flag changes the coupling and therefore the output
    const auto c = s.dir / "c.csv";
    CHECK(run("sweep --config " + cfg.string() + " --out " + c.string() + " --seed 2") == 0);
    CHECK(slurp(a) != slurp(c));
}

TEST_CASE("exit codes") {
    Scratch s;
    const auto good = s.write("good.json", kSweep);
    SUBCASE("validation") {
        const auto bad = s.write("bad.json", R"({"system": {"modes": 1}})");
        CHECK(run("sweep --config " + bad.string()) == 1);
        CHECK(run("sweep --config " + (s.dir / "missing.json").string()) == 1);
        CHECK(run("sweep") == 1);
        CHECK(run("frobnicate --config " + good.string()) == 1);
        CHECK(run("sweep --config " + good.string() + " --out " +
                  (s.dir / "no" / "such" / "dir.csv").string()) == 1);
    }
    SUBCASE("numerical: driven mode without a dark partner") {
        const auto cfg = s.write("nodark.json", R"({
          "system": {"modes": 2, "atoms": 2, "drives": [0.1, 0.1],
                     "coupling": {"kind": "explicit", "matrix": [[1, 0], [0, 0]]}}})");
        CHECK(run("darkstate --config " + cfg.string()) == 2);
    }
    SUBCASE("resource") {
        const auto cfg = s.write("big.json", R"({
          "system": {"modes": 1, "atoms": 6, "drives": [0.01],
                     "coupling": {"kind": "uniform", "g": 0.4}},
          "oracle": {"n_max": 3}})");
        CHECK(run("oracle --config " + cfg.string()) == 3);
    }
    SUBCASE("success paths") {
        CHECK(run("svd --config " + good.string()) == 0);
        CHECK(run("svd --json --config " + good.string()) == 0);
        CHECK(run("observability --config " + good.string()) == 0);
        CHECK(run("darkstate --json --config " + good.string()) == 0);
        const auto oracle = s.write("oracle.json", R"({
          "system": {"modes": 1, "atoms": 2, "delta_c": 0.5, "delta_a": 0.5, "drives": [0.001],
                     "coupling": {"kind": "uniform", "g": 0.7071067811865476}},
          "oracle": {"n_max": 3}})");
        CHECK(run("oracle --config " + oracle.string() + " --out " + (s.dir / "o.csv").string()) == 0);
        CHECK(fs::exists(s.dir / "o.csv"));
    }
}

TEST_CASE("darkstate report content") {
    Scratch s;
    const auto cfg = s.write("free.json", R"({
      "system": {"modes": 1, "atoms": 4, "gamma": 3.25, "drives": [0.1],
                 "coupling": {"kind": "uniform", "g": 0.5}},
      "observability": {"single_atom_g": 0.0075}})");
    const auto out = s.dir / "report.json";
    CHECK(run("observability --json --config " + cfg.string() + " --out " + out.string()) == 0);
    const std::string text = slurp(out);
    CHECK(text.find("\"verdict\": \"not observable\"") != std::string::npos);
    CHECK(text.find("\"window_empty\": true") != std::string::npos);
}
