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

#include <cmath>
#include <random>

#include <Eigen/Eigenvalues>

#include "darkcavity/analytic.hpp"
#include "darkcavity/errors.hpp"
#include "darkcavity/fockoracle.hpp"
#include "darkcavity/weaksolver.hpp"

using namespace darkcavity;

namespace {

SystemParams uniform(int m, int n, double g, double eta, double delta, double gamma) {
    return make_params(make_uniform_coupling(m, n, g), VectorXc::Constant(m, eta), delta, delta,
                       gamma);
}

}  // namespace

TEST_CASE("index encoding round-trips") {
    const FockBasis b(2, 3, 2);
    CHECK(b.dimension() == 9 * 8);
    for (Eigen::Index i = 0; i < b.dimension(); ++i) {
        CHECK(b.index(b.decode(i)) == i);
    }
    const FockState s{{1, 2}, {0, 1, 1}};
    // 1 + 2*3 + 9*(2 + 4)
    CHECK(b.index(s) == 1 + 6 + 9 * 6);
    CHECK(b.photons(b.index(s), 1) == 2);
    CHECK(b.excited(b.index(s), 0) == 0);
    CHECK(b.excited(b.index(s), 2) == 1);
    CHECK(b.decode(0).photons == std::vector<int>{0, 0});
}

TEST_CASE("ladder operators") {
    const FockBasis b(1, 1, 4);
    const MatrixXc a = annihilation_operator(b, 0);
    const MatrixXc n = a.adjoint() * a;
    for (Eigen::Index i = 0; i < b.dimension(); ++i) {
        CHECK(std::abs(n(i, i) - static_cast<double>(b.photons(i, 0))) < 1e-14);
    }
    const MatrixXc s = lowering_operator(b, 0);
    CHECK((s * s).norm() == 0.0);
    CHECK((a * s - s * a).norm() == 0.0);
}

TEST_CASE("budgets are enforced") {
    const auto p = uniform(1, 6, 0.3, 0.1, 0.0, 0.0);
    FockBudget tight;
    tight.max_hamiltonian_dimension = 100;
    CHECK_THROWS_AS(make_fock_basis(p, 3, tight), ResourceError);
    CHECK_NOTHROW(make_fock_basis(p, 3));
    // 4 * 64 = 256 > 64 for the stationary solve
    CHECK_THROWS_AS(solve_full_stationary(p, 3), ResourceError);
    CHECK_THROWS_AS(build_full_hamiltonian(uniform(1, 1, 0.3, 0.1, 0.0, 0.0), 0), Error);
}

TEST_CASE("single-excitation block equals the weak Hamiltonian") {
    std::mt19937_64 rng(8);
    std::normal_distribution<double> normal(0.0, 1.0);
    for (int trial = 0; trial < 8; ++trial) {
        const int m = 1 + trial % 2;
        const int n = m + trial % 3;
        MatrixXc g(m, n);
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < n; ++j) g(i, j) = Complex(normal(rng), normal(rng));
        VectorXc eta(m);
        for (int i = 0; i < m; ++i) eta(i) = Complex(normal(rng), normal(rng));
        const auto p = make_params(g, eta, normal(rng), normal(rng), 0.0);
        CHECK((single_excitation_block(p, 1) - build_hamiltonian(p)).norm() < 1e-14);
        CHECK((single_excitation_block(p, 3) - build_hamiltonian(p)).norm() < 1e-14);
    }
}

TEST_CASE("free Hamiltonian is diagonal") {
    const auto p = uniform(2, 2, 0.0, 0.0, 0.4, 0.0);
    const MatrixXc h = build_full_hamiltonian(p, 2);
    CHECK((h - MatrixXc(h.diagonal().asDiagonal())).norm() == 0.0);
}

TEST_CASE("driven empty cavity is a displaced oscillator") {
    // H = -Delta a^+a + eta (a + a^+) has levels -Delta n + eta^2/Delta
    const double delta = -0.8;
    const double eta = 0.15;
    const auto p = uniform(1, 1, 0.0, eta, delta, 0.0);
    const int n_max = 30;
    const MatrixXc h = build_full_hamiltonian(p, n_max);
    CHECK((h - h.adjoint()).norm() == 0.0);
    Eigen::SelfAdjointEigenSolver<MatrixXc> es(h);
    // atom in |g> contributes +Delta_A/2 = delta/2, atom in |e> -delta/2
    for (int level = 0; level < 4; ++level) {
        const double expected = -delta * level + eta * eta / delta;
        // every oscillator level appears twice, once for each atomic state
        const double ground_branch = expected + delta / 2;
        const auto diff = (es.eigenvalues().array() - ground_branch).abs().minCoeff();
        CHECK(diff < 1e-12);
    }
}

TEST_CASE("driven damped cavity matches the coherent steady state") {
    for (double delta : {-1.0, -0.3, 0.0, 0.3, 1.0}) {
        const double eta = 0.1;
        const auto p = uniform(1, 1, 0.0, eta, delta, 0.2);
        const auto s = solve_full_stationary(p, 8);
        const double expected = eta * eta / (delta * delta + 0.25);
        CHECK(s.total_cavity_population == doctest::Approx(expected).epsilon(1e-9));
        CHECK_FALSE(s.truncation_warning);
        CHECK(s.rho.is_physical());
    }
}

TEST_CASE("no drive gives the vacuum") {
    const auto s = solve_full_stationary(uniform(1, 2, 0.5, 0.0, 0.3, 0.1), 3);
    CHECK(s.total_cavity_population == 0.0);
    CHECK(s.rho.data(0, 0).real() == doctest::Approx(1.0));
}

TEST_CASE("excitation number is conserved without drive") {
    std::mt19937_64 rng(55);
    std::normal_distribution<double> normal(0.0, 1.0);
    MatrixXc g(2, 3);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 3; ++j) g(i, j) = Complex(normal(rng), normal(rng));
    const auto p = make_params(g, VectorXc::Zero(2), 0.3, -0.4, 0.0);
    // hard truncation removes a^+ sigma^- and its conjugate together at the top level
    const MatrixXc h = build_full_hamiltonian(p, 3);
    const MatrixXc n = excitation_number_operator(make_fock_basis(p, 3));
    const MatrixXc c = h * n - n * h;
    CHECK(c.norm() <= 1e-12 * h.norm());
}

TEST_CASE("weak drive agreement and convergence") {
    const double g = 1.0 / std::sqrt(2.0);
    const auto p = uniform(1, 2, g, 1e-3, 0.5, 0.0);
    const auto weak = solve_stationary(p);
    const auto full = solve_full_stationary(p, 3);
    CHECK(std::abs(full.total_cavity_population - weak.total_cavity_population) /
              weak.total_cavity_population <=
          1e-4);
    // truncation stability
    const auto full4 = solve_full_stationary(p, 4);
    CHECK(std::abs(full4.total_cavity_population - full.total_cavity_population) /
              full.total_cavity_population <
          1e-8);
    // gap scales with eta^2: C = gap / eta^2 stable across the ladder
    std::vector<double> c;
    for (double eta : {1e-2, 1e-3, 1e-4}) {
        auto q = p;
        q.drives.setConstant(eta);
        const double w = solve_stationary(q).total_cavity_population;
        const double f = solve_full_stationary(q, 3).total_cavity_population;
        c.push_back(std::abs(f - w) / w / (eta * eta));
    }
    CHECK(c[1] == doctest::Approx(c[2]).epsilon(0.05));
    CHECK(c[0] == doctest::Approx(c[1]).epsilon(0.05));
}

TEST_CASE("truncation diagnostics fire for a strongly driven cavity") {
    const auto s = solve_full_stationary(uniform(1, 1, 0.0, 1.0, 0.0, 0.0), 3);
    CHECK(s.truncation_warning);
    CHECK(s.top_level_population[0] > 1e-3);
}

TEST_CASE("ground-state continuation of the isolated system") {
    SUBCASE("undriven") {
        const auto r = ground_state_population(uniform(1, 3, 1.0, 0.0, 0.0, 0.0), 6);
        CHECK(r.photon_number == 0.0);
        CHECK(r.vacuum_overlap == doctest::Approx(1.0));
    }
    SUBCASE("threshold and preconditions") {
        CHECK_THROWS_AS(ground_state_population(uniform(1, 2, 1.0, 0.5, 0.0, 0.0), 6), ThresholdError);
        CHECK_THROWS_AS(ground_state_population(uniform(2, 2, 1.0, 0.05, 0.0, 0.0), 6), ValidationError);
    }
    SUBCASE("per-atom excitation follows the log formula") {
        // At 4 eta/(N g) = 0.1 the atomic excitation per atom of the continued
        // ground state reproduces -1/4 log(1 - x^2); the photon number does not
        // (documented in the README).
        for (int n : {2, 3, 4}) {
            const double eta = 0.025 * n;
            const auto r = ground_state_population(uniform(1, n, 1.0, eta, 0.0, 0.0), 16);
            CAPTURE(n);
            CHECK(r.threshold_ratio == doctest::Approx(0.1));
            CHECK(r.excitation_per_atom ==
                  doctest::Approx(driven_collective_population(eta, 1.0, n)).epsilon(0.01));
            CHECK(r.vacuum_overlap > 0.9);
        }
    }
}
