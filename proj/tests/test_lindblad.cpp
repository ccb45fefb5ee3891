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

#include "darkcavity/errors.hpp"
#include "darkcavity/lindblad.hpp"
#include "darkcavity/weaksolver.hpp"

using namespace darkcavity;

namespace {

MatrixXc random_hermitian(std::mt19937_64& rng, Eigen::Index d) {
    std::normal_distribution<double> normal(0.0, 1.0);
    MatrixXc a(d, d);
    for (Eigen::Index i = 0; i < d; ++i) {
        for (Eigen::Index j = 0; j < d; ++j) {
            a(i, j) = Complex(normal(rng), normal(rng));
        }
    }
    return (a + a.adjoint()) / 2.0;
}

}  // namespace

TEST_CASE("vectorization is column stacking") {
    MatrixXc a(2, 2);
    a << 1.0, 2.0, 3.0, 4.0;
    const VectorXc v = vectorize(a);
    CHECK(v(0) == Complex(1.0));
    CHECK(v(1) == Complex(3.0));
    CHECK(v(2) == Complex(2.0));
    CHECK(unvectorize(v, 2) == a);
}

TEST_CASE("superoperator matches direct application") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 5; ++trial) {
        const Eigen::Index d = 2 + trial;
        std::vector<JumpOperator> jumps;
        jumps.push_back({0.7, random_hermitian(rng, d) + Complex(0, 1) * random_hermitian(rng, d)});
        jumps.push_back({0.0, random_hermitian(rng, d)});
        const Liouvillian l(random_hermitian(rng, d), jumps);
        CHECK(l.jumps().size() == 1);
        const MatrixXc rho = random_hermitian(rng, d);
        const VectorXc lhs = l.matrix() * vectorize(rho);
        CHECK((lhs - vectorize(l.apply(rho))).norm() < 1e-12 * (1.0 + lhs.norm()));

        // trace preservation: vec(I)^T L = 0
        const VectorXc id = vectorize(MatrixXc::Identity(d, d));
        CHECK((id.transpose() * l.matrix()).norm() < 1e-12);

        // dissipativity
        Eigen::ComplexEigenSolver<MatrixXc> es(l.matrix());
        CHECK(es.eigenvalues().real().maxCoeff() <= 1e-9);
    }
}

TEST_CASE("two-level decay has rate kappa") {
    // |0>, |C> only; coupling to nothing
    MatrixXc h = MatrixXc::Zero(2, 2);
    MatrixXc lower = MatrixXc::Zero(2, 2);
    lower(0, 1) = 1.0;
    const double kappa = 1.3;
    const Liouvillian l(h, {{kappa, lower}});
    Eigen::ComplexEigenSolver<MatrixXc> es(l.matrix());
    // spectrum {0, -kappa/2, -kappa/2, -kappa}; the population mode decays at kappa
    std::vector<double> re;
    for (Eigen::Index i = 0; i < 4; ++i) {
        re.push_back(es.eigenvalues()(i).real());
    }
    std::sort(re.begin(), re.end());
    CHECK(re[0] == doctest::Approx(-kappa).epsilon(1e-12));
    CHECK(re[1] == doctest::Approx(-kappa / 2).epsilon(1e-12));
    CHECK(std::abs(re[3]) < 1e-12);
}

TEST_CASE("stationary solve against a kernel vector from SVD") {
    std::mt19937_64 rng(77);
    for (int trial = 0; trial < 6; ++trial) {
        const Eigen::Index d = 3 + trial % 3;
        std::vector<JumpOperator> jumps;
        for (Eigen::Index k = 1; k < d; ++k) {
            MatrixXc op = MatrixXc::Zero(d, d);
            op(0, k) = 1.0;
            jumps.push_back({0.5 + 0.1 * static_cast<double>(k), op});
        }
        const Liouvillian l(random_hermitian(rng, d), jumps);
        const auto sol = solve_stationary_density(l);

        Eigen::JacobiSVD<MatrixXc> svd(l.matrix(), Eigen::ComputeFullV);
        VectorXc kernel = svd.matrixV().col(d * d - 1);
        MatrixXc rho = unvectorize(kernel, d);
        rho /= rho.trace();
        CHECK((rho - sol.rho.data).norm() < 1e-10);
        CHECK(sol.rho.is_physical());
        CHECK(sol.residual <= 1e-10 * l.matrix().norm());
    }
}

TEST_CASE("reachable subspace drops undriven dark directions") {
    // gamma = 0, two atoms with equal coupling: the antisymmetric atomic state is
    // never reached from |0>
    const auto p = make_params(make_uniform_coupling(1, 2, 0.5), VectorXc::Constant(1, 0.1), 0.0,
                               0.0, 0.0);
    const Liouvillian l = build_liouvillian(p);
    const MatrixXc q = reachable_subspace(l, 0);
    CHECK(q.cols() == 3);
    CHECK((q.adjoint() * q - MatrixXc::Identity(3, 3)).norm() < 1e-12);
    // full space: |psi_D><psi_D|, |A_-><A_-| and the two coherences between them
    CHECK(kernel_dimension(l) == 4);

    SolveOptions strict;
    strict.check_uniqueness = true;
    const auto sol = solve_stationary_density(l, strict);
    CHECK(sol.solved_dimension == 3);

    SolveOptions full;
    full.restrict_to_reachable = false;
    full.check_uniqueness = true;
    CHECK_THROWS_AS(solve_stationary_density(l, full), DegeneracyError);
}

TEST_CASE("undriven system relaxes to the vacuum") {
    const auto p = make_params(make_uniform_coupling(1, 3, 0.4), VectorXc::Zero(1), 0.2, 0.2, 0.3);
    const auto sol = solve_stationary_density(build_liouvillian(p));
    MatrixXc vac = MatrixXc::Zero(5, 5);
    vac(0, 0) = 1.0;
    CHECK((sol.rho.data - vac).norm() < 1e-14);
    CHECK(build_liouvillian(p).apply(vac).norm() == 0.0);
}

TEST_CASE("double and extended precision agree on well-conditioned problems") {
    const auto p = make_params(make_uniform_coupling(1, 2, 0.5), VectorXc::Constant(1, 0.1), 0.8,
                               0.8, 0.1);
    SolveOptions dbl;
    dbl.precision = Precision::Double;
    SolveOptions ext;
    ext.precision = Precision::Extended;
    const auto a = solve_stationary_density(build_liouvillian(p), dbl);
    const auto b = solve_stationary_density(build_liouvillian(p), ext);
    CHECK((a.rho.data - b.rho.data).norm() < 1e-13);
    CHECK(a.rcond > 0.0);
}

TEST_CASE("dense budget is enforced") {
    const Eigen::Index d = 10;
    MatrixXc h = MatrixXc::Identity(d, d);
    for (Eigen::Index i = 0; i + 1 < d; ++i) {
        h(i, i + 1) = h(i + 1, i) = 0.3;
    }
    MatrixXc lower = MatrixXc::Zero(d, d);
    for (Eigen::Index i = 0; i + 1 < d; ++i) {
        lower(i, i + 1) = 1.0;
    }
    SolveOptions small;
    small.max_dimension = 4;
    CHECK_THROWS_AS(solve_stationary_density(Liouvillian(h, {{1.0, lower}}), small), ResourceError);
}

TEST_CASE("density matrix diagnostics") {
    DensityMatrix rho{MatrixXc::Zero(2, 2)};
    rho.data(0, 0) = 0.75;
    rho.data(1, 1) = 0.25;
    CHECK(rho.is_physical());
    CHECK(rho.min_eigenvalue() == doctest::Approx(0.25));
    VectorXc plus(2);
    plus << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
    CHECK(rho.fidelity(plus) == doctest::Approx(0.5));
    rho.data(1, 1) = -0.25;
    rho.data(0, 0) = 1.25;
    CHECK_FALSE(rho.is_physical());
    rho.data(0, 1) = 0.1;
    CHECK(rho.hermiticity_error() == doctest::Approx(0.1 * std::sqrt(2.0)));
}
