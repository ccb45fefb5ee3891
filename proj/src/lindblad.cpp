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

#include "darkcavity/lindblad.hpp"

#include <cmath>
#include <limits>
#include <string>
#include <utility>

#include "darkcavity/errors.hpp"

namespace darkcavity {

namespace {

MatrixXc kron(const MatrixXc& a, const MatrixXc& b) {
    MatrixXc out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

template <typename Real>
struct ConstrainedSolve {
    VectorXc solution;
    double rcond = 0.0;
};

// Solves L x = 0 with row 0 replaced by the trace functional, right-hand side e_0.
template <typename Real>
ConstrainedSolve<Real> constrained_solve(const MatrixXc& superop, Eigen::Index dimension) {
    using Scalar = std::complex<Real>;
    using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
    using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

    Mat system = superop.cast<Scalar>();
    system.row(0).setZero();
    for (Eigen::Index i = 0; i < dimension; ++i) {
        system(0, i * dimension + i) = Scalar(1);
    }
    Vec rhs = Vec::Zero(system.rows());
    rhs(0) = Scalar(1);

    Eigen::PartialPivLU<Mat> lu(system);
    ConstrainedSolve<Real> out;
    out.rcond = static_cast<double>(lu.rcond());
    const Real floor = Real(100) * std::numeric_limits<Real>::epsilon();
    if (!std::isfinite(out.rcond) || out.rcond < static_cast<double>(floor)) {
        throw NumericalError("stationary solve is singular or ill-conditioned (rcond=" +
                                 std::to_string(out.rcond) + ")",
                             out.rcond);
    }
    const Vec x = lu.solve(rhs);
    if (!x.allFinite()) {
        throw NumericalError("stationary solve produced non-finite values", out.rcond);
    }
    out.solution = x.template cast<Complex>();
    return out;
}

}  // namespace

VectorXc vectorize(const MatrixXc& rho) {
    return Eigen::Map<const VectorXc>(rho.data(), rho.size());
}

MatrixXc unvectorize(const VectorXc& v, Eigen::Index dimension) {
    return Eigen::Map<const MatrixXc>(v.data(), dimension, dimension);
}

Liouvillian::Liouvillian(MatrixXc hamiltonian, std::vector<JumpOperator> jumps)
    : hamiltonian_(std::move(hamiltonian)) {
    if (hamiltonian_.rows() != hamiltonian_.cols()) {
        throw DimensionError("Hamiltonian must be square");
    }
    for (auto& jump : jumps) {
        if (jump.op.rows() != hamiltonian_.rows() || jump.op.cols() != hamiltonian_.cols()) {
            throw DimensionError("jump operator shape does not match the Hamiltonian");
        }
        if (jump.rate < 0.0) {
            throw ValidationError("jump rates must be non-negative");
        }
        if (jump.rate > 0.0) {
            jumps_.push_back(std::move(jump));
        }
    }
}

MatrixXc Liouvillian::apply(const MatrixXc& rho) const {
    const Complex i_unit(0.0, 1.0);
    MatrixXc out = -i_unit * (hamiltonian_ * rho - rho * hamiltonian_);
    for (const auto& jump : jumps_) {
        const MatrixXc& l = jump.op;
        const MatrixXc ldl = l.adjoint() * l;
        out += jump.rate * (l * rho * l.adjoint() - 0.5 * (ldl * rho + rho * ldl));
    }
    return out;
}

MatrixXc Liouvillian::matrix() const {
    const Eigen::Index d = dimension();
    const MatrixXc id = MatrixXc::Identity(d, d);
    const Complex i_unit(0.0, 1.0);
    MatrixXc out = -i_unit * (kron(id, hamiltonian_) - kron(hamiltonian_.transpose(), id));
    for (const auto& jump : jumps_) {
        const MatrixXc& l = jump.op;
        const MatrixXc ldl = l.adjoint() * l;
        out += jump.rate *
               (kron(l.conjugate(), l) - 0.5 * kron(id, ldl) - 0.5 * kron(ldl.transpose(), id));
    }
    return out;
}

double DensityMatrix::hermiticity_error() const {
    return (data - data.adjoint()).norm();
}

double DensityMatrix::min_eigenvalue() const {
    const MatrixXc herm = 0.5 * (data + data.adjoint());
    Eigen::SelfAdjointEigenSolver<MatrixXc> eig(herm, Eigen::EigenvaluesOnly);
    return eig.eigenvalues().minCoeff();
}

double DensityMatrix::fidelity(const VectorXc& psi) const {
    return (psi.adjoint() * data * psi)(0, 0).real();
}

bool DensityMatrix::is_physical(double hermitian_tol, double trace_tol, double psd_tol) const {
    return hermiticity_error() <= hermitian_tol && std::abs(trace() - 1.0) <= trace_tol &&
           min_eigenvalue() >= -psd_tol;
}

MatrixXc reachable_subspace(const Liouvillian& liouvillian, Eigen::Index reference_state) {
    const Eigen::Index d = liouvillian.dimension();
    if (reference_state < 0 || reference_state >= d) {
        throw DimensionError("reference state index out of range");
    }
    std::vector<MatrixXc> generators{liouvillian.hamiltonian()};
    for (const auto& jump : liouvillian.jumps()) {
        generators.push_back(jump.op);
        generators.push_back(jump.op.adjoint() * jump.op);
    }

    std::vector<VectorXc> basis;
    basis.push_back(VectorXc::Unit(d, reference_state));
    constexpr double kRelTol = 1e-12;
    for (std::size_t next = 0; next < basis.size() && static_cast<Eigen::Index>(basis.size()) < d;
         ++next) {
        for (const auto& op : generators) {
            const double scale = op.norm();
            if (scale == 0.0) {
                continue;
            }
            VectorXc w = op * basis[next];
            // Two Gram-Schmidt passes keep the basis orthonormal to roundoff.
            for (int pass = 0; pass < 2; ++pass) {
                for (const auto& q : basis) {
                    w -= q.dot(w) * q;
                }
            }
            const double norm = w.norm();
            if (norm > kRelTol * scale) {
                basis.push_back(w / norm);
                if (static_cast<Eigen::Index>(basis.size()) == d) {
                    break;
                }
            }
        }
    }

    MatrixXc q(d, static_cast<Eigen::Index>(basis.size()));
    for (std::size_t j = 0; j < basis.size(); ++j) {
        q.col(static_cast<Eigen::Index>(j)) = basis[j];
    }
    return q;
}

Eigen::Index kernel_dimension(const Liouvillian& liouvillian, double threshold) {
    const MatrixXc superop = liouvillian.matrix();
    Eigen::BDCSVD<MatrixXc> svd(superop);
    const Eigen::VectorXd& sv = svd.singularValues();
    const double largest = sv.size() > 0 ? sv(0) : 0.0;
    Eigen::Index count = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i) {
        if (sv(i) <= threshold * largest) {
            ++count;
        }
    }
    return count;
}

StationarySolution solve_stationary_density(const Liouvillian& liouvillian,
                                            const SolveOptions& options) {
    const Eigen::Index d = liouvillian.dimension();

    MatrixXc q = MatrixXc::Identity(d, d);
    if (options.restrict_to_reachable) {
        q = reachable_subspace(liouvillian, options.reference_state);
    }
    const Eigen::Index r = q.cols();
    if (r > options.max_dimension) {
        throw ResourceError("stationary solve needs Hilbert dimension " + std::to_string(r) +
                            " above the budget " + std::to_string(options.max_dimension));
    }

    std::vector<JumpOperator> reduced_jumps;
    for (const auto& jump : liouvillian.jumps()) {
        reduced_jumps.push_back({jump.rate, q.adjoint() * jump.op * q});
    }
    const Liouvillian reduced(q.adjoint() * liouvillian.hamiltonian() * q,
                              std::move(reduced_jumps));

    if (options.check_uniqueness) {
        const Eigen::Index kernel = kernel_dimension(reduced, 1e-12);
        if (kernel > 1) {
            throw DegeneracyError("stationary state is not unique (kernel dimension " +
                                      std::to_string(kernel) + ")",
                                  kernel);
        }
    }

    const MatrixXc superop = reduced.matrix();
    bool extended = options.precision == Precision::Extended;
    if (options.precision == Precision::Automatic) {
        extended = r * r <= options.extended_limit;
    }
    VectorXc x;
    double rcond = 0.0;
    if (extended) {
        auto solved = constrained_solve<long double>(superop, r);
        x = std::move(solved.solution);
        rcond = solved.rcond;
    } else {
        auto solved = constrained_solve<double>(superop, r);
        x = std::move(solved.solution);
        rcond = solved.rcond;
    }

    const MatrixXc reduced_rho = unvectorize(x, r);
    const MatrixXc raw = q * reduced_rho * q.adjoint();

    StationarySolution out;
    out.asymmetry = (raw - raw.adjoint()).norm();
    out.rho.data = 0.5 * (raw + raw.adjoint());
    out.residual = liouvillian.apply(out.rho.data).norm();
    out.rcond = rcond;
    out.solved_dimension = r;
    return out;
}

}  // namespace darkcavity
