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

#pragma once

#include <vector>

#include "darkcavity/model.hpp"

namespace darkcavity {

/// One dissipation channel rate * D[op], D[L]rho = L rho L^+ - {L^+ L, rho}/2.
struct JumpOperator {
    double rate = 0.0;
    MatrixXc op;
};

/// Column-stacking vectorization: vec(A X B) = (B^T kron A) vec(X).
VectorXc vectorize(const MatrixXc& rho);
MatrixXc unvectorize(const VectorXc& v, Eigen::Index dimension);

/// Generator of the master equation d rho/dt = -i[H, rho] + sum_k rate_k D[L_k] rho.
///
/// Only the Hamiltonian and jump operators are stored; the D^2 x D^2
/// superoperator is assembled on demand because the Fock-space oracle
/// works with Hilbert dimensions where it is not needed.
class Liouvillian {
public:
    Liouvillian(MatrixXc hamiltonian, std::vector<JumpOperator> jumps);

    Eigen::Index dimension() const { return hamiltonian_.rows(); }
    const MatrixXc& hamiltonian() const { return hamiltonian_; }
    /// Channels with rate > 0; zero-rate channels are dropped on construction.
    const std::vector<JumpOperator>& jumps() const { return jumps_; }

    /// L(rho) evaluated with D x D matrix products.
    MatrixXc apply(const MatrixXc& rho) const;

    /// Dense superoperator acting on vectorize(rho).
    MatrixXc matrix() const;

private:
    MatrixXc hamiltonian_;
    std::vector<JumpOperator> jumps_;
};

/// Hermitian unit-trace density matrix.
struct DensityMatrix {
    MatrixXc data;

    Eigen::Index dimension() const { return data.rows(); }
    Complex trace() const { return data.trace(); }
    /// Frobenius norm of rho - rho^+.
    double hermiticity_error() const;
    double min_eigenvalue() const;
    /// <psi|rho|psi> for a normalized psi.
    double fidelity(const VectorXc& psi) const;
    /// Tolerances: Hermitian 1e-10, trace 1e-10, PSD -1e-8.
    bool is_physical(double hermitian_tol = 1e-10, double trace_tol = 1e-10,
                     double psd_tol = 1e-8) const;
};

enum class Precision {
    Automatic,  // extended when the reduced Liouville space is small
    Double,
    Extended,
};

struct SolveOptions {
    Precision precision = Precision::Automatic;
    /// Largest Liouville-space size (D^2) solved in extended precision under Automatic.
    Eigen::Index extended_limit = 1024;
    /// Solve only on the subspace reachable from `reference_state`.
    bool restrict_to_reachable = true;
    Eigen::Index reference_state = 0;
    /// Compute the kernel dimension and raise DegeneracyError when it exceeds 1.
    bool check_uniqueness = false;
    /// Largest Hilbert dimension (after reduction) accepted for the dense solve.
    Eigen::Index max_dimension = 64;
};

struct StationarySolution {
    DensityMatrix rho;
    double residual = 0.0;       // ||L(rho)||_F after symmetrization
    double asymmetry = 0.0;      // ||rho - rho^+||_F before symmetrization
    double rcond = 0.0;          // reciprocal condition estimate of the constrained system
    Eigen::Index solved_dimension = 0;
};

/// Orthonormal basis (columns) of the smallest subspace containing the
/// reference state that is invariant under H, every L_k and every L_k^+ L_k.
/// Density matrices supported there stay there under the master equation.
MatrixXc reachable_subspace(const Liouvillian& liouvillian, Eigen::Index reference_state);

/// Kernel dimension of the superoperator, from a rank-revealing LU.
Eigen::Index kernel_dimension(const Liouvillian& liouvillian, double threshold = 1e-9);

/// Stationary state from L vec(rho) = 0 with the first equation replaced by
/// Tr rho = 1. The result is symmetrized (rho + rho^+)/2.
StationarySolution solve_stationary_density(const Liouvillian& liouvillian,
                                            const SolveOptions& options = {});

}  // namespace darkcavity
