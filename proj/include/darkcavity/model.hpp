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

#include <complex>
#include <cstdint>

#include <Eigen/Dense>

namespace darkcavity {

using Complex = std::complex<double>;
using MatrixXc = Eigen::MatrixXcd;
using VectorXc = Eigen::VectorXcd;

/// Default relative threshold below which a singular value counts as zero.
inline constexpr double kDefaultRankTolerance = 1e-10;

/// Physical parameters of the driven, lossy M-mode N-atom cavity.
///
/// Every energy and rate is expressed in units of the cavity loss rate, so
/// kappa defaults to 1. Drives and couplings may be complex.
struct SystemParams {
    int n_modes = 1;
    int n_atoms = 1;
    double delta_c = 0.0;
    double delta_a = 0.0;
    double kappa = 1.0;
    double gamma = 0.0;
    VectorXc drives;    // length M
    MatrixXc coupling;  // M x N

    /// Throws DimensionError or ValidationError when an invariant is broken.
    void validate() const;

    /// Copy with both detunings set to the same value.
    SystemParams with_detuning(double delta) const;
};

/// Builds validated parameters; drives and coupling must already have the
/// right shapes.
SystemParams make_params(const MatrixXc& coupling, const VectorXc& drives, double delta_c,
                         double delta_a, double gamma, double kappa = 1.0);

/// Singular value decomposition G = U diag(lambda) W^dagger of the coupling
/// matrix, together with the drives rotated into the collective cavity basis.
struct CollectiveDecomposition {
    MatrixXc u;                      // M x M, columns are collective cavity modes
    MatrixXc w;                      // N x N, columns are collective atomic modes
    Eigen::VectorXd singular_values; // length M, non-increasing
    int rank = 0;
    VectorXc transformed_drives;     // eta_tilde = U^dagger eta

    int n_modes() const { return static_cast<int>(u.rows()); }
    int n_atoms() const { return static_cast<int>(w.rows()); }

    /// M x N rectangular diagonal matrix of singular values.
    MatrixXc lambda_matrix() const;

    /// U Lambda W^dagger.
    MatrixXc reconstruct() const;
};

/// M x N matrix with every entry equal to g.
MatrixXc make_uniform_coupling(int n_modes, int n_atoms, double g);

/// g times the all-ones matrix plus seeded complex noise of modulus at most
/// `perturbation`. Models atoms localized over a region small compared to the
/// variation of the mode functions.
MatrixXc make_localized_coupling(int n_modes, int n_atoms, double g, double perturbation,
                                 std::uint64_t seed);

/// Collective-mode decomposition of params.coupling.
///
/// The largest-modulus entry of every column of U is made real and
/// non-negative (the matching column of W absorbs the phase), so repeated
/// runs return identical factors. rank counts singular values strictly
/// above rank_tolerance * max singular value.
CollectiveDecomposition decompose(const SystemParams& params,
                                  double rank_tolerance = kDefaultRankTolerance);

}  // namespace darkcavity
