// Copyright 2026 The lgbs Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include "lgbs/common.hpp"

namespace lgbs {

enum class Basis { XP, AlphaAlphaStar };

/// Zero-mean Gaussian state of `modes` modes. In the XP basis the quadrature
/// order is (x_1..x_M, p_1..p_M) and the vacuum has covariance I/2.
struct GaussianCovariance {
    int modes = 0;
    Basis basis = Basis::XP;
    CMatrix matrix;

    /// Real part of the matrix; only meaningful in the XP basis.
    RMatrix real() const { return matrix.real(); }
};

struct SqueezingSpec {
    double r = 0.0;
    int modes = 0;
};

struct LossChannel {
    double eta = 1.0;
};

/// sigma_0 = diag(e^{2r}/2 I_M, e^{-2r}/2 I_M).
GaussianCovariance squeezed_vacuum_cov(const SqueezingSpec &spec);

/// Beam-splitter loss: eta * sigma + (1 - eta) * I / 2.
GaussianCovariance apply_loss(const GaussianCovariance &cov, LossChannel chan);

/// det(sigma + I/2).
double q_representation_det(const GaussianCovariance &cov);

/// cosh^{2M} r * (1 - (1-eta)^2 tanh^2 r)^M, the closed form of the above for
/// the lossy squeezed input.
double q_representation_det_closed_form(int modes, double r, double eta);

/// Symplectic form Omega = [[0, I], [-I, 0]] for the XP ordering.
RMatrix symplectic_form(int modes);

/// Smallest eigenvalue of sigma + (i/2) Omega. Non-negative for physical states.
double uncertainty_min_eigenvalue(const GaussianCovariance &cov);

/// Symplectic eigenvalues of an XP covariance matrix, ascending.
Eigen::VectorXd symplectic_eigenvalues(const GaussianCovariance &cov);

/// XP -> alpha alpha* with alpha = (x + i p) / sqrt(2).
GaussianCovariance to_alpha_basis(const GaussianCovariance &cov);

/// Applies the interferometer U in the alpha alpha* basis: diag(U, U*) Sigma diag(U, U*)^dagger.
GaussianCovariance apply_interferometer(const GaussianCovariance &cov, const CMatrix &u);

/// Prefactor eta tanh r / (1 - (1-eta)^2 tanh^2 r) of the A matrix.
double a_matrix_prefactor(double r, double eta);

/// Closed form A = c [[U* U^dagger, (1-eta) tanh r I], [(1-eta) tanh r I, U U^T]].
CMatrix build_A_matrix(const CMatrix &u, double r, double eta);

/// A = X_{2M} (I - Sigma_Q^{-1}) computed from the full covariance pipeline
/// (squeeze, loss, basis change, interferometer).
CMatrix A_matrix_from_covariance(const CMatrix &u, double r, double eta);

/// Fidelity between a pure and an arbitrary zero-mean Gaussian state:
/// 1 / sqrt(det(sigma_pure + sigma_other)). Throws InvalidArgument if the
/// first argument is not pure to 1e-8 in its symplectic spectrum.
double gaussian_fidelity_pure(const GaussianCovariance &cov_pure, const GaussianCovariance &cov_mixed);

/// Fidelity between the ideal squeezed input and its lossy version, as a
/// product over modes of 2x2 determinants.
double lossy_squeezed_fidelity_closed_form(int modes, double r, double eta);

}  // namespace lgbs
