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

#include "lgbs/gaussian.hpp"

#include <algorithm>
#include <cmath>

#include "lgbs/random.hpp"

namespace lgbs {

namespace {

void require_xp(const GaussianCovariance &cov, const char *what) {
    require(cov.basis == Basis::XP, std::string(what) + ": covariance must be in the XP basis");
    require(cov.modes >= 1 && cov.matrix.rows() == 2 * cov.modes && cov.matrix.cols() == 2 * cov.modes,
            std::string(what) + ": covariance shape does not match mode count");
}

CMatrix alpha_transform(int modes) {
    const double s = 1.0 / std::sqrt(2.0);
    const Complex i(0.0, 1.0);
    CMatrix w = CMatrix::Zero(2 * modes, 2 * modes);
    for (int k = 0; k < modes; ++k) {
        w(k, k) = s;
        w(k, modes + k) = i * s;
        w(modes + k, k) = s;
        w(modes + k, modes + k) = -i * s;
    }
    return w;
}

}  // namespace

GaussianCovariance squeezed_vacuum_cov(const SqueezingSpec &spec) {
    require(spec.r >= 0.0, "squeezed_vacuum_cov: squeezing must be non-negative");
    require(spec.modes >= 2 && spec.modes % 2 == 0, "squeezed_vacuum_cov: mode count must be even and positive");
    const int m = spec.modes;
    GaussianCovariance cov{m, Basis::XP, CMatrix::Zero(2 * m, 2 * m)};
    for (int k = 0; k < m; ++k) {
        cov.matrix(k, k) = std::exp(2.0 * spec.r) / 2.0;
        cov.matrix(m + k, m + k) = std::exp(-2.0 * spec.r) / 2.0;
    }
    return cov;
}

GaussianCovariance apply_loss(const GaussianCovariance &cov, LossChannel chan) {
    require_xp(cov, "apply_loss");
    require(chan.eta >= 0.0 && chan.eta <= 1.0, "apply_loss: transmission must lie in [0, 1]");
    GaussianCovariance out = cov;
    const int n = 2 * cov.modes;
    out.matrix = chan.eta * cov.matrix + (1.0 - chan.eta) * 0.5 * CMatrix::Identity(n, n);
    return out;
}

double q_representation_det(const GaussianCovariance &cov) {
    require_xp(cov, "q_representation_det");
    const int n = 2 * cov.modes;
    RMatrix q = cov.real() + 0.5 * RMatrix::Identity(n, n);
    return q.partialPivLu().determinant();
}

double q_representation_det_closed_form(int modes, double r, double eta) {
    double t = std::tanh(r);
    double z = (1.0 - eta) * (1.0 - eta) * t * t;
    return std::pow(std::cosh(r), 2.0 * modes) * std::pow(1.0 - z, modes);
}

RMatrix symplectic_form(int modes) {
    RMatrix omega = RMatrix::Zero(2 * modes, 2 * modes);
    omega.topRightCorner(modes, modes) = RMatrix::Identity(modes, modes);
    omega.bottomLeftCorner(modes, modes) = -RMatrix::Identity(modes, modes);
    return omega;
}

double uncertainty_min_eigenvalue(const GaussianCovariance &cov) {
    require_xp(cov, "uncertainty_min_eigenvalue");
    CMatrix h = cov.real().cast<Complex>() + Complex(0.0, 0.5) * symplectic_form(cov.modes).cast<Complex>();
    Eigen::SelfAdjointEigenSolver<CMatrix> es(h);
    return es.eigenvalues().minCoeff();
}

Eigen::VectorXd symplectic_eigenvalues(const GaussianCovariance &cov) {
    require_xp(cov, "symplectic_eigenvalues");
    // Eigenvalues of i * Omega * sigma come in +-nu pairs.
    CMatrix k = Complex(0.0, 1.0) * (symplectic_form(cov.modes) * cov.real()).cast<Complex>();
    Eigen::ComplexEigenSolver<CMatrix> es(k, false);
    Eigen::VectorXd mags = es.eigenvalues().cwiseAbs();
    std::sort(mags.data(), mags.data() + mags.size());
    Eigen::VectorXd nu(cov.modes);
    for (int j = 0; j < cov.modes; ++j) {
        nu(j) = 0.5 * (mags(2 * j) + mags(2 * j + 1));
    }
    return nu;
}

GaussianCovariance to_alpha_basis(const GaussianCovariance &cov) {
    require_xp(cov, "to_alpha_basis");
    CMatrix w = alpha_transform(cov.modes);
    return GaussianCovariance{cov.modes, Basis::AlphaAlphaStar, w * cov.matrix * w.adjoint()};
}

GaussianCovariance apply_interferometer(const GaussianCovariance &cov, const CMatrix &u) {
    require(cov.basis == Basis::AlphaAlphaStar, "apply_interferometer: covariance must be in the alpha basis");
    const int m = cov.modes;
    require(u.rows() == m && u.cols() == m, "apply_interferometer: unitary size does not match mode count");
    CMatrix g = CMatrix::Zero(2 * m, 2 * m);
    g.topLeftCorner(m, m) = u;
    g.bottomRightCorner(m, m) = u.conjugate();
    return GaussianCovariance{m, Basis::AlphaAlphaStar, g * cov.matrix * g.adjoint()};
}

double a_matrix_prefactor(double r, double eta) {
    double t = std::tanh(r);
    double z = (1.0 - eta) * (1.0 - eta) * t * t;
    return eta * t / (1.0 - z);
}

CMatrix build_A_matrix(const CMatrix &u, double r, double eta) {
    require(u.rows() == u.cols() && u.rows() >= 1, "build_A_matrix: U must be square");
    require(unitarity_residual(u) <= 1e-10, "build_A_matrix: U is not unitary to 1e-10");
    require(eta >= 0.0 && eta <= 1.0 && r >= 0.0, "build_A_matrix: need r >= 0 and eta in [0, 1]");
    const Eigen::Index m = u.rows();
    const double c = a_matrix_prefactor(r, eta);
    const double off = (1.0 - eta) * std::tanh(r);
    CMatrix uut = u * u.transpose();
    CMatrix a(2 * m, 2 * m);
    a.topLeftCorner(m, m) = uut.conjugate();
    a.topRightCorner(m, m) = off * CMatrix::Identity(m, m);
    a.bottomLeftCorner(m, m) = off * CMatrix::Identity(m, m);
    a.bottomRightCorner(m, m) = uut;
    a *= c;
    // Exact symmetry; U U^T is symmetric only up to rounding.
    CMatrix sym = 0.5 * (a + a.transpose());
    return sym;
}

CMatrix A_matrix_from_covariance(const CMatrix &u, double r, double eta) {
    require(u.rows() == u.cols() && u.rows() >= 1, "A_matrix_from_covariance: U must be square");
    const int m = static_cast<int>(u.rows());
    require(m % 2 == 0, "A_matrix_from_covariance: mode count must be even");
    GaussianCovariance in = apply_loss(squeezed_vacuum_cov({r, m}), {eta});
    GaussianCovariance out = apply_interferometer(to_alpha_basis(in), u);
    CMatrix sigma_q = out.matrix + 0.5 * CMatrix::Identity(2 * m, 2 * m);
    CMatrix x = CMatrix::Zero(2 * m, 2 * m);
    x.topRightCorner(m, m) = CMatrix::Identity(m, m);
    x.bottomLeftCorner(m, m) = CMatrix::Identity(m, m);
    return x * (CMatrix::Identity(2 * m, 2 * m) - sigma_q.inverse());
}

double gaussian_fidelity_pure(const GaussianCovariance &cov_pure, const GaussianCovariance &cov_mixed) {
    require_xp(cov_pure, "gaussian_fidelity_pure");
    require_xp(cov_mixed, "gaussian_fidelity_pure");
    require(cov_pure.modes == cov_mixed.modes, "gaussian_fidelity_pure: mode counts differ");
    Eigen::VectorXd nu = symplectic_eigenvalues(cov_pure);
    for (Eigen::Index j = 0; j < nu.size(); ++j) {
        require(std::abs(nu(j) - 0.5) <= 1e-8, "gaussian_fidelity_pure: first state is not pure");
    }
    RMatrix sum = cov_pure.real() + cov_mixed.real();
    return 1.0 / std::sqrt(sum.partialPivLu().determinant());
}

double lossy_squeezed_fidelity_closed_form(int modes, double r, double eta) {
    double e2 = std::exp(2.0 * r);
    double xx = e2 / 2.0 + (eta * e2 + 1.0 - eta) / 2.0;
    double pp = 1.0 / (2.0 * e2) + (eta / e2 + 1.0 - eta) / 2.0;
    return std::pow(xx * pp, -0.5 * modes);
}

}  // namespace lgbs
