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

#include "lgbs/hafnian.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "lgbs/gaussian.hpp"
#include "lgbs/random.hpp"

namespace lgbs {

ComplexSymMatrix::ComplexSymMatrix(const CMatrix &m) {
    require(m.rows() == m.cols(), "ComplexSymMatrix: matrix must be square");
    m_ = 0.5 * (m + m.transpose());
}

Outcome::Outcome(std::vector<int> modes) : modes_(std::move(modes)) {
    for (int s : modes_) {
        require(s >= 1, "Outcome: mode indices are 1-based");
    }
    std::sort(modes_.begin(), modes_.end());
}

double Outcome::multiplicity_product() const {
    double mu = 1.0;
    std::size_t i = 0;
    while (i < modes_.size()) {
        std::size_t j = i;
        while (j < modes_.size() && modes_[j] == modes_[i]) {
            ++j;
        }
        for (std::size_t k = 2; k <= j - i; ++k) {
            mu *= static_cast<double>(k);
        }
        i = j;
    }
    return mu;
}

bool Outcome::collision_free() const {
    return std::adjacent_find(modes_.begin(), modes_.end()) == modes_.end();
}

namespace {

Complex enumerate_matchings(const CMatrix &b, std::uint32_t remaining) {
    if (remaining == 0) {
        return Complex(1.0, 0.0);
    }
    const int i = std::countr_zero(remaining);
    const std::uint32_t rest = remaining & ~(1u << i);
    Complex sum(0.0, 0.0);
    for (std::uint32_t scan = rest; scan != 0; scan &= scan - 1) {
        const int j = std::countr_zero(scan);
        const Complex w = b(i, j);
        if (w != Complex(0.0, 0.0)) {
            sum += w * enumerate_matchings(b, rest & ~(1u << j));
        }
    }
    return sum;
}

void check_even(Eigen::Index n, const char *what) {
    if (n % 2 != 0) {
        throw InvalidArgument(std::string(what) + ": hafnian needs an even dimension");
    }
}

}  // namespace

Complex haf_enumerate(const ComplexSymMatrix &b) {
    const Eigen::Index n = b.dim();
    check_even(n, "haf_enumerate");
    if (n > kEnumerateMaxDim) {
        throw SizeLimitError("haf_enumerate: dimension " + std::to_string(n) + " exceeds 16");
    }
    const std::uint32_t all = n == 0 ? 0u : static_cast<std::uint32_t>((1ull << n) - 1);
    return enumerate_matchings(b.matrix(), all);
}

Complex haf_fast(const ComplexSymMatrix &b) {
    const Eigen::Index n = b.dim();
    check_even(n, "haf_fast");
    if (n > kFastMaxDim) {
        throw SizeLimitError("haf_fast: dimension " + std::to_string(n) + " exceeds 32");
    }
    if (n == 0) {
        return Complex(1.0, 0.0);
    }
    const int m = static_cast<int>(n / 2);
    const CMatrix &a = b.matrix();

    std::vector<Complex> power_terms(m + 1);
    std::vector<Complex> coeffs(m + 1);
    std::vector<int> idx;
    idx.reserve(n);
    Complex total(0.0, 0.0);

    for (std::uint64_t subset = 1; subset < (1ull << m); ++subset) {
        const int k = std::popcount(subset);
        idx.clear();
        for (int j = 0; j < m; ++j) {
            if (subset & (1ull << j)) {
                idx.push_back(j);
            }
        }
        for (int t = 0; t < k; ++t) {
            idx.push_back(idx[t] + m);
        }
        // C = A[idx, idx] X, where X swaps the two halves of the columns.
        CMatrix c(2 * k, 2 * k);
        for (int row = 0; row < 2 * k; ++row) {
            for (int col = 0; col < 2 * k; ++col) {
                const int swapped = col < k ? col + k : col - k;
                c(row, col) = a(idx[row], idx[swapped]);
            }
        }
        CMatrix power = c;
        for (int j = 1; j <= m; ++j) {
            if (j > 1) {
                power = power * c;
            }
            power_terms[j] = power.trace() / (2.0 * j);
        }
        // Coefficient of x^m in exp(sum_j power_terms[j] x^j).
        coeffs[0] = Complex(1.0, 0.0);
        for (int q = 1; q <= m; ++q) {
            Complex acc(0.0, 0.0);
            for (int j = 1; j <= q; ++j) {
                acc += static_cast<double>(j) * power_terms[j] * coeffs[q - j];
            }
            coeffs[q] = acc / static_cast<double>(q);
        }
        total += ((m - k) % 2 == 0) ? coeffs[m] : -coeffs[m];
    }
    return total;
}

CMatrix sub_symmetric(const CMatrix &b, const Outcome &s) {
    require(b.rows() == b.cols(), "sub_symmetric: matrix must be square");
    require(s.max_mode() <= b.rows(), "sub_symmetric: outcome index exceeds matrix dimension");
    const int n = s.photons();
    CMatrix out(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            out(i, j) = b(s.modes()[i] - 1, s.modes()[j] - 1);
        }
    }
    return out;
}

RMatrix collision_pattern(const Outcome &s) {
    const int n = s.photons();
    RMatrix d(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            d(i, j) = s.modes()[i] == s.modes()[j] ? 1.0 : 0.0;
        }
    }
    return d;
}

ComplexSymMatrix lossy_block(const CMatrix &top_left, const CMatrix &off_diag, const CMatrix &bottom_right) {
    const Eigen::Index n = top_left.rows();
    require(top_left.cols() == n && off_diag.rows() == n && off_diag.cols() == n && bottom_right.rows() == n &&
                bottom_right.cols() == n,
            "lossy_block: block shapes disagree");
    CMatrix blk(2 * n, 2 * n);
    blk.topLeftCorner(n, n) = top_left;
    blk.topRightCorner(n, n) = off_diag;
    blk.bottomLeftCorner(n, n) = off_diag.transpose();
    blk.bottomRightCorner(n, n) = bottom_right;
    return ComplexSymMatrix(blk);
}

ComplexSymMatrix build_lossy_block(const CMatrix &u, const Outcome &s, double r, double eta) {
    require(u.rows() == u.cols(), "build_lossy_block: U must be square");
    require(s.photons() % 2 == 0, "build_lossy_block: photon number must be even");
    require(unitarity_residual(u) <= 1e-10, "build_lossy_block: U is not unitary to 1e-10");
    require(r >= 0.0 && eta >= 0.0 && eta <= 1.0, "build_lossy_block: need r >= 0 and eta in [0, 1]");
    CMatrix uut = u * u.transpose();
    CMatrix top = sub_symmetric(uut, s);
    CMatrix off = ((1.0 - eta) * std::tanh(r)) * collision_pattern(s).cast<Complex>();
    return lossy_block(top, off, top.conjugate());
}

Complex haf_alternate_A_form(const CMatrix &u, const Outcome &s, double r, double eta) {
    require(s.photons() % 2 == 0, "haf_alternate_A_form: photon number must be even");
    require(s.max_mode() <= u.rows(), "haf_alternate_A_form: outcome index exceeds mode count");
    require(unitarity_residual(u) <= 1e-10, "haf_alternate_A_form: U is not unitary to 1e-10");
    const CMatrix a = A_matrix_from_covariance(u, r, eta);
    const Eigen::Index m = u.rows();
    const int n = s.photons();
    std::vector<Eigen::Index> idx;
    for (int v : s.modes()) {
        idx.push_back(v - 1);
    }
    for (int v : s.modes()) {
        idx.push_back(v - 1 + m);
    }
    CMatrix sub(2 * n, 2 * n);
    for (int i = 0; i < 2 * n; ++i) {
        for (int j = 0; j < 2 * n; ++j) {
            sub(i, j) = a(idx[i], idx[j]);
        }
    }
    return haf_fast(ComplexSymMatrix(sub));
}

bool hafnian_close(Complex a, Complex b, double rel, double scale, Eigen::Index dim) {
    const double diff = std::abs(a - b);
    const double floor = 1e-12 * std::pow(scale, static_cast<double>(dim) / 2.0);
    if (std::abs(b) < floor) {
        return diff <= floor;
    }
    return diff <= rel * std::abs(b);
}

}  // namespace lgbs
