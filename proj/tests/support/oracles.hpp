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

// Independent reference implementations used only by the tests.

#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <vector>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "lgbs/common.hpp"
#include "lgbs/random.hpp"

namespace lgbs::testing {

/// Haf(B) = 1 / ((n/2)! 2^{n/2}) sum over all permutations. Only for n <= 10.
inline Complex haf_permutation_oracle(const CMatrix &b) {
    const int n = static_cast<int>(b.rows());
    if (n == 0) {
        return 1.0;
    }
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    Complex total = 0.0;
    do {
        Complex prod = 1.0;
        for (int i = 0; i < n; i += 2) {
            prod *= b(perm[i], perm[i + 1]);
        }
        total += prod;
    } while (std::next_permutation(perm.begin(), perm.end()));
    double norm = std::pow(2.0, n / 2);
    for (int k = 2; k <= n / 2; ++k) {
        norm *= k;
    }
    return total / norm;
}

/// Permanent by direct expansion.
inline Complex permanent_oracle(const CMatrix &c) {
    const int n = static_cast<int>(c.rows());
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    Complex total = 0.0;
    do {
        Complex prod = 1.0;
        for (int i = 0; i < n; ++i) {
            prod *= c(i, perm[i]);
        }
        total += prod;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return total;
}

inline CMatrix random_symmetric(Engine &engine, int n) {
    std::normal_distribution<double> normal(0.0, 1.0);
    CMatrix m(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = i; j < n; ++j) {
            m(i, j) = Complex(normal(engine), normal(engine));
            m(j, i) = m(i, j);
        }
    }
    return m;
}

using HighFloat = boost::multiprecision::cpp_bin_float_100;

/// (1 - z)^{M/2+N} sum_{n=0}^{m} (a)_n (b)_n / ((1/2)_n n!) z^n in 100-digit
/// arithmetic; m < 0 sums until terms drop below 1e-90.
inline HighFloat q_series_oracle(int modes, int photons, double r, double eta, int m) {
    const HighFloat a = HighFloat(modes + photons) / 2;
    const HighFloat b = HighFloat(photons + 1) / 2;
    const HighFloat c = HighFloat(1) / 2;
    const HighFloat t = boost::multiprecision::tanh(HighFloat(r));
    const HighFloat one_minus_eta = HighFloat(1) - HighFloat(eta);
    const HighFloat z = one_minus_eta * one_minus_eta * t * t;
    HighFloat term = 1;
    HighFloat sum = 0;
    for (int n = 0; m < 0 ? n < 100000 : n <= m; ++n) {
        sum += term;
        term *= (a + n) * (b + n) / ((c + n) * (n + 1)) * z;
        if (m < 0 && n > 0 && term < HighFloat("1e-90") * sum) {
            break;
        }
    }
    return boost::multiprecision::pow(HighFloat(1) - z, HighFloat(modes) / 2 + photons) * sum;
}

}  // namespace lgbs::testing
