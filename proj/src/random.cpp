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

#include "lgbs/random.hpp"

#include <cmath>

namespace lgbs {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

Seed derive_seed(Seed seed, std::uint64_t stream) {
    return Seed{splitmix64(splitmix64(seed.value) ^ splitmix64(stream + 0x632be59bd9b4e019ULL))};
}

Engine make_engine(Seed seed) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed.value), static_cast<std::uint32_t>(seed.value >> 32)};
    return Engine(seq);
}

CMatrix sample_ginibre(Engine &engine, std::size_t rows, std::size_t cols) {
    require(rows >= 1 && cols >= 1, "sample_ginibre: dimensions must be positive");
    std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
    CMatrix x(rows, cols);
    // Row-major fill so the stream layout does not depend on Eigen's storage order.
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < cols; ++j) {
            double re = normal(engine);
            double im = normal(engine);
            x(i, j) = Complex(re, im);
        }
    }
    return x;
}

CMatrix sample_ginibre(Seed seed, std::size_t rows, std::size_t cols) {
    require(rows >= 1 && cols >= 1, "sample_ginibre: dimensions must be positive");
    Engine engine = make_engine(seed);
    return sample_ginibre(engine, rows, cols);
}

CMatrix sample_haar_unitary(Seed seed, std::size_t dim) {
    require(dim >= 1, "sample_haar_unitary: dimension must be positive");
    CMatrix z = sample_ginibre(seed, dim, dim);
    Eigen::HouseholderQR<CMatrix> qr(z);
    CMatrix q = qr.householderQ() * CMatrix::Identity(dim, dim);
    const CMatrix &r = qr.matrixQR();
    for (std::size_t j = 0; j < dim; ++j) {
        Complex d = r(j, j);
        double mag = std::abs(d);
        Complex phase = mag > 0.0 ? d / mag : Complex(1.0, 0.0);
        q.col(j) *= phase;
    }
    return q;
}

double unitarity_residual(const CMatrix &u) {
    CMatrix g = u.adjoint() * u;
    g -= CMatrix::Identity(u.cols(), u.cols());
    return g.cwiseAbs().maxCoeff();
}

}  // namespace lgbs
