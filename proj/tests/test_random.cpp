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

#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "lgbs/random.hpp"

namespace lgbs {
namespace {

TEST(Random, SameSeedSameMatrix) {
    const CMatrix a = sample_ginibre(Seed{11}, 3, 5);
    const CMatrix b = sample_ginibre(Seed{11}, 3, 5);
    EXPECT_EQ((a - b).cwiseAbs().maxCoeff(), 0.0);
    const CMatrix c = sample_ginibre(Seed{12}, 3, 5);
    EXPECT_GT((a - c).cwiseAbs().maxCoeff(), 0.0);
}

TEST(Random, DerivedStreamsAreDistinct) {
    std::set<std::uint64_t> seen;
    for (std::uint64_t s = 0; s < 1000; ++s) {
        seen.insert(derive_seed(Seed{7}, s).value);
    }
    EXPECT_EQ(seen.size(), 1000u);
    EXPECT_NE(derive_seed(Seed{7}, 0).value, derive_seed(Seed{8}, 0).value);
}

TEST(Random, GinibreMomentsMatchUnitComplexGaussian) {
    Engine engine = make_engine(Seed{3});
    const CMatrix x = sample_ginibre(engine, 200, 200);
    const double n = static_cast<double>(x.size());
    const Complex mean = x.sum() / n;
    const double second = x.cwiseAbs2().sum() / n;
    const Complex pseudo = (x.array() * x.array()).sum() / n;
    // 40000 draws: standard errors are 1/200 for every statistic.
    EXPECT_LT(std::abs(mean), 0.02);
    EXPECT_NEAR(second, 1.0, 0.03);
    EXPECT_LT(std::abs(pseudo), 0.03);
}

TEST(Random, HaarIsUnitary) {
    for (std::size_t dim : {1u, 2u, 5u, 16u, 64u}) {
        EXPECT_LT(unitarity_residual(sample_haar_unitary(Seed{dim}, dim)), 1e-12) << dim;
    }
}

TEST(Random, HaarDimTwoMoments) {
    // For Haar U(2): E|u_11|^2 = 1/2, E|u_11|^4 = 1/3, E u_11 = 0.
    const int trials = 20000;
    double m2 = 0.0;
    double m4 = 0.0;
    Complex m1 = 0.0;
    for (int t = 0; t < trials; ++t) {
        const CMatrix u = sample_haar_unitary(derive_seed(Seed{99}, t), 2);
        const double a = std::norm(u(0, 0));
        m1 += u(0, 0);
        m2 += a;
        m4 += a * a;
    }
    m1 /= trials;
    m2 /= trials;
    m4 /= trials;
    // Var|u|^2 = 1/12 gives se 0.002; Var|u|^4 = 1/5 - 1/9 gives se 0.0021.
    EXPECT_NEAR(m2, 0.5, 0.01);
    EXPECT_NEAR(m4, 1.0 / 3.0, 0.01);
    EXPECT_LT(std::abs(m1), 0.02);
}

TEST(Random, RejectsEmptyShapes) {
    EXPECT_THROW(sample_ginibre(Seed{1}, 0, 3), InvalidArgument);
    EXPECT_THROW(sample_haar_unitary(Seed{1}, 0), InvalidArgument);
}

}  // namespace
}  // namespace lgbs
