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

#include "lgbs/extrapolation.hpp"
#include "lgbs/hafnian.hpp"
#include "lgbs/probability.hpp"
#include "lgbs/random.hpp"
#include "support/oracles.hpp"

namespace lgbs {
namespace {

CMatrix block_oracle_matrix(const CMatrix &x, double r, double eta) {
    const auto n = x.rows();
    const CMatrix b = x * x.transpose();
    const double off = (1.0 - eta) * static_cast<double>(x.cols()) * std::tanh(r);
    CMatrix big = CMatrix::Zero(2 * n, 2 * n);
    big.topLeftCorner(n, n) = b;
    big.bottomRightCorner(n, n) = b.conjugate();
    big.topRightCorner(n, n) = off * CMatrix::Identity(n, n);
    big.bottomLeftCorner(n, n) = off * CMatrix::Identity(n, n);
    return big;
}

TEST(RPolynomial, TwoPhotonHandFormula) {
    const CMatrix x = sample_ginibre(Seed{1}, 2, 10);
    const double r = 0.4;
    for (double eta : {1.0, 0.8, 0.3}) {
        Complex dot = 0.0;
        for (int k = 0; k < 10; ++k) dot += x(0, k) * x(1, k);
        const double t = std::tanh(r);
        const double want = std::norm(dot) + std::pow((1.0 - eta) * 10.0 * t, 2);
        EXPECT_NEAR(r_polynomial_direct(x, r, eta), want, 1e-12 * want);
    }
}

TEST(RPolynomial, DirectMatchesEnumerationOracle) {
    for (int n : {2, 4, 6}) {
        const CMatrix x = sample_ginibre(Seed{static_cast<std::uint64_t>(n)}, n, 12);
        const double want = testing::haf_permutation_oracle(block_oracle_matrix(x, 0.3, 0.85)).real();
        EXPECT_NEAR(r_polynomial_direct(x, 0.3, 0.85), want, 1e-10 * std::abs(want));
    }
}

TEST(RPolynomial, IdealAndUnsqueezedLimits) {
    const CMatrix x = sample_ginibre(Seed{2}, 4, 8);
    const double ideal = ideal_value(x);
    EXPECT_NEAR(r_polynomial_direct(x, 0.5, 1.0), ideal, 1e-12 * ideal);
    EXPECT_NEAR(r_polynomial_direct(x, 0.0, 0.4), ideal, 1e-12 * ideal);
}

TEST(RPolynomial, SeriesMatchesDirect) {
    for (int n : {2, 4, 6, 8}) {
        const CMatrix x = sample_ginibre(Seed{static_cast<std::uint64_t>(10 + n)}, n, 16);
        const RPolynomial poly = series_coefficients(x, 0.35);
        ASSERT_EQ(poly.coeffs.size(), static_cast<std::size_t>(n + 1));
        for (std::size_t k = 0; k < poly.coeffs.size(); ++k) {
            EXPECT_GE(poly.coeffs[k], 0.0);
            if (k % 2 == 1) EXPECT_EQ(poly.coeffs[k], 0.0);
        }
        EXPECT_NEAR(poly.constant_term(), ideal_value(x), 1e-10 * ideal_value(x));
        for (double eta : {1.0, 0.9, 0.7, 0.5, 0.2}) {
            const double direct = r_polynomial_direct(x, 0.35, eta);
            EXPECT_NEAR(poly.evaluate(eta), direct, 1e-9 * direct) << n << " " << eta;
        }
    }
}

TEST(RPolynomial, TwoPhotonCoefficients) {
    const CMatrix x = sample_ginibre(Seed{3}, 2, 6);
    const RPolynomial poly = series_coefficients(x, 0.5);
    EXPECT_NEAR(poly.coeffs[2], std::pow(6.0 * std::tanh(0.5), 2), 1e-12);
    EXPECT_EQ(poly.degree(), 2);
}

TEST(RPolynomial, SizeGuards) {
    EXPECT_THROW(r_polynomial_direct(sample_ginibre(Seed{4}, 14, 16), 0.3, 0.9), SizeLimitError);
    EXPECT_THROW(series_coefficients(sample_ginibre(Seed{4}, 12, 16), 0.3), SizeLimitError);
    EXPECT_THROW(r_polynomial_direct(sample_ginibre(Seed{4}, 3, 16), 0.3, 0.9), InvalidArgument);
}

TEST(Truncate, EndpointsAndDeviation) {
    const CMatrix x = sample_ginibre(Seed{5}, 6, 20);
    const RPolynomial poly = series_coefficients(x, 0.3);
    const RPolynomial full = truncate(poly, 6);
    EXPECT_EQ(full.coeffs, poly.coeffs);
    const RPolynomial constant = truncate(poly, 0);
    EXPECT_EQ(constant.evaluate(0.4), poly.constant_term());
    for (int l : {0, 2, 4, 6}) {
        const RPolynomial t = truncate(poly, l);
        EXPECT_EQ(t.constant_term(), poly.constant_term());
        EXPECT_EQ(t.evaluate(1.0), poly.evaluate(1.0));
        const double eta = 0.8;
        double tail = 0.0;
        for (int k = l + 2; k <= 6; k += 2) tail += poly.coeffs[k] * std::pow(1.0 - eta, k);
        EXPECT_NEAR(truncation_deviation(poly, l, eta), tail, 1e-14 * std::max(tail, 1.0));
        EXPECT_NEAR(poly.evaluate(eta) - t.evaluate(eta), tail, 1e-10 * poly.evaluate(eta));
    }
    EXPECT_THROW(truncate(poly, 3), InvalidArgument);
    EXPECT_THROW(truncate(poly, 8), InvalidArgument);
}

TEST(ReductionParams, GMapContainment) {
    struct Case {
        int n, m;
        double k;
    };
    for (const Case &c : {Case{6, 500, 0.3}, Case{4, 64, 0.3}, Case{8, 200, 0.2}, Case{10, 1000, 0.25}}) {
        const ReductionParams p = make_reduction_params(c.n, c.m, c.k, 0.1, 0.25);
        EXPECT_EQ(g_map(1.0, p), 1.0);
        EXPECT_GE(g_map(-p.delta_interval, p), p.eta_min * (1.0 - 1e-14));
        EXPECT_LE(g_map(p.delta_interval, p), p.eta_star * (1.0 + 1e-14));
        EXPECT_LT(g_map(-0.1 * p.delta_interval, p), g_map(0.1 * p.delta_interval, p));
        EXPECT_THROW(g_map(0.99, p), InvalidArgument);
        EXPECT_EQ(p.nodes_x.size(), static_cast<std::size_t>(p.l + 1));
        EXPECT_EQ(p.l % 2, 0);
        EXPECT_GT(p.l, p.k_max);
        EXPECT_LE(p.q_max, p.q_envelope);
    }
}

TEST(ReductionParams, DeskScaleInstance) {
    const ReductionParams p = make_reduction_params(6, 500, 0.3, 0.1, 0.25);
    EXPECT_DOUBLE_EQ(p.k_max, 0.9);
    EXPECT_NEAR(p.eta_star, 6.0 / 6.3, 1e-15);
    EXPECT_NEAR(p.eta_star * 500 * std::pow(std::sinh(p.r), 2), 6.0, 1e-12);
    EXPECT_TRUE(p.l_capped);
    EXPECT_EQ(p.l, 6);
    EXPECT_EQ(p.eps1_effective, 0.0);
    EXPECT_NEAR(1.0 - std::pow(1.0 - 2.0 * p.delta, p.l + 1), 0.25, 1e-12);
    EXPECT_NEAR(p.eps_prime * p.amplification, 0.1, 1e-12);
    EXPECT_GT(p.eps, 0.0);
    // scale = C(252, 3) 6!
    EXPECT_NEAR(p.scale(), 2635500.0 * 720.0, 1e-3);
}

TEST(ReductionParams, SmallLossRegimeUsesNominalInterval) {
    const ReductionParams p = make_reduction_params(120, 1000, 0.5, 0.1, 0.25);
    EXPECT_TRUE(p.small_loss_assumption);
    EXPECT_FALSE(p.delta_shrunk);
    EXPECT_NEAR(p.delta_interval, 10.0 / 21.0, 1e-15);
    EXPECT_GE(g_map(-p.delta_interval, p), p.eta_min);
}

TEST(ReductionParams, Errors) {
    EXPECT_THROW(make_reduction_params(5, 100, 0.3, 0.1, 0.25), InvalidArgument);
    EXPECT_THROW(make_reduction_params(6, 100, -0.3, 0.1, 0.25), InvalidArgument);
    EXPECT_THROW(make_reduction_params(6, 100, 0.3, 1.5, 0.25), InvalidArgument);
    EXPECT_THROW(make_reduction_params(2, 100, 2.0, 0.1, 0.25), DomainError);
}

TEST(NoisyOracle, NoiseWithinWidth) {
    const ReductionParams p = make_reduction_params(4, 64, 0.3, 0.1, 0.25);
    const CMatrix x = sample_ginibre(Seed{6}, 4, 64);
    const double eta = p.nodes_eta[1];
    const double exact = noisy_oracle(x, p, eta, 0.0, NoiseMode::Uniform, Seed{7}, 1).value;
    const double q = q_factor_adaptive(GbsConfig{64, 4, p.r, eta}).value;
    EXPECT_NEAR(exact, r_polynomial_direct(x, p.r, eta) / q, 1e-12 * exact);
    const double eps = 1e-3;
    for (int node = 0; node < 50; ++node) {
        const OracleEstimate e = noisy_oracle(x, p, eta, eps, NoiseMode::Uniform, Seed{7}, node);
        EXPECT_LE(std::abs(e.injected_noise), eps * p.scale());
        EXPECT_EQ(e.value, e.exact + e.injected_noise);
        EXPECT_EQ(e.value, noisy_oracle(x, p, eta, eps, NoiseMode::Uniform, Seed{7}, node).value);
        const OracleEstimate adv = noisy_oracle(x, p, eta, eps, NoiseMode::Adversarial, Seed{7}, node);
        EXPECT_EQ(adv.injected_noise, (node % 2 == 0 ? 1.0 : -1.0) * eps * p.scale());
    }
    EXPECT_THROW(noisy_oracle(x, p, 1.0, eps, NoiseMode::Uniform, Seed{7}, 0), InvalidArgument);
    EXPECT_EQ(parse_noise_mode("adversarial"), NoiseMode::Adversarial);
    EXPECT_THROW(parse_noise_mode("gaussian"), InvalidArgument);
}

std::vector<InterpolationNode> equispaced(int d, double half) {
    std::vector<InterpolationNode> nodes;
    for (int j = 0; j <= d; ++j) nodes.push_back({-half + 2.0 * j * half / d, 0.0});
    return nodes;
}

TEST(Lagrange, RecoversPolynomials) {
    for (int d : {2, 4, 6, 8}) {
        auto nodes = equispaced(d, 10.0 / 21.0);
        auto f = [d](double x) {
            double acc = 0.0;
            for (int k = 0; k <= d; ++k) acc = acc * x + (k + 1.0) / (d + 1.0);
            return acc;
        };
        for (auto &nd : nodes) nd.y = f(nd.x);
        const ExtrapolationResult res = lagrange_extrapolate(nodes);
        EXPECT_NEAR(res.value, f(1.0), 1e-9 * std::abs(f(1.0)));
        EXPECT_EQ(res.degree, d);
        double sum = 0.0;
        for (double w : res.weights) sum += w;
        EXPECT_NEAR(sum, 1.0, 1e-9);
    }
}

TEST(Lagrange, ThreeEpsilonExample) {
    const double eps = 1e-3;
    std::vector<InterpolationNode> nodes{{-0.5, 0.0}, {0.0, 0.0}, {0.5, eps}};
    const ExtrapolationResult res = lagrange_extrapolate(nodes);
    EXPECT_NEAR(res.value, 3.0 * eps, 1e-15);
    EXPECT_NEAR(res.weights[0], 1.0, 1e-15);
    EXPECT_NEAR(res.weights[1], -3.0, 1e-15);
    EXPECT_NEAR(res.weights[2], 3.0, 1e-15);
    EXPECT_LE(res.value, kondo_bound(eps, 2, 0.5));
}

TEST(Lagrange, KondoBoundOverAllSignPatterns) {
    for (double half : {0.3, 0.5, 10.0 / 21.0}) {
        for (int d : {2, 4, 6, 8}) {
            auto nodes = equispaced(d, half);
            double worst = 0.0;
            for (unsigned mask = 0; mask < (1u << (d + 1)); ++mask) {
                for (int j = 0; j <= d; ++j) nodes[j].y = 2.0 + ((mask >> j) & 1u ? 1.0 : -1.0);
                worst = std::max(worst, std::abs(lagrange_extrapolate(nodes).value - 2.0));
            }
            EXPECT_NEAR(worst, lagrange_extrapolate(nodes).lebesgue, 1e-9 * worst);
            EXPECT_LE(worst, kondo_bound(1.0, d, half)) << d << " " << half;
        }
    }
}

TEST(Lagrange, RejectsBadNodes) {
    EXPECT_THROW(lagrange_extrapolate({{-0.5, 0.0}, {0.1, 0.0}, {0.5, 0.0}}), InvalidArgument);
    EXPECT_THROW(lagrange_extrapolate({{-1.5, 0.0}, {0.0, 0.0}, {1.5, 0.0}}), InvalidArgument);
    EXPECT_THROW(lagrange_extrapolate({{0.0, 0.0}}), InvalidArgument);
    EXPECT_THROW(kondo_bound(1.0, 0, 0.5), InvalidArgument);
}

TEST(Reduction, NoiselessFullDegreeRecovery) {
    const ReductionParams p = make_reduction_params(4, 64, 0.3, 0.1, 0.25);
    ASSERT_EQ(p.l, 4);
    for (std::uint64_t s = 0; s < 5; ++s) {
        const CMatrix x = sample_ginibre(Seed{100 + s}, 4, 64);
        const ReductionTrial t = reduction_experiment(x, p, NoiseMode::Uniform, Seed{s}, 0.0);
        EXPECT_NEAR(t.estimate, t.truth, 1e-6 * t.truth);
        EXPECT_NEAR(t.truth, ideal_value(x), 1e-12 * t.truth);
        EXPECT_EQ(t.nodes.size(), 5u);
    }
}

TEST(Reduction, SmallBatchIsReproducible) {
    const ReductionParams p = make_reduction_params(4, 64, 0.3, 0.1, 0.25);
    const ReductionBatch a = reduction_batch(p, 20, Seed{9}, NoiseMode::Uniform, 1);
    const ReductionBatch b = reduction_batch(p, 20, Seed{9}, NoiseMode::Uniform, 3);
    EXPECT_EQ(a.successes, 20);
    EXPECT_TRUE(a.success_pass);
    EXPECT_TRUE(a.budget_pass);
    ASSERT_EQ(a.trials.size(), b.trials.size());
    for (std::size_t i = 0; i < a.trials.size(); ++i) EXPECT_EQ(a.trials[i].estimate, b.trials[i].estimate);
    const ReductionBatch adv = reduction_batch(p, 20, Seed{9}, NoiseMode::Adversarial, 1);
    EXPECT_TRUE(adv.budget_pass);
}

TEST(Truncation, FullDegreeNeverExceeds) {
    const TruncationReport rep = truncation_lemma_experiment(4, 64, 0.5, 0.25, 100, Seed{11}, 1);
    ASSERT_EQ(rep.rows.size(), 2u);
    EXPECT_EQ(rep.rows.front().l, 2);
    EXPECT_EQ(rep.rows.back().l, 4);
    EXPECT_EQ(rep.rows.back().exceedances, 0);
    EXPECT_EQ(rep.rows.back().q95_deviation, 0.0);
    EXPECT_NEAR(rep.eta_min * 64 * std::pow(std::sinh(rep.r), 2), 4.0, 1e-12);
}

}  // namespace
}  // namespace lgbs
