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

#include "lgbs/statistics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "lgbs/gaussian.hpp"
#include "lgbs/hafnian.hpp"
#include "lgbs/parallel.hpp"

namespace lgbs {

namespace {

double mean_of(const std::vector<double> &v, std::size_t begin, std::size_t end) {
    double s = 0.0;
    for (std::size_t i = begin; i < end; ++i) {
        s += v[i];
    }
    return s / static_cast<double>(end - begin);
}

double sample_sd(const std::vector<double> &v, double mean) {
    double s = 0.0;
    for (double x : v) {
        s += (x - mean) * (x - mean);
    }
    return std::sqrt(s / static_cast<double>(v.size() - 1));
}

double median_of(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace

double hafnian_moment_analytic(int photons, int modes) {
    const double log_value = log_moment_scale(photons, modes);
    // Integer-exact while the product stays below 2^53.
    const int half = photons / 2;
    const int top = modes / 2 + half - 1;
    double value = 1.0;
    for (int j = 1; j <= half && value < 0x1p52; ++j) {
        value = value * (top - half + j) / j;
    }
    for (int j = 2; j <= photons && value < 0x1p52; ++j) {
        value *= j;
    }
    return value < 0x1p52 ? value : std::exp(log_value);
}

MomentReport hafnian_moment_mc(int photons, int modes, long samples, Seed seed, int rows, int threads) {
    require(photons >= 2 && photons % 2 == 0, "moments: N must be even and >= 2");
    if (photons > 8) {
        throw SizeLimitError("moments: N must be <= 8");
    }
    require(modes >= 2 && modes % 2 == 0, "moments: M must be even and >= 2");
    require(samples >= 100, "moments: need at least 100 samples");
    if (rows < 0) {
        rows = photons;
    }
    require(rows >= 2 && rows % 2 == 0 && rows <= photons, "moments: block size must be even, 2 <= rows <= N");

    std::vector<double> values(static_cast<std::size_t>(samples));
    parallel_for(values.size(), threads, [&](std::size_t i) {
        const CMatrix x = sample_ginibre(derive_seed(seed, i), photons, modes);
        const CMatrix xj = x.topRows(rows);
        values[i] = std::norm(haf_fast(ComplexSymMatrix(xj * xj.transpose())));
    });

    MomentReport rep;
    rep.photons = photons;
    rep.rows = rows;
    rep.modes = modes;
    rep.samples = samples;
    rep.seed = seed.value;
    rep.empirical_mean = mean_of(values, 0, values.size());
    rep.standard_error = sample_sd(values, rep.empirical_mean) / std::sqrt(static_cast<double>(samples));

    const std::size_t block = values.size() / kMomentBlocks;
    std::vector<double> block_means;
    for (int b = 0; b < kMomentBlocks; ++b) {
        block_means.push_back(mean_of(values, b * block, (b + 1) * block));
    }
    rep.median_of_means = median_of(block_means);
    const double block_mean = mean_of(block_means, 0, block_means.size());
    // Asymptotic standard error of a sample median is sqrt(pi/2) times that of the mean.
    rep.mom_standard_error = std::sqrt(std::numbers::pi / 2.0) * sample_sd(block_means, block_mean) /
                             std::sqrt(static_cast<double>(kMomentBlocks));
    rep.analytic = hafnian_moment_analytic(rows, modes);
    rep.z_score = (rep.median_of_means - rep.analytic) / rep.mom_standard_error;
    rep.pass = std::abs(rep.z_score) <= kMomentBand;
    return rep;
}

double exact_tvd(const CMatrix &u, const GbsConfig &a, const GbsConfig &b, int threads) {
    require(a.modes == b.modes && a.photons == b.photons, "exact_tvd: configurations must share M and N");
    const auto pa = enumerate_distribution(u, a, threads);
    const auto pb = enumerate_distribution(u, b, threads);
    double s = 0.0;
    for (std::size_t i = 0; i < pa.size(); ++i) {
        s += std::abs(pa[i].probability - pb[i].probability);
    }
    return 0.5 * s;
}

TvdReport tvd_bound_report(const CMatrix &u, const GbsConfig &cfg, int threads) {
    cfg.validate();
    const double sh = std::sinh(cfg.r);
    const double loss_load = (1.0 - cfg.eta) * cfg.modes * sh * sh;
    if (!(loss_load < 1.0)) {
        throw DomainError("tvd: requires (1 - eta) M sinh^2 r < 1, got " + std::to_string(loss_load));
    }
    TvdReport rep;
    rep.modes = cfg.modes;
    rep.photons = cfg.photons;
    rep.r = cfg.r;
    rep.eta = cfg.eta;
    GbsConfig ideal = cfg;
    ideal.eta = 1.0;
    rep.exact_tvd = exact_tvd(u, cfg, ideal, threads);

    const GaussianCovariance pure = squeezed_vacuum_cov(SqueezingSpec{cfg.r, cfg.modes});
    const GaussianCovariance lossy = apply_loss(pure, LossChannel{cfg.eta});
    rep.fidelity = std::min(1.0, gaussian_fidelity_pure(pure, lossy));
    rep.fidelity_bound = std::sqrt(1.0 - rep.fidelity);
    rep.lemma_bound = std::sqrt(loss_load);
    rep.tvd_within_fidelity = rep.exact_tvd <= rep.fidelity_bound;
    rep.fidelity_within_lemma = rep.fidelity_bound <= rep.lemma_bound;
    rep.chain_holds = rep.tvd_within_fidelity && rep.fidelity_within_lemma;
    return rep;
}

double max_loss_for_beta(double beta, int modes, double r) {
    require(beta >= 0.0 && modes >= 1 && r > 0.0, "max_loss_for_beta: need beta >= 0, M >= 1, r > 0");
    const double sh = std::sinh(r);
    return beta * beta / (modes * sh * sh);
}

double theorem3_threshold(double beta0, double beta1, int modes, double r) {
    require(beta1 >= 0.0 && beta0 < 1.0, "theorem3_threshold: need 0 <= beta1 <= beta0 < 1");
    require(beta1 <= beta0, "theorem3_threshold: beta1 must not exceed beta0");
    const double gap = beta0 - beta1;
    return std::clamp(1.0 - max_loss_for_beta(gap, modes, r), 0.0, 1.0);
}

}  // namespace lgbs
