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

#include <cstdint>

#include "lgbs/common.hpp"
#include "lgbs/probability.hpp"
#include "lgbs/random.hpp"

namespace lgbs {

inline constexpr int kMomentBlocks = 20;
/// Acceptance band on |z| for the median-of-means moment test.
inline constexpr double kMomentBand = 4.0;

struct MomentReport {
    int photons = 0;           ///< N of the Ginibre draw
    int rows = 0;              ///< size of the principal block whose hafnian is squared
    int modes = 0;
    long samples = 0;
    std::uint64_t seed = 0;
    double empirical_mean = 0.0;
    double standard_error = 0.0;
    double median_of_means = 0.0;
    double mom_standard_error = 0.0;
    double analytic = 0.0;     ///< C(M/2 + rows/2 - 1, rows/2) rows!
    double z_score = 0.0;      ///< (median_of_means - analytic) / mom_standard_error
    bool pass = false;         ///< |z| <= kMomentBand
};

/// C(M/2 + N/2 - 1, N/2) N!.
double hafnian_moment_analytic(int photons, int modes);

/// Averages |Haf((X X^T)_J)|^2 over N x M Ginibre draws, J the first `rows`
/// indices (rows < 0 means rows = N). Sample i uses substream i of seed.
MomentReport hafnian_moment_mc(int photons, int modes, long samples, Seed seed, int rows = -1, int threads = 1);

/// (1/2) sum_S |p_S(eta, U) - p_S(eta', U)| over all N-photon outcomes.
double exact_tvd(const CMatrix &u, const GbsConfig &a, const GbsConfig &b, int threads = 1);

struct TvdReport {
    int modes = 0;
    int photons = 0;
    double r = 0.0;
    double eta = 0.0;
    double exact_tvd = 0.0;
    double fidelity = 0.0;
    double fidelity_bound = 0.0;   ///< sqrt(1 - F)
    double lemma_bound = 0.0;      ///< sqrt((1 - eta) M sinh^2 r)
    bool tvd_within_fidelity = false;
    bool fidelity_within_lemma = false;
    bool chain_holds = false;
};

/// Compares the lossy and lossless post-selected distributions at the same r.
/// Requires (1 - eta) M sinh^2 r < 1.
TvdReport tvd_bound_report(const CMatrix &u, const GbsConfig &cfg, int threads = 1);

/// Largest (1 - eta) with sqrt((1 - eta) M sinh^2 r) <= beta.
double max_loss_for_beta(double beta, int modes, double r);

/// 1 - (beta0 - beta1)^2 / (M sinh^2 r), clamped to [0, 1].
double theorem3_threshold(double beta0, double beta1, int modes, double r);

}  // namespace lgbs
