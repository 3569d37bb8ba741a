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

#include <string>
#include <utility>
#include <vector>

#include "lgbs/common.hpp"
#include "lgbs/hafnian.hpp"

namespace lgbs {

/// Lossy GBS setting: M modes, N detected photons, squeezing r, transmission eta.
struct GbsConfig {
    int modes = 0;
    int photons = 0;
    double r = 0.0;
    double eta = 1.0;

    /// Squeezing chosen so that N = eta M sinh^2 r.
    static GbsConfig with_auto_r(int modes, int photons, double eta);

    /// Throws InvalidArgument unless M, N are even, M >= 2, r >= 0, eta in [0, 1].
    void validate() const;

    /// (1 - eta)^2 tanh^2 r, the hypergeometric argument.
    double z() const;
};

/// Partial sum of 2F1(a, b; c; z) and a bound on the neglected tail.
struct SeriesResult {
    double value = 0.0;
    int terms = 0;          ///< number of terms summed, n = 0..terms-1
    double tail_bound = 0.0;
    std::string bound_form; ///< "exact", "geometric" or "ratio"
};

struct QFactorResult {
    double value = 0.0;
    int truncation_terms = 0;
    double error_bound = 0.0;
    std::string bound_form;
};

/// Sums 2F1((M+N)/2, (N+1)/2; 1/2; z) for n = 0..m with compensated
/// summation. The tail bound is the geometric bound with ratio
/// z_g = 2 (1-eta)^2 N / (eta M) when its hypotheses can be checked at m,
/// otherwise the ratio-test bound t_{m+1} / (1 - rho). Throws DomainError when
/// neither bound applies.
SeriesResult hypergeometric_series(const GbsConfig &cfg, int m);

/// Q(eta) = (1 - z)^{M/2+N} 2F1(...), truncated after n = m.
QFactorResult q_factor(const GbsConfig &cfg, int m);

/// Doubles m from 16 until the error bound falls below 1e-3 * tol.
QFactorResult q_factor_adaptive(const GbsConfig &cfg, double tol = 1e-13);

/// (Q(eta), C sqrt(N) e^{(1-eta) N}).
std::pair<double, double> q_upper_bound_check(const GbsConfig &cfg, double c = 4.0);

struct PostselectResult {
    double value = 0.0;
    double error_bound = 0.0;
    int truncation_terms = 0;
};

/// Pr[N] = eta^N tanh^N r / cosh^M r * C(M/2+N/2-1, N/2) * 2F1(...).
PostselectResult prob_postselect_N(const GbsConfig &cfg, double tol = 1e-13);

/// q_S(eta, U): probability of outcome S without post-selection.
double prob_no_postselect(const CMatrix &u, const Outcome &s, const GbsConfig &cfg);

/// p_S(eta, U): probability of S conditioned on detecting N photons.
double prob_postselected(const CMatrix &u, const Outcome &s, const GbsConfig &cfg);

/// Ideal (eta = 1) post-selected probability from the block-diagonal hafnian.
double prob_ideal(const CMatrix &u, const Outcome &s, const GbsConfig &cfg);

/// All multisets of N modes out of M in lexicographic order.
std::vector<Outcome> all_outcomes(int modes, int photons);

/// Largest outcome count enumerate_distribution accepts.
inline constexpr double kMaxEnumeratedOutcomes = 1e5;

struct OutcomeProbability {
    Outcome outcome;
    double probability = 0.0;
};

/// Exhaustive post-selected N-photon distribution.
std::vector<OutcomeProbability> enumerate_distribution(const CMatrix &u, const GbsConfig &cfg, int threads = 1);

struct PostselectBoundRow {
    int photons = 0;
    int modes = 0;
    double eta = 0.0;
    double r = 0.0;
    double prob = 0.0;
    double prob_sqrt_n = 0.0;
};

/// Pr[N] sqrt(N) along N = 2, 4, ..., n_max with M = N^3,
/// eta = 1 - 1/(12 sqrt N) and N = eta M sinh^2 r.
std::vector<PostselectBoundRow> postselect_lower_bound_check(int n_max);

}  // namespace lgbs
