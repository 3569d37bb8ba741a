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
#include <string>
#include <vector>

#include "lgbs/common.hpp"
#include "lgbs/random.hpp"

namespace lgbs {

/// Largest N accepted by r_polynomial_direct (2N x 2N hafnian).
inline constexpr int kDirectMaxPhotons = 12;
/// Largest N accepted by series_coefficients (subset enumeration).
inline constexpr int kSeriesMaxPhotons = 10;

/// R_X(eta) as a polynomial in (1 - eta). coeffs[k] multiplies (1 - eta)^k;
/// odd entries are zero.
struct RPolynomial {
    int photons = 0;
    std::vector<double> coeffs;

    double evaluate(double eta) const;
    double constant_term() const { return coeffs.empty() ? 0.0 : coeffs.front(); }
    /// Highest power with a nonzero coefficient.
    int degree() const;
};

/// Haf([[X X^T, (1-eta) M tanh r I], [(1-eta) M tanh r I, X* X^dagger]]) for
/// an N x M matrix X.
double r_polynomial_direct(const CMatrix &x, double r, double eta);

/// |Haf(X X^T)|^2.
double ideal_value(const CMatrix &x);

/// c_{2n} = (M tanh r)^{2n} sum_{|J| = N-2n} |Haf((X X^T)_J)|^2.
RPolynomial series_coefficients(const CMatrix &x, double r);

/// Drops all powers above l (l even, 0 <= l <= N).
RPolynomial truncate(const RPolynomial &poly, int l);

/// R_X(eta) - R_X^{(l)}(eta) summed exactly from the dropped coefficients.
double truncation_deviation(const RPolynomial &poly, int l, double eta);

/// Parameters of the extrapolation reduction derived from (N, M, k*, eps0, delta0).
/// Logarithms are natural.
struct ReductionParams {
    int photons = 0;
    int modes = 0;
    double k_star = 0.0;
    double k_max = 0.0;
    double eps0 = 0.0;
    double delta0 = 0.0;
    double eta_star = 0.0;
    double eta_min = 0.0;
    double r = 0.0;             ///< sinh^2 r = N / (eta* M), shared by every node

    double delta_nominal = 0.0; ///< (20/21)(k_max - k*)/(k_max + k*)
    double delta_limit = 0.0;   ///< largest Delta with g([-Delta, Delta]) inside [eta_min, eta*]
    double delta_interval = 0.0;///< Delta actually used
    bool delta_shrunk = false;
    bool small_loss_assumption = false; ///< k_max k* / N <= 1/40

    double log_term = 0.0;      ///< log(N / (eps0 delta0))
    double chi = 0.0;
    bool chi_condition = false; ///< log_term >= e
    double l_raw = 0.0;
    int l = 0;
    bool l_capped = false;

    double delta = 0.0;         ///< per-node failure probability, delta0 = 1 - (1 - 2 delta)^{l+1}
    double eps1 = 0.0;          ///< N k_max^l / (2 delta l!)
    double eps1_effective = 0.0;///< 0 when l = N (truncation is exact)
    double amplification = 0.0; ///< exp(l (1 + log 1/Delta))
    double kondo_factor = 0.0;  ///< amplification / sqrt(2 pi l)
    double q_max = 0.0;
    double q_envelope = 0.0;    ///< 4 sqrt(N) exp((1 - eta_min) N)
    double eps = 0.0;           ///< oracle accuracy
    double eps_prime = 0.0;     ///< q_max eps + eps1_effective
    double log_scale = 0.0;     ///< log(C(M/2+N/2-1, N/2) N!)

    std::vector<double> nodes_x;
    std::vector<double> nodes_eta;
    std::vector<double> nodes_q;
    std::vector<std::string> warnings;

    double scale() const;
    /// eps' exp(l (1 + log 1/Delta)) scale.
    double budget() const;
};

ReductionParams make_reduction_params(int photons, int modes, double k_star, double eps0, double delta0);

/// g(x) = [N(k_max+k*) + 2 k_max k*] / [2 (N+k_max)(N+k*)] (x - 1) + 1.
double g_map(double x, const ReductionParams &params);

enum class NoiseMode { Uniform, Adversarial };

NoiseMode parse_noise_mode(const std::string &name);
std::string to_string(NoiseMode mode);

struct OracleEstimate {
    double eta = 0.0;
    double value = 0.0;
    double exact = 0.0;
    double injected_noise = 0.0;
};

/// P(eta, X) = R_X(eta) / Q(eta) plus noise bounded by eps * scale. Uniform
/// noise draws from substream `node` of noise_seed; adversarial noise is
/// +eps * scale on even nodes and -eps * scale on odd ones.
OracleEstimate noisy_oracle(const CMatrix &x, const ReductionParams &params, double eta, double eps, NoiseMode mode,
                            Seed noise_seed, int node);

struct InterpolationNode {
    double x = 0.0;
    double y = 0.0;
};

struct ExtrapolationResult {
    double value = 0.0;
    int degree = 0;
    double half_width = 0.0;    ///< Delta
    double lebesgue = 0.0;      ///< sum_j |L_j(1)|
    std::vector<double> weights;///< L_j(1)
};

/// Interpolates d+1 equispaced nodes on [-Delta, Delta] and evaluates the
/// degree-d interpolant at x = 1 in barycentric form.
ExtrapolationResult lagrange_extrapolate(const std::vector<InterpolationNode> &nodes);

/// eps exp[d (1 + log 1/Delta)] / sqrt(2 pi d).
double kondo_bound(double eps, int degree, double half_width);

struct ReductionNode {
    double x = 0.0;
    double eta = 0.0;
    double q = 0.0;
    double oracle = 0.0;
    double noise = 0.0;
    double r_estimate = 0.0;
    double truncated_value = 0.0;
    double truncation_dev = 0.0;
};

struct ReductionTrial {
    double estimate = 0.0;
    double truth = 0.0;
    double abs_error = 0.0;
    double tolerance = 0.0;     ///< eps0 scale
    double budget = 0.0;
    double lebesgue = 0.0;
    bool hypotheses_hold = false;
    bool within_budget = false;
    bool success = false;
    std::vector<ReductionNode> nodes;
};

/// Queries the oracle at g(x_j), rescales by Q, interpolates and compares with P(X).
/// eps < 0 selects params.eps.
ReductionTrial reduction_experiment(const CMatrix &x, const ReductionParams &params, NoiseMode mode, Seed noise_seed,
                                    double eps = -1.0);

struct ReductionBatch {
    ReductionParams params;
    NoiseMode mode = NoiseMode::Uniform;
    std::uint64_t seed = 0;
    std::vector<ReductionTrial> trials;
    long successes = 0;
    Interval success_interval;
    bool success_pass = false;  ///< Wilson lower bound >= 1 - delta0
    long budget_checked = 0;
    bool budget_pass = false;   ///< no trial with valid hypotheses exceeds the budget
};

/// Trial t uses X from substream 2t and oracle noise from substream 2t+1.
ReductionBatch reduction_batch(const ReductionParams &params, int trials, Seed seed, NoiseMode mode, int threads = 1);

struct TruncationRow {
    int l = 0;
    double eps1 = 0.0;
    double threshold = 0.0;     ///< eps1 scale
    long exceedances = 0;
    double fraction = 0.0;
    Interval interval;
    double q95_deviation = 0.0; ///< empirical 95th percentile of |R - R^(l)| / scale
    bool pass = false;          ///< Wilson upper bound < delta
};

struct TruncationReport {
    int photons = 0;
    int modes = 0;
    double k_star = 0.0;
    double k_max = 0.0;
    double eta_min = 0.0;
    double r = 0.0;
    double delta = 0.0;
    int trials = 0;
    std::uint64_t seed = 0;
    double log_scale = 0.0;
    std::vector<TruncationRow> rows;
    bool monotone = false;      ///< q95 deviation non-increasing in l
    bool pass = false;
};

/// Empirical check of Pr_X[|R_X - R_X^{(l)}| > eps1 scale] < delta at eta_min,
/// sinh^2 r = N / (eta_min M), for each even l with k_max < l <= N.
TruncationReport truncation_lemma_experiment(int photons, int modes, double k_star, double delta, int trials,
                                             Seed seed, int threads = 1);

}  // namespace lgbs
