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

#include "lgbs/extrapolation.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <cmath>
#include <numbers>
#include <random>

#include "lgbs/hafnian.hpp"
#include "lgbs/parallel.hpp"
#include "lgbs/probability.hpp"

namespace lgbs {

namespace {

constexpr double kRangeSlack = 1e-12;

double checked_real(Complex value, const char *what) {
    if (std::abs(value.imag()) > 1e-10 * std::abs(value)) {
        throw DomainError(std::string(what) + ": hafnian has a non-negligible imaginary part");
    }
    return value.real();
}

CMatrix principal_submatrix(const CMatrix &b, unsigned mask) {
    std::vector<Eigen::Index> idx;
    for (Eigen::Index i = 0; i < b.rows(); ++i) {
        if (mask & (1u << i)) {
            idx.push_back(i);
        }
    }
    const auto k = static_cast<Eigen::Index>(idx.size());
    CMatrix out(k, k);
    for (Eigen::Index a = 0; a < k; ++a) {
        for (Eigen::Index c = 0; c < k; ++c) {
            out(a, c) = b(idx[a], idx[c]);
        }
    }
    return out;
}

double log_eps1(int photons, double k_max, int l, double delta) {
    return std::log(static_cast<double>(photons)) + l * std::log(k_max) - std::log(2.0 * delta) - std::lgamma(l + 1.0);
}

}  // namespace

double RPolynomial::evaluate(double eta) const {
    const double t = 1.0 - eta;
    double acc = 0.0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
        acc = acc * t + *it;
    }
    return acc;
}

int RPolynomial::degree() const {
    for (int k = static_cast<int>(coeffs.size()) - 1; k >= 0; --k) {
        if (coeffs[k] != 0.0) {
            return k;
        }
    }
    return 0;
}

double r_polynomial_direct(const CMatrix &x, double r, double eta) {
    const auto n = x.rows();
    require(n % 2 == 0, "r_polynomial_direct: X must have an even number of rows");
    if (n > kDirectMaxPhotons) {
        throw SizeLimitError("r_polynomial_direct: N exceeds " + std::to_string(kDirectMaxPhotons));
    }
    require(r >= 0.0 && eta >= 0.0 && eta <= 1.0, "r_polynomial_direct: need r >= 0 and eta in [0, 1]");
    if (n == 0) {
        return 1.0;
    }
    const CMatrix b = x * x.transpose();
    const double off = (1.0 - eta) * static_cast<double>(x.cols()) * std::tanh(r);
    const CMatrix diag = off * CMatrix::Identity(n, n);
    return checked_real(haf_fast(lossy_block(b, diag, b.conjugate())), "r_polynomial_direct");
}

double ideal_value(const CMatrix &x) {
    require(x.rows() % 2 == 0, "ideal_value: X must have an even number of rows");
    return std::norm(haf_fast(ComplexSymMatrix(x * x.transpose())));
}

RPolynomial series_coefficients(const CMatrix &x, double r) {
    const int n = static_cast<int>(x.rows());
    require(n % 2 == 0, "series_coefficients: X must have an even number of rows");
    if (n > kSeriesMaxPhotons) {
        throw SizeLimitError("series_coefficients: N exceeds " + std::to_string(kSeriesMaxPhotons));
    }
    const CMatrix b = x * x.transpose();
    std::vector<double> by_size(n + 1, 0.0);
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
        const int k = std::popcount(mask);
        if (k % 2 != 0) {
            continue;
        }
        by_size[k] += k == 0 ? 1.0 : std::norm(haf_fast(ComplexSymMatrix(principal_submatrix(b, mask))));
    }
    const double mt = static_cast<double>(x.cols()) * std::tanh(r);
    RPolynomial poly;
    poly.photons = n;
    poly.coeffs.assign(n + 1, 0.0);
    for (int k = 0; k <= n; k += 2) {
        poly.coeffs[n - k] = std::pow(mt, n - k) * by_size[k];
    }
    return poly;
}

RPolynomial truncate(const RPolynomial &poly, int l) {
    require(l >= 0 && l % 2 == 0, "truncate: l must be even and non-negative");
    require(l <= poly.photons, "truncate: l must not exceed N");
    RPolynomial out = poly;
    for (std::size_t k = static_cast<std::size_t>(l) + 1; k < out.coeffs.size(); ++k) {
        out.coeffs[k] = 0.0;
    }
    return out;
}

double truncation_deviation(const RPolynomial &poly, int l, double eta) {
    require(l >= 0 && l % 2 == 0, "truncation_deviation: l must be even and non-negative");
    double acc = 0.0;
    for (std::size_t k = static_cast<std::size_t>(l) + 1; k < poly.coeffs.size(); ++k) {
        acc += poly.coeffs[k] * std::pow(1.0 - eta, static_cast<double>(k));
    }
    return acc;
}

double ReductionParams::scale() const { return std::exp(log_scale); }

double ReductionParams::budget() const { return eps_prime * amplification * scale(); }

ReductionParams make_reduction_params(int photons, int modes, double k_star, double eps0, double delta0) {
    require(photons >= 2 && photons % 2 == 0, "reduction: N must be even and >= 2");
    require(modes >= 2 && modes % 2 == 0, "reduction: M must be even and >= 2");
    require(k_star > 0.0 && std::isfinite(k_star), "reduction: k* must be positive");
    require(eps0 > 0.0 && eps0 < 1.0, "reduction: eps0 must lie in (0, 1)");
    require(delta0 > 0.0 && delta0 < 1.0, "reduction: delta0 must lie in (0, 1)");

    ReductionParams p;
    const double n = photons;
    p.photons = photons;
    p.modes = modes;
    p.k_star = k_star;
    p.k_max = 3.0 * k_star;
    p.eps0 = eps0;
    p.delta0 = delta0;
    p.eta_star = n / (n + p.k_star);
    p.eta_min = n / (n + p.k_max);
    p.r = std::asinh(std::sqrt(n / (p.eta_star * modes)));

    const double ratio = (p.k_max - p.k_star) / (p.k_max + p.k_star);
    p.delta_nominal = 20.0 / 21.0 * ratio;
    p.delta_limit = ratio / (1.0 + 2.0 * p.k_max * p.k_star / (n * (p.k_max + p.k_star)));
    p.small_loss_assumption = p.k_max * p.k_star / n <= 1.0 / 40.0;
    p.delta_interval = std::min(p.delta_nominal, p.delta_limit);
    p.delta_shrunk = p.delta_nominal > p.delta_limit;
    if (!p.small_loss_assumption) {
        p.warnings.push_back("k_max k*/N exceeds 1/40");
    }
    if (p.delta_shrunk) {
        p.warnings.push_back("Delta reduced to keep g([-Delta, Delta]) inside [eta_min, eta*]");
    }

    p.log_term = std::log(n / (eps0 * delta0));
    p.chi = std::exp(std::log(p.log_term) / p.log_term);
    p.chi_condition = p.log_term >= std::numbers::e;
    if (!p.chi_condition) {
        p.warnings.push_back("log(N/(eps0 delta0)) < e; chi condition may fail");
    }
    p.l_raw = std::numbers::e * std::numbers::e / p.delta_interval * p.chi * p.k_max + p.log_term;
    p.l = static_cast<int>(std::ceil(p.l_raw));
    if (p.l % 2 != 0) {
        ++p.l;
    }
    if (p.l > photons) {
        p.l = photons;
        p.l_capped = true;
        p.warnings.push_back("l capped at N; truncation is exact");
    }
    if (!(p.l > p.k_max)) {
        throw DomainError("reduction: truncation degree l must exceed k_max");
    }

    p.delta = 0.5 * (1.0 - std::pow(1.0 - delta0, 1.0 / (p.l + 1.0)));
    p.eps1 = std::exp(log_eps1(photons, p.k_max, p.l, p.delta));
    p.eps1_effective = p.l == photons ? 0.0 : p.eps1;
    p.amplification = std::exp(p.l * (1.0 + std::log(1.0 / p.delta_interval)));
    p.kondo_factor = p.amplification / std::sqrt(2.0 * std::numbers::pi * p.l);
    p.log_scale = log_moment_scale(photons, modes);

    for (int j = 0; j <= p.l; ++j) {
        const double x = -p.delta_interval + 2.0 * j * p.delta_interval / p.l;
        const double eta = g_map(x, p);
        p.nodes_x.push_back(x);
        p.nodes_eta.push_back(eta);
        p.nodes_q.push_back(q_factor_adaptive(GbsConfig{modes, photons, p.r, eta}).value);
    }
    p.q_max = *std::max_element(p.nodes_q.begin(), p.nodes_q.end());
    p.q_envelope = 4.0 * std::sqrt(n) * std::exp((1.0 - p.eta_min) * n);

    p.eps = (eps0 / p.amplification - p.eps1_effective) / p.q_max;
    if (!(p.eps > 0.0)) {
        throw DomainError("reduction: truncation error eps1 exceeds eps0 exp(-l(1 + log 1/Delta)); no admissible eps");
    }
    p.eps_prime = p.q_max * p.eps + p.eps1_effective;
    return p;
}

double g_map(double x, const ReductionParams &p) {
    require(x == 1.0 || std::abs(x) <= p.delta_interval * (1.0 + kRangeSlack),
            "g_map: x must lie in [-Delta, Delta] or equal 1");
    const double n = p.photons;
    const double slope =
        (n * (p.k_max + p.k_star) + 2.0 * p.k_max * p.k_star) / (2.0 * (n + p.k_max) * (n + p.k_star));
    return slope * (x - 1.0) + 1.0;
}

NoiseMode parse_noise_mode(const std::string &name) {
    if (name == "uniform") {
        return NoiseMode::Uniform;
    }
    if (name == "adversarial") {
        return NoiseMode::Adversarial;
    }
    throw InvalidArgument("noise mode must be 'uniform' or 'adversarial'");
}

std::string to_string(NoiseMode mode) { return mode == NoiseMode::Uniform ? "uniform" : "adversarial"; }

OracleEstimate noisy_oracle(const CMatrix &x, const ReductionParams &p, double eta, double eps, NoiseMode mode,
                            Seed noise_seed, int node) {
    require(eta >= p.eta_min * (1.0 - kRangeSlack) && eta <= p.eta_star * (1.0 + kRangeSlack),
            "noisy_oracle: eta outside [eta_min, eta*]");
    require(eps >= 0.0, "noisy_oracle: eps must be non-negative");
    require(x.rows() == p.photons && x.cols() == p.modes, "noisy_oracle: X must be N x M");
    const double q = q_factor_adaptive(GbsConfig{p.modes, p.photons, p.r, eta}).value;
    OracleEstimate out;
    out.eta = eta;
    out.exact = r_polynomial_direct(x, p.r, eta) / q;
    const double width = eps * p.scale();
    if (mode == NoiseMode::Uniform) {
        Engine engine = make_engine(derive_seed(noise_seed, static_cast<std::uint64_t>(node)));
        out.injected_noise = std::uniform_real_distribution<double>(-1.0, 1.0)(engine) * width;
    } else {
        out.injected_noise = node % 2 == 0 ? width : -width;
    }
    out.value = out.exact + out.injected_noise;
    return out;
}

ExtrapolationResult lagrange_extrapolate(const std::vector<InterpolationNode> &nodes) {
    require(nodes.size() >= 2, "lagrange_extrapolate: need at least two nodes");
    const int d = static_cast<int>(nodes.size()) - 1;
    const double half = -nodes.front().x;
    require(half > 0.0 && half < 1.0, "lagrange_extrapolate: nodes must span [-Delta, Delta] with 0 < Delta < 1");
    for (int j = 0; j <= d; ++j) {
        const double expected = -half + 2.0 * j * half / d;
        require(std::abs(nodes[j].x - expected) <= 1e-10 * half, "lagrange_extrapolate: nodes are not equispaced");
    }

    using LD = long double;
    LD ell = 1.0L;
    for (const auto &nd : nodes) {
        ell *= 1.0L - static_cast<LD>(nd.x);
    }
    ExtrapolationResult out;
    out.degree = d;
    out.half_width = half;
    out.weights.resize(nodes.size());
    LD value = 0.0L;
    LD lebesgue = 0.0L;
    for (int j = 0; j <= d; ++j) {
        LD w = 1.0L;
        for (int k = 0; k <= d; ++k) {
            if (k != j) {
                w *= static_cast<LD>(nodes[j].x) - static_cast<LD>(nodes[k].x);
            }
        }
        const LD basis = ell / (w * (1.0L - static_cast<LD>(nodes[j].x)));
        out.weights[j] = static_cast<double>(basis);
        value += basis * static_cast<LD>(nodes[j].y);
        lebesgue += std::abs(basis);
    }
    out.value = static_cast<double>(value);
    out.lebesgue = static_cast<double>(lebesgue);
    return out;
}

double kondo_bound(double eps, int degree, double half_width) {
    require(degree >= 1, "kondo_bound: degree must be >= 1");
    require(half_width > 0.0 && half_width < 1.0, "kondo_bound: Delta must lie in (0, 1)");
    return eps * std::exp(degree * (1.0 + std::log(1.0 / half_width))) / std::sqrt(2.0 * std::numbers::pi * degree);
}

ReductionTrial reduction_experiment(const CMatrix &x, const ReductionParams &p, NoiseMode mode, Seed noise_seed,
                                    double eps) {
    require(x.rows() == p.photons && x.cols() == p.modes, "reduction_experiment: X must be N x M");
    const double oracle_eps = eps < 0.0 ? p.eps : eps;
    const double scale = p.scale();
    const bool exact_degree = p.l == p.photons;
    RPolynomial truncated;
    RPolynomial full;
    if (!exact_degree) {
        full = series_coefficients(x, p.r);
        truncated = truncate(full, p.l);
    }

    ReductionTrial trial;
    std::vector<InterpolationNode> points;
    bool hypotheses = true;
    double max_abs_y = 0.0;
    for (int j = 0; j <= p.l; ++j) {
        ReductionNode nd;
        nd.x = p.nodes_x[j];
        nd.eta = p.nodes_eta[j];
        nd.q = p.nodes_q[j];
        const OracleEstimate est = noisy_oracle(x, p, nd.eta, oracle_eps, mode, noise_seed, j);
        nd.oracle = est.value;
        nd.noise = est.injected_noise;
        nd.r_estimate = est.value * nd.q;
        if (exact_degree) {
            nd.truncated_value = est.exact * nd.q;
            nd.truncation_dev = 0.0;
        } else {
            nd.truncated_value = truncated.evaluate(nd.eta);
            nd.truncation_dev = truncation_deviation(full, p.l, nd.eta);
        }
        hypotheses = hypotheses && std::abs(nd.noise) <= oracle_eps * scale &&
                     nd.truncation_dev <= p.eps1_effective * scale;
        max_abs_y = std::max(max_abs_y, std::abs(nd.r_estimate));
        points.push_back({nd.x, nd.r_estimate});
        trial.nodes.push_back(nd);
    }

    const ExtrapolationResult ex = lagrange_extrapolate(points);
    trial.estimate = ex.value;
    trial.lebesgue = ex.lebesgue;
    trial.truth = ideal_value(x);
    trial.abs_error = std::abs(trial.estimate - trial.truth);
    trial.tolerance = p.eps0 * scale;
    trial.budget = (p.q_max * oracle_eps + p.eps1_effective) * p.amplification * scale;
    trial.hypotheses_hold = hypotheses;
    // Allowance for rounding in the rescaling and interpolation sums.
    const double rounding = 64.0 * std::numeric_limits<double>::epsilon() * ex.lebesgue * max_abs_y;
    trial.within_budget = trial.abs_error <= trial.budget + rounding;
    trial.success = trial.abs_error <= trial.tolerance;
    return trial;
}

ReductionBatch reduction_batch(const ReductionParams &params, int trials, Seed seed, NoiseMode mode, int threads) {
    require(trials >= 1, "reduction_batch: need at least one trial");
    ReductionBatch batch;
    batch.params = params;
    batch.mode = mode;
    batch.seed = seed.value;
    batch.trials.resize(trials);
    parallel_for(static_cast<std::size_t>(trials), threads, [&](std::size_t t) {
        const CMatrix x = sample_ginibre(derive_seed(seed, 2 * t), params.photons, params.modes);
        batch.trials[t] = reduction_experiment(x, params, mode, derive_seed(seed, 2 * t + 1));
    });
    batch.budget_pass = true;
    for (const auto &t : batch.trials) {
        batch.successes += t.success ? 1 : 0;
        if (t.hypotheses_hold) {
            ++batch.budget_checked;
            batch.budget_pass = batch.budget_pass && t.within_budget;
        }
    }
    batch.success_interval = wilson_interval(batch.successes, trials);
    batch.success_pass = batch.success_interval.lo >= 1.0 - params.delta0;
    return batch;
}

TruncationReport truncation_lemma_experiment(int photons, int modes, double k_star, double delta, int trials,
                                             Seed seed, int threads) {
    require(photons >= 2 && photons % 2 == 0, "truncation: N must be even and >= 2");
    if (photons > 8) {
        throw SizeLimitError("truncation: N must be <= 8 for exact evaluation");
    }
    require(modes >= 2 && modes % 2 == 0, "truncation: M must be even and >= 2");
    require(k_star > 0.0, "truncation: k* must be positive");
    require(delta > 0.0 && delta < 1.0, "truncation: delta must lie in (0, 1)");
    require(trials >= 1, "truncation: need at least one trial");

    TruncationReport rep;
    const double n = photons;
    rep.photons = photons;
    rep.modes = modes;
    rep.k_star = k_star;
    rep.k_max = 3.0 * k_star;
    rep.eta_min = n / (n + rep.k_max);
    rep.r = std::asinh(std::sqrt(n / (rep.eta_min * modes)));
    rep.delta = delta;
    rep.trials = trials;
    rep.seed = seed.value;
    rep.log_scale = log_moment_scale(photons, modes);

    std::vector<int> degrees;
    for (int l = 2; l <= photons; l += 2) {
        if (l > rep.k_max) {
            degrees.push_back(l);
        }
    }
    if (degrees.empty()) {
        throw DomainError("truncation: no even l with k_max < l <= N");
    }

    std::vector<std::vector<double>> dev(degrees.size(), std::vector<double>(trials));
    parallel_for(static_cast<std::size_t>(trials), threads, [&](std::size_t t) {
        const CMatrix x = sample_ginibre(derive_seed(seed, t), photons, modes);
        const RPolynomial poly = series_coefficients(x, rep.r);
        for (std::size_t i = 0; i < degrees.size(); ++i) {
            dev[i][t] = truncation_deviation(poly, degrees[i], rep.eta_min);
        }
    });

    const double scale = std::exp(rep.log_scale);
    rep.pass = true;
    rep.monotone = true;
    for (std::size_t i = 0; i < degrees.size(); ++i) {
        TruncationRow row;
        row.l = degrees[i];
        row.eps1 = std::exp(log_eps1(photons, rep.k_max, row.l, delta));
        row.threshold = row.eps1 * scale;
        for (double d : dev[i]) {
            row.exceedances += d > row.threshold ? 1 : 0;
        }
        row.fraction = static_cast<double>(row.exceedances) / trials;
        row.interval = wilson_interval(row.exceedances, trials);
        std::vector<double> sorted = dev[i];
        std::sort(sorted.begin(), sorted.end());
        const auto q = static_cast<std::size_t>(std::ceil(0.95 * trials)) - 1;
        row.q95_deviation = sorted[q] / scale;
        row.pass = row.interval.hi < delta;
        rep.pass = rep.pass && row.pass;
        if (!rep.rows.empty() && row.q95_deviation > rep.rows.back().q95_deviation) {
            rep.monotone = false;
        }
        rep.rows.push_back(row);
    }
    return rep;
}

}  // namespace lgbs
