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

#include "lgbs/probability.hpp"

#include <cmath>
#include <limits>

#include "lgbs/parallel.hpp"
#include "lgbs/random.hpp"

namespace lgbs {

namespace {

// Neumaier's variant of Kahan summation.
class CompensatedSum {
  public:
    void add(double x) {
        double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x)) {
            comp_ += (sum_ - t) + x;
        } else {
            comp_ += (x - t) + sum_;
        }
        sum_ = t;
    }
    double value() const { return sum_ + comp_; }

  private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

double log_pochhammer(double q, int n) { return std::lgamma(q + n) - std::lgamma(q); }

double log_postselect_prefactor(const GbsConfig &cfg) {
    const double n = cfg.photons;
    const double half_m = cfg.modes / 2.0;
    const double half_n = n / 2.0;
    const double t = std::tanh(cfg.r);
    double log_eta_t = 0.0;
    if (cfg.photons > 0) {
        if (cfg.eta == 0.0 || t == 0.0) {
            return -std::numeric_limits<double>::infinity();
        }
        log_eta_t = n * (std::log(cfg.eta) + std::log(t));
    }
    return log_eta_t - cfg.modes * std::log(std::cosh(cfg.r)) + log_binomial(half_m + half_n - 1.0, half_n);
}

}  // namespace

GbsConfig GbsConfig::with_auto_r(int modes, int photons, double eta) {
    require(eta > 0.0 && eta <= 1.0, "with_auto_r: eta must lie in (0, 1]");
    require(modes >= 2, "with_auto_r: need at least two modes");
    GbsConfig cfg{modes, photons, 0.0, eta};
    cfg.r = std::asinh(std::sqrt(static_cast<double>(photons) / (eta * modes)));
    cfg.validate();
    return cfg;
}

void GbsConfig::validate() const {
    require(modes >= 2 && modes % 2 == 0, "GbsConfig: mode count M must be even and >= 2");
    require(photons >= 0 && photons % 2 == 0, "GbsConfig: photon number N must be even and >= 0");
    require(r >= 0.0 && std::isfinite(r), "GbsConfig: squeezing r must be finite and >= 0");
    require(eta >= 0.0 && eta <= 1.0, "GbsConfig: transmission eta must lie in [0, 1]");
}

double GbsConfig::z() const {
    const double t = std::tanh(r);
    return (1.0 - eta) * (1.0 - eta) * t * t;
}

SeriesResult hypergeometric_series(const GbsConfig &cfg, int m) {
    cfg.validate();
    require(m >= 0, "hypergeometric_series: term count must be non-negative");
    const double a = (cfg.modes + cfg.photons) / 2.0;
    const double b = (cfg.photons + 1) / 2.0;
    const double c = 0.5;
    const double z = cfg.z();

    SeriesResult out;
    out.terms = m + 1;
    CompensatedSum sum;
    double term = 1.0;
    for (int n = 0; n <= m; ++n) {
        sum.add(term);
        term *= (a + n) * (b + n) / ((c + n) * (n + 1.0)) * z;
    }
    out.value = sum.value();

    if (z == 0.0) {
        out.tail_bound = 0.0;
        out.bound_form = "exact";
        return out;
    }

    const int next = m + 1;
    const double log_p_next =
        log_pochhammer(a, next) + log_pochhammer(b, next) - log_pochhammer(c, next) - std::lgamma(next + 1.0);
    // The coefficient ratio p_{n+1}/p_n is non-increasing in n because a >= 1 and b >= c.
    const double ratio_next = (a + next) * (b + next) / ((c + next) * (next + 1.0));

    const double t2 = std::tanh(cfg.r) * std::tanh(cfg.r);
    if (cfg.eta > 0.0 && cfg.photons > 0) {
        const double n_over_eta_m = cfg.photons / (cfg.eta * cfg.modes);
        const double zg = 2.0 * (1.0 - cfg.eta) * (1.0 - cfg.eta) * n_over_eta_m;
        // p_n <= 2^n for all n > m, and tanh^2 r <= N/(eta M), give tail <= sum z_g^n.
        if (t2 <= n_over_eta_m && zg < 1.0 && log_p_next <= next * std::log(2.0) && ratio_next <= 2.0) {
            out.tail_bound = std::pow(zg, next) / (1.0 - zg);
            out.bound_form = "geometric";
            return out;
        }
    }
    const double rho = ratio_next * z;
    if (rho < 1.0) {
        out.tail_bound = std::exp(log_p_next + next * std::log(z)) / (1.0 - rho);
        out.bound_form = "ratio";
        return out;
    }
    throw DomainError("hypergeometric_series: no convergent tail bound at m = " + std::to_string(m));
}

QFactorResult q_factor(const GbsConfig &cfg, int m) {
    SeriesResult s = hypergeometric_series(cfg, m);
    const double prefactor = std::pow(1.0 - cfg.z(), cfg.modes / 2.0 + cfg.photons);
    return QFactorResult{prefactor * s.value, m, prefactor * s.tail_bound, s.bound_form};
}

QFactorResult q_factor_adaptive(const GbsConfig &cfg, double tol) {
    cfg.validate();
    for (int m = 16; m <= (1 << 20); m *= 2) {
        try {
            QFactorResult q = q_factor(cfg, m);
            if (q.error_bound <= 1e-3 * tol * q.value) {
                return q;
            }
        } catch (const DomainError &) {
            // Tail not yet controlled; keep doubling.
        }
    }
    throw DomainError("q_factor_adaptive: series did not reach the requested tolerance");
}

std::pair<double, double> q_upper_bound_check(const GbsConfig &cfg, double c) {
    QFactorResult q = q_factor_adaptive(cfg);
    const double n = cfg.photons;
    return {q.value, c * std::sqrt(n) * std::exp((1.0 - cfg.eta) * n)};
}

PostselectResult prob_postselect_N(const GbsConfig &cfg, double tol) {
    cfg.validate();
    const double log_pref = log_postselect_prefactor(cfg);
    if (!std::isfinite(log_pref)) {
        return PostselectResult{0.0, 0.0, 0};
    }
    for (int m = 16; m <= (1 << 20); m *= 2) {
        try {
            SeriesResult s = hypergeometric_series(cfg, m);
            if (s.tail_bound <= 1e-3 * tol * s.value) {
                const double pref = std::exp(log_pref);
                return PostselectResult{pref * s.value, pref * s.tail_bound, m};
            }
        } catch (const DomainError &) {
        }
    }
    throw DomainError("prob_postselect_N: series did not reach the requested tolerance");
}

namespace {

void check_outcome(const CMatrix &u, const Outcome &s, const GbsConfig &cfg) {
    cfg.validate();
    require(u.rows() == cfg.modes && u.cols() == cfg.modes, "outcome probability: U must be M x M");
    require(s.photons() == cfg.photons, "outcome probability: |S| must equal N");
    require(s.max_mode() <= cfg.modes, "outcome probability: mode index exceeds M");
}

double real_probability(Complex value, const char *what) {
    if (std::abs(value.imag()) > 1e-12 * std::abs(value.real()) + 1e-15) {
        throw DomainError(std::string(what) + ": hafnian has a non-negligible imaginary part");
    }
    return value.real();
}

}  // namespace

double prob_no_postselect(const CMatrix &u, const Outcome &s, const GbsConfig &cfg) {
    check_outcome(u, s, cfg);
    const double n = cfg.photons;
    const double t = std::tanh(cfg.r);
    if (cfg.photons > 0 && (cfg.eta == 0.0 || t == 0.0)) {
        return 0.0;
    }
    double log_pref = -cfg.modes * std::log(std::cosh(cfg.r)) - (cfg.modes / 2.0 + n) * std::log1p(-cfg.z()) -
                      std::log(s.multiplicity_product());
    if (cfg.photons > 0) {
        log_pref += n * (std::log(cfg.eta) + std::log(t));
    }
    const Complex haf = haf_fast(build_lossy_block(u, s, cfg.r, cfg.eta));
    return real_probability(std::exp(log_pref) * haf, "prob_no_postselect");
}

double prob_postselected(const CMatrix &u, const Outcome &s, const GbsConfig &cfg) {
    check_outcome(u, s, cfg);
    if (cfg.photons > 0 && cfg.eta == 0.0) {
        throw DomainError("prob_postselected: Pr[N] = 0 at eta = 0, the conditional distribution is undefined");
    }
    const QFactorResult q = q_factor_adaptive(cfg);
    const double half_n = cfg.photons / 2.0;
    const double log_c = log_binomial(cfg.modes / 2.0 + half_n - 1.0, half_n);
    const Complex haf = haf_fast(build_lossy_block(u, s, cfg.r, cfg.eta));
    const double scale = std::exp(-log_c) / (q.value * s.multiplicity_product());
    return real_probability(scale * haf, "prob_postselected");
}

double prob_ideal(const CMatrix &u, const Outcome &s, const GbsConfig &cfg) {
    GbsConfig ideal = cfg;
    ideal.eta = 1.0;
    check_outcome(u, s, ideal);
    const double half_n = cfg.photons / 2.0;
    const double log_c = log_binomial(cfg.modes / 2.0 + half_n - 1.0, half_n);
    const CMatrix top = sub_symmetric(u * u.transpose(), s);
    const Complex haf = haf_fast(lossy_block(top, CMatrix::Zero(top.rows(), top.cols()), top.conjugate()));
    return real_probability(std::exp(-log_c) / s.multiplicity_product() * haf, "prob_ideal");
}

std::vector<Outcome> all_outcomes(int modes, int photons) {
    require(modes >= 1 && photons >= 0, "all_outcomes: need M >= 1 and N >= 0");
    std::vector<Outcome> out;
    std::vector<int> current(photons, 1);
    if (photons == 0) {
        out.emplace_back(current);
        return out;
    }
    while (true) {
        out.emplace_back(current);
        int pos = photons - 1;
        while (pos >= 0 && current[pos] == modes) {
            --pos;
        }
        if (pos < 0) {
            break;
        }
        const int next = current[pos] + 1;
        for (int k = pos; k < photons; ++k) {
            current[k] = next;
        }
    }
    return out;
}

std::vector<OutcomeProbability> enumerate_distribution(const CMatrix &u, const GbsConfig &cfg, int threads) {
    cfg.validate();
    const double count = std::exp(log_binomial(cfg.modes + cfg.photons - 1.0, cfg.photons));
    if (count > kMaxEnumeratedOutcomes * (1.0 + 1e-9)) {
        throw SizeLimitError("enumerate_distribution: " + std::to_string(count) + " outcomes exceed the 1e5 limit");
    }
    std::vector<Outcome> outcomes = all_outcomes(cfg.modes, cfg.photons);
    std::vector<OutcomeProbability> dist(outcomes.size());
    parallel_for(outcomes.size(), threads, [&](std::size_t i) {
        dist[i] = OutcomeProbability{outcomes[i], prob_postselected(u, outcomes[i], cfg)};
    });
    return dist;
}

std::vector<PostselectBoundRow> postselect_lower_bound_check(int n_max) {
    require(n_max >= 2, "postselect_lower_bound_check: need n_max >= 2");
    std::vector<PostselectBoundRow> rows;
    for (int n = 2; n <= n_max; n += 2) {
        const int m = n * n * n;
        const double eta = 1.0 - 1.0 / (12.0 * std::sqrt(static_cast<double>(n)));
        GbsConfig cfg = GbsConfig::with_auto_r(m, n, eta);
        const double p = prob_postselect_N(cfg).value;
        rows.push_back(PostselectBoundRow{n, m, eta, cfg.r, p, p * std::sqrt(static_cast<double>(n))});
    }
    return rows;
}

}  // namespace lgbs
