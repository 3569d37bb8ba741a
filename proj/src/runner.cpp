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

#include "lgbs/runner.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "lgbs/common.hpp"
#include "lgbs/extrapolation.hpp"
#include "lgbs/gaussian.hpp"
#include "lgbs/hafnian.hpp"
#include "lgbs/probability.hpp"
#include "lgbs/random.hpp"
#include "lgbs/statistics.hpp"

namespace lgbs {

using Json = nlohmann::ordered_json;

std::vector<int> parse_outcome(const std::string &text) {
    std::string s = text;
    std::replace(s.begin(), s.end(), ',', ' ');
    std::istringstream in(s);
    std::vector<int> modes;
    std::string tok;
    while (in >> tok) {
        std::size_t used = 0;
        int v = 0;
        try {
            v = std::stoi(tok, &used);
        } catch (const std::exception &) {
            throw InvalidArgument("outcome: '" + tok + "' is not an integer");
        }
        require(used == tok.size(), "outcome: '" + tok + "' is not an integer");
        modes.push_back(v);
    }
    return modes;
}

Report::Report(std::string command) : command_(std::move(command)) {}

void Report::exact(const std::string &key, double value) {
    results_[key] = value;
    provenance_[key] = Json{{"kind", "exact"}};
}

void Report::series(const std::string &key, double value, double error_bound) {
    results_[key] = value;
    provenance_[key] = Json{{"kind", "truncated-series"}, {"error_bound", error_bound}};
}

void Report::monte_carlo(const std::string &key, double value, double standard_error) {
    results_[key] = value;
    provenance_[key] = Json{{"kind", "monte-carlo"}, {"stderr", standard_error}};
}

void Report::info(const std::string &key, Json value) {
    if (value.is_number()) {
        provenance_[key] = Json{{"kind", "exact"}};
    }
    results_[key] = std::move(value);
}

void Report::check(const std::string &name, double value, const std::string &relation, double bound, bool pass) {
    checks_.push_back(Json{{"name", name}, {"value", value}, {"relation", relation}, {"bound", bound}, {"pass", pass}});
}

void Report::warn(const std::string &message) { warnings_.push_back(message); }

void Report::set_columns(std::vector<std::string> columns) { columns_ = std::move(columns); }

void Report::add_row(Json row) { rows_.push_back(std::move(row)); }

bool Report::all_pass() const {
    return std::all_of(checks_.begin(), checks_.end(), [](const Json &c) { return c["pass"].get<bool>(); });
}

std::string Report::to_json() const {
    Json doc;
    doc["schema"] = kSchemaVersion;
    doc["tool"] = kToolName;
    doc["version"] = kToolVersion;
    doc["command"] = command_;
    doc["status"] = "ok";
    doc["config"] = config_;
    doc["results"] = results_;
    doc["provenance"] = provenance_;
    doc["checks"] = checks_;
    doc["all_checks_pass"] = all_pass();
    doc["warnings"] = warnings_;
    if (!columns_.empty()) {
        Json table;
        table["columns"] = columns_;
        table["rows"] = rows_;
        doc["table"] = table;
    }
    return doc.dump(2) + "\n";
}

namespace {

std::string csv_cell(const Json &v) {
    if (v.is_string()) {
        const std::string s = v.get<std::string>();
        if (s.find_first_of(",\"\n") == std::string::npos) {
            return s;
        }
        std::string out = "\"";
        for (char c : s) {
            out += c == '"' ? std::string("\"\"") : std::string(1, c);
        }
        return out + "\"";
    }
    return v.dump();
}

}  // namespace

std::string Report::to_csv() const {
    std::ostringstream out;
    out << "# schema=" << kSchemaVersion << " tool=" << kToolName << " version=" << kToolVersion
        << " command=" << command_ << "\n";
    out << "# config " << config_.dump() << "\n";
    out << "# results " << results_.dump() << "\n";
    out << "# provenance " << provenance_.dump() << "\n";
    for (const auto &c : checks_) {
        out << "# check " << c.dump() << "\n";
    }
    for (const auto &w : warnings_) {
        out << "# warning " << w.get<std::string>() << "\n";
    }
    if (columns_.empty()) {
        std::vector<std::string> keys;
        for (const auto &[k, v] : results_.items()) {
            keys.push_back(k);
        }
        for (std::size_t i = 0; i < keys.size(); ++i) {
            out << (i ? "," : "") << keys[i];
        }
        out << "\n";
        std::size_t i = 0;
        for (const auto &[k, v] : results_.items()) {
            out << (i++ ? "," : "") << csv_cell(v);
        }
        out << "\n";
        return out.str();
    }
    for (std::size_t i = 0; i < columns_.size(); ++i) {
        out << (i ? "," : "") << columns_[i];
    }
    out << "\n";
    for (const auto &row : rows_) {
        for (std::size_t i = 0; i < columns_.size(); ++i) {
            out << (i ? "," : "") << csv_cell(row[columns_[i]]);
        }
        out << "\n";
    }
    return out.str();
}

namespace {

template <class T>
T need(const std::optional<T> &v, const char *flag) {
    if (!v) {
        throw InvalidArgument(std::string("missing required option --") + flag);
    }
    return *v;
}

void echo_common(Report &rep, const RunConfig &c) {
    rep.config()["seed"] = c.seed;
    rep.config()["seed_source"] = c.seed_source;
    rep.config()["threads"] = c.threads;
}

GbsConfig resolve_gbs(Report &rep, const RunConfig &c) {
    const int n = need(c.photons, "N");
    const int m = need(c.modes, "M");
    require(c.r.has_value() != c.auto_r, "exactly one of --r and --auto-r must be given");
    require(c.eta.has_value() != c.k_star.has_value(), "exactly one of --eta and --k-star must be given");
    require(n >= 0 && n % 2 == 0, "N must be even and non-negative");
    require(m >= 2 && m % 2 == 0, "M must be even and >= 2");
    double eta = 0.0;
    if (c.eta) {
        eta = *c.eta;
    } else {
        require(*c.k_star >= 0.0, "k* must be non-negative");
        eta = n / (n + *c.k_star);
    }
    GbsConfig cfg = c.auto_r ? GbsConfig::with_auto_r(m, n, eta) : GbsConfig{m, n, *c.r, eta};
    cfg.validate();
    rep.config()["N"] = n;
    rep.config()["M"] = m;
    rep.config()["r"] = cfg.r;
    rep.config()["r_source"] = c.auto_r ? "auto: sinh^2 r = N/(eta M)" : "given";
    rep.config()["eta"] = cfg.eta;
    if (c.k_star) {
        rep.config()["k_star"] = *c.k_star;
    }
    echo_common(rep, c);
    return cfg;
}

std::string outcome_text(const Outcome &s) {
    std::string out;
    for (std::size_t i = 0; i < s.modes().size(); ++i) {
        out += (i ? " " : "") + std::to_string(s.modes()[i]);
    }
    return out;
}

Report run_probability(const RunConfig &c) {
    Report rep("probability");
    const GbsConfig cfg = resolve_gbs(rep, c);
    std::vector<int> modes;
    if (c.outcome) {
        modes = *c.outcome;
    } else {
        require(cfg.photons <= cfg.modes, "default outcome (1..N) needs N <= M; pass --outcome");
        for (int i = 1; i <= cfg.photons; ++i) {
            modes.push_back(i);
        }
    }
    const Outcome s(modes);
    rep.config()["outcome"] = outcome_text(s);
    rep.config()["unitary"] = "haar(seed)";
    const CMatrix u = sample_haar_unitary(Seed{c.seed}, cfg.modes);

    const QFactorResult q = q_factor_adaptive(cfg);
    const double p = prob_postselected(u, s, cfg);
    const double qs = prob_no_postselect(u, s, cfg);
    const PostselectResult pn = prob_postselect_N(cfg);
    const double ideal = prob_ideal(u, s, cfg);

    rep.series("p_S", p, std::abs(p) * q.error_bound / q.value);
    rep.exact("q_S", qs);
    rep.series("Pr_N", pn.value, pn.error_bound);
    rep.series("Q", q.value, q.error_bound);
    rep.exact("p_S_ideal", ideal);
    rep.exact("mu_S", s.multiplicity_product());
    rep.info("collision_free", s.collision_free());
    const double gap = std::abs(p * pn.value - qs);
    rep.check("p_S * Pr[N] = q_S", gap, "<=", 1e-10 * std::max(qs, 1e-300), gap <= 1e-10 * std::max(qs, 1e-300));
    rep.check("p_S >= 0", p, ">=", 0.0, p >= 0.0);
    return rep;
}

Report run_distribution(const RunConfig &c) {
    Report rep("distribution");
    const GbsConfig cfg = resolve_gbs(rep, c);
    require(cfg.photons <= cfg.modes, "distribution: enumeration requires N <= M");
    rep.config()["unitary"] = "haar(seed)";
    const CMatrix u = sample_haar_unitary(Seed{c.seed}, cfg.modes);
    const auto dist = enumerate_distribution(u, cfg, c.threads);
    const QFactorResult q = q_factor_adaptive(cfg);
    double total = 0.0;
    double min_p = 1.0;
    rep.set_columns({"outcome", "probability"});
    for (const auto &op : dist) {
        total += op.probability;
        min_p = std::min(min_p, op.probability);
        rep.add_row(Json{{"outcome", outcome_text(op.outcome)}, {"probability", op.probability}});
    }
    rep.info("outcome_count", static_cast<long>(dist.size()));
    rep.series("total_probability", total, total * q.error_bound / q.value);
    rep.check("normalization |sum - 1|", std::abs(total - 1.0), "<=", 1e-9, std::abs(total - 1.0) <= 1e-9);
    rep.check("min probability", min_p, ">=", 0.0, min_p >= 0.0);
    return rep;
}

Report run_qfactor(const RunConfig &c) {
    Report rep("qfactor");
    const GbsConfig cfg = resolve_gbs(rep, c);
    const QFactorResult q = c.terms ? q_factor(cfg, *c.terms) : q_factor_adaptive(cfg);
    rep.config()["terms"] = c.terms ? Json(*c.terms) : Json("adaptive");
    rep.series("Q", q.value, q.error_bound);
    rep.exact("error_bound", q.error_bound);
    rep.info("truncation_terms", q.truncation_terms);
    rep.info("bound_form", q.bound_form);
    rep.exact("z", cfg.z());
    rep.check("Q > 0", q.value, ">", 0.0, q.value > 0.0);
    if (cfg.eta == 1.0) {
        rep.check("Q(1) = 1", q.value, "==", 1.0, q.value == 1.0);
    }
    const double n = cfg.photons;
    if ((1.0 - cfg.eta) * std::sqrt(n) <= 1.0) {
        const double env = 4.0 * std::sqrt(n) * std::exp((1.0 - cfg.eta) * n);
        rep.check("Q <= 4 sqrt(N) exp((1-eta) N)", q.value, "<=", env, q.value <= env);
    }
    return rep;
}

Report run_postselect(const RunConfig &c) {
    Report rep("postselect");
    if (c.modes) {
        const GbsConfig cfg = resolve_gbs(rep, c);
        rep.config()["mode"] = "single";
        const PostselectResult pn = prob_postselect_N(cfg);
        rep.series("Pr_N", pn.value, pn.error_bound);
        rep.info("truncation_terms", pn.truncation_terms);
        rep.check("Pr[N] in [0, 1]", pn.value, "<=", 1.0, pn.value >= 0.0 && pn.value <= 1.0);
        return rep;
    }
    const int n_max = need(c.photons, "N");
    require(n_max >= 2 && n_max % 2 == 0, "postselect: N must be even and >= 2");
    rep.config()["mode"] = "grid: M = N^3, eta = 1 - 1/(12 sqrt N), sinh^2 r = N/(eta M)";
    rep.config()["N_max"] = n_max;
    echo_common(rep, c);
    const auto rows = postselect_lower_bound_check(n_max);
    rep.set_columns({"N", "M", "eta", "r", "Pr_N", "Pr_N_sqrt_N"});
    double min_v = std::numeric_limits<double>::infinity();
    for (const auto &row : rows) {
        rep.add_row(Json{{"N", row.photons},
                         {"M", row.modes},
                         {"eta", row.eta},
                         {"r", row.r},
                         {"Pr_N", row.prob},
                         {"Pr_N_sqrt_N", row.prob_sqrt_n}});
        min_v = std::min(min_v, row.prob_sqrt_n);
    }
    rep.series("min_Pr_N_sqrt_N", min_v, 0.0);
    rep.check("min Pr[N] sqrt(N)", min_v, ">=", kPostselectGuard, min_v >= kPostselectGuard);
    return rep;
}

void echo_reduction(Report &rep, const ReductionParams &p) {
    rep.exact("k_max", p.k_max);
    rep.exact("eta_star", p.eta_star);
    rep.exact("eta_min", p.eta_min);
    rep.exact("r", p.r);
    rep.exact("Delta_nominal", p.delta_nominal);
    rep.exact("Delta_limit", p.delta_limit);
    rep.exact("Delta", p.delta_interval);
    rep.info("Delta_shrunk", p.delta_shrunk);
    rep.info("small_loss_assumption", p.small_loss_assumption);
    rep.exact("log_term", p.log_term);
    rep.exact("chi", p.chi);
    rep.exact("l_raw", p.l_raw);
    rep.info("l", p.l);
    rep.info("l_capped", p.l_capped);
    rep.exact("delta", p.delta);
    rep.exact("eps1", p.eps1);
    rep.exact("eps1_effective", p.eps1_effective);
    rep.exact("amplification", p.amplification);
    rep.exact("kondo_factor", p.kondo_factor);
    rep.series("Q_max", p.q_max, 1e-13 * p.q_max);
    rep.exact("Q_envelope", p.q_envelope);
    rep.exact("eps", p.eps);
    rep.exact("eps_prime", p.eps_prime);
    rep.exact("scale", p.scale());
    rep.exact("log_scale", p.log_scale);
    for (const auto &w : p.warnings) {
        rep.warn(w);
    }
}

Report run_extrapolate(const RunConfig &c) {
    Report rep("extrapolate");
    const int n = need(c.photons, "N");
    const int m = need(c.modes, "M");
    const double k_star = need(c.k_star, "k-star");
    const double eps0 = need(c.eps0, "eps0");
    const double delta0 = need(c.delta0, "delta0");
    const int trials = c.trials.value_or(100);
    const NoiseMode mode = parse_noise_mode(c.noise_mode);
    rep.config()["N"] = n;
    rep.config()["M"] = m;
    rep.config()["k_star"] = k_star;
    rep.config()["eps0"] = eps0;
    rep.config()["delta0"] = delta0;
    rep.config()["trials"] = trials;
    rep.config()["noise_mode"] = to_string(mode);
    rep.config()["log"] = "natural";
    echo_common(rep, c);

    const ReductionParams p = make_reduction_params(n, m, k_star, eps0, delta0);
    echo_reduction(rep, p);
    const ReductionBatch batch = reduction_batch(p, trials, Seed{c.seed}, mode, c.threads);

    rep.set_columns({"trial", "estimate", "truth", "abs_error", "tolerance", "budget", "lebesgue", "success",
                     "hypotheses_hold", "within_budget"});
    double worst = 0.0;
    for (std::size_t t = 0; t < batch.trials.size(); ++t) {
        const auto &tr = batch.trials[t];
        worst = std::max(worst, tr.abs_error / tr.tolerance);
        rep.add_row(Json{{"trial", t},
                         {"estimate", tr.estimate},
                         {"truth", tr.truth},
                         {"abs_error", tr.abs_error},
                         {"tolerance", tr.tolerance},
                         {"budget", tr.budget},
                         {"lebesgue", tr.lebesgue},
                         {"success", tr.success},
                         {"hypotheses_hold", tr.hypotheses_hold},
                         {"within_budget", tr.within_budget}});
    }
    const double frac = static_cast<double>(batch.successes) / trials;
    rep.info("successes", batch.successes);
    rep.monte_carlo("success_fraction", frac, std::sqrt(frac * (1.0 - frac) / trials));
    rep.monte_carlo("success_wilson_lo", batch.success_interval.lo, 0.0);
    rep.monte_carlo("success_wilson_hi", batch.success_interval.hi, 0.0);
    rep.info("budget_checked_trials", batch.budget_checked);
    rep.monte_carlo("max_error_over_tolerance", worst, 0.0);

    rep.check("success Wilson lower bound", batch.success_interval.lo, ">=", 1.0 - delta0, batch.success_pass);
    rep.check("trials exceeding budget", batch.budget_pass ? 0.0 : 1.0, "==", 0.0, batch.budget_pass);
    const double lo = p.nodes_eta.front();
    const double hi = p.nodes_eta.back();
    rep.check("g(-Delta) >= eta_min", lo, ">=", p.eta_min, lo >= p.eta_min * (1.0 - 1e-12));
    rep.check("g(Delta) <= eta*", hi, "<=", p.eta_star, hi <= p.eta_star * (1.0 + 1e-12));
    rep.check("Q_max <= 4 sqrt(N) exp((1-eta_min) N)", p.q_max, "<=", p.q_envelope, p.q_max <= p.q_envelope);
    rep.check("l > k_max", p.l, ">", p.k_max, p.l > p.k_max);
    return rep;
}

Report run_truncation(const RunConfig &c) {
    Report rep("truncation");
    const int n = need(c.photons, "N");
    const int m = need(c.modes, "M");
    const double k_star = need(c.k_star, "k-star");
    const double delta = c.delta.value_or(0.25);
    const int trials = c.trials.value_or(500);
    rep.config()["N"] = n;
    rep.config()["M"] = m;
    rep.config()["k_star"] = k_star;
    rep.config()["delta"] = delta;
    rep.config()["trials"] = trials;
    echo_common(rep, c);
    const TruncationReport tr = truncation_lemma_experiment(n, m, k_star, delta, trials, Seed{c.seed}, c.threads);
    rep.exact("k_max", tr.k_max);
    rep.exact("eta_min", tr.eta_min);
    rep.exact("r", tr.r);
    rep.exact("scale", std::exp(tr.log_scale));
    rep.set_columns({"l", "eps1", "threshold", "exceedances", "fraction", "wilson_lo", "wilson_hi", "q95_deviation",
                     "pass"});
    for (const auto &row : tr.rows) {
        rep.add_row(Json{{"l", row.l},
                         {"eps1", row.eps1},
                         {"threshold", row.threshold},
                         {"exceedances", row.exceedances},
                         {"fraction", row.fraction},
                         {"wilson_lo", row.interval.lo},
                         {"wilson_hi", row.interval.hi},
                         {"q95_deviation", row.q95_deviation},
                         {"pass", row.pass}});
        rep.check("l=" + std::to_string(row.l) + " exceedance Wilson upper bound", row.interval.hi, "<", delta,
                  row.pass);
    }
    rep.check("q95 deviation non-increasing in l", tr.monotone ? 1.0 : 0.0, "==", 1.0, tr.monotone);
    return rep;
}

Report run_moments(const RunConfig &c) {
    Report rep("moments");
    const int n = need(c.photons, "N");
    const int m = need(c.modes, "M");
    const long samples = c.samples.value_or(10000);
    const int rows = c.rows.value_or(n);
    rep.config()["N"] = n;
    rep.config()["M"] = m;
    rep.config()["samples"] = samples;
    rep.config()["rows"] = rows;
    rep.config()["blocks"] = kMomentBlocks;
    echo_common(rep, c);
    const MomentReport mr = hafnian_moment_mc(n, m, samples, Seed{c.seed}, rows, c.threads);
    rep.monte_carlo("empirical_mean", mr.empirical_mean, mr.standard_error);
    rep.monte_carlo("median_of_means", mr.median_of_means, mr.mom_standard_error);
    rep.exact("analytic", mr.analytic);
    rep.monte_carlo("z_score", mr.z_score, 1.0);
    rep.check("|z| (median of means)", std::abs(mr.z_score), "<=", kMomentBand, mr.pass);
    if (rows == 2) {
        rep.check("analytic at N=2 equals M", mr.analytic, "==", m, std::abs(mr.analytic - m) <= 1e-9 * m);
    }
    return rep;
}

Report run_tvd(const RunConfig &c) {
    Report rep("tvd");
    const GbsConfig cfg = resolve_gbs(rep, c);
    require(cfg.photons <= cfg.modes, "tvd: enumeration requires N <= M");
    rep.config()["unitary"] = "haar(seed)";
    const CMatrix u = sample_haar_unitary(Seed{c.seed}, cfg.modes);
    const TvdReport t = tvd_bound_report(u, cfg, c.threads);
    const double q_err = q_factor_adaptive(cfg).error_bound;
    rep.series("exact_tvd", t.exact_tvd, q_err);
    rep.exact("fidelity", t.fidelity);
    rep.exact("fidelity_bound", t.fidelity_bound);
    rep.exact("lemma_bound", t.lemma_bound);
    rep.check("tvd <= sqrt(1 - F)", t.exact_tvd, "<=", t.fidelity_bound, t.tvd_within_fidelity);
    rep.check("sqrt(1 - F) <= sqrt((1-eta) M sinh^2 r)", t.fidelity_bound, "<=", t.lemma_bound,
              t.fidelity_within_lemma);
    if (c.beta0 || c.beta1) {
        const double b0 = need(c.beta0, "beta0");
        const double b1 = c.beta1.value_or(0.0);
        rep.config()["beta0"] = b0;
        rep.config()["beta1"] = b1;
        const double th = theorem3_threshold(b0, b1, cfg.modes, cfg.r);
        rep.exact("eta_threshold", th);
        rep.check("eta >= threshold", cfg.eta, ">=", th, cfg.eta >= th);
    }
    return rep;
}

Report run_selftest(const RunConfig &c) {
    Report rep("selftest");
    echo_common(rep, c);
    auto close = [](double a, double b, double tol) { return std::abs(a - b) <= tol; };

    const double q1 = q_factor(GbsConfig{8, 2, 0.4, 1.0}, 64).value;
    rep.check("Q(1) = 1", q1, "==", 1.0, q1 == 1.0);
    const double q0 = q_factor(GbsConfig{8, 2, 0.0, 0.7}, 64).value;
    rep.check("Q at r = 0 is 1", q0, "==", 1.0, q0 == 1.0);

    const Complex h0 = haf_enumerate(ComplexSymMatrix(CMatrix(0, 0)));
    rep.check("Haf(empty) = 1", std::abs(h0 - Complex(1.0)), "<=", 0.0, h0 == Complex(1.0));
    CMatrix b2(2, 2);
    b2 << 0.3, Complex(1.5, -0.5), Complex(1.5, -0.5), 0.7;
    const Complex h2 = haf_fast(ComplexSymMatrix(b2));
    rep.check("Haf of 2x2 is the off-diagonal entry", std::abs(h2 - b2(0, 1)), "<=", 1e-15,
              close(std::abs(h2 - b2(0, 1)), 0.0, 1e-15));

    const CMatrix u2 = sample_haar_unitary(Seed{c.seed}, 2);
    const auto dist = enumerate_distribution(u2, GbsConfig{2, 2, 0.4, 0.8});
    double total = 0.0;
    for (const auto &op : dist) {
        total += op.probability;
    }
    rep.check("M=2, N=2 has 3 outcomes", dist.size(), "==", 3.0, dist.size() == 3);
    rep.check("M=2, N=2 distribution sums to 1", std::abs(total - 1.0), "<=", 1e-9, close(total, 1.0, 1e-9));

    const ReductionParams p = make_reduction_params(6, 500, 0.3, 0.1, 0.25);
    rep.check("g(1) = 1", g_map(1.0, p), "==", 1.0, g_map(1.0, p) == 1.0);

    const CMatrix x = sample_ginibre(Seed{c.seed}, 4, 8);
    const RPolynomial poly = series_coefficients(x, 0.5);
    const double c0 = truncate(poly, 0).evaluate(0.3);
    rep.check("truncate(l=0) is the constant P(X)", std::abs(c0 - ideal_value(x)), "<=", 1e-9 * ideal_value(x),
              close(c0, ideal_value(x), 1e-9 * ideal_value(x)));
    const double full = truncate(poly, 4).evaluate(0.3);
    rep.check("truncate(l=N) is the identity", full, "==", poly.evaluate(0.3), full == poly.evaluate(0.3));

    std::vector<InterpolationNode> nodes{{-0.5, 0.0}, {0.0, 0.0}, {0.5, 1.0}};
    const ExtrapolationResult ex = lagrange_extrapolate(nodes);
    rep.check("d=2, Delta=1/2 extrapolation weight on the last node", ex.value, "==", 3.0, close(ex.value, 3.0, 1e-12));
    std::vector<InterpolationNode> quad;
    for (int j = 0; j <= 2; ++j) {
        const double xv = -0.4 + 0.4 * j;
        quad.push_back({xv, 2.0 - xv + 3.0 * xv * xv});
    }
    const double qv = lagrange_extrapolate(quad).value;
    rep.check("quadratic recovered at x = 1", qv, "==", 4.0, close(qv, 4.0, 1e-12));

    const double th = theorem3_threshold(0.1, 0.1, 100, 0.3);
    rep.check("theorem3 threshold with beta0 = beta1", th, "==", 1.0, th == 1.0);
    const double clamp = theorem3_threshold(0.9, 0.0, 2, 0.01);
    rep.check("theorem3 threshold clamps at 0", clamp, "==", 0.0, clamp == 0.0);

    const CMatrix u4 = sample_haar_unitary(Seed{c.seed}, 4);
    const double tvd0 = exact_tvd(u4, GbsConfig{4, 2, 0.3, 1.0}, GbsConfig{4, 2, 0.3, 1.0});
    rep.check("TVD at eta = 1 is 0", tvd0, "==", 0.0, tvd0 == 0.0);

    const double pn = prob_postselect_N(GbsConfig{4, 2, 0.0, 1.0}).value;
    rep.check("Pr[2] = 0 at r = 0", pn, "==", 0.0, pn == 0.0);

    return rep;
}

}  // namespace

const std::vector<std::string> &command_names() {
    static const std::vector<std::string> names{"probability", "distribution", "qfactor", "postselect", "extrapolate",
                                                "truncation",  "moments",      "tvd",     "selftest"};
    return names;
}

Report run_command(const std::string &command, const RunConfig &config) {
    require(config.threads >= 1, "threads must be >= 1");
    if (command == "probability") return run_probability(config);
    if (command == "distribution") return run_distribution(config);
    if (command == "qfactor") return run_qfactor(config);
    if (command == "postselect") return run_postselect(config);
    if (command == "extrapolate") return run_extrapolate(config);
    if (command == "truncation") return run_truncation(config);
    if (command == "moments") return run_moments(config);
    if (command == "tvd") return run_tvd(config);
    if (command == "selftest") return run_selftest(config);
    throw InvalidArgument("unknown command '" + command + "'");
}

}  // namespace lgbs
