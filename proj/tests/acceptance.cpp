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

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <string>
#include <thread>
#include <vector>

#include "lgbs/extrapolation.hpp"
#include "lgbs/gaussian.hpp"
#include "lgbs/hafnian.hpp"
#include "lgbs/probability.hpp"
#include "lgbs/random.hpp"
#include "lgbs/runner.hpp"
#include "lgbs/statistics.hpp"
#include "support/oracles.hpp"

namespace {

using namespace lgbs;
using Clock = std::chrono::steady_clock;

struct Verdict {
    bool pass = false;
    std::string detail;
};

std::string fmt(const char *format, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, format, args...);
    return buf;
}

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

int worker_threads() { return static_cast<int>(std::max(1u, std::thread::hardware_concurrency())); }

Verdict hafnian_engines() {
    const auto start = Clock::now();
    Engine engine = make_engine(Seed{20260101});
    int agree = 0;
    double worst = 0.0;
    for (int i = 0; i < 200; ++i) {
        const int dim = 2 + 2 * (i % 6);
        const CMatrix b = testing::random_symmetric(engine, dim);
        const Complex fast = haf_fast(ComplexSymMatrix(b));
        const Complex slow = haf_enumerate(ComplexSymMatrix(b));
        if (hafnian_close(fast, slow, 1e-9, b.cwiseAbs().maxCoeff(), dim)) ++agree;
        worst = std::max(worst, std::abs(fast - slow) / std::max(std::abs(slow), 1e-300));
    }
    const double elapsed = seconds_since(start);
    return {agree == 200 && elapsed < 60.0,
            fmt("%d/200 agree, worst relative difference %.2e, %.2f s", agree, worst, elapsed)};
}

Verdict cross_route() {
    int agree = 0;
    double worst = 0.0;
    int count = 0;
    for (auto [n, m] : {std::pair{2, 4}, std::pair{2, 6}, std::pair{4, 4}, std::pair{4, 6}}) {
        for (int k = 0; k < 5; ++k, ++count) {
            const Seed seed = derive_seed(Seed{7001}, static_cast<std::uint64_t>(count));
            const CMatrix u = sample_haar_unitary(derive_seed(seed, 0), m);
            Engine e = make_engine(derive_seed(seed, 1));
            std::uniform_int_distribution<int> mode(1, m);
            std::uniform_real_distribution<double> unit(0.0, 1.0);
            std::vector<int> modes;
            for (int j = 0; j < n; ++j) modes.push_back(mode(e));
            const Outcome s(modes);
            const double r = 0.2 + 0.8 * unit(e);
            const double eta = 0.3 + 0.7 * unit(e);
            const Complex a_route = haf_alternate_A_form(u, s, r, eta);
            const Complex block = std::pow(a_matrix_prefactor(r, eta), n) * haf_fast(build_lossy_block(u, s, r, eta));
            const double rel = std::abs(a_route - block) / std::abs(block);
            worst = std::max(worst, rel);
            if (rel <= 1e-9) ++agree;
        }
    }
    return {agree == count, fmt("%d/%d cases agree, worst relative difference %.2e", agree, count, worst)};
}

struct GridPoint {
    int m, n;
    double eta;
};

std::vector<GridPoint> normalization_grid() {
    std::vector<GridPoint> grid;
    for (auto [m, n] : {std::pair{2, 2}, std::pair{4, 2}, std::pair{4, 4}}) {
        for (double eta : {1.0, 0.9, 0.7}) grid.push_back({m, n, eta});
    }
    return grid;
}

constexpr double kGridR = 0.5;

Verdict normalization() {
    double worst = 0.0;
    for (const GridPoint &g : normalization_grid()) {
        const CMatrix u = sample_haar_unitary(Seed{static_cast<std::uint64_t>(300 + g.m)}, g.m);
        const auto dist = enumerate_distribution(u, GbsConfig{g.m, g.n, kGridR, g.eta});
        testing::HighFloat total = 0;
        for (const auto &op : dist) total += op.probability;
        worst = std::max(worst, std::abs(static_cast<double>(total) - 1.0));
    }
    return {worst <= 1e-9, fmt("9 grid points, max |sum p_S - 1| = %.2e", worst)};
}

Verdict consistency_triangle() {
    double worst = 0.0;
    long checked = 0;
    for (const GridPoint &g : normalization_grid()) {
        const CMatrix u = sample_haar_unitary(Seed{static_cast<std::uint64_t>(300 + g.m)}, g.m);
        const GbsConfig cfg{g.m, g.n, kGridR, g.eta};
        const double pn = prob_postselect_N(cfg).value;
        for (const Outcome &s : all_outcomes(g.m, g.n)) {
            const double q = prob_no_postselect(u, s, cfg);
            const double p = prob_postselected(u, s, cfg);
            if (q == 0.0 && p == 0.0) continue;
            worst = std::max(worst, std::abs(p * pn - q) / q);
            ++checked;
        }
    }
    return {worst <= 1e-10, fmt("%ld outcomes, max relative |p Pr[N] - q| = %.2e", checked, worst)};
}

Verdict q_series() {
    bool ideal = true;
    for (int m : {2, 8, 64, 500})
        for (int n : {0, 2, 6})
            for (int terms : {1, 8, 64}) ideal = ideal && q_factor(GbsConfig{m, n, 0.7, 1.0}, terms).value == 1.0;
    ideal = ideal && q_factor_adaptive(GbsConfig::with_auto_r(64, 4, 1.0)).value == 1.0;

    const GridPoint points[] = {{2, 2, 0.6}, {2, 6, 0.7}, {4, 2, 0.5},  {4, 6, 0.6},  {6, 4, 0.5},
                                {8, 6, 0.5}, {10, 8, 0.5}, {12, 8, 0.5}, {16, 2, 0.5}, {24, 8, 0.5}};
    int verified = 0;
    double worst_ratio = 0.0;
    double worst_value = 0.0;
    for (const GridPoint &p : points) {
        const GbsConfig cfg = GbsConfig::with_auto_r(p.m, p.n, p.eta);
        QFactorResult q;
        int terms = 2;
        for (; terms <= 256; ++terms) {
            try {
                q = q_factor(cfg, terms);
            } catch (const DomainError &) {
                continue;
            }
            if (q.bound_form == "geometric" && q.error_bound > 0.0) break;
        }
        if (terms > 256) continue;
        const testing::HighFloat full = testing::q_series_oracle(p.m, p.n, cfg.r, p.eta, -1);
        const testing::HighFloat partial = testing::q_series_oracle(p.m, p.n, cfg.r, p.eta, terms);
        const double truncation = static_cast<double>(full - partial);
        const double value_err = std::abs(q.value - static_cast<double>(partial)) / q.value;
        worst_ratio = std::max(worst_ratio, truncation / q.error_bound);
        worst_value = std::max(worst_value, value_err);
        if (truncation >= 0.0 && truncation <= q.error_bound && value_err <= 1e-13) ++verified;
    }
    return {ideal && verified == 10,
            fmt("Q(1) == 1 %s; %d/10 points with truncation error <= geometric bound (max ratio %.3f), "
                "max relative partial-sum error %.1e",
                ideal ? "exactly" : "FAILED", verified, worst_ratio, worst_value)};
}

Verdict series_identity() {
    double worst = 0.0;
    int checked = 0;
    for (int n : {2, 4, 6, 8}) {
        const int m = 32;
        for (std::uint64_t k = 0; k < 20; ++k) {
            const Seed seed = derive_seed(Seed{6000 + static_cast<std::uint64_t>(n)}, k);
            const CMatrix x = sample_ginibre(seed, n, m);
            const double r = std::asinh(std::sqrt(static_cast<double>(n) / m)) * (0.5 + 0.1 * static_cast<double>(k % 10));
            const RPolynomial poly = series_coefficients(x, r);
            for (double eta : {1.0, 0.9, 0.75, 0.5, 0.25}) {
                const double direct = r_polynomial_direct(x, r, eta);
                worst = std::max(worst, std::abs(poly.evaluate(eta) - direct) / std::abs(direct));
                ++checked;
            }
        }
    }
    return {worst <= 1e-9 && checked == 400, fmt("%d evaluations, worst relative difference %.2e", checked, worst)};
}

double integer_moment(int n, int m) {
    // C(M/2 + N/2 - 1, N/2) N! in exact integer arithmetic.
    unsigned long long c = 1;
    const int top = m / 2 + n / 2 - 1;
    for (int j = 1; j <= n / 2; ++j) c = c * static_cast<unsigned long long>(top - n / 2 + j) / j;
    for (int j = 2; j <= n; ++j) c *= static_cast<unsigned long long>(j);
    return static_cast<double>(c);
}

Verdict moment_identity() {
    const auto start = Clock::now();
    bool two = true;
    for (int m = 2; m <= 1000; m += 2) {
        two = two && integer_moment(2, m) == m;
        two = two && hafnian_moment_analytic(2, m) == m;
    }
    const double analytic = integer_moment(4, 32);
    const MomentReport rep = hafnian_moment_mc(4, 32, 10000, Seed{0}, -1, worker_threads());
    const bool analytic_ok = analytic == 136.0 * 24.0 && rep.analytic == analytic;
    const double elapsed = seconds_since(start);
    return {two && analytic_ok && rep.pass && elapsed < 300.0,
            fmt("N=2 E = M %s; N=4 M=32: median-of-means %.1f vs %.0f, z = %.2f (band %.0f), %.1f s",
                two ? "holds" : "FAILS", rep.median_of_means, analytic, rep.z_score, kMomentBand, elapsed)};
}

Verdict truncation_lemma() {
    const TruncationReport rep = truncation_lemma_experiment(6, 256, 0.5, 0.25, 500, Seed{0}, worker_threads());
    std::string detail = "N=6 M=256 k*=0.5 delta=0.25, 500 trials:";
    bool pass = !rep.rows.empty();
    for (const TruncationRow &row : rep.rows) {
        detail += fmt(" l=%d %ld exceed (Wilson hi %.4f)", row.l, row.exceedances, row.interval.hi);
        pass = pass && row.interval.hi < rep.delta;
    }
    return {pass, detail};
}

Verdict reduction() {
    const ReductionParams p = make_reduction_params(6, 500, 0.3, 0.1, 0.25);
    const ReductionBatch uni = reduction_batch(p, 100, Seed{0}, NoiseMode::Uniform, worker_threads());
    const ReductionBatch adv = reduction_batch(p, 100, Seed{0}, NoiseMode::Adversarial, worker_threads());
    long exceeded = 0;
    for (const ReductionBatch *b : {&uni, &adv})
        for (const ReductionTrial &t : b->trials)
            if (t.hypotheses_hold && !t.within_budget) ++exceeded;
    return {uni.success_pass && uni.budget_pass && adv.budget_pass,
            fmt("l=%d eps=%.3e: %ld/100 within eps0 scale (Wilson lo %.3f >= %.2f); budget exceeded %ld times "
                "over %ld uniform + %ld adversarial trials",
                p.l, p.eps, uni.successes, uni.success_interval.lo, 1.0 - p.delta0, exceeded, uni.budget_checked,
                adv.budget_checked)};
}

Verdict kondo() {
    const double half = 10.0 / 21.0;
    bool pass = true;
    std::string detail;
    for (int d : {2, 4, 8}) {
        std::vector<InterpolationNode> nodes;
        for (int j = 0; j <= d; ++j) nodes.push_back({-half + 2.0 * j * half / d, 0.0});
        const double eps = 1.0;
        double worst = 0.0;
        for (unsigned mask = 0; mask < (1u << (d + 1)); ++mask) {
            for (int j = 0; j <= d; ++j) nodes[j].y = 5.0 + ((mask >> j) & 1u ? eps : -eps);
            worst = std::max(worst, std::abs(lagrange_extrapolate(nodes).value - 5.0));
        }
        const double bound = kondo_bound(eps, d, half);
        pass = pass && worst <= bound;
        detail += fmt("%sd=%d worst %.4g <= %.4g", detail.empty() ? "" : "; ", d, worst, bound);
    }
    return {pass, detail};
}

Verdict tvd_chain() {
    const CMatrix u = sample_haar_unitary(Seed{5}, 4);
    int holds = 0;
    double tightest = 0.0;
    for (double r : {0.2, 0.4}) {
        for (double eta : {0.9, 0.95, 0.99}) {
            const TvdReport rep = tvd_bound_report(u, GbsConfig{4, 2, r, eta});
            if (rep.exact_tvd <= rep.fidelity_bound && rep.fidelity_bound <= rep.lemma_bound) ++holds;
            tightest = std::max(tightest, rep.fidelity_bound / rep.lemma_bound);
        }
    }
    return {holds == 6, fmt("chain holds at %d/6 grid points (max sqrt(1-F) / loss bound %.3f)", holds, tightest)};
}

Verdict postselect_guard() {
    const auto rows = postselect_lower_bound_check(12);
    double least = std::numeric_limits<double>::infinity();
    int arg = 0;
    for (const auto &row : rows) {
        if (row.prob_sqrt_n < least) {
            least = row.prob_sqrt_n;
            arg = row.photons;
        }
    }
    return {rows.size() == 6 && least >= kPostselectGuard,
            fmt("min Pr[N] sqrt(N) = %.5f at N=%d, guard %.2f", least, arg, kPostselectGuard)};
}

}  // namespace

int main() {
    struct Criterion {
        const char *name;
        std::function<Verdict()> run;
    };
    const Criterion criteria[] = {
        {"hafnian engines agree", hafnian_engines},
        {"block route equals covariance route", cross_route},
        {"post-selected distribution normalized", normalization},
        {"p_S Pr[N] = q_S", consistency_triangle},
        {"Q(1) = 1 and Q truncation bound", q_series},
        {"series expansion equals direct hafnian", series_identity},
        {"squared-hafnian first moment", moment_identity},
        {"truncation error bound", truncation_lemma},
        {"interpolation reduction", reduction},
        {"equispaced extrapolation bound", kondo},
        {"TVD <= sqrt(1-F) <= loss bound", tvd_chain},
        {"Pr[N] sqrt(N) guard", postselect_guard},
    };
    int failed = 0;
    int index = 0;
    for (const Criterion &c : criteria) {
        ++index;
        Verdict res;
        try {
            res = c.run();
        } catch (const std::exception &e) {
            res = {false, std::string("exception: ") + e.what()};
        }
        if (!res.pass) ++failed;
        std::printf("[%s] %d %s: %s\n", res.pass ? "PASS" : "FAIL", index, c.name, res.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%d/%d criteria passed\n", index - failed, index);
    return failed == 0 ? 0 : 1;
}
