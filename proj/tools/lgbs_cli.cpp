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

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "lgbs/lgbs.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitDomain = 3;

struct Options {
    std::optional<int> n;
    std::optional<int> m;
    std::optional<double> r;
    bool auto_r = false;
    std::optional<double> eta;
    std::optional<double> k_star;
    std::optional<double> eps0;
    std::optional<double> delta0;
    std::optional<double> delta;
    std::optional<long> samples;
    std::optional<int> trials;
    std::optional<int> rows;
    std::optional<int> terms;
    std::optional<double> beta0;
    std::optional<double> beta1;
    std::optional<std::string> outcome;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> noise_mode;
    int threads = 1;
    std::string format = "json";
    std::string output_path;
};

const char *kLogNote =
    "All logarithms (log, chi, l, the Kondo factor) are natural logarithms. "
    "Seeds default to $LGBS_SEED, else 0.";

void add_io(CLI::App *sub, Options &o) {
    sub->add_option("--seed", o.seed, "RNG seed (default: $LGBS_SEED or 0)");
    sub->add_option("--threads", o.threads, "Worker threads; results do not depend on it")
        ->check(CLI::PositiveNumber);
    sub->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--output-path", o.output_path, "Write the report here instead of stdout");
}

void add_counts(CLI::App *sub, Options &o) {
    sub->add_option("--N", o.n, "Photon number (even)");
    sub->add_option("--M", o.m, "Mode count (even)");
}

void add_gbs(CLI::App *sub, Options &o) {
    add_counts(sub, o);
    auto *r = sub->add_option("--r", o.r, "Squeezing parameter");
    auto *ar = sub->add_flag("--auto-r", o.auto_r, "Derive r from N = eta M sinh^2 r");
    r->excludes(ar);
    auto *eta = sub->add_option("--eta", o.eta, "Transmission rate in [0, 1]");
    auto *ks = sub->add_option("--k-star", o.k_star, "Mean lost photons; eta = N / (N + k*)");
    eta->excludes(ks);
}

void emit(const std::string &text, const Options &o) {
    if (o.output_path.empty()) {
        std::cout << text;
        std::cout.flush();
        return;
    }
    std::ofstream out(o.output_path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot open output path '" + o.output_path + "'");
    }
    out << text;
}

std::string error_document(const std::string &command, lgbs_status status, const std::string &message,
                           const Options &o) {
    nlohmann::ordered_json doc;
    doc["schema"] = 1;
    doc["tool"] = "lgbs";
    doc["version"] = lgbs_version();
    doc["command"] = command;
    doc["status"] = "error";
    doc["error"] = {{"kind", lgbs_status_name(status)}, {"message", message}};
    if (o.format == "csv") {
        return "# schema=1 tool=lgbs command=" + command + " status=error\n# error " + doc["error"].dump() + "\n";
    }
    return doc.dump(2) + "\n";
}

int exit_code_for(lgbs_status s) {
    switch (s) {
    case LGBS_OK:
        return kExitOk;
    case LGBS_ERR_INVALID_ARGUMENT:
        return kExitUsage;
    case LGBS_ERR_DOMAIN:
    case LGBS_ERR_SIZE_LIMIT:
        return kExitDomain;
    default:
        return kExitFailure;
    }
}

#define LGBS_TRY(expr)                                  \
    do {                                                \
        lgbs_status s_ = (expr);                        \
        if (s_ != LGBS_OK) {                            \
            return s_;                                  \
        }                                               \
    } while (0)

lgbs_status fill_config(lgbs_config *cfg, const Options &o, const std::string &seed_source, std::uint64_t seed) {
    auto set_i = [&](const char *k, const auto &v) { return v ? lgbs_config_set_int(cfg, k, *v) : LGBS_OK; };
    auto set_d = [&](const char *k, const std::optional<double> &v) {
        return v ? lgbs_config_set_double(cfg, k, *v) : LGBS_OK;
    };
    LGBS_TRY(set_i("N", o.n));
    LGBS_TRY(set_i("M", o.m));
    LGBS_TRY(set_i("samples", o.samples));
    LGBS_TRY(set_i("trials", o.trials));
    LGBS_TRY(set_i("rows", o.rows));
    LGBS_TRY(set_i("terms", o.terms));
    LGBS_TRY(lgbs_config_set_int(cfg, "threads", o.threads));
    LGBS_TRY(lgbs_config_set_int(cfg, "auto_r", o.auto_r ? 1 : 0));
    LGBS_TRY(set_d("r", o.r));
    LGBS_TRY(set_d("eta", o.eta));
    LGBS_TRY(set_d("k_star", o.k_star));
    LGBS_TRY(set_d("eps0", o.eps0));
    LGBS_TRY(set_d("delta0", o.delta0));
    LGBS_TRY(set_d("delta", o.delta));
    LGBS_TRY(set_d("beta0", o.beta0));
    LGBS_TRY(set_d("beta1", o.beta1));
    LGBS_TRY(lgbs_config_set_uint64(cfg, "seed", seed));
    LGBS_TRY(lgbs_config_set_string(cfg, "seed_source", seed_source.c_str()));
    if (o.noise_mode) {
        LGBS_TRY(lgbs_config_set_string(cfg, "noise_mode", o.noise_mode->c_str()));
    }
    if (o.outcome) {
        LGBS_TRY(lgbs_config_set_string(cfg, "outcome", o.outcome->c_str()));
    }
    return LGBS_OK;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{std::string("Lossy Gaussian boson sampling experiments. ") + kLogNote, "lgbs"};
    app.set_version_flag("--version", lgbs_version());
    app.require_subcommand(1);
    Options o;

    auto *prob = app.add_subcommand("probability", "Outcome probabilities p_S, q_S, Pr[N] for a Haar unitary");
    add_gbs(prob, o);
    prob->add_option("--outcome", o.outcome, "1-based modes, e.g. \"1,2,2\" (default 1..N)");
    add_io(prob, o);

    auto *dist = app.add_subcommand("distribution", "Exhaustive post-selected N-photon distribution");
    add_gbs(dist, o);
    add_io(dist, o);

    auto *qf = app.add_subcommand("qfactor", "Hypergeometric factor Q(eta) with truncation bound");
    add_gbs(qf, o);
    qf->add_option("--terms", o.terms, "Sum n = 0..terms (default: adaptive)");
    add_io(qf, o);

    auto *ps = app.add_subcommand(
        "postselect", "Pr[N]; without --M, Pr[N] sqrt(N) along N = 2..N, M = N^3, eta = 1 - 1/(12 sqrt N)");
    add_gbs(ps, o);
    add_io(ps, o);

    auto *ex = app.add_subcommand("extrapolate", std::string("End-to-end interpolation reduction. ") + kLogNote);
    add_counts(ex, o);
    ex->add_option("--k-star", o.k_star, "k* = (1/eta* - 1) N");
    ex->add_option("--eps0", o.eps0, "Target additive error (units of the moment scale)");
    ex->add_option("--delta0", o.delta0, "Target failure probability");
    ex->add_option("--trials", o.trials, "Number of seeded X draws (default 100)");
    ex->add_option("--noise-mode", o.noise_mode, "Oracle noise")->check(CLI::IsMember({"uniform", "adversarial"}));
    add_io(ex, o);

    auto *tr = app.add_subcommand("truncation", "Empirical check of the truncation error bound");
    add_counts(tr, o);
    tr->add_option("--k-star", o.k_star, "k*; k_max = 3 k*");
    tr->add_option("--delta", o.delta, "Failure probability (default 0.25)");
    tr->add_option("--trials", o.trials, "Number of seeded X draws (default 500)");
    add_io(tr, o);

    auto *mo = app.add_subcommand("moments", "Monte Carlo first moment of |Haf(X X^T)|^2");
    add_counts(mo, o);
    mo->add_option("--samples", o.samples, "Number of Ginibre draws (default 10000)");
    mo->add_option("--rows", o.rows, "Use the leading rows x rows block (default N)");
    add_io(mo, o);

    auto *tv = app.add_subcommand("tvd", "Exact TVD against the fidelity and loss bounds");
    add_gbs(tv, o);
    tv->add_option("--beta0", o.beta0, "Report the eta threshold for TVD budget beta0 - beta1");
    tv->add_option("--beta1", o.beta1, "See --beta0 (default 0)");
    add_io(tv, o);

    auto *st = app.add_subcommand("selftest", "Run the built-in sanity checks");
    add_io(st, o);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return kExitUsage;
    }

    const std::string command = app.get_subcommands().front()->get_name();

    std::uint64_t seed = 0;
    std::string seed_source = "default";
    if (o.seed) {
        seed = *o.seed;
        seed_source = "flag";
    } else if (const char *env = std::getenv("LGBS_SEED")) {
        try {
            std::size_t used = 0;
            seed = std::stoull(env, &used);
            if (used != std::string(env).size()) {
                throw std::invalid_argument("trailing characters");
            }
        } catch (const std::exception &) {
            std::cerr << "lgbs: LGBS_SEED must be an unsigned integer\n";
            return kExitUsage;
        }
        seed_source = "env";
    }

    lgbs_config *cfg = nullptr;
    lgbs_report *report = nullptr;
    lgbs_status status = lgbs_config_create(&cfg);
    if (status == LGBS_OK) {
        status = fill_config(cfg, o, seed_source, seed);
    }
    if (status == LGBS_OK) {
        status = lgbs_run(command.c_str(), cfg, &report);
    }
    lgbs_config_destroy(cfg);

    try {
        if (status != LGBS_OK) {
            const std::string msg = lgbs_last_error();
            std::cerr << "lgbs " << command << ": " << lgbs_status_name(status) << " error: " << msg << "\n";
            emit(error_document(command, status, msg, o), o);
            return exit_code_for(status);
        }
        const char *text = nullptr;
        lgbs_report_text(report, o.format == "csv" ? LGBS_FORMAT_CSV : LGBS_FORMAT_JSON, &text);
        emit(text, o);
        int pass = 1;
        lgbs_report_all_pass(report, &pass);
        lgbs_report_destroy(report);
        return command == "selftest" && !pass ? kExitFailure : kExitOk;
    } catch (const std::exception &e) {
        lgbs_report_destroy(report);
        std::cerr << "lgbs: " << e.what() << "\n";
        return kExitFailure;
    }
}
