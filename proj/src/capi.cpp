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

#include "lgbs/lgbs.h"

#include <cstring>
#include <exception>
#include <new>
#include <string>

#include "lgbs/hafnian.hpp"
#include "lgbs/probability.hpp"
#include "lgbs/random.hpp"
#include "lgbs/runner.hpp"

struct lgbs_config {
    lgbs::RunConfig cfg;
};

struct lgbs_report {
    lgbs::Report report;
    std::string json;
    std::string csv;
};

struct lgbs_unitary {
    lgbs::CMatrix u;
};

namespace {

thread_local std::string g_last_error;

lgbs_status fail(lgbs_status status, const std::string &msg) {
    g_last_error = msg;
    return status;
}

template <class Fn>
lgbs_status guarded(Fn &&fn) {
    try {
        g_last_error.clear();
        fn();
        return LGBS_OK;
    } catch (const lgbs::SizeLimitError &e) {
        return fail(LGBS_ERR_SIZE_LIMIT, e.what());
    } catch (const lgbs::DomainError &e) {
        return fail(LGBS_ERR_DOMAIN, e.what());
    } catch (const lgbs::InvalidArgument &e) {
        return fail(LGBS_ERR_INVALID_ARGUMENT, e.what());
    } catch (const std::bad_alloc &) {
        return fail(LGBS_ERR_INTERNAL, "out of memory");
    } catch (const std::exception &e) {
        return fail(LGBS_ERR_INTERNAL, e.what());
    } catch (...) {
        return fail(LGBS_ERR_INTERNAL, "unknown error");
    }
}

lgbs::CMatrix read_matrix(int dim, const double *re_im) {
    lgbs::CMatrix m(dim, dim);
    for (int i = 0; i < dim; ++i) {
        for (int j = 0; j < dim; ++j) {
            const std::size_t k = 2 * (static_cast<std::size_t>(i) * dim + j);
            m(i, j) = lgbs::Complex(re_im[k], re_im[k + 1]);
        }
    }
    return m;
}

lgbs::Outcome read_outcome(const int *outcome, int photons) {
    lgbs::require(photons >= 0, "photon count must be non-negative");
    return lgbs::Outcome(std::vector<int>(outcome, outcome + photons));
}

bool key_is(const char *key, std::initializer_list<const char *> names) {
    for (const char *n : names) {
        if (std::strcmp(key, n) == 0) {
            return true;
        }
    }
    return false;
}

std::string unknown_key(const char *key, const char *type) {
    return std::string("unknown or mistyped ") + type + " config key '" + key + "'";
}

}  // namespace

extern "C" {

const char *lgbs_version(void) { return lgbs::kToolVersion; }

const char *lgbs_last_error(void) { return g_last_error.c_str(); }

const char *lgbs_status_name(lgbs_status status) {
    switch (status) {
    case LGBS_OK:
        return "ok";
    case LGBS_ERR_INVALID_ARGUMENT:
        return "invalid-argument";
    case LGBS_ERR_DOMAIN:
        return "domain";
    case LGBS_ERR_SIZE_LIMIT:
        return "size-limit";
    case LGBS_ERR_NULL_POINTER:
        return "null-pointer";
    case LGBS_ERR_INTERNAL:
        return "internal";
    }
    return "unknown";
}

lgbs_status lgbs_config_create(lgbs_config **out) {
    if (!out) return fail(LGBS_ERR_NULL_POINTER, "lgbs_config_create: out is null");
    return guarded([&] { *out = new lgbs_config(); });
}

void lgbs_config_destroy(lgbs_config *config) { delete config; }

lgbs_status lgbs_config_set_int(lgbs_config *config, const char *key, int64_t value) {
    if (!config || !key) return fail(LGBS_ERR_NULL_POINTER, "lgbs_config_set_int: null argument");
    return guarded([&] {
        auto &c = config->cfg;
        auto as_int = [&] {
            lgbs::require(value >= INT32_MIN && value <= INT32_MAX, std::string("config key '") + key + "' out of range");
            return static_cast<int>(value);
        };
        if (key_is(key, {"N"})) c.photons = as_int();
        else if (key_is(key, {"M"})) c.modes = as_int();
        else if (key_is(key, {"samples"})) c.samples = static_cast<long>(value);
        else if (key_is(key, {"trials"})) c.trials = as_int();
        else if (key_is(key, {"rows"})) c.rows = as_int();
        else if (key_is(key, {"terms"})) c.terms = as_int();
        else if (key_is(key, {"threads"})) c.threads = as_int();
        else if (key_is(key, {"auto_r"})) c.auto_r = value != 0;
        else throw lgbs::InvalidArgument(unknown_key(key, "int"));
    });
}

lgbs_status lgbs_config_set_double(lgbs_config *config, const char *key, double value) {
    if (!config || !key) return fail(LGBS_ERR_NULL_POINTER, "lgbs_config_set_double: null argument");
    return guarded([&] {
        auto &c = config->cfg;
        if (key_is(key, {"r"})) c.r = value;
        else if (key_is(key, {"eta"})) c.eta = value;
        else if (key_is(key, {"k_star"})) c.k_star = value;
        else if (key_is(key, {"eps0"})) c.eps0 = value;
        else if (key_is(key, {"delta0"})) c.delta0 = value;
        else if (key_is(key, {"delta"})) c.delta = value;
        else if (key_is(key, {"beta0"})) c.beta0 = value;
        else if (key_is(key, {"beta1"})) c.beta1 = value;
        else throw lgbs::InvalidArgument(unknown_key(key, "double"));
    });
}

lgbs_status lgbs_config_set_uint64(lgbs_config *config, const char *key, uint64_t value) {
    if (!config || !key) return fail(LGBS_ERR_NULL_POINTER, "lgbs_config_set_uint64: null argument");
    return guarded([&] {
        if (key_is(key, {"seed"})) config->cfg.seed = value;
        else throw lgbs::InvalidArgument(unknown_key(key, "uint64"));
    });
}

lgbs_status lgbs_config_set_string(lgbs_config *config, const char *key, const char *value) {
    if (!config || !key || !value) return fail(LGBS_ERR_NULL_POINTER, "lgbs_config_set_string: null argument");
    return guarded([&] {
        auto &c = config->cfg;
        if (key_is(key, {"seed_source"})) c.seed_source = value;
        else if (key_is(key, {"noise_mode"})) c.noise_mode = value;
        else if (key_is(key, {"outcome"})) c.outcome = lgbs::parse_outcome(value);
        else throw lgbs::InvalidArgument(unknown_key(key, "string"));
    });
}

lgbs_status lgbs_run(const char *command, const lgbs_config *config, lgbs_report **out) {
    if (!command || !config || !out) return fail(LGBS_ERR_NULL_POINTER, "lgbs_run: null argument");
    return guarded([&] {
        lgbs::Report rep = lgbs::run_command(command, config->cfg);
        auto *handle = new lgbs_report{std::move(rep), {}, {}};
        handle->json = handle->report.to_json();
        handle->csv = handle->report.to_csv();
        *out = handle;
    });
}

void lgbs_report_destroy(lgbs_report *report) { delete report; }

lgbs_status lgbs_report_text(const lgbs_report *report, lgbs_format format, const char **text) {
    if (!report || !text) return fail(LGBS_ERR_NULL_POINTER, "lgbs_report_text: null argument");
    if (format != LGBS_FORMAT_JSON && format != LGBS_FORMAT_CSV) {
        return fail(LGBS_ERR_INVALID_ARGUMENT, "lgbs_report_text: unknown format");
    }
    *text = format == LGBS_FORMAT_JSON ? report->json.c_str() : report->csv.c_str();
    return LGBS_OK;
}

lgbs_status lgbs_report_all_pass(const lgbs_report *report, int *pass) {
    if (!report || !pass) return fail(LGBS_ERR_NULL_POINTER, "lgbs_report_all_pass: null argument");
    *pass = report->report.all_pass() ? 1 : 0;
    return LGBS_OK;
}

lgbs_status lgbs_unitary_haar(uint64_t seed, int modes, lgbs_unitary **out) {
    if (!out) return fail(LGBS_ERR_NULL_POINTER, "lgbs_unitary_haar: out is null");
    return guarded([&] {
        lgbs::require(modes >= 1, "lgbs_unitary_haar: modes must be >= 1");
        *out = new lgbs_unitary{lgbs::sample_haar_unitary(lgbs::Seed{seed}, static_cast<std::size_t>(modes))};
    });
}

lgbs_status lgbs_unitary_from_data(int modes, const double *re_im, lgbs_unitary **out) {
    if (!re_im || !out) return fail(LGBS_ERR_NULL_POINTER, "lgbs_unitary_from_data: null argument");
    return guarded([&] {
        lgbs::require(modes >= 1, "lgbs_unitary_from_data: modes must be >= 1");
        lgbs::CMatrix u = read_matrix(modes, re_im);
        lgbs::require(lgbs::unitarity_residual(u) <= 1e-10, "lgbs_unitary_from_data: matrix is not unitary");
        *out = new lgbs_unitary{std::move(u)};
    });
}

void lgbs_unitary_destroy(lgbs_unitary *unitary) { delete unitary; }

lgbs_status lgbs_unitary_modes(const lgbs_unitary *unitary, int *modes) {
    if (!unitary || !modes) return fail(LGBS_ERR_NULL_POINTER, "lgbs_unitary_modes: null argument");
    *modes = static_cast<int>(unitary->u.rows());
    return LGBS_OK;
}

lgbs_status lgbs_unitary_data(const lgbs_unitary *unitary, double *re_im, size_t length) {
    if (!unitary || !re_im) return fail(LGBS_ERR_NULL_POINTER, "lgbs_unitary_data: null argument");
    const auto n = unitary->u.rows();
    if (length < static_cast<size_t>(2 * n * n)) {
        return fail(LGBS_ERR_INVALID_ARGUMENT, "lgbs_unitary_data: buffer too small");
    }
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            re_im[2 * (i * n + j)] = unitary->u(i, j).real();
            re_im[2 * (i * n + j) + 1] = unitary->u(i, j).imag();
        }
    }
    return LGBS_OK;
}

lgbs_status lgbs_hafnian(int dim, const double *re_im, double *out_re, double *out_im) {
    if ((dim > 0 && !re_im) || !out_re || !out_im) return fail(LGBS_ERR_NULL_POINTER, "lgbs_hafnian: null argument");
    return guarded([&] {
        lgbs::require(dim >= 0, "lgbs_hafnian: dimension must be non-negative");
        const lgbs::Complex h = lgbs::haf_fast(lgbs::ComplexSymMatrix(read_matrix(dim, re_im)));
        *out_re = h.real();
        *out_im = h.imag();
    });
}

lgbs_status lgbs_q_factor(int modes, int photons, double r, double eta, double *value, double *error_bound) {
    if (!value || !error_bound) return fail(LGBS_ERR_NULL_POINTER, "lgbs_q_factor: null argument");
    return guarded([&] {
        const auto q = lgbs::q_factor_adaptive(lgbs::GbsConfig{modes, photons, r, eta});
        *value = q.value;
        *error_bound = q.error_bound;
    });
}

lgbs_status lgbs_prob_postselect_n(int modes, int photons, double r, double eta, double *value, double *error_bound) {
    if (!value || !error_bound) return fail(LGBS_ERR_NULL_POINTER, "lgbs_prob_postselect_n: null argument");
    return guarded([&] {
        const auto p = lgbs::prob_postselect_N(lgbs::GbsConfig{modes, photons, r, eta});
        *value = p.value;
        *error_bound = p.error_bound;
    });
}

lgbs_status lgbs_prob_postselected(const lgbs_unitary *unitary, const int *outcome, int photons, double r, double eta,
                                   double *value) {
    if (!unitary || (photons > 0 && !outcome) || !value) {
        return fail(LGBS_ERR_NULL_POINTER, "lgbs_prob_postselected: null argument");
    }
    return guarded([&] {
        const int m = static_cast<int>(unitary->u.rows());
        *value = lgbs::prob_postselected(unitary->u, read_outcome(outcome, photons), lgbs::GbsConfig{m, photons, r, eta});
    });
}

lgbs_status lgbs_prob_no_postselect(const lgbs_unitary *unitary, const int *outcome, int photons, double r, double eta,
                                    double *value) {
    if (!unitary || (photons > 0 && !outcome) || !value) {
        return fail(LGBS_ERR_NULL_POINTER, "lgbs_prob_no_postselect: null argument");
    }
    return guarded([&] {
        const int m = static_cast<int>(unitary->u.rows());
        *value =
            lgbs::prob_no_postselect(unitary->u, read_outcome(outcome, photons), lgbs::GbsConfig{m, photons, r, eta});
    });
}

}  // extern "C"
