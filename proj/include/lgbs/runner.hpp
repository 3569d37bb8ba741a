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
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace lgbs {

inline constexpr const char *kToolName = "lgbs";
inline constexpr const char *kToolVersion = "1.0.0";
inline constexpr int kSchemaVersion = 1;

/// Frozen lower guard on Pr[N] sqrt(N) along the M = N^3 grid.
inline constexpr double kPostselectGuard = 0.4;

/// Fully parsed experiment request. Unset optionals take per-command defaults.
struct RunConfig {
    std::optional<int> photons;
    std::optional<int> modes;
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
    std::optional<std::vector<int>> outcome;
    std::uint64_t seed = 0;
    std::string seed_source = "default";
    std::string noise_mode = "uniform";
    int threads = 1;
};

/// Comma or space separated 1-based mode list.
std::vector<int> parse_outcome(const std::string &text);

/// One experiment's output: resolved config, results with provenance, bound
/// checks and an optional table.
class Report {
  public:
    explicit Report(std::string command);

    const std::string &command() const { return command_; }
    nlohmann::ordered_json &config() { return config_; }

    void exact(const std::string &key, double value);
    void series(const std::string &key, double value, double error_bound);
    void monte_carlo(const std::string &key, double value, double standard_error);
    void info(const std::string &key, nlohmann::ordered_json value);
    void check(const std::string &name, double value, const std::string &relation, double bound, bool pass);
    void warn(const std::string &message);

    void set_columns(std::vector<std::string> columns);
    void add_row(nlohmann::ordered_json row);

    bool all_pass() const;
    std::string to_json() const;
    std::string to_csv() const;

  private:
    std::string command_;
    nlohmann::ordered_json config_ = nlohmann::ordered_json::object();
    nlohmann::ordered_json results_ = nlohmann::ordered_json::object();
    nlohmann::ordered_json provenance_ = nlohmann::ordered_json::object();
    nlohmann::ordered_json checks_ = nlohmann::ordered_json::array();
    nlohmann::ordered_json warnings_ = nlohmann::ordered_json::array();
    std::vector<std::string> columns_;
    nlohmann::ordered_json rows_ = nlohmann::ordered_json::array();
};

/// Commands: probability, distribution, qfactor, postselect, extrapolate,
/// truncation, moments, tvd, selftest. Throws InvalidArgument, DomainError or
/// SizeLimitError.
Report run_command(const std::string &command, const RunConfig &config);

const std::vector<std::string> &command_names();

}  // namespace lgbs
