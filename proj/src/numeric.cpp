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
#include <cmath>

#include "lgbs/common.hpp"

namespace lgbs {

double log_factorial(double n) {
    require(n >= 0.0, "log_factorial: negative argument");
    return std::lgamma(n + 1.0);
}

double log_binomial(double n, double k) {
    require(k >= 0.0 && n >= k, "log_binomial: need n >= k >= 0");
    return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

double log_moment_scale(int photons, int modes) {
    require(photons >= 0 && modes >= 2 && photons % 2 == 0 && modes % 2 == 0,
            "log_moment_scale: photon and mode counts must be even, modes >= 2");
    double half_n = photons / 2.0;
    double half_m = modes / 2.0;
    return log_binomial(half_m + half_n - 1.0, half_n) + log_factorial(photons);
}

Interval wilson_interval(long successes, long trials, double z) {
    require(trials > 0 && successes >= 0 && successes <= trials, "wilson_interval: need 0 <= k <= n, n > 0");
    const double n = static_cast<double>(trials);
    const double p = successes / n;
    const double z2 = z * z;
    const double centre = (p + z2 / (2.0 * n)) / (1.0 + z2 / n);
    const double half = z / (1.0 + z2 / n) * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n));
    return Interval{std::max(0.0, centre - half), std::min(1.0, centre + half)};
}

}  // namespace lgbs
