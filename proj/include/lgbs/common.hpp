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

#include <complex>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace lgbs {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using RMatrix = Eigen::MatrixXd;

/// Precondition failure on caller-supplied data (bad shape, odd size, out-of-range index).
class InvalidArgument : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// A formula is evaluated outside the region where it is defined or convergent.
class DomainError : public std::domain_error {
  public:
    using std::domain_error::domain_error;
};

/// Exhaustive computation refused because its cost would explode.
class SizeLimitError : public std::length_error {
  public:
    using std::length_error::length_error;
};

inline void require(bool cond, const std::string &msg) {
    if (!cond) {
        throw InvalidArgument(msg);
    }
}

/// log of the binomial coefficient C(n, k) for real n >= k >= 0.
double log_binomial(double n, double k);

/// log(n!) for n >= 0.
double log_factorial(double n);

/// log of the normalisation scale C(M/2 + N/2 - 1, N/2) * N! shared by the
/// moment identity and the oracle error model.
double log_moment_scale(int photons, int modes);

struct Interval {
    double lo = 0.0;
    double hi = 1.0;
};

/// Wilson score interval for k successes in n trials; z = 1.96 gives 95%.
Interval wilson_interval(long successes, long trials, double z = 1.959963984540054);

}  // namespace lgbs
