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
#include <random>

#include "lgbs/common.hpp"

namespace lgbs {

/// Master seed for a reproducible experiment.
struct Seed {
    std::uint64_t value = 0;
};

/// SplitMix64 finaliser. Used to derive independent substream seeds.
std::uint64_t splitmix64(std::uint64_t x);

/// Seed of substream `stream` under `seed`. Depends only on the pair, never on
/// call order, so parallel trials reproduce serial ones.
Seed derive_seed(Seed seed, std::uint64_t stream);

/// Engine used for every stream in the library.
using Engine = std::mt19937_64;

Engine make_engine(Seed seed);

/// rows x cols matrix of i.i.d. complex normals with E|X_ij|^2 = 1
/// (real and imaginary parts each N(0, 1/2)).
CMatrix sample_ginibre(Seed seed, std::size_t rows, std::size_t cols);

/// Same as above but drawing from an existing engine.
CMatrix sample_ginibre(Engine &engine, std::size_t rows, std::size_t cols);

/// Haar-distributed unitary: QR of a Ginibre matrix with the phases of R's
/// diagonal folded back into Q.
CMatrix sample_haar_unitary(Seed seed, std::size_t dim);

/// max_ij |(U^dagger U - I)_ij|.
double unitarity_residual(const CMatrix &u);

}  // namespace lgbs
