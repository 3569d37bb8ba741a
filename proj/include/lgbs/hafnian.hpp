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

#include <vector>

#include "lgbs/common.hpp"

namespace lgbs {

/// Dense complex symmetric matrix. Construction symmetrises the input, so
/// B(i, j) == B(j, i) holds bit-exactly afterwards.
class ComplexSymMatrix {
  public:
    ComplexSymMatrix() = default;
    explicit ComplexSymMatrix(const CMatrix &m);

    Eigen::Index dim() const { return m_.rows(); }
    const CMatrix &matrix() const { return m_; }
    Complex operator()(Eigen::Index i, Eigen::Index j) const { return m_(i, j); }

  private:
    CMatrix m_;
};

/// N-photon detection event: a sorted multiset of 1-based mode indices.
class Outcome {
  public:
    Outcome() = default;
    /// Sorts `modes`; every index must be >= 1.
    explicit Outcome(std::vector<int> modes);

    const std::vector<int> &modes() const { return modes_; }
    int photons() const { return static_cast<int>(modes_.size()); }
    int max_mode() const { return modes_.empty() ? 0 : modes_.back(); }

    /// Product of factorials of the multiplicities, mu(S).
    double multiplicity_product() const;
    bool collision_free() const;

  private:
    std::vector<int> modes_;
};

/// Largest dimension accepted by haf_enumerate ((n-1)!! matchings).
inline constexpr Eigen::Index kEnumerateMaxDim = 16;
/// Largest dimension accepted by haf_fast.
inline constexpr Eigen::Index kFastMaxDim = 32;

/// Sum over all perfect matchings, pairing the lowest unmatched index first.
Complex haf_enumerate(const ComplexSymMatrix &b);

/// Power-trace inclusion-exclusion over the n/2 index pairs; O(n^4 2^{n/2}).
Complex haf_fast(const ComplexSymMatrix &b);

/// (B)_S: rows and columns of B taken according to S, repeats allowed.
CMatrix sub_symmetric(const CMatrix &b, const Outcome &s);

/// D(S)_{ab} = [s_a == s_b]. Equals I_N when S is collision-free.
RMatrix collision_pattern(const Outcome &s);

/// [[top, off], [off^T, conj-partner]] assembled into a 2N x 2N symmetric matrix.
ComplexSymMatrix lossy_block(const CMatrix &top_left, const CMatrix &off_diag, const CMatrix &bottom_right);

/// [[(U U^T)_S, (1-eta) tanh r D(S)], [(1-eta) tanh r D(S), (U* U^dagger)_S]].
ComplexSymMatrix build_lossy_block(const CMatrix &u, const Outcome &s, double r, double eta);

/// Haf(A_{S+S}) with A taken from the covariance-matrix pipeline.
Complex haf_alternate_A_form(const CMatrix &u, const Outcome &s, double r, double eta);

/// Comparison used for hafnian values: relative `rel`, switching to an
/// absolute floor of 1e-12 * scale^{n/2} near zero, where scale is the largest
/// entry magnitude of the input.
bool hafnian_close(Complex a, Complex b, double rel, double scale, Eigen::Index dim);

}  // namespace lgbs
