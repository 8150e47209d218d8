// Copyright 2026 The fockflow Authors
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

#ifndef FOCKFLOW_COUNTING_HPP
#define FOCKFLOW_COUNTING_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "fockflow/fock_state.hpp"

namespace fockflow {

/// C(a, b) as an exact 64-bit integer. Throws OverflowError instead of
/// wrapping when the value does not fit.
std::uint64_t binomial_checked(std::uint64_t a, std::uint64_t b);

/// Number of k-photon Fock states over m modes: C(k+m-1, m-1).
std::uint64_t count_states(int modes, int photons);

/// Smallest number of bytes whose range covers `distinct_values` values,
/// i.e. ceil(log_256(max(v, 2))). Used for serialized rank and position
/// widths.
int byte_width_for(std::uint64_t distinct_values);

std::uint64_t checked_add(std::uint64_t a, std::uint64_t b);
std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b);

/// Combinatorial rank of photon-to-mode encodings within their layer,
/// matching the canonical basis order, without materializing the basis.
/// Valid for any sequence length up to `max_photons`.
class SequenceRanker {
  public:
    SequenceRanker(int modes, int max_photons);

    int modes() const { return modes_; }
    int max_photons() const { return max_photons_; }

    std::uint64_t rank(std::span<const std::uint16_t> positions) const;
    std::uint64_t rank(const PhotonSequence &p) const;

  private:
    int modes_;
    int max_photons_;
    // completions_[L * (modes_ + 1) + v] = number of nondecreasing sequences
    // of length L over values in [v, modes).
    std::vector<std::uint64_t> completions_;
};

} // namespace fockflow

#endif
