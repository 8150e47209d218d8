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

#ifndef FOCKFLOW_FOCK_BASIS_HPP
#define FOCKFLOW_FOCK_BASIS_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "fockflow/fock_state.hpp"
#include "fockflow/mask.hpp"

namespace fockflow {

/// Ordered layer of k-photon states over m modes, stored as their
/// photon-to-mode encodings in ascending lexicographic order. Immutable after
/// construction and safe for shared concurrent reads.
class FockBasis {
  public:
    /// Enumerates the layer in canonical order, keeping states that pass the
    /// optional mask.
    static FockBasis build(int modes, int photons, const MaskSet *mask = nullptr);

    /// Wraps pre-existing encodings (used by deserialization). Validates that
    /// the records are well-formed, strictly increasing sequences.
    static FockBasis from_encodings(int modes, int photons, std::vector<std::uint16_t> flat);

    int modes() const { return modes_; }
    int photons() const { return photons_; }
    std::uint64_t size() const { return count_; }

    std::span<const std::uint16_t> encoding_at(std::uint64_t index) const {
        return {flat_.data() + index * static_cast<std::uint64_t>(photons_),
                static_cast<std::size_t>(photons_)};
    }
    FockState state_at(std::uint64_t index) const;
    PhotonSequence sequence_at(std::uint64_t index) const;

    /// Binary search over the ordered encodings; throws NotFoundError when the
    /// state is not part of this layer (wrong photon count or masked out).
    std::uint64_t rank(const FockState &s) const;
    std::uint64_t rank_encoding(std::span<const std::uint16_t> encoding) const;

    bool operator==(const FockBasis &other) const = default;

  private:
    FockBasis(int modes, int photons, std::vector<std::uint16_t> flat, std::uint64_t count)
        : modes_(modes), photons_(photons), count_(count), flat_(std::move(flat)) {}

    int modes_ = 0;
    int photons_ = 0;
    std::uint64_t count_ = 0;
    std::vector<std::uint16_t> flat_; // count_ * photons_ positions
};

} // namespace fockflow

#endif
