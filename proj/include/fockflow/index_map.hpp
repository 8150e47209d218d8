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

#ifndef FOCKFLOW_INDEX_MAP_HPP
#define FOCKFLOW_INDEX_MAP_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "fockflow/fock_basis.hpp"

namespace fockflow {

/// Child-to-parent rank map between a k-photon layer and its (k-1)-photon
/// layer. Each child carries exactly k fixed-stride slots, one per photon of
/// its encoding; the first photon of each occupied mode stores the rank of
/// the state with that photon removed, the remaining photons of the run hold
/// an all-ones sentinel. Ranks are packed little-endian at the declared byte
/// width. Immutable after construction.
class FockIndexMap {
  public:
    static FockIndexMap build(const FockBasis &child_basis, const FockBasis &parent_basis);

    /// Wraps raw packed slot data (used by deserialization).
    static FockIndexMap from_packed(
        int modes, int photons, int index_width_bytes, std::uint64_t count, std::vector<std::uint8_t> packed);

    int modes() const { return modes_; }
    /// Photon count of the child layer.
    int photons() const { return photons_; }
    int index_width_bytes() const { return width_; }
    std::uint64_t size() const { return count_; }

    /// Decoded value of a slot; equal to sentinel_value() for unused slots.
    std::uint64_t slot_value(std::uint64_t child, int slot) const {
        const std::uint8_t *p =
            packed_.data() + (child * static_cast<std::uint64_t>(photons_) + static_cast<std::uint64_t>(slot)) *
                                 static_cast<std::uint64_t>(width_);
        std::uint64_t v = 0;
        for (int i = 0; i < width_; ++i) {
            v |= static_cast<std::uint64_t>(p[i]) << (8 * i);
        }
        return v;
    }

    /// All-ones pattern at the declared width.
    std::uint64_t sentinel_value() const {
        return width_ == 8 ? ~std::uint64_t{0} : (std::uint64_t{1} << (8 * width_)) - 1;
    }

    std::span<const std::uint8_t> packed_bytes() const { return packed_; }

    bool operator==(const FockIndexMap &other) const = default;

  private:
    FockIndexMap(int modes, int photons, int width, std::uint64_t count, std::vector<std::uint8_t> packed)
        : modes_(modes), photons_(photons), width_(width), count_(count), packed_(std::move(packed)) {}

    int modes_ = 0;
    int photons_ = 0;
    int width_ = 0;
    std::uint64_t count_ = 0;
    std::vector<std::uint8_t> packed_; // count_ * photons_ * width_ bytes
};

} // namespace fockflow

#endif
