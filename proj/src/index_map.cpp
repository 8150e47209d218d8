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

#include "fockflow/index_map.hpp"

#include "fockflow/counting.hpp"
#include "fockflow/errors.hpp"

namespace fockflow {

FockIndexMap FockIndexMap::build(const FockBasis &child_basis, const FockBasis &parent_basis) {
    if (child_basis.modes() != parent_basis.modes()) {
        throw ArgumentError("child and parent bases must share the mode count");
    }
    if (child_basis.photons() != parent_basis.photons() + 1) {
        throw ArgumentError("parent layer must hold exactly one photon less than the child layer");
    }
    const int k = child_basis.photons();
    const int width = byte_width_for(parent_basis.size() < 2 ? 2 : parent_basis.size());
    const std::uint64_t count = child_basis.size();

    std::vector<std::uint8_t> packed(
        count * static_cast<std::uint64_t>(k) * static_cast<std::uint64_t>(width), 0xFF);

    std::vector<std::uint16_t> parent_enc(static_cast<std::size_t>(k) - (k > 0 ? 1 : 0));
    for (std::uint64_t c = 0; c < count; ++c) {
        auto enc = child_basis.encoding_at(c);
        std::uint8_t *rec =
            packed.data() + c * static_cast<std::uint64_t>(k) * static_cast<std::uint64_t>(width);
        for (int slot = 0; slot < k; ++slot) {
            if (slot > 0 && enc[static_cast<std::size_t>(slot)] == enc[static_cast<std::size_t>(slot) - 1]) {
                continue; // same mode as previous photon: duplicate parent, keep sentinel
            }
            parent_enc.clear();
            for (int j = 0; j < k; ++j) {
                if (j != slot) {
                    parent_enc.push_back(enc[static_cast<std::size_t>(j)]);
                }
            }
            std::uint64_t rank;
            try {
                rank = parent_basis.rank_encoding(parent_enc);
            } catch (const NotFoundError &) {
                throw StructuralError(
                    "child state has a parent missing from the parent basis (inconsistent masks)");
            }
            std::uint8_t *cell = rec + static_cast<std::uint64_t>(slot) * static_cast<std::uint64_t>(width);
            for (int b = 0; b < width; ++b) {
                cell[b] = static_cast<std::uint8_t>((rank >> (8 * b)) & 0xFF);
            }
        }
    }
    return FockIndexMap(child_basis.modes(), k, width, count, std::move(packed));
}

FockIndexMap FockIndexMap::from_packed(
    int modes, int photons, int index_width_bytes, std::uint64_t count, std::vector<std::uint8_t> packed) {
    if (modes < 1 || photons < 1) {
        throw FormatError("invalid index map dimensions");
    }
    if (index_width_bytes < 1 || index_width_bytes > 8) {
        throw FormatError("index width must be between 1 and 8 bytes");
    }
    const std::uint64_t expected = count * static_cast<std::uint64_t>(photons) *
                                   static_cast<std::uint64_t>(index_width_bytes);
    if (packed.size() != expected) {
        throw FormatError("index map payload size does not match its header");
    }
    return FockIndexMap(modes, photons, index_width_bytes, count, std::move(packed));
}

} // namespace fockflow
