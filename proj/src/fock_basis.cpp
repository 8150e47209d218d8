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

#include "fockflow/fock_basis.hpp"

#include <algorithm>

#include "fockflow/errors.hpp"

namespace fockflow {

namespace {

bool encoding_less(std::span<const std::uint16_t> a, std::span<const std::uint16_t> b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

} // namespace

FockBasis FockBasis::build(int modes, int photons, const MaskSet *mask) {
    if (modes < 1) {
        throw ArgumentError("mode count must be at least 1");
    }
    if (photons < 0) {
        throw ArgumentError("photon count must be non-negative");
    }
    if (modes > 0xFFFF) {
        throw ArgumentError("mode count exceeds the supported 16-bit range");
    }
    if (mask != nullptr && mask->modes() != modes) {
        throw ArgumentError("mask mode count does not match basis");
    }

    std::vector<std::uint16_t> flat;
    std::uint64_t count = 0;

    PhotonSequence seq;
    seq.modes = modes;
    seq.positions.assign(static_cast<std::size_t>(photons), 0);
    std::vector<int> occ(static_cast<std::size_t>(modes), 0);
    bool more = true;
    while (more) {
        bool keep = true;
        if (mask != nullptr) {
            std::fill(occ.begin(), occ.end(), 0);
            for (int pos : seq.positions) {
                occ[static_cast<std::size_t>(pos)] += 1;
            }
            keep = mask->passes(occ);
        }
        if (keep) {
            for (int pos : seq.positions) {
                flat.push_back(static_cast<std::uint16_t>(pos));
            }
            ++count;
        }
        more = sequence_increment(seq);
    }
    return FockBasis(modes, photons, std::move(flat), count);
}

FockBasis FockBasis::from_encodings(int modes, int photons, std::vector<std::uint16_t> flat) {
    if (modes < 1 || photons < 0) {
        throw FormatError("invalid basis dimensions");
    }
    if (photons == 0) {
        if (!flat.empty()) {
            throw FormatError("zero-photon basis must have empty records");
        }
        return FockBasis(modes, photons, {}, 1);
    }
    if (flat.size() % static_cast<std::size_t>(photons) != 0) {
        throw FormatError("basis record data is not a whole number of states");
    }
    const std::uint64_t count = flat.size() / static_cast<std::size_t>(photons);
    const std::size_t k = static_cast<std::size_t>(photons);
    for (std::uint64_t i = 0; i < count; ++i) {
        const std::uint16_t *rec = flat.data() + i * k;
        for (std::size_t j = 0; j < k; ++j) {
            if (rec[j] >= modes) {
                throw FormatError("photon position out of range in basis record");
            }
            if (j > 0 && rec[j] < rec[j - 1]) {
                throw FormatError("basis record is not nondecreasing");
            }
        }
        if (i > 0) {
            std::span<const std::uint16_t> prev(rec - k, k);
            std::span<const std::uint16_t> cur(rec, k);
            if (!encoding_less(prev, cur)) {
                throw FormatError("basis records are not strictly increasing");
            }
        }
    }
    return FockBasis(modes, photons, std::move(flat), count);
}

FockState FockBasis::state_at(std::uint64_t index) const {
    std::vector<int> occ(static_cast<std::size_t>(modes_), 0);
    for (std::uint16_t pos : encoding_at(index)) {
        occ[pos] += 1;
    }
    return FockState(std::move(occ));
}

PhotonSequence FockBasis::sequence_at(std::uint64_t index) const {
    PhotonSequence p;
    p.modes = modes_;
    auto enc = encoding_at(index);
    p.positions.assign(enc.begin(), enc.end());
    return p;
}

std::uint64_t FockBasis::rank(const FockState &s) const {
    if (s.modes() != modes_ || s.photons() != photons_) {
        throw NotFoundError("state does not belong to this layer");
    }
    PhotonSequence seq = state_to_sequence(s);
    std::vector<std::uint16_t> enc(seq.positions.begin(), seq.positions.end());
    return rank_encoding(enc);
}

std::uint64_t FockBasis::rank_encoding(std::span<const std::uint16_t> encoding) const {
    if (encoding.size() != static_cast<std::size_t>(photons_)) {
        throw NotFoundError("encoding length does not match this layer");
    }
    if (photons_ == 0) {
        return 0;
    }
    std::uint64_t lo = 0;
    std::uint64_t hi = count_;
    while (lo < hi) {
        const std::uint64_t mid = lo + (hi - lo) / 2;
        if (encoding_less(encoding_at(mid), encoding)) {
            lo = mid + 1;
        } else {
            hi = mid;
        }
    }
    if (lo == count_ || encoding_at(lo).size() != encoding.size() ||
        !std::equal(encoding.begin(), encoding.end(), encoding_at(lo).begin())) {
        throw NotFoundError("state not present in basis (masked out or absent)");
    }
    return lo;
}

} // namespace fockflow
