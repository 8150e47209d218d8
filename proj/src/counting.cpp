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

#include "fockflow/counting.hpp"

#include <limits>

#include "fockflow/errors.hpp"

namespace fockflow {

namespace {
constexpr std::uint64_t kMax64 = std::numeric_limits<std::uint64_t>::max();
}

std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
    if (a > kMax64 - b) {
        throw OverflowError("integer addition overflows 64 bits");
    }
    return a + b;
}

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
    if (b != 0 && a > kMax64 / b) {
        throw OverflowError("integer multiplication overflows 64 bits");
    }
    return a * b;
}

std::uint64_t binomial_checked(std::uint64_t a, std::uint64_t b) {
    if (b > a) {
        return 0;
    }
    if (b > a - b) {
        b = a - b;
    }
    // Every prefix is itself a binomial coefficient, so checking the running
    // value against the 64-bit range after each step is sufficient. The
    // 128-bit intermediate cannot wrap: value <= 2^64 and factor <= a.
    unsigned __int128 value = 1;
    for (std::uint64_t i = 1; i <= b; ++i) {
        value = value * (a - b + i) / i;
        if (value > kMax64) {
            throw OverflowError("binomial coefficient overflows 64 bits");
        }
    }
    return static_cast<std::uint64_t>(value);
}

std::uint64_t count_states(int modes, int photons) {
    if (modes < 1) {
        throw ArgumentError("mode count must be at least 1");
    }
    if (photons < 0) {
        throw ArgumentError("photon count must be non-negative");
    }
    const auto k = static_cast<std::uint64_t>(photons);
    const auto m = static_cast<std::uint64_t>(modes);
    return binomial_checked(k + m - 1, m - 1);
}

int byte_width_for(std::uint64_t distinct_values) {
    int width = 1;
    std::uint64_t capacity = 256;
    while (capacity < distinct_values) {
        ++width;
        if (width == 8) {
            break; // 256^8 covers the whole 64-bit range
        }
        capacity *= 256;
    }
    return width;
}

SequenceRanker::SequenceRanker(int modes, int max_photons) : modes_(modes), max_photons_(max_photons) {
    if (modes < 1 || max_photons < 0) {
        throw ArgumentError("invalid ranker dimensions");
    }
    const std::size_t stride = static_cast<std::size_t>(modes_) + 1;
    completions_.assign(static_cast<std::size_t>(max_photons_ + 1) * stride, 0);
    // Length 0: exactly one (empty) sequence for every starting value.
    for (int v = 0; v <= modes_; ++v) {
        completions_[static_cast<std::size_t>(v)] = 1;
    }
    for (int len = 1; len <= max_photons_; ++len) {
        std::uint64_t *row = completions_.data() + static_cast<std::size_t>(len) * stride;
        const std::uint64_t *prev = row - stride;
        row[static_cast<std::size_t>(modes_)] = 0;
        // Sequences over [v, m) either start at v or lie in [v+1, m).
        for (int v = modes_ - 1; v >= 0; --v) {
            row[static_cast<std::size_t>(v)] =
                checked_add(row[static_cast<std::size_t>(v) + 1], prev[static_cast<std::size_t>(v)]);
        }
    }
}

std::uint64_t SequenceRanker::rank(std::span<const std::uint16_t> positions) const {
    const int k = static_cast<int>(positions.size());
    if (k > max_photons_) {
        throw ArgumentError("sequence longer than ranker capacity");
    }
    const std::size_t stride = static_cast<std::size_t>(modes_) + 1;
    std::uint64_t r = 0;
    int prev = 0;
    for (int i = 0; i < k; ++i) {
        const int pi = positions[static_cast<std::size_t>(i)];
        if (pi < prev || pi >= modes_) {
            throw ArgumentError("invalid photon position in sequence");
        }
        const std::uint64_t *row = completions_.data() + static_cast<std::size_t>(k - 1 - i) * stride;
        for (int v = prev; v < pi; ++v) {
            r = checked_add(r, row[static_cast<std::size_t>(v)]);
        }
        prev = pi;
    }
    return r;
}

std::uint64_t SequenceRanker::rank(const PhotonSequence &p) const {
    if (p.modes != modes_) {
        throw ArgumentError("sequence mode count does not match ranker");
    }
    std::vector<std::uint16_t> buf(p.positions.begin(), p.positions.end());
    return rank(std::span<const std::uint16_t>(buf));
}

} // namespace fockflow
