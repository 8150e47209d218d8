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

#include "fockflow/estimate.hpp"

#include <cmath>

#include "fockflow/counting.hpp"
#include "fockflow/errors.hpp"

namespace fockflow {

namespace {

double binomial_double(std::uint64_t a, std::uint64_t b) {
    try {
        return static_cast<double>(binomial_checked(a, b));
    } catch (const OverflowError &) {
        // The average is reported as a double anyway; fall back to lgamma.
        return std::exp(std::lgamma(static_cast<double>(a) + 1) - std::lgamma(static_cast<double>(b) + 1) -
                        std::lgamma(static_cast<double>(a - b) + 1));
    }
}

} // namespace

ComplexityEstimate estimate(int modes, int photons) {
    if (modes < 1) {
        throw ArgumentError("mode count must be at least 1");
    }
    if (photons < 0) {
        throw ArgumentError("photon count must be non-negative");
    }
    const auto m = static_cast<std::uint64_t>(modes);
    const auto n = static_cast<std::uint64_t>(photons);

    ComplexityEstimate e;
    e.modes = modes;
    e.photons = photons;
    e.theta = photons > 0 ? static_cast<double>(modes) / static_cast<double>(photons) : 0.0;
    e.state_count = count_states(modes, photons);
    e.full_ops = checked_mul(n, e.state_count);

    if (photons == 0) {
        e.single_output_avg_ops = 0.0;
        e.worst_single_ops = 0;
    } else {
        e.single_output_avg_ops = static_cast<double>(m) *
                                  binomial_double(2 * m + n - 2, n - 1) /
                                  static_cast<double>(e.state_count);
        if (photons > 63) {
            throw OverflowError("worst-case operation count overflows 64 bits");
        }
        e.worst_single_ops = checked_mul(n, std::uint64_t{1} << (photons - 1));
    }

    // Serialized structure sizes: photon positions of the top layer plus the
    // parent-rank maps of every layer at their formula widths.
    const auto position_width = static_cast<std::uint64_t>(byte_width_for(m));
    e.index_bytes = checked_mul(checked_mul(e.state_count, n), position_width);
    std::uint64_t coeff_sum = 1; // M_0
    std::uint64_t prev_count = 1;
    for (int k = 1; k <= photons; ++k) {
        const std::uint64_t layer = count_states(modes, k);
        const auto rank_width = static_cast<std::uint64_t>(byte_width_for(prev_count < 2 ? 2 : prev_count));
        e.index_bytes = checked_add(
            e.index_bytes, checked_mul(checked_mul(layer, static_cast<std::uint64_t>(k)), rank_width));
        coeff_sum = checked_add(coeff_sum, layer);
        prev_count = layer;
    }

    const std::uint64_t last_two =
        photons == 0 ? 1 : checked_add(e.state_count, count_states(modes, photons - 1));
    e.memory_bytes_full = checked_add(checked_mul(16, last_two), e.index_bytes);
    e.memory_bytes_all_layers = checked_add(checked_mul(16, coeff_sum), e.index_bytes);
    return e;
}

} // namespace fockflow
