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

#ifndef FOCKFLOW_ESTIMATE_HPP
#define FOCKFLOW_ESTIMATE_HPP

#include <cstdint>

namespace fockflow {

/// Operation-count and memory projections for an (m, n) configuration.
/// Counts are exact integers; the average is rational and reported as a
/// double. Memory figures assume 16 bytes per complex coefficient plus the
/// serialized index structures at their formula widths.
struct ComplexityEstimate {
    int modes = 0;
    int photons = 0;
    double theta = 0;                    // m / n
    std::uint64_t state_count = 0;       // M_n
    std::uint64_t full_ops = 0;          // n * M_n
    double single_output_avg_ops = 0;    // (m / M_n) * C(2m+n-2, n-1)
    std::uint64_t worst_single_ops = 0;  // n * 2^(n-1)
    std::uint64_t index_bytes = 0;       // basis(n) + index maps 1..n
    std::uint64_t memory_bytes_full = 0;        // two rolling layers
    std::uint64_t memory_bytes_all_layers = 0;  // every layer kept
};

/// Exact-integer evaluation of the fields above; throws OverflowError when a
/// count does not fit 64 bits.
ComplexityEstimate estimate(int modes, int photons);

} // namespace fockflow

#endif
