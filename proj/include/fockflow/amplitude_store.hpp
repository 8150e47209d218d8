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

#ifndef FOCKFLOW_AMPLITUDE_STORE_HPP
#define FOCKFLOW_AMPLITUDE_STORE_HPP

#include <complex>
#include <cstdint>
#include <map>
#include <unordered_map>
#include <utility>

#include "fockflow/errors.hpp"

namespace fockflow {

/// Memoized coefficients <t|U|s> keyed by the intermediate input state
/// (photon count + combinatorial rank) and the output state rank within its
/// layer. Presence of a key is the computed flag: a stored coefficient is
/// never recomputed. Restricted and hybrid queries share stores across runs;
/// the store is bound to one matrix fingerprint to prevent cross-matrix
/// reuse.
class AmplitudeStore {
  public:
    using Coefficients = std::unordered_map<std::uint64_t, std::complex<double>>;

    void bind(int modes, std::uint64_t matrix_fingerprint) {
        if (!bound_) {
            modes_ = modes;
            fingerprint_ = matrix_fingerprint;
            bound_ = true;
            return;
        }
        if (modes_ != modes || fingerprint_ != matrix_fingerprint) {
            throw ArgumentError("amplitude store is bound to a different matrix");
        }
    }

    bool bound() const { return bound_; }
    int modes() const { return modes_; }

    Coefficients &slot(int photons, std::uint64_t input_rank) {
        return slots_[{photons, input_rank}];
    }

    const Coefficients *find_slot(int photons, std::uint64_t input_rank) const {
        auto it = slots_.find({photons, input_rank});
        return it == slots_.end() ? nullptr : &it->second;
    }

    std::size_t coefficient_count() const {
        std::size_t total = 0;
        for (const auto &[key, coeffs] : slots_) {
            total += coeffs.size();
        }
        return total;
    }

  private:
    std::map<std::pair<int, std::uint64_t>, Coefficients> slots_;
    int modes_ = 0;
    std::uint64_t fingerprint_ = 0;
    bool bound_ = false;
};

} // namespace fockflow

#endif
