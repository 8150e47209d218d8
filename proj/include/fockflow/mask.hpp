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

#ifndef FOCKFLOW_MASK_HPP
#define FOCKFLOW_MASK_HPP

#include <span>
#include <vector>

#include "fockflow/errors.hpp"
#include "fockflow/fock_state.hpp"

namespace fockflow {

/// Per-mode occupancy upper bounds. A state passes when at least one mask
/// bounds it componentwise. "Any occupancy" modes are encoded with the total
/// photon count as their bound.
class MaskSet {
  public:
    explicit MaskSet(std::vector<std::vector<int>> masks) : masks_(std::move(masks)) {
        if (masks_.empty()) {
            throw ArgumentError("mask set must not be empty");
        }
        for (const auto &mask : masks_) {
            if (mask.size() != masks_.front().size()) {
                throw ArgumentError("all masks must have the same mode count");
            }
            for (int bound : mask) {
                if (bound < 0) {
                    throw ArgumentError("mask bounds must be non-negative");
                }
            }
        }
    }

    int modes() const { return static_cast<int>(masks_.front().size()); }

    bool passes(std::span<const int> occupations) const {
        for (const auto &mask : masks_) {
            bool ok = true;
            for (std::size_t i = 0; i < mask.size(); ++i) {
                if (occupations[i] > mask[i]) {
                    ok = false;
                    break;
                }
            }
            if (ok) {
                return true;
            }
        }
        return false;
    }

    bool passes(const FockState &s) const { return passes(std::span<const int>(s.occupations)); }

    const std::vector<std::vector<int>> &masks() const { return masks_; }

  private:
    std::vector<std::vector<int>> masks_;
};

} // namespace fockflow

#endif
