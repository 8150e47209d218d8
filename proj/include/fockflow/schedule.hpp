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

#ifndef FOCKFLOW_SCHEDULE_HPP
#define FOCKFLOW_SCHEDULE_HPP

#include <string>
#include <utility>
#include <vector>

#include "fockflow/fock_state.hpp"

namespace fockflow {

/// One computation step: add a photon in `mode` to `state`.
struct ScheduleEntry {
    FockState state;
    int mode = 0;

    bool operator==(const ScheduleEntry &) const = default;
};

/// Layered computation paths shared by a set of input states. layers[k]
/// holds the k-photon steps; following the steps from the vacuum rebuilds
/// every target input, with common prefixes factored out and computed once.
struct InputSchedule {
    std::vector<std::vector<ScheduleEntry>> layers;
    /// Starting states of the path segments: the vacuum and every extracted
    /// common factor.
    std::vector<FockState> roots;

    std::size_t entry_count() const;

    /// Debugging form: {"layers": [[{"state": [...], "mode": p}, ...], ...],
    /// "roots": [[...], ...]}. Not a stability-guaranteed format.
    std::string to_json() const;
};

/// Componentwise minimum of two states plus its photon count, the largest
/// common computation prefix of the pair.
std::pair<FockState, int> common_factor(const FockState &a, const FockState &b);

/// Deterministic path from `from` to `to` (componentwise >= `from`): photons
/// added in nondecreasing mode order.
std::vector<ScheduleEntry> path(const FockState &from, const FockState &to);

/// Greedy pairwise factoring: repeatedly replaces the pair with the largest
/// common factor by that factor, emitting the two completion paths, until no
/// pair overlaps; remaining inputs get plain vacuum paths. Duplicate inputs
/// are collapsed (set semantics); photon counts may differ across inputs.
InputSchedule build_schedule(std::vector<FockState> inputs);

} // namespace fockflow

#endif
