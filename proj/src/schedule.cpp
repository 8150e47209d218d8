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

#include "fockflow/schedule.hpp"

#include <algorithm>

#include <json.hpp>

#include "fockflow/errors.hpp"

namespace fockflow {

namespace {

bool entry_less(const ScheduleEntry &a, const ScheduleEntry &b) {
    if (a.state != b.state) {
        return canonical_less(a.state, b.state);
    }
    return a.mode < b.mode;
}

void add_path_entries(std::vector<std::vector<ScheduleEntry>> &layers, const std::vector<ScheduleEntry> &steps) {
    for (const ScheduleEntry &step : steps) {
        const std::size_t k = static_cast<std::size_t>(step.state.photons());
        if (layers.size() <= k) {
            layers.resize(k + 1);
        }
        layers[k].push_back(step);
    }
}

} // namespace

std::size_t InputSchedule::entry_count() const {
    std::size_t total = 0;
    for (const auto &layer : layers) {
        total += layer.size();
    }
    return total;
}

std::string InputSchedule::to_json() const {
    nlohmann::json j;
    j["layers"] = nlohmann::json::array();
    for (const auto &layer : layers) {
        nlohmann::json jl = nlohmann::json::array();
        for (const auto &entry : layer) {
            jl.push_back({{"state", entry.state.occupations}, {"mode", entry.mode}});
        }
        j["layers"].push_back(std::move(jl));
    }
    j["roots"] = nlohmann::json::array();
    for (const auto &root : roots) {
        j["roots"].push_back(root.occupations);
    }
    return j.dump();
}

std::pair<FockState, int> common_factor(const FockState &a, const FockState &b) {
    if (a.modes() != b.modes()) {
        throw ArgumentError("states must share the mode count");
    }
    std::vector<int> occ(a.occupations.size());
    int overlap = 0;
    for (std::size_t i = 0; i < occ.size(); ++i) {
        occ[i] = std::min(a.occupations[i], b.occupations[i]);
        overlap += occ[i];
    }
    return {FockState(std::move(occ)), overlap};
}

std::vector<ScheduleEntry> path(const FockState &from, const FockState &to) {
    if (from.modes() != to.modes()) {
        throw ArgumentError("states must share the mode count");
    }
    for (std::size_t i = 0; i < from.occupations.size(); ++i) {
        if (from.occupations[i] > to.occupations[i]) {
            throw ArgumentError("path source must be componentwise below its target");
        }
    }
    std::vector<ScheduleEntry> steps;
    FockState cur = from;
    for (int mode = 0; mode < to.modes(); ++mode) {
        const int missing = to.occupations[static_cast<std::size_t>(mode)] -
                            from.occupations[static_cast<std::size_t>(mode)];
        for (int c = 0; c < missing; ++c) {
            steps.push_back({cur, mode});
            cur = cur.with_added_photon(mode);
        }
    }
    return steps;
}

InputSchedule build_schedule(std::vector<FockState> inputs) {
    if (inputs.empty()) {
        throw ArgumentError("input set must not be empty");
    }
    const int m = inputs.front().modes();
    for (const FockState &s : inputs) {
        if (s.modes() != m) {
            throw ArgumentError("all inputs must share the mode count");
        }
    }
    // Set semantics with a deterministic working order.
    std::sort(inputs.begin(), inputs.end(), canonical_less);
    inputs.erase(std::unique(inputs.begin(), inputs.end()), inputs.end());

    InputSchedule schedule;
    std::vector<FockState> roots;

    auto add_root = [&roots](const FockState &s) {
        if (std::find(roots.begin(), roots.end(), s) == roots.end()) {
            roots.push_back(s);
        }
    };

    const FockState vac = FockState::vacuum(m);
    std::vector<FockState> pending = std::move(inputs);
    while (pending.size() >= 2) {
        int best = 0;
        std::size_t bi = 0;
        std::size_t bj = 0;
        for (std::size_t i = 0; i < pending.size(); ++i) {
            for (std::size_t j = i + 1; j < pending.size(); ++j) {
                const int overlap = common_factor(pending[i], pending[j]).second;
                if (overlap > best) {
                    best = overlap;
                    bi = i;
                    bj = j;
                }
            }
        }
        if (best == 0) {
            // No factorisation left: plain vacuum paths for everything.
            for (const FockState &s : pending) {
                add_path_entries(schedule.layers, path(vac, s));
            }
            add_root(vac);
            pending.clear();
            break;
        }
        const FockState a = pending[bi];
        const FockState b = pending[bj];
        const FockState factor = common_factor(a, b).first;
        add_path_entries(schedule.layers, path(factor, a));
        add_path_entries(schedule.layers, path(factor, b));
        add_root(factor);
        pending.erase(pending.begin() + static_cast<std::ptrdiff_t>(bj));
        pending.erase(pending.begin() + static_cast<std::ptrdiff_t>(bi));
        if (std::find(pending.begin(), pending.end(), factor) == pending.end()) {
            pending.push_back(factor);
        }
        std::sort(pending.begin(), pending.end(), canonical_less);
    }
    if (pending.size() == 1) {
        add_path_entries(schedule.layers, path(vac, pending.front()));
        add_root(vac);
    }

    for (auto &layer : schedule.layers) {
        std::sort(layer.begin(), layer.end(), entry_less);
        layer.erase(std::unique(layer.begin(), layer.end()), layer.end());
    }
    std::sort(roots.begin(), roots.end(), canonical_less);
    schedule.roots = std::move(roots);
    return schedule;
}

} // namespace fockflow
