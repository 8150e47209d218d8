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

#include "fockflow/fock_state.hpp"

#include <algorithm>
#include <numeric>
#include <ostream>
#include <sstream>

#include "fockflow/errors.hpp"

namespace fockflow {

FockState::FockState(std::vector<int> occ) : occupations(std::move(occ)) {
    for (int v : occupations) {
        if (v < 0) {
            throw ArgumentError("occupation numbers must be non-negative");
        }
    }
}

FockState::FockState(std::initializer_list<int> occ) : FockState(std::vector<int>(occ)) {
}

FockState FockState::vacuum(int modes) {
    if (modes < 1) {
        throw ArgumentError("mode count must be at least 1");
    }
    return FockState(std::vector<int>(static_cast<std::size_t>(modes), 0));
}

int FockState::photons() const {
    return std::accumulate(occupations.begin(), occupations.end(), 0);
}

FockState FockState::with_added_photon(int mode) const {
    if (mode < 0 || mode >= modes()) {
        throw ArgumentError("mode index out of range");
    }
    FockState out = *this;
    out.occupations[static_cast<std::size_t>(mode)] += 1;
    return out;
}

FockState FockState::with_removed_photon(int mode) const {
    if (mode < 0 || mode >= modes()) {
        throw ArgumentError("mode index out of range");
    }
    if (occupations[static_cast<std::size_t>(mode)] == 0) {
        throw ArgumentError("cannot remove a photon from an empty mode");
    }
    FockState out = *this;
    out.occupations[static_cast<std::size_t>(mode)] -= 1;
    return out;
}

std::string FockState::to_string() const {
    std::ostringstream ss;
    ss << '|';
    for (int i = 0; i < modes(); ++i) {
        if (i) {
            ss << ',';
        }
        ss << occupations[static_cast<std::size_t>(i)];
    }
    ss << '>';
    return ss.str();
}

std::ostream &operator<<(std::ostream &os, const FockState &s) {
    return os << s.to_string();
}

bool canonical_less(const FockState &a, const FockState &b) {
    // Ascending encoding order equals descending occupation order for equal
    // photon counts; states with fewer photons sort first.
    int na = a.photons();
    int nb = b.photons();
    if (na != nb) {
        return na < nb;
    }
    return std::lexicographical_compare(
        b.occupations.begin(), b.occupations.end(), a.occupations.begin(), a.occupations.end());
}

PhotonSequence state_to_sequence(const FockState &s) {
    PhotonSequence p;
    p.modes = s.modes();
    p.positions.reserve(static_cast<std::size_t>(s.photons()));
    for (int mode = 0; mode < s.modes(); ++mode) {
        for (int c = 0; c < s.occupations[static_cast<std::size_t>(mode)]; ++c) {
            p.positions.push_back(mode);
        }
    }
    return p;
}

FockState sequence_to_state(const PhotonSequence &p) {
    if (p.modes < 1) {
        throw ArgumentError("mode count must be at least 1");
    }
    std::vector<int> occ(static_cast<std::size_t>(p.modes), 0);
    int prev = 0;
    for (int pos : p.positions) {
        if (pos < prev) {
            throw ArgumentError("photon positions must be nondecreasing");
        }
        if (pos >= p.modes) {
            throw ArgumentError("photon position out of range");
        }
        occ[static_cast<std::size_t>(pos)] += 1;
        prev = pos;
    }
    return FockState(std::move(occ));
}

bool sequence_increment(PhotonSequence &p) {
    const int top = p.modes - 1;
    for (int i = p.photons() - 1; i >= 0; --i) {
        if (p.positions[static_cast<std::size_t>(i)] < top) {
            int v = ++p.positions[static_cast<std::size_t>(i)];
            for (std::size_t j = static_cast<std::size_t>(i) + 1; j < p.positions.size(); ++j) {
                p.positions[j] = v;
            }
            return true;
        }
    }
    return false;
}

} // namespace fockflow
