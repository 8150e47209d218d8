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

#ifndef FOCKFLOW_FOCK_STATE_HPP
#define FOCKFLOW_FOCK_STATE_HPP

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace fockflow {

/// Occupation-number state |s_1,...,s_m>: photons per mode, 0-based modes.
struct FockState {
    std::vector<int> occupations;

    FockState() = default;
    explicit FockState(std::vector<int> occ);
    FockState(std::initializer_list<int> occ);

    static FockState vacuum(int modes);

    int modes() const { return static_cast<int>(occupations.size()); }
    int photons() const;

    /// New state with one more photon in `mode`.
    FockState with_added_photon(int mode) const;
    /// New state with one photon removed from `mode` (must be occupied).
    FockState with_removed_photon(int mode) const;

    bool operator==(const FockState &) const = default;

    std::string to_string() const; // "|1,0,2>"
};

std::ostream &operator<<(std::ostream &os, const FockState &s);

/// Canonical order used by every basis: ascending lexicographic order of the
/// photon-to-mode encodings. On occupation vectors of equal photon count this
/// is descending lexicographic order.
bool canonical_less(const FockState &a, const FockState &b);

/// Photon-to-mode encoding of a state: position of each photon, nondecreasing.
/// |1,0,0,2> over 4 modes encodes as (0,3,3).
struct PhotonSequence {
    int modes = 0;
    std::vector<int> positions;

    int photons() const { return static_cast<int>(positions.size()); }
    bool operator==(const PhotonSequence &) const = default;
};

PhotonSequence state_to_sequence(const FockState &s);

/// Inverse of state_to_sequence. Rejects decreasing or out-of-range positions.
FockState sequence_to_state(const PhotonSequence &p);

/// Advances `p` to its lexicographic successor among the nondecreasing
/// sequences of the same length over [0, modes). Returns false (leaving `p`
/// unspecified) once the maximal sequence has been passed.
bool sequence_increment(PhotonSequence &p);

} // namespace fockflow

#endif
