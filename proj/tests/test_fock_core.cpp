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

#include <doctest.h>

#include <algorithm>

#include "fockflow/counting.hpp"
#include "fockflow/errors.hpp"
#include "fockflow/fock_basis.hpp"
#include "fockflow/index_map.hpp"
#include "fockflow/mask.hpp"

using namespace fockflow;

namespace {

// Independent enumeration of all k-photon occupation vectors, used as the
// oracle for the encoding-based basis construction.
void enumerate_occupations(int modes, int photons, std::vector<int> &occ, int mode,
                           std::vector<FockState> &out) {
    if (mode == modes - 1) {
        occ[static_cast<std::size_t>(mode)] = photons;
        out.emplace_back(occ);
        occ[static_cast<std::size_t>(mode)] = 0;
        return;
    }
    for (int c = 0; c <= photons; ++c) {
        occ[static_cast<std::size_t>(mode)] = c;
        enumerate_occupations(modes, photons - c, occ, mode + 1, out);
    }
    occ[static_cast<std::size_t>(mode)] = 0;
}

std::vector<FockState> brute_force_layer(int modes, int photons) {
    std::vector<int> occ(static_cast<std::size_t>(modes), 0);
    std::vector<FockState> out;
    enumerate_occupations(modes, photons, occ, 0, out);
    return out;
}

} // namespace

TEST_CASE("count_states matches the binomial formula") {
    CHECK(count_states(3, 2) == 6);
    CHECK(count_states(7, 0) == 1);
    CHECK(count_states(12, 12) == 1352078);
    CHECK(count_states(24, 12) == 834451800);
    CHECK(count_states(1, 5) == 1);
    CHECK_THROWS_AS(count_states(0, 1), ArgumentError);
    CHECK_THROWS_AS(count_states(2, -1), ArgumentError);
}

TEST_CASE("count_states reports overflow instead of wrapping") {
    CHECK_THROWS_AS(count_states(40000, 40000), OverflowError);
}

TEST_CASE("photon-to-mode encoding") {
    CHECK(state_to_sequence(FockState{1, 0, 0, 2}).positions == std::vector<int>{0, 3, 3});
    CHECK(state_to_sequence(FockState{0, 0, 0}).positions.empty());
    CHECK(state_to_sequence(FockState{2, 1}).positions == std::vector<int>{0, 0, 1});

    PhotonSequence p{4, {0, 3, 3}};
    CHECK(sequence_to_state(p) == FockState{1, 0, 0, 2});
    CHECK(sequence_to_state(PhotonSequence{5, {}}) == FockState{0, 0, 0, 0, 0});
    CHECK(sequence_to_state(PhotonSequence{3, {1, 1}}) == FockState{0, 2, 0});

    CHECK_THROWS_AS(sequence_to_state(PhotonSequence{3, {2, 1}}), ArgumentError);
    CHECK_THROWS_AS(sequence_to_state(PhotonSequence{3, {0, 3}}), ArgumentError);
}

TEST_CASE("sequence increment walks the layer in order") {
    PhotonSequence p{4, {0, 3, 3}};
    CHECK(sequence_increment(p));
    CHECK(p.positions == std::vector<int>{1, 1, 1});

    p = {3, {0, 0}};
    CHECK(sequence_increment(p));
    CHECK(p.positions == std::vector<int>{0, 1});

    p = {3, {2, 2}};
    CHECK_FALSE(sequence_increment(p));

    // The vacuum layer has a single state.
    p = {3, {}};
    CHECK_FALSE(sequence_increment(p));
}

TEST_CASE("round-trip between states and sequences") {
    for (int m = 1; m <= 5; ++m) {
        for (int k = 0; k <= 4; ++k) {
            for (const FockState &s : brute_force_layer(m, k)) {
                CHECK(sequence_to_state(state_to_sequence(s)) == s);
            }
        }
    }
}

TEST_CASE("basis enumeration is ordered, complete and rankable") {
    for (int m = 1; m <= 6; ++m) {
        for (int k = 0; k <= 6; ++k) {
            const FockBasis basis = FockBasis::build(m, k);
            REQUIRE(basis.size() == count_states(m, k));
            const SequenceRanker ranker(m, k);
            for (std::uint64_t i = 0; i < basis.size(); ++i) {
                CHECK(basis.rank(basis.state_at(i)) == i);
                CHECK(ranker.rank(basis.encoding_at(i)) == i);
                if (i > 0) {
                    CHECK(canonical_less(basis.state_at(i - 1), basis.state_at(i)));
                }
            }
        }
    }
}

TEST_CASE("basis order matches the worked encodings") {
    const FockBasis basis = FockBasis::build(2, 2);
    REQUIRE(basis.size() == 3);
    CHECK(basis.state_at(0) == FockState{2, 0});
    CHECK(basis.state_at(1) == FockState{1, 1});
    CHECK(basis.state_at(2) == FockState{0, 2});

    const FockBasis b43 = FockBasis::build(4, 3);
    CHECK(b43.rank(FockState{1, 1, 1, 0}) < b43.rank(FockState{1, 0, 0, 2}));

    CHECK(FockBasis::build(3, 2).size() == 6);
    CHECK(FockBasis::build(7, 0).rank(FockState::vacuum(7)) == 0);
}

TEST_CASE("rank rejects states outside the basis") {
    const FockBasis basis = FockBasis::build(3, 2);
    CHECK_THROWS_AS(basis.rank(FockState{1, 1, 1}), NotFoundError);

    const MaskSet mask({{1, 1, 1}});
    const FockBasis masked = FockBasis::build(3, 2, &mask);
    CHECK_THROWS_AS(masked.rank(FockState{2, 0, 0}), NotFoundError);
    CHECK(masked.rank(FockState{1, 1, 0}) < masked.size());
}

TEST_CASE("masked basis equals the brute-force filter") {
    const MaskSet mask({{1, 1, 1, 1}});
    const FockBasis basis = FockBasis::build(4, 2, &mask);
    std::vector<FockState> expected;
    for (const FockState &s : brute_force_layer(4, 2)) {
        if (*std::max_element(s.occupations.begin(), s.occupations.end()) <= 1) {
            expected.push_back(s);
        }
    }
    REQUIRE(basis.size() == expected.size());
    CHECK(basis.size() == 6);
    for (const FockState &s : expected) {
        CHECK(basis.state_at(basis.rank(s)) == s);
    }
}

TEST_CASE("mask with multiple alternatives accepts the union") {
    const MaskSet mask({{2, 0, 0}, {0, 0, 2}});
    const FockBasis basis = FockBasis::build(3, 2, &mask);
    REQUIRE(basis.size() == 2);
    CHECK(basis.state_at(0) == FockState{2, 0, 0});
    CHECK(basis.state_at(1) == FockState{0, 0, 2});
}

TEST_CASE("mask monotonicity: lowering a passing state keeps it passing") {
    const MaskSet mask({{2, 1, 3, 0}, {1, 1, 1, 1}});
    for (const FockState &s : brute_force_layer(4, 4)) {
        if (!mask.passes(s)) {
            continue;
        }
        for (int mode = 0; mode < 4; ++mode) {
            if (s.occupations[static_cast<std::size_t>(mode)] > 0) {
                CHECK(mask.passes(s.with_removed_photon(mode)));
            }
        }
    }
}

TEST_CASE("index map resolves the worked parents") {
    const FockBasis child = FockBasis::build(4, 3);
    const FockBasis parent = FockBasis::build(4, 2);
    const FockIndexMap map = FockIndexMap::build(child, parent);
    CHECK(map.index_width_bytes() == 1);

    const std::uint64_t c = child.rank(FockState{1, 0, 0, 2}); // encoding (0,3,3)
    // Slot 0 removes the photon in mode 0, slot 1 the first photon in mode 3,
    // slot 2 is a duplicate of slot 1.
    CHECK(parent.state_at(map.slot_value(c, 0)) == FockState{0, 0, 0, 2});
    CHECK(parent.state_at(map.slot_value(c, 1)) == FockState{1, 0, 0, 1});
    CHECK(map.slot_value(c, 2) == map.sentinel_value());
}

TEST_CASE("a fully bunched child has a single distinct parent") {
    const FockBasis child = FockBasis::build(3, 4);
    const FockBasis parent = FockBasis::build(3, 3);
    const FockIndexMap map = FockIndexMap::build(child, parent);
    const std::uint64_t c = child.rank(FockState{4, 0, 0});
    CHECK(parent.state_at(map.slot_value(c, 0)) == FockState{3, 0, 0});
    for (int slot = 1; slot < 4; ++slot) {
        CHECK(map.slot_value(c, slot) == map.sentinel_value());
    }
}

TEST_CASE("every stored parent sits one photon below its child") {
    for (int m = 1; m <= 5; ++m) {
        for (int k = 1; k <= 5; ++k) {
            const FockBasis child = FockBasis::build(m, k);
            const FockBasis parent = FockBasis::build(m, k - 1);
            const FockIndexMap map = FockIndexMap::build(child, parent);
            CHECK(map.index_width_bytes() == byte_width_for(std::max<std::uint64_t>(parent.size(), 2)));
            for (std::uint64_t c = 0; c < child.size(); ++c) {
                const FockState cs = child.state_at(c);
                auto enc = child.encoding_at(c);
                // Parent completeness: every occupied mode is reachable.
                for (int mode = 0; mode < m; ++mode) {
                    if (cs.occupations[static_cast<std::size_t>(mode)] == 0) {
                        continue;
                    }
                    bool found = false;
                    for (int slot = 0; slot < k; ++slot) {
                        if (enc[static_cast<std::size_t>(slot)] != mode ||
                            map.slot_value(c, slot) == map.sentinel_value()) {
                            continue;
                        }
                        if (parent.state_at(map.slot_value(c, slot)) == cs.with_removed_photon(mode)) {
                            found = true;
                        }
                    }
                    CHECK(found);
                }
                // Every used slot resolves one photon below the child.
                for (int slot = 0; slot < k; ++slot) {
                    const std::uint64_t v = map.slot_value(c, slot);
                    if (v == map.sentinel_value() &&
                        (slot > 0 && enc[static_cast<std::size_t>(slot)] == enc[static_cast<std::size_t>(slot) - 1])) {
                        continue;
                    }
                    REQUIRE(v < parent.size());
                    const FockState ps = parent.state_at(v);
                    int distance = 0;
                    for (int mode = 0; mode < m; ++mode) {
                        const int diff = cs.occupations[static_cast<std::size_t>(mode)] -
                                         ps.occupations[static_cast<std::size_t>(mode)];
                        REQUIRE(diff >= 0);
                        distance += diff;
                    }
                    CHECK(distance == 1);
                }
            }
        }
    }
}

TEST_CASE("index map width follows the parent layer size") {
    CHECK(byte_width_for(834451800) == 4);
    CHECK(byte_width_for(1) == 1);
    CHECK(byte_width_for(2) == 1);
    CHECK(byte_width_for(256) == 1);
    CHECK(byte_width_for(257) == 2);
    CHECK(byte_width_for(65536) == 2);
    CHECK(byte_width_for(65537) == 3);
}

TEST_CASE("index map construction rejects inconsistent masks") {
    const MaskSet child_mask({{2, 2}});
    const MaskSet parent_mask({{0, 1}});
    const FockBasis child = FockBasis::build(2, 2, &child_mask);
    const FockBasis parent = FockBasis::build(2, 1, &parent_mask);
    CHECK_THROWS_AS(FockIndexMap::build(child, parent), StructuralError);
}

TEST_CASE("masked layers stay closed under photon removal") {
    const MaskSet mask({{1, 2, 1}});
    const FockBasis child = FockBasis::build(3, 3, &mask);
    const FockBasis parent = FockBasis::build(3, 2, &mask);
    const FockIndexMap map = FockIndexMap::build(child, parent);
    CHECK(map.size() == child.size());
}
