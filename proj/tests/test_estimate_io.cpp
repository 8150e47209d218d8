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

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "fockflow/counting.hpp"
#include "fockflow/errors.hpp"
#include "fockflow/estimate.hpp"
#include "fockflow/io.hpp"
#include "fockflow/op_counter.hpp"

using namespace fockflow;

namespace {

std::filesystem::path temp_dir(const std::string &name) {
    const auto dir = std::filesystem::temp_directory_path() / ("fockflow_test_" + name);
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

} // namespace

TEST_CASE("estimate reproduces the tabulated state counts") {
    CHECK(estimate(12, 12).state_count == 1352078);
    CHECK(estimate(24, 12).state_count == 834451800);
    CHECK(estimate(12, 12).full_ops == 12 * 1352078ull);
    CHECK(estimate(24, 12).theta == doctest::Approx(2.0));
}

TEST_CASE("estimate evaluates the single-output averages") {
    CHECK(estimate(1, 1).single_output_avg_ops == doctest::Approx(1.0));
    // 4 * C(10,3) / C(7,3) = 4 * 120 / 35 = 96/7
    CHECK(estimate(4, 4).single_output_avg_ops == doctest::Approx(96.0 / 7.0).epsilon(1e-12));
    CHECK(estimate(4, 4).worst_single_ops == 4 * 8);
    CHECK(estimate(10, 10).worst_single_ops == 10 * 512);
}

TEST_CASE("estimate handles the trivial and overflowing ends") {
    const ComplexityEstimate zero = estimate(5, 0);
    CHECK(zero.state_count == 1);
    CHECK(zero.full_ops == 0);
    CHECK(zero.worst_single_ops == 0);
    CHECK(zero.memory_bytes_full == 16 + zero.index_bytes);
    CHECK_THROWS_AS(estimate(40000, 40000), OverflowError);
    CHECK_THROWS_AS(estimate(2, 70), OverflowError);
}

TEST_CASE("estimate memory figures include coefficients and index bytes") {
    const ComplexityEstimate e = estimate(3, 2);
    // Layers hold 1, 3, 6 states; positions 1 byte, ranks 1 byte.
    const std::uint64_t index = 6 * 2 * 1 + (3 * 1 * 1 + 6 * 2 * 1);
    CHECK(e.index_bytes == index);
    CHECK(e.memory_bytes_full == 16 * (3 + 6) + index);
    CHECK(e.memory_bytes_all_layers == 16 * (1 + 3 + 6) + index);
}

TEST_CASE("haar unitaries are unitary, seeded and phase-corrected") {
    for (int m : {1, 2, 5, 9}) {
        const UnitaryMatrix u = haar_random_unitary(m, 2718);
        CHECK(u.max_unitarity_deviation() <= 1e-12);
        const UnitaryMatrix again = haar_random_unitary(m, 2718);
        CHECK((u.matrix() - again.matrix()).cwiseAbs().maxCoeff() == 0.0);
        const UnitaryMatrix other = haar_random_unitary(m, 2719);
        if (m > 1) {
            CHECK((u.matrix() - other.matrix()).cwiseAbs().maxCoeff() > 0.0);
        }
    }
    const UnitaryMatrix phase = haar_random_unitary(1, 5);
    CHECK(std::abs(std::abs(phase(0, 0)) - 1.0) <= 1e-12);
}

TEST_CASE("the op counter starts at zero after a reset") {
    reset_op_count();
    CHECK(op_count() == 0);
    add_op_count(3);
    CHECK(op_count() == 3);
    reset_op_count();
    CHECK(op_count() == 0);
}

TEST_CASE("state and mask parsing") {
    CHECK(parse_state("1,0,2") == FockState{1, 0, 2});
    CHECK(parse_state("3") == FockState{3});
    CHECK_THROWS_AS(parse_state(""), ArgumentError);
    CHECK_THROWS_AS(parse_state("1,x,2"), ArgumentError);
    CHECK_THROWS_AS(parse_state("1,-2"), ArgumentError);

    CHECK(parse_mask_pattern("1,1,*,0", 4) == std::vector<int>{1, 1, 4, 0});
    CHECK_THROWS_AS(parse_mask_pattern("1,?", 2), ArgumentError);
}

TEST_CASE("unitary files round-trip") {
    const auto dir = temp_dir("unitary");
    const UnitaryMatrix u = haar_random_unitary(4, 12);
    {
        std::ofstream out(dir / "u.json");
        write_unitary(u, out);
    }
    const UnitaryMatrix back = load_unitary(dir / "u.json");
    CHECK(back.modes() == 4);
    CHECK((back.matrix() - u.matrix()).cwiseAbs().maxCoeff() == 0.0);
    std::filesystem::remove_all(dir);
}

TEST_CASE("unitary loading validates content") {
    const auto dir = temp_dir("unitary_bad");
    {
        std::ofstream out(dir / "bad.json");
        out << "{\"m\": 2, \"matrix\": [[[1,0]],[[0,0],[1,0]]]}";
    }
    CHECK_THROWS_AS(load_unitary(dir / "bad.json"), FormatError);
    {
        std::ofstream out(dir / "nonunitary.json");
        out << "{\"m\": 1, \"matrix\": [[[2,0]]]}";
    }
    CHECK_THROWS_AS(load_unitary(dir / "nonunitary.json"), ValidationError);
    CHECK(load_unitary(dir / "nonunitary.json", false).modes() == 1);
    CHECK_THROWS_AS(load_unitary(dir / "missing.json"), FormatError);
    std::filesystem::remove_all(dir);
}

TEST_CASE("distribution writers emit canonical records") {
    const UnitaryMatrix id(ComplexMatrix::Identity(2, 2));
    const FullResult r = full_distribution(FockState{1, 1}, id);

    std::ostringstream jsonl;
    write_distribution(r.distribution, jsonl, OutputFormat::jsonl);
    CHECK(jsonl.str().find("{\"state\": [1,1], \"re\": 1, \"im\": 0, \"prob\": 1}") != std::string::npos);

    std::ostringstream csv;
    write_distribution(r.distribution, csv, OutputFormat::csv);
    CHECK(csv.str().rfind("state,re,im,prob\n", 0) == 0);

    std::ostringstream filtered;
    write_distribution(r.distribution, filtered, OutputFormat::jsonl, 0.5);
    CHECK(filtered.str().find("[2,0]") == std::string::npos);
    CHECK(filtered.str().find("[1,1]") != std::string::npos);
}

TEST_CASE("layer structures save and load consistently") {
    const auto dir = temp_dir("layers");
    const LayerStructures built = LayerStructures::build(4, 3);
    save_layer_structures(built, dir);
    const LayerStructures loaded = load_layer_structures(dir, 4, 3);
    for (int k = 0; k <= 3; ++k) {
        CHECK(*loaded.bases[static_cast<std::size_t>(k)] == *built.bases[static_cast<std::size_t>(k)]);
        if (k > 0) {
            CHECK(*loaded.maps[static_cast<std::size_t>(k)] == *built.maps[static_cast<std::size_t>(k)]);
        }
    }
    CHECK_THROWS_AS(load_layer_structures(dir, 4, 4), FormatError); // missing layer files
    CHECK_THROWS_AS(load_layer_structures(dir / "nope", 4, 3), FormatError);
    std::filesystem::remove_all(dir);
}
