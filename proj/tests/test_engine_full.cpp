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
#include "fockflow/engine.hpp"
#include "fockflow/errors.hpp"
#include "fockflow/op_counter.hpp"
#include "fockflow/permanent.hpp"

using namespace fockflow;

namespace {

UnitaryMatrix balanced_beamsplitter() {
    const double r = 1.0 / std::sqrt(2.0);
    ComplexMatrix bs(2, 2);
    bs << r, r, r, -r;
    return UnitaryMatrix(std::move(bs));
}

} // namespace

TEST_CASE("identity circuit leaves the input state untouched") {
    const UnitaryMatrix id(ComplexMatrix::Identity(3, 3));
    const FockState input{1, 0, 2};
    const FullResult r = full_distribution(input, id);
    const Distribution &d = r.distribution;
    for (std::size_t i = 0; i < d.size(); ++i) {
        const double want = d.state_at(i) == input ? 1.0 : 0.0;
        CHECK(std::abs(d.probability_at(i) - want) < 1e-12);
    }
}

TEST_CASE("two photons on a balanced beamsplitter bunch") {
    const FullResult r = full_distribution(FockState{1, 1}, balanced_beamsplitter());
    const Distribution &d = r.distribution;
    REQUIRE(d.size() == 3);
    CHECK(d.probability_at(*d.find(FockState{2, 0})) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(d.probability_at(*d.find(FockState{0, 2})) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(d.probability_at(*d.find(FockState{1, 1})) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("worked amplitude appears in the full distribution") {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const UnitaryMatrix u = haar_random_unitary(3, 300 + seed);
        const FullResult r = full_distribution(FockState{1, 1, 0}, u);
        const std::complex<double> got = r.distribution.amplitude_at(*r.distribution.find(FockState{0, 0, 2}));
        const std::complex<double> want = std::sqrt(2.0) * u(2, 0) * u(2, 1);
        CHECK(std::abs(got - want) < 1e-12);
    }
}

TEST_CASE("engine amplitudes match the permanent oracle") {
    for (int m = 2; m <= 4; ++m) {
        for (int n = 1; n <= 3; ++n) {
            const UnitaryMatrix u = haar_random_unitary(m, 17 * static_cast<std::uint64_t>(m) + static_cast<std::uint64_t>(n));
            std::vector<int> occ(static_cast<std::size_t>(m), 0);
            for (int i = 0; i < n; ++i) {
                occ[static_cast<std::size_t>(i % m)] += 1;
            }
            const FockState input(occ);
            const FullResult r = full_distribution(input, u);
            const Distribution &d = r.distribution;
            for (std::size_t i = 0; i < d.size(); ++i) {
                const std::complex<double> want =
                    amplitude_oracle(u, input, d.state_at(i), PermanentAlgorithm::naive);
                CHECK(std::abs(d.amplitude_at(i) - want) < 1e-10);
            }
        }
    }
}

TEST_CASE("intermediate layers are unit norm and the result sums to 1") {
    const UnitaryMatrix u = haar_random_unitary(4, 11);
    FullOptions options;
    options.keep_layers = true;
    const FullResult r = full_distribution(FockState{2, 1, 0, 1}, u, options);
    REQUIRE(r.layers.size() == 4); // layers 0..n-1
    for (const Distribution &layer : r.layers) {
        CHECK(layer.total_probability() == doctest::Approx(1.0).epsilon(1e-9));
    }
    CHECK(r.distribution.total_probability() == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("the result does not depend on the photon order") {
    const UnitaryMatrix u = haar_random_unitary(4, 23);
    const FockState input{1, 0, 2, 1};
    const FullResult base = full_distribution(input, u);

    FullOptions options;
    options.photon_order = {3, 2, 0, 2}; // reversed nondecreasing order
    const FullResult alt = full_distribution(input, u, options);
    REQUIRE(alt.distribution.size() == base.distribution.size());
    for (std::size_t i = 0; i < base.distribution.size(); ++i) {
        CHECK(std::abs(base.distribution.amplitude_at(i) - alt.distribution.amplitude_at(i)) < 1e-10);
    }

    options.photon_order = {0, 2, 3}; // wrong multiset
    CHECK_THROWS_AS(full_distribution(input, u, options), ArgumentError);
    options.photon_order = {0, 1, 2, 3};
    CHECK_THROWS_AS(full_distribution(input, u, options), ArgumentError);
}

TEST_CASE("multiplication count matches n * M_n exactly") {
    for (int m = 2; m <= 5; ++m) {
        for (int n = 1; n <= 4; ++n) {
            const UnitaryMatrix u = haar_random_unitary(m, static_cast<std::uint64_t>(m * 100 + n));
            std::vector<int> occ(static_cast<std::size_t>(m), 0);
            occ[0] = n;
            reset_op_count();
            full_distribution(FockState(occ), u);
            CHECK(op_count() == static_cast<std::uint64_t>(n) * count_states(m, n));
        }
    }
}

TEST_CASE("rolling memory mode reproduces the kept-layer result bitwise") {
    const UnitaryMatrix u = haar_random_unitary(5, 31);
    const FockState input{1, 1, 1, 0, 0};
    FullOptions keep;
    keep.keep_layers = true;
    FullOptions roll;
    roll.keep_layers = false;
    const FullResult a = full_distribution(input, u, keep);
    const FullResult b = full_distribution(input, u, roll);
    CHECK(b.layers.empty());
    REQUIRE(a.distribution.size() == b.distribution.size());
    for (std::size_t i = 0; i < a.distribution.size(); ++i) {
        CHECK(a.distribution.amplitude_at(i) == b.distribution.amplitude_at(i));
    }
}

TEST_CASE("worker partitioning is bitwise reproducible") {
    const UnitaryMatrix u = haar_random_unitary(5, 57);
    const FockState input{1, 1, 1, 1, 0};
    FullOptions single;
    single.threads = 1;
    FullOptions multi;
    multi.threads = 3;
    const FullResult a = full_distribution(input, u, single);
    const FullResult b = full_distribution(input, u, multi);
    REQUIRE(a.distribution.size() == b.distribution.size());
    for (std::size_t i = 0; i < a.distribution.size(); ++i) {
        CHECK(a.distribution.amplitude_at(i) == b.distribution.amplitude_at(i));
    }

    reset_op_count();
    full_distribution(input, u, multi);
    CHECK(op_count() == 4 * count_states(5, 4));
}

TEST_CASE("zero photons produce the vacuum distribution") {
    const UnitaryMatrix u = haar_random_unitary(3, 1);
    const FullResult r = full_distribution(FockState::vacuum(3), u);
    REQUIRE(r.distribution.size() == 1);
    CHECK(r.distribution.state_at(0) == FockState::vacuum(3));
    CHECK(r.distribution.amplitude_at(0) == std::complex<double>(1, 0));
}

TEST_CASE("non-unitary matrices are rejected unless validation is disabled") {
    ComplexMatrix lossy = ComplexMatrix::Identity(2, 2) * 0.5;
    CHECK_THROWS_AS(UnitaryMatrix{lossy}, ValidationError);
    const UnitaryMatrix unchecked(lossy, false);
    const FullResult r = full_distribution(FockState{1, 0}, unchecked);
    // Half the light is lost per photon; no normalization is asserted.
    CHECK(r.distribution.total_probability() == doctest::Approx(0.25));
}

TEST_CASE("prebuilt structures must be unmasked and dimensioned correctly") {
    const UnitaryMatrix u = haar_random_unitary(3, 2);
    const MaskSet mask({{1, 1, 1}});
    const LayerStructures masked = LayerStructures::build(3, 2, &mask);
    FullOptions options;
    options.structures = &masked;
    CHECK_THROWS_AS(full_distribution(FockState{1, 1, 0}, u, options), ArgumentError);

    const LayerStructures good = LayerStructures::build(3, 2);
    options.structures = &good;
    const FullResult r = full_distribution(FockState{1, 1, 0}, u, options);
    CHECK(r.distribution.total_probability() == doctest::Approx(1.0).epsilon(1e-9));

    const LayerStructures wrong = LayerStructures::build(4, 2);
    options.structures = &wrong;
    CHECK_THROWS_AS(full_distribution(FockState{1, 1, 0}, u, options), ArgumentError);
}

TEST_CASE("mode count mismatches are rejected") {
    const UnitaryMatrix u = haar_random_unitary(3, 2);
    CHECK_THROWS_AS(full_distribution(FockState{1, 1}, u), ArgumentError);
}
