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

#include <random>

#include "fockflow/errors.hpp"
#include "fockflow/fock_basis.hpp"
#include "fockflow/permanent.hpp"
#include "fockflow/unitary.hpp"

using namespace fockflow;

namespace {

ComplexMatrix random_complex(int n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    ComplexMatrix m(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            m(i, j) = std::complex<double>(dist(rng), dist(rng));
        }
    }
    return m;
}

double rel_err(std::complex<double> got, std::complex<double> want) {
    const double scale = std::max(std::abs(want), 1e-30);
    return std::abs(got - want) / scale;
}

} // namespace

TEST_CASE("naive permanent on closed forms") {
    ComplexMatrix one(1, 1);
    one(0, 0) = std::complex<double>(0.3, -0.7);
    CHECK(permanent_naive(one) == std::complex<double>(0.3, -0.7));

    ComplexMatrix two(2, 2);
    two << 1, 2, 3, 4;
    CHECK(permanent_naive(two) == std::complex<double>(10, 0));

    CHECK(permanent_naive(ComplexMatrix::Identity(6, 6)) == std::complex<double>(1, 0));
    CHECK(permanent_naive(ComplexMatrix(0, 0)) == std::complex<double>(1, 0));
}

TEST_CASE("naive permanent guards its factorial blow-up") {
    CHECK_THROWS_AS(permanent_naive(ComplexMatrix::Identity(11, 11)), ArgumentError);
    ComplexMatrix rect(2, 3);
    rect.setZero();
    CHECK_THROWS_AS(permanent_naive(rect), ArgumentError);
    CHECK_THROWS_AS(permanent_ryser(rect), ArgumentError);
    CHECK_THROWS_AS(permanent_glynn(rect), ArgumentError);
}

TEST_CASE("subset-walk permanents handle the identity and empty matrices") {
    CHECK(std::abs(permanent_ryser(ComplexMatrix::Identity(6, 6)) - std::complex<double>(1, 0)) < 1e-12);
    CHECK(std::abs(permanent_glynn(ComplexMatrix::Identity(6, 6)) - std::complex<double>(1, 0)) < 1e-12);
    CHECK(permanent_ryser(ComplexMatrix(0, 0)) == std::complex<double>(1, 0));
    CHECK(permanent_glynn(ComplexMatrix(0, 0)) == std::complex<double>(1, 0));
}

TEST_CASE("all-ones permanent is n!") {
    double factorial = 1;
    for (int n = 1; n <= 7; ++n) {
        factorial *= n;
        const ComplexMatrix ones = ComplexMatrix::Ones(n, n);
        CHECK(rel_err(permanent_naive(ones), {factorial, 0}) < 1e-12);
        CHECK(rel_err(permanent_ryser(ones), {factorial, 0}) < 1e-12);
        CHECK(rel_err(permanent_glynn(ones), {factorial, 0}) < 1e-12);
    }
}

TEST_CASE("ryser and glynn agree with the naive oracle") {
    for (int trial = 0; trial < 100; ++trial) {
        const ComplexMatrix m = random_complex(5, 1000 + static_cast<std::uint64_t>(trial));
        const std::complex<double> want = permanent_naive(m);
        CHECK(rel_err(permanent_ryser(m), want) < 1e-9);
        CHECK(rel_err(permanent_glynn(m), want) < 1e-9);
    }
}

TEST_CASE("permanent is invariant under row and column swaps") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 20; ++trial) {
        ComplexMatrix m = random_complex(5, 500 + static_cast<std::uint64_t>(trial));
        const std::complex<double> want = permanent_naive(m);
        const int a = static_cast<int>(rng() % 5);
        const int b = static_cast<int>(rng() % 5);
        m.row(a).swap(m.row(b));
        CHECK(rel_err(permanent_naive(m), want) < 1e-12);
        m.col(a).swap(m.col(b));
        CHECK(rel_err(permanent_naive(m), want) < 1e-12);
    }
}

TEST_CASE("submatrix repeats columns by input and rows by output") {
    ComplexMatrix u(3, 3);
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            u(i, j) = std::complex<double>(10 * (i + 1) + j + 1, 0);
        }
    }
    SUBCASE("worked two-photon case") {
        const ComplexMatrix sub = build_submatrix(u, FockState{1, 1, 0}, FockState{0, 0, 2});
        REQUIRE(sub.rows() == 2);
        CHECK(sub(0, 0) == u(2, 0));
        CHECK(sub(0, 1) == u(2, 1));
        CHECK(sub(1, 0) == u(2, 0));
        CHECK(sub(1, 1) == u(2, 1));
    }
    SUBCASE("single photons reproduce the matrix") {
        const ComplexMatrix sub = build_submatrix(u, FockState{1, 1, 1}, FockState{1, 1, 1});
        CHECK(sub == u);
    }
    SUBCASE("bunched input repeats a column") {
        ComplexMatrix v(2, 2);
        v << 1, 2, 3, 4;
        const ComplexMatrix sub = build_submatrix(v, FockState{2, 0}, FockState{1, 1});
        CHECK(sub(0, 0) == v(0, 0));
        CHECK(sub(0, 1) == v(0, 0));
        CHECK(sub(1, 0) == v(1, 0));
        CHECK(sub(1, 1) == v(1, 0));
    }
    SUBCASE("photon count mismatch is rejected") {
        CHECK_THROWS_AS(build_submatrix(u, FockState{1, 1, 0}, FockState{1, 1, 1}), ArgumentError);
    }
}

TEST_CASE("worked amplitude: two photons bunching into the third mode") {
    for (int trial = 0; trial < 10; ++trial) {
        const UnitaryMatrix u = haar_random_unitary(3, 42 + static_cast<std::uint64_t>(trial));
        const std::complex<double> got = amplitude_oracle(u, FockState{1, 1, 0}, FockState{0, 0, 2});
        const std::complex<double> want = std::sqrt(2.0) * u(2, 0) * u(2, 1);
        CHECK(std::abs(got - want) < 1e-12);
    }
}

TEST_CASE("identity maps every state to itself") {
    const ComplexMatrix id = ComplexMatrix::Identity(4, 4);
    const FockState s{2, 0, 1, 1};
    CHECK(std::abs(amplitude_oracle(id, s, s) - std::complex<double>(1, 0)) < 1e-12);
}

TEST_CASE("balanced beamsplitter shows the two-photon interference dip") {
    ComplexMatrix bs(2, 2);
    const double r = 1.0 / std::sqrt(2.0);
    bs << r, r, r, -r;
    const std::complex<double> amp = amplitude_oracle(bs, FockState{1, 1}, FockState{1, 1});
    CHECK(std::abs(amp) < 1e-12);
}

TEST_CASE("conjugate-transpose identity") {
    const UnitaryMatrix u = haar_random_unitary(4, 99);
    const UnitaryMatrix ud = u.conjugate_transpose();
    const FockBasis layer = FockBasis::build(4, 3);
    for (std::uint64_t i = 0; i < layer.size(); i += 3) {
        for (std::uint64_t j = 0; j < layer.size(); j += 4) {
            const FockState s = layer.state_at(i);
            const FockState t = layer.state_at(j);
            const std::complex<double> a = amplitude_oracle(u, s, t);
            const std::complex<double> b = std::conj(amplitude_oracle(ud, t, s));
            CHECK(std::abs(a - b) < 1e-10);
        }
    }
}

TEST_CASE("oracle amplitudes are normalized over the output layer") {
    for (int m = 2; m <= 5; ++m) {
        for (int n = 1; n <= 3; ++n) {
            const UnitaryMatrix u = haar_random_unitary(m, 7 * static_cast<std::uint64_t>(m) + static_cast<std::uint64_t>(n));
            const FockBasis layer = FockBasis::build(m, n);
            std::vector<int> occ(static_cast<std::size_t>(m), 0);
            occ[0] = n - n / 2;
            occ[static_cast<std::size_t>(m - 1)] = n / 2;
            const FockState input(occ);
            double total = 0;
            for (std::uint64_t i = 0; i < layer.size(); ++i) {
                total += std::norm(amplitude_oracle(u, input, layer.state_at(i)));
            }
            CHECK(total == doctest::Approx(1.0).epsilon(1e-10));
        }
    }
}

TEST_CASE("vacuum to vacuum amplitude is 1") {
    const UnitaryMatrix u = haar_random_unitary(3, 5);
    CHECK(amplitude_oracle(u, FockState::vacuum(3), FockState::vacuum(3)) == std::complex<double>(1, 0));
}
