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

#include "fockflow/unitary.hpp"

#include <cstring>
#include <random>

#include "fockflow/errors.hpp"

namespace fockflow {

namespace {

std::uint64_t hash_matrix(const ComplexMatrix &u) {
    // FNV-1a over the raw entry bytes plus the dimension.
    std::uint64_t h = 1469598103934665603ull;
    auto mix = [&h](const void *data, std::size_t size) {
        const auto *p = static_cast<const unsigned char *>(data);
        for (std::size_t i = 0; i < size; ++i) {
            h ^= p[i];
            h *= 1099511628211ull;
        }
    };
    const std::int64_t rows = u.rows();
    mix(&rows, sizeof(rows));
    mix(u.data(), sizeof(std::complex<double>) * static_cast<std::size_t>(u.size()));
    return h;
}

} // namespace

UnitaryMatrix::UnitaryMatrix(ComplexMatrix u, bool validate, double tolerance)
    : u_(std::move(u)), validated_(validate), fingerprint_(0) {
    if (u_.rows() < 1 || u_.rows() != u_.cols()) {
        throw ArgumentError("unitary matrix must be square and non-empty");
    }
    fingerprint_ = hash_matrix(u_);
    if (validate) {
        const double dev = max_unitarity_deviation();
        if (!(dev <= tolerance)) {
            throw ValidationError("matrix is not unitary within tolerance");
        }
    }
}

double UnitaryMatrix::max_unitarity_deviation() const {
    ComplexMatrix g = u_ * u_.adjoint();
    g -= ComplexMatrix::Identity(u_.rows(), u_.cols());
    return g.cwiseAbs().maxCoeff();
}

UnitaryMatrix UnitaryMatrix::conjugate_transpose() const {
    return UnitaryMatrix(u_.adjoint(), validated_);
}

UnitaryMatrix haar_random_unitary(int modes, std::uint64_t seed) {
    if (modes < 1) {
        throw ArgumentError("mode count must be at least 1");
    }
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    ComplexMatrix a(modes, modes);
    for (int i = 0; i < modes; ++i) {
        for (int j = 0; j < modes; ++j) {
            const double re = gauss(rng);
            const double im = gauss(rng);
            a(i, j) = std::complex<double>(re, im);
        }
    }
    Eigen::HouseholderQR<ComplexMatrix> qr(a);
    ComplexMatrix q = qr.householderQ();
    ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    // Fold R's diagonal phases into Q so the distribution is exactly Haar.
    for (int j = 0; j < modes; ++j) {
        const std::complex<double> d = r(j, j);
        const double mag = std::abs(d);
        const std::complex<double> phase = mag > 0 ? d / mag : std::complex<double>(1, 0);
        q.col(j) *= phase;
    }
    return UnitaryMatrix(std::move(q), true, 1e-12);
}

} // namespace fockflow
