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

#include "fockflow/permanent.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <vector>

#include "fockflow/errors.hpp"
#include "fockflow/op_counter.hpp"

namespace fockflow {

namespace {

using Complex = std::complex<double>;

void require_square(const ComplexMatrix &m) {
    if (m.rows() != m.cols()) {
        throw ArgumentError("permanent requires a square matrix");
    }
}

// 2^n subset walks become meaningless long before this bound is hit.
constexpr int kSubsetGuard = 32;

} // namespace

std::complex<double> permanent_naive(const ComplexMatrix &m) {
    require_square(m);
    const int n = static_cast<int>(m.rows());
    if (n > 10) {
        throw ArgumentError("naive permanent is guarded to n <= 10");
    }
    if (n == 0) {
        return {1.0, 0.0};
    }
    std::vector<int> cols(static_cast<std::size_t>(n));
    std::iota(cols.begin(), cols.end(), 0);
    Complex sum{0.0, 0.0};
    do {
        Complex prod{1.0, 0.0};
        for (int i = 0; i < n; ++i) {
            prod *= m(i, cols[static_cast<std::size_t>(i)]);
        }
        sum += prod;
    } while (std::next_permutation(cols.begin(), cols.end()));
    return sum;
}

std::complex<double> permanent_ryser(const ComplexMatrix &m) {
    require_square(m);
    const int n = static_cast<int>(m.rows());
    if (n == 0) {
        return {1.0, 0.0};
    }
    if (n > kSubsetGuard) {
        throw ArgumentError("matrix too large for a 2^n subset walk");
    }
    std::vector<Complex> row_sums(static_cast<std::size_t>(n), Complex{0.0, 0.0});
    Complex sum{0.0, 0.0};
    std::uint64_t mults = 0;
    const std::uint64_t end = std::uint64_t{1} << n;
    int subset_size = 0;
    for (std::uint64_t t = 1; t < end; ++t) {
        const int flipped = std::countr_zero(t);
        const std::uint64_t gray = t ^ (t >> 1);
        if (gray & (std::uint64_t{1} << flipped)) {
            for (int i = 0; i < n; ++i) {
                row_sums[static_cast<std::size_t>(i)] += m(i, flipped);
            }
            ++subset_size;
        } else {
            for (int i = 0; i < n; ++i) {
                row_sums[static_cast<std::size_t>(i)] -= m(i, flipped);
            }
            --subset_size;
        }
        Complex prod = row_sums[0];
        for (int i = 1; i < n; ++i) {
            prod *= row_sums[static_cast<std::size_t>(i)];
            ++mults;
        }
        if ((n - subset_size) & 1) {
            sum -= prod;
        } else {
            sum += prod;
        }
    }
    add_op_count(mults);
    return sum;
}

std::complex<double> permanent_glynn(const ComplexMatrix &m) {
    require_square(m);
    const int n = static_cast<int>(m.rows());
    if (n == 0) {
        return {1.0, 0.0};
    }
    if (n > kSubsetGuard) {
        throw ArgumentError("matrix too large for a 2^n subset walk");
    }
    // delta_0 is pinned to +1; Gray-walk the remaining n-1 signs.
    std::vector<Complex> col_sums(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) {
        Complex c{0.0, 0.0};
        for (int i = 0; i < n; ++i) {
            c += m(i, j);
        }
        col_sums[static_cast<std::size_t>(j)] = c;
    }
    Complex sum{0.0, 0.0};
    std::uint64_t mults = 0;
    int minus_signs = 0;
    const std::uint64_t end = std::uint64_t{1} << (n - 1);
    for (std::uint64_t t = 0; t < end; ++t) {
        if (t > 0) {
            const int flipped = std::countr_zero(t);
            const std::uint64_t gray = t ^ (t >> 1);
            const int row = flipped + 1;
            const double sign = (gray & (std::uint64_t{1} << flipped)) ? -2.0 : 2.0;
            for (int j = 0; j < n; ++j) {
                col_sums[static_cast<std::size_t>(j)] += sign * m(row, j);
            }
            minus_signs += (gray & (std::uint64_t{1} << flipped)) ? 1 : -1;
        }
        Complex prod = col_sums[0];
        for (int j = 1; j < n; ++j) {
            prod *= col_sums[static_cast<std::size_t>(j)];
            ++mults;
        }
        if (minus_signs & 1) {
            sum -= prod;
        } else {
            sum += prod;
        }
    }
    add_op_count(mults);
    const double scale = std::ldexp(1.0, -(n - 1)); // 2^-(n-1)
    return sum * scale;
}

ComplexMatrix build_submatrix(const ComplexMatrix &u, const FockState &s, const FockState &t) {
    if (s.modes() != static_cast<int>(u.rows()) || t.modes() != static_cast<int>(u.rows())) {
        throw ArgumentError("state mode counts must match the matrix dimension");
    }
    const int n = s.photons();
    if (t.photons() != n) {
        throw ArgumentError("input and output photon counts differ");
    }
    const PhotonSequence cols = state_to_sequence(s);
    const PhotonSequence rows = state_to_sequence(t);
    ComplexMatrix out(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            out(i, j) = u(rows.positions[static_cast<std::size_t>(i)],
                          cols.positions[static_cast<std::size_t>(j)]);
        }
    }
    return out;
}

namespace {

double factorial_product(const FockState &s) {
    double prod = 1.0;
    for (int occ : s.occupations) {
        for (int i = 2; i <= occ; ++i) {
            prod *= i;
        }
    }
    return prod;
}

} // namespace

std::complex<double> amplitude_oracle(
    const ComplexMatrix &u, const FockState &s, const FockState &t, PermanentAlgorithm algorithm) {
    const ComplexMatrix sub = build_submatrix(u, s, t);
    Complex perm;
    switch (algorithm) {
        case PermanentAlgorithm::naive:
            perm = permanent_naive(sub);
            break;
        case PermanentAlgorithm::glynn:
            perm = permanent_glynn(sub);
            break;
        case PermanentAlgorithm::ryser:
        default:
            perm = permanent_ryser(sub);
            break;
    }
    return perm / std::sqrt(factorial_product(s) * factorial_product(t));
}

std::complex<double> amplitude_oracle(
    const UnitaryMatrix &u, const FockState &s, const FockState &t, PermanentAlgorithm algorithm) {
    return amplitude_oracle(u.matrix(), s, t, algorithm);
}

} // namespace fockflow
