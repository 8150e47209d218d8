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

#ifndef FOCKFLOW_UNITARY_HPP
#define FOCKFLOW_UNITARY_HPP

#include <Eigen/Dense>
#include <complex>
#include <cstdint>

namespace fockflow {

using ComplexMatrix = Eigen::MatrixXcd;

/// m x m transformation of the creation operators. Validated against
/// ||U U^dag - I||_max at construction unless explicitly disabled (for
/// deliberately lossy matrices).
class UnitaryMatrix {
  public:
    static constexpr double kDefaultTolerance = 1e-8;

    explicit UnitaryMatrix(ComplexMatrix u, bool validate = true, double tolerance = kDefaultTolerance);

    int modes() const { return static_cast<int>(u_.rows()); }
    const ComplexMatrix &matrix() const { return u_; }
    std::complex<double> operator()(int row, int col) const { return u_(row, col); }

    bool validated() const { return validated_; }
    double max_unitarity_deviation() const;

    /// U^dag; inherits this matrix's validation setting.
    UnitaryMatrix conjugate_transpose() const;

    /// Hash of the raw entries, used to guard memo stores against reuse with
    /// a different matrix.
    std::uint64_t fingerprint() const { return fingerprint_; }

  private:
    ComplexMatrix u_;
    bool validated_;
    std::uint64_t fingerprint_;
};

/// Haar-distributed random unitary: QR of a complex Gaussian matrix with the
/// phases of R's diagonal folded into Q. Deterministic per seed.
UnitaryMatrix haar_random_unitary(int modes, std::uint64_t seed);

} // namespace fockflow

#endif
