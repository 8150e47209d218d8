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

#ifndef FOCKFLOW_PERMANENT_HPP
#define FOCKFLOW_PERMANENT_HPP

#include <complex>

#include "fockflow/fock_state.hpp"
#include "fockflow/unitary.hpp"

namespace fockflow {

/// Permanent by direct enumeration of all n! permutations. Guarded to
/// n <= 10; the reference oracle for everything else in this library.
std::complex<double> permanent_naive(const ComplexMatrix &m);

/// Ryser inclusion-exclusion over column subsets, visited in Gray-code order
/// so each step touches a single row-sum update. O(n 2^n). Counts its complex
/// multiplications in the global op counter.
std::complex<double> permanent_ryser(const ComplexMatrix &m);

/// Glynn formula over delta in {+-1}^n with the 2^(n-1) symmetry factor,
/// Gray-code ordered. O(n 2^n). Counts its complex multiplications in the
/// global op counter.
std::complex<double> permanent_glynn(const ComplexMatrix &m);

/// U_{|s>,|t>}: column j of `u` repeated s_j times and row i repeated t_i
/// times, both in mode order. `s` and `t` must hold the same photon count.
ComplexMatrix build_submatrix(const ComplexMatrix &u, const FockState &s, const FockState &t);

enum class PermanentAlgorithm { naive, ryser, glynn };

/// <t|U|s> = Perm(U_{|s>,|t>}) / sqrt(prod s_i! prod t_i!). The permanent
/// route, independent of the layered engine; used to cross-validate it.
std::complex<double> amplitude_oracle(
    const ComplexMatrix &u, const FockState &s, const FockState &t,
    PermanentAlgorithm algorithm = PermanentAlgorithm::ryser);

std::complex<double> amplitude_oracle(
    const UnitaryMatrix &u, const FockState &s, const FockState &t,
    PermanentAlgorithm algorithm = PermanentAlgorithm::ryser);

} // namespace fockflow

#endif
