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

#ifndef FOCKFLOW_SERIALIZE_HPP
#define FOCKFLOW_SERIALIZE_HPP

#include <filesystem>
#include <iosfwd>

#include "fockflow/fock_basis.hpp"
#include "fockflow/index_map.hpp"

namespace fockflow {

// Binary layout (all integers little-endian):
//   basis file:      magic "FSA1", version u16, m u16, k u16, width u8,
//                    count u64, then count records of k width-byte photon
//                    positions.
//   index map file:  magic "FSM1", version u16, m u16, k u16, parent_width
//                    u8, count u64, then count*k ranks of parent_width bytes
//                    (unused slots all 0xFF).
// Serialization is bit-deterministic: equal structures produce equal bytes.

inline constexpr std::uint16_t kSerialVersion = 1;

void serialize_basis(const FockBasis &basis, std::ostream &out);
FockBasis deserialize_basis(std::istream &in);

void serialize_index_map(const FockIndexMap &map, std::ostream &out);
FockIndexMap deserialize_index_map(std::istream &in);

void save_basis(const FockBasis &basis, const std::filesystem::path &path);
FockBasis load_basis(const std::filesystem::path &path);
void save_index_map(const FockIndexMap &map, const std::filesystem::path &path);
FockIndexMap load_index_map(const std::filesystem::path &path);

} // namespace fockflow

#endif
