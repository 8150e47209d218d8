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

#ifndef FOCKFLOW_OP_COUNTER_HPP
#define FOCKFLOW_OP_COUNTER_HPP

#include <cstdint>

namespace fockflow {

// Process-wide tally of complex multiplications. The engine and the
// reference permanent algorithms count each complex multiply in their inner
// recurrences exactly once; callers batch increments so the counter stays
// exact under the engine's partitioned layer computation.

std::uint64_t op_count();
void reset_op_count();
void add_op_count(std::uint64_t n);

} // namespace fockflow

#endif
