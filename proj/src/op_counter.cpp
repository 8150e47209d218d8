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

#include "fockflow/op_counter.hpp"

#include <atomic>

namespace fockflow {

namespace {
std::atomic<std::uint64_t> g_ops{0};
}

std::uint64_t op_count() {
    return g_ops.load(std::memory_order_relaxed);
}

void reset_op_count() {
    g_ops.store(0, std::memory_order_relaxed);
}

void add_op_count(std::uint64_t n) {
    g_ops.fetch_add(n, std::memory_order_relaxed);
}

} // namespace fockflow
