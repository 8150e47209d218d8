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

#ifndef FOCKFLOW_IO_HPP
#define FOCKFLOW_IO_HPP

#include <filesystem>
#include <iosfwd>
#include <string>

#include "fockflow/engine.hpp"
#include "fockflow/mask.hpp"
#include "fockflow/unitary.hpp"

namespace fockflow {

enum class OutputFormat { jsonl, csv };

OutputFormat parse_output_format(const std::string &name);

/// Unitary file format: {"m": int, "matrix": [[[re, im], ...], ...]},
/// row-major.
UnitaryMatrix load_unitary(const std::filesystem::path &path, bool validate = true,
                           double tolerance = UnitaryMatrix::kDefaultTolerance);
void write_unitary(const UnitaryMatrix &u, std::ostream &out);

/// "1,0,2" -> |1,0,2>.
FockState parse_state(const std::string &text);

/// "1,1,*,*" -> per-mode bounds with '*' mapped to the total photon count.
std::vector<int> parse_mask_pattern(const std::string &text, int photons);

/// One record per state in canonical order:
///   jsonl: {"state": [s1,...,sm], "re": x, "im": y, "prob": p}
///   csv:   header state,re,im,prob with space-separated occupations
void write_distribution(const Distribution &d, std::ostream &out, OutputFormat format, double min_prob = 0.0);

/// One record per (input, output) pair, inputs outermost.
void write_amplitude_table(const RestrictedResult &r, std::ostream &out, OutputFormat format);

void write_samples(const std::vector<FockState> &samples, std::ostream &out, OutputFormat format);

/// File names used by `precompute` / `--use-precomputed`.
std::filesystem::path basis_file_name(int modes, int photons);
std::filesystem::path index_map_file_name(int modes, int photons);

void save_layer_structures(const LayerStructures &ls, const std::filesystem::path &dir);

/// Loads layers 0..photons, validating counts and rank ranges against each
/// other.
LayerStructures load_layer_structures(const std::filesystem::path &dir, int modes, int photons);

} // namespace fockflow

#endif
