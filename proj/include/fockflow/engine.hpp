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

#ifndef FOCKFLOW_ENGINE_HPP
#define FOCKFLOW_ENGINE_HPP

#include <complex>
#include <cstdint>
#include <memory>
#include <optional>
#include <variant>
#include <vector>

#include "fockflow/amplitude_store.hpp"
#include "fockflow/fock_basis.hpp"
#include "fockflow/index_map.hpp"
#include "fockflow/mask.hpp"
#include "fockflow/unitary.hpp"

namespace fockflow {

/// Amplitudes over a set of output states, with probabilities as their
/// squared moduli. Dense results share the layer basis; restricted results
/// carry their states explicitly. States are in canonical order either way.
class Distribution {
  public:
    static Distribution dense(std::shared_ptr<const FockBasis> basis, std::vector<std::complex<double>> amplitudes);
    static Distribution sparse(int modes, int photons, std::vector<FockState> states,
                               std::vector<std::complex<double>> amplitudes);

    int modes() const { return modes_; }
    int photons() const { return photons_; }
    std::size_t size() const { return amplitudes_.size(); }

    FockState state_at(std::size_t i) const;
    std::complex<double> amplitude_at(std::size_t i) const { return amplitudes_[i]; }
    double probability_at(std::size_t i) const { return std::norm(amplitudes_[i]); }
    double total_probability() const;

    std::optional<std::size_t> find(const FockState &s) const;

    const std::vector<std::complex<double>> &amplitudes() const { return amplitudes_; }

  private:
    int modes_ = 0;
    int photons_ = 0;
    std::shared_ptr<const FockBasis> basis_;  // dense storage
    std::vector<FockState> states_;           // sparse storage
    std::vector<std::complex<double>> amplitudes_;
};

/// Per-layer bases and child-to-parent maps for one (m, n) configuration,
/// optionally mask-restricted. Immutable and shareable between runs.
struct LayerStructures {
    int modes = 0;
    int photons = 0;
    std::vector<std::shared_ptr<const FockBasis>> bases;    // index 0..photons
    std::vector<std::shared_ptr<const FockIndexMap>> maps;  // index 1..photons, [0] empty

    static LayerStructures build(int modes, int photons, const MaskSet *mask = nullptr);
};

struct FullOptions {
    /// Keep the unit-norm intermediate layers in the result. When false the
    /// computation rolls over two layer buffers and returns only the final
    /// distribution.
    bool keep_layers = true;
    /// Worker count for partitioning each layer by child-rank ranges.
    /// Results are bitwise identical for any value.
    int threads = 1;
    /// Photon insertion order; any permutation of the input's photon
    /// positions. Empty selects nondecreasing mode order.
    std::vector<int> photon_order;
    /// Reuse prebuilt (possibly deserialized) layer structures.
    const LayerStructures *structures = nullptr;
};

struct FullResult {
    Distribution distribution;
    /// Layers 0..n-1 when keep_layers is set.
    std::vector<Distribution> layers;
};

/// Full output distribution of one input: layer-by-layer gather recurrence
/// over the index maps, one complex multiplication per (child, occupied
/// mode) term, n*M_n in total.
FullResult full_distribution(const FockState &input, const UnitaryMatrix &u, const FullOptions &options = {});

/// Output selection for restricted queries: an explicit state list or a mask
/// set whose layer-n states are enumerated on demand.
class OutputSpec {
  public:
    static OutputSpec states(std::vector<FockState> list);
    static OutputSpec mask(MaskSet masks);

    /// Output states at the n-photon layer, canonical order, deduplicated.
    std::vector<FockState> resolve(int modes, int photons) const;

  private:
    OutputSpec() = default;
    std::optional<std::vector<FockState>> states_;
    std::optional<MaskSet> masks_;
};

struct RestrictedOptions {
    /// Shared memo store; coefficients already present are never recomputed.
    AmplitudeStore *store = nullptr;
    /// For single-input/single-output queries whose input repeats more than
    /// the output: compute conj(<s|U^dag|t>) instead, which visits fewer
    /// intermediate states.
    bool allow_conjugate_transpose = false;
};

/// Precomputed calculation path of a restricted query: the factored input
/// schedule plus the per-layer downward closure of the outputs with their
/// gather terms. Depends only on the inputs, outputs and mode count, not on
/// the matrix, so it can be built once and reused across unitaries.
class RestrictedPlan {
  public:
    struct Data; // opaque, defined by the engine

    static RestrictedPlan build(const std::vector<FockState> &inputs, const OutputSpec &outputs, int modes);
    ~RestrictedPlan();
    RestrictedPlan(RestrictedPlan &&) noexcept;
    RestrictedPlan &operator=(RestrictedPlan &&) noexcept;

    int modes() const;
    int photons() const;
    const Data &data() const { return *data_; }

  private:
    RestrictedPlan();
    std::unique_ptr<const Data> data_;
};

struct RestrictedResult {
    std::vector<FockState> inputs;   // caller order, deduplicated
    std::vector<FockState> outputs;  // canonical order, deduplicated
    std::vector<std::complex<double>> table;  // row-major inputs x outputs
    /// Number of intermediate states visited per layer 0..n.
    std::vector<std::uint64_t> layer_state_counts;

    std::complex<double> at(std::size_t input, std::size_t output) const {
        return table[input * outputs.size() + output];
    }
};

/// Amplitudes of every (input, output) pair: builds the factored input
/// schedule, walks only the downward closure of the outputs at each layer,
/// and memoizes every coefficient.
RestrictedResult restricted_amplitudes(const std::vector<FockState> &inputs, const OutputSpec &outputs,
                                       const UnitaryMatrix &u, const RestrictedOptions &options = {});

/// Same computation over a prebuilt calculation path. The
/// conjugate-transpose shortcut does not apply here (the plan is fixed).
RestrictedResult restricted_amplitudes(const RestrictedPlan &plan, const UnitaryMatrix &u,
                                       const RestrictedOptions &options = {});

/// Layer-set selection for hybrid simulation.
class SelectPolicy {
  public:
    struct Threshold {
        double eta;
    };
    struct Restricted {
        OutputSpec outputs;
    };
    struct SampleChain {
        std::uint64_t seed;
    };

    /// Per layer, pop computed states in descending probability until their
    /// cumulative probability strictly exceeds eta, then continue with their
    /// children. When interference leaks mass below eta, the per-layer
    /// threshold widens automatically until the final selection exceeds eta.
    /// eta = 1 keeps whole layers; eta = 0 keeps the single most probable
    /// state.
    static SelectPolicy threshold(double eta);
    static SelectPolicy restricted(OutputSpec outputs);
    static SelectPolicy restricted(MaskSet masks);
    static SelectPolicy restricted(std::vector<FockState> states);
    /// One weak-simulation chain walk; the result holds the sampled state
    /// and its exact amplitude.
    static SelectPolicy sample_chain(std::uint64_t seed);

    const std::variant<Threshold, Restricted, SampleChain> &variant() const { return v_; }

  private:
    explicit SelectPolicy(std::variant<Threshold, Restricted, SampleChain> v) : v_(std::move(v)) {}
    std::variant<Threshold, Restricted, SampleChain> v_;
};

/// Hybrid strong/weak simulation of one input under a selection policy.
/// Coefficients already flagged in the shared store are not recomputed;
/// missing parents are filled recursively.
Distribution hybrid_distribution(const FockState &input, const UnitaryMatrix &u, const SelectPolicy &policy,
                                 AmplitudeStore *store = nullptr);

/// Weak simulation: `count` exact samples from the output distribution.
/// Each sample draws a fresh uniformly random photon order (seeded from
/// `seed` and the sample index) and walks the layer chain, choosing mode j
/// with probability proportional to (t_j + 1) |<t + e_j|U|s^(k+1)>|^2.
std::vector<FockState> sample_outputs(const FockState &input, const UnitaryMatrix &u, std::size_t count,
                                      std::uint64_t seed);

} // namespace fockflow

#endif
