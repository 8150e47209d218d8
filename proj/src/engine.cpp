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

#include "fockflow/engine.hpp"

#include <algorithm>
#include <cmath>
#include <thread>
#include <unordered_set>

#include "fockflow/counting.hpp"
#include "fockflow/errors.hpp"
#include "fockflow/op_counter.hpp"
#include "fockflow/schedule.hpp"

namespace fockflow {

namespace {

using Complex = std::complex<double>;
using Enc = std::vector<std::uint16_t>;

Enc enc_of(const FockState &s) {
    Enc e;
    e.reserve(static_cast<std::size_t>(s.photons()));
    for (int mode = 0; mode < s.modes(); ++mode) {
        for (int c = 0; c < s.occupations[static_cast<std::size_t>(mode)]; ++c) {
            e.push_back(static_cast<std::uint16_t>(mode));
        }
    }
    return e;
}

FockState state_of(int modes, const Enc &e) {
    std::vector<int> occ(static_cast<std::size_t>(modes), 0);
    for (std::uint16_t pos : e) {
        occ[pos] += 1;
    }
    return FockState(std::move(occ));
}

Enc with_inserted(const Enc &e, std::uint16_t mode) {
    Enc out;
    out.reserve(e.size() + 1);
    auto it = std::upper_bound(e.begin(), e.end(), mode);
    out.insert(out.end(), e.begin(), it);
    out.push_back(mode);
    out.insert(out.end(), it, e.end());
    return out;
}

Enc with_erased(const Enc &e, std::size_t index) {
    Enc out;
    out.reserve(e.size() - 1);
    out.insert(out.end(), e.begin(), e.begin() + static_cast<std::ptrdiff_t>(index));
    out.insert(out.end(), e.begin() + static_cast<std::ptrdiff_t>(index) + 1, e.end());
    return out;
}

void with_erased_into(const Enc &e, std::size_t index, Enc &out) {
    out.clear();
    out.insert(out.end(), e.begin(), e.begin() + static_cast<std::ptrdiff_t>(index));
    out.insert(out.end(), e.begin() + static_cast<std::ptrdiff_t>(index) + 1, e.end());
}

int occupancy_of(const Enc &e, std::uint16_t mode) {
    auto [lo, hi] = std::equal_range(e.begin(), e.end(), mode);
    return static_cast<int>(hi - lo);
}

struct EncHash {
    std::size_t operator()(const Enc &e) const {
        std::uint64_t h = 1469598103934665603ull;
        for (std::uint16_t v : e) {
            h ^= v;
            h *= 1099511628211ull;
        }
        return static_cast<std::size_t>(h);
    }
};

/// Distinct parents of each encoding in `children`, sorted and deduplicated.
std::vector<Enc> parent_closure(const std::vector<Enc> &children) {
    std::unordered_set<Enc, EncHash> seen;
    seen.reserve(children.size());
    Enc scratch;
    std::vector<Enc> parents;
    for (const Enc &e : children) {
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (i > 0 && e[i] == e[i - 1]) {
                continue;
            }
            with_erased_into(e, i, scratch);
            if (seen.insert(scratch).second) {
                parents.push_back(scratch);
            }
        }
    }
    std::sort(parents.begin(), parents.end());
    return parents;
}

void validate_state_for(const UnitaryMatrix &u, const FockState &s) {
    if (s.modes() != u.modes()) {
        throw ArgumentError("state mode count does not match the matrix");
    }
}

} // namespace

// ---------------------------------------------------------------------------
// Distribution

Distribution Distribution::dense(std::shared_ptr<const FockBasis> basis, std::vector<Complex> amplitudes) {
    if (!basis || basis->size() != amplitudes.size()) {
        throw ArgumentError("amplitude count does not match the basis");
    }
    Distribution d;
    d.modes_ = basis->modes();
    d.photons_ = basis->photons();
    d.basis_ = std::move(basis);
    d.amplitudes_ = std::move(amplitudes);
    return d;
}

Distribution Distribution::sparse(int modes, int photons, std::vector<FockState> states,
                                  std::vector<Complex> amplitudes) {
    if (states.size() != amplitudes.size()) {
        throw ArgumentError("amplitude count does not match the state list");
    }
    Distribution d;
    d.modes_ = modes;
    d.photons_ = photons;
    d.states_ = std::move(states);
    d.amplitudes_ = std::move(amplitudes);
    return d;
}

FockState Distribution::state_at(std::size_t i) const {
    if (basis_) {
        return basis_->state_at(i);
    }
    return states_[i];
}

double Distribution::total_probability() const {
    double total = 0;
    for (const Complex &a : amplitudes_) {
        total += std::norm(a);
    }
    return total;
}

std::optional<std::size_t> Distribution::find(const FockState &s) const {
    if (basis_) {
        try {
            return basis_->rank(s);
        } catch (const NotFoundError &) {
            return std::nullopt;
        }
    }
    auto it = std::lower_bound(states_.begin(), states_.end(), s, canonical_less);
    if (it == states_.end() || !(*it == s)) {
        return std::nullopt;
    }
    return static_cast<std::size_t>(it - states_.begin());
}

// ---------------------------------------------------------------------------
// LayerStructures

LayerStructures LayerStructures::build(int modes, int photons, const MaskSet *mask) {
    LayerStructures ls;
    ls.modes = modes;
    ls.photons = photons;
    ls.bases.resize(static_cast<std::size_t>(photons) + 1);
    ls.maps.resize(static_cast<std::size_t>(photons) + 1);
    for (int k = 0; k <= photons; ++k) {
        ls.bases[static_cast<std::size_t>(k)] =
            std::make_shared<FockBasis>(FockBasis::build(modes, k, mask));
        if (k > 0) {
            ls.maps[static_cast<std::size_t>(k)] = std::make_shared<FockIndexMap>(
                FockIndexMap::build(*ls.bases[static_cast<std::size_t>(k)],
                                    *ls.bases[static_cast<std::size_t>(k) - 1]));
        }
    }
    return ls;
}

// ---------------------------------------------------------------------------
// Full distribution

FullResult full_distribution(const FockState &input, const UnitaryMatrix &u, const FullOptions &options) {
    validate_state_for(u, input);
    const int m = u.modes();
    const int n = input.photons();

    std::vector<int> order = options.photon_order;
    if (order.empty()) {
        order = state_to_sequence(input).positions;
    } else {
        // Any permutation of the input's photon positions is a valid path.
        std::vector<int> sorted = order;
        std::sort(sorted.begin(), sorted.end());
        if (sorted != state_to_sequence(input).positions) {
            throw ArgumentError("photon order must be a permutation of the input's photon positions");
        }
    }

    LayerStructures local;
    const LayerStructures *ls = options.structures;
    if (ls != nullptr) {
        if (ls->modes != m || ls->photons < n) {
            throw ArgumentError("layer structures do not match this computation");
        }
        for (int k = 0; k <= n; ++k) {
            if (ls->bases[static_cast<std::size_t>(k)]->size() != count_states(m, k)) {
                throw ArgumentError("full distribution requires unmasked layer structures");
            }
        }
    } else {
        local = LayerStructures::build(m, n);
        ls = &local;
    }

    FullResult result;
    std::vector<Complex> prev{Complex{1.0, 0.0}};
    if (options.keep_layers && n > 0) {
        result.layers.push_back(Distribution::dense(ls->bases[0], prev));
    }

    std::vector<int> prefix_occ(static_cast<std::size_t>(m), 0);
    int threads = std::max(options.threads, 1);

    for (int k = 1; k <= n; ++k) {
        const int p = order[static_cast<std::size_t>(k) - 1];
        prefix_occ[static_cast<std::size_t>(p)] += 1;
        const double norm = 1.0 / std::sqrt(static_cast<double>(prefix_occ[static_cast<std::size_t>(p)]));

        const FockBasis &child = *ls->bases[static_cast<std::size_t>(k)];
        const FockIndexMap &imap = *ls->maps[static_cast<std::size_t>(k)];
        std::vector<Complex> column(static_cast<std::size_t>(m));
        for (int j = 0; j < m; ++j) {
            column[static_cast<std::size_t>(j)] = u(j, p);
        }

        std::vector<Complex> cur(child.size());
        auto worker = [&](std::uint64_t lo, std::uint64_t hi) {
            std::uint64_t mults = 0;
            for (std::uint64_t c = lo; c < hi; ++c) {
                auto enc = child.encoding_at(c);
                Complex acc{0.0, 0.0};
                int i = 0;
                while (i < k) {
                    const std::uint16_t mode = enc[static_cast<std::size_t>(i)];
                    int run = 1;
                    while (i + run < k && enc[static_cast<std::size_t>(i + run)] == mode) {
                        ++run;
                    }
                    const std::uint64_t parent = imap.slot_value(c, i);
                    acc += std::sqrt(static_cast<double>(run)) * (column[mode] * prev[parent]);
                    ++mults;
                    i += run;
                }
                cur[c] = norm * acc;
            }
            add_op_count(mults);
        };

        const std::uint64_t total = child.size();
        const int used = static_cast<int>(std::min<std::uint64_t>(static_cast<std::uint64_t>(threads), std::max<std::uint64_t>(total, 1)));
        if (used <= 1) {
            worker(0, total);
        } else {
            std::vector<std::thread> pool;
            pool.reserve(static_cast<std::size_t>(used));
            const std::uint64_t chunk = (total + static_cast<std::uint64_t>(used) - 1) / static_cast<std::uint64_t>(used);
            for (int w = 0; w < used; ++w) {
                const std::uint64_t lo = static_cast<std::uint64_t>(w) * chunk;
                const std::uint64_t hi = std::min(total, lo + chunk);
                pool.emplace_back(worker, lo, hi);
            }
            for (auto &t : pool) {
                t.join();
            }
        }

        if (options.keep_layers && k < n) {
            result.layers.push_back(Distribution::dense(ls->bases[static_cast<std::size_t>(k)], cur));
        }
        prev = std::move(cur);
    }

    result.distribution = Distribution::dense(ls->bases[static_cast<std::size_t>(n)], std::move(prev));
    return result;
}

// ---------------------------------------------------------------------------
// OutputSpec

OutputSpec OutputSpec::states(std::vector<FockState> list) {
    OutputSpec spec;
    spec.states_ = std::move(list);
    return spec;
}

OutputSpec OutputSpec::mask(MaskSet masks) {
    OutputSpec spec;
    spec.masks_ = std::move(masks);
    return spec;
}

namespace {

void enumerate_masked(const std::vector<int> &bounds, int mode, int remaining, std::vector<int> &occ,
                      std::vector<FockState> &out) {
    const int m = static_cast<int>(bounds.size());
    if (mode == m - 1) {
        if (remaining <= bounds[static_cast<std::size_t>(mode)]) {
            occ[static_cast<std::size_t>(mode)] = remaining;
            out.emplace_back(occ);
            occ[static_cast<std::size_t>(mode)] = 0;
        }
        return;
    }
    const int cap = std::min(bounds[static_cast<std::size_t>(mode)], remaining);
    for (int c = 0; c <= cap; ++c) {
        occ[static_cast<std::size_t>(mode)] = c;
        enumerate_masked(bounds, mode + 1, remaining - c, occ, out);
    }
    occ[static_cast<std::size_t>(mode)] = 0;
}

} // namespace

std::vector<FockState> OutputSpec::resolve(int modes, int photons) const {
    std::vector<FockState> out;
    if (states_) {
        for (const FockState &s : *states_) {
            if (s.modes() != modes) {
                throw ArgumentError("output state mode count mismatch");
            }
            if (s.photons() != photons) {
                throw ArgumentError("output state photon count mismatch");
            }
        }
        out = *states_;
    } else {
        if (masks_->modes() != modes) {
            throw ArgumentError("mask mode count mismatch");
        }
        std::vector<int> occ(static_cast<std::size_t>(modes), 0);
        for (const auto &bounds : masks_->masks()) {
            enumerate_masked(bounds, 0, photons, occ, out);
        }
    }
    std::sort(out.begin(), out.end(), canonical_less);
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

// ---------------------------------------------------------------------------
// Restricted amplitudes (factored schedule over masked layer sets)

namespace {

// Gather structure of one layer set: for every child encoding, the positions
// of its parents within the previous layer's set, with the sqrt(t_j)
// multiplier and mode index baked in.
struct GatherTerm {
    std::uint32_t parent_position; // index into the previous layer's set
    double weight;                 // sqrt of the child's occupancy at `mode`
    std::uint16_t mode;
};

struct LayerPlan {
    std::vector<Enc> set;                       // sorted encodings
    std::vector<std::uint64_t> ranks;           // combinatorial rank per entry
    std::vector<std::vector<GatherTerm>> terms; // per entry: one term per occupied mode
};

std::vector<LayerPlan> build_layer_plans(const std::vector<FockState> &outputs, int photons,
                                         const SequenceRanker &ranker) {
    std::vector<LayerPlan> plans(static_cast<std::size_t>(photons) + 1);
    auto &top = plans[static_cast<std::size_t>(photons)];
    for (const FockState &o : outputs) {
        top.set.push_back(enc_of(o));
    }
    std::sort(top.set.begin(), top.set.end());
    for (int k = photons; k >= 1; --k) {
        plans[static_cast<std::size_t>(k) - 1].set = parent_closure(plans[static_cast<std::size_t>(k)].set);
    }
    for (int k = 0; k <= photons; ++k) {
        auto &plan = plans[static_cast<std::size_t>(k)];
        plan.ranks.reserve(plan.set.size());
        for (const Enc &e : plan.set) {
            plan.ranks.push_back(ranker.rank(e));
        }
        if (k == 0) {
            continue;
        }
        const auto &parents = plans[static_cast<std::size_t>(k) - 1];
        std::unordered_map<Enc, std::uint32_t, EncHash> parent_position;
        parent_position.reserve(parents.set.size());
        for (std::size_t pi = 0; pi < parents.set.size(); ++pi) {
            parent_position.emplace(parents.set[pi], static_cast<std::uint32_t>(pi));
        }
        plan.terms.resize(plan.set.size());
        Enc scratch;
        for (std::size_t ti = 0; ti < plan.set.size(); ++ti) {
            const Enc &e = plan.set[ti];
            auto &terms = plan.terms[ti];
            for (std::size_t i = 0; i < e.size(); ++i) {
                if (i > 0 && e[i] == e[i - 1]) {
                    continue;
                }
                with_erased_into(e, i, scratch);
                auto it = parent_position.find(scratch);
                if (it == parent_position.end()) {
                    throw StructuralError("layer closure is missing a parent state");
                }
                terms.push_back({it->second,
                                 std::sqrt(static_cast<double>(occupancy_of(e, e[i]))),
                                 e[i]});
            }
        }
    }
    return plans;
}

} // namespace

struct RestrictedPlan::Data {
    int modes;
    int photons;
    std::vector<FockState> inputs;   // caller order, deduplicated
    std::vector<FockState> outputs;  // canonical order
    InputSchedule schedule;
    SequenceRanker ranker;
    std::vector<LayerPlan> plans;
};

RestrictedPlan::RestrictedPlan() = default;
RestrictedPlan::~RestrictedPlan() = default;
RestrictedPlan::RestrictedPlan(RestrictedPlan &&) noexcept = default;
RestrictedPlan &RestrictedPlan::operator=(RestrictedPlan &&) noexcept = default;

int RestrictedPlan::modes() const {
    return data_->modes;
}

int RestrictedPlan::photons() const {
    return data_->photons;
}

RestrictedPlan RestrictedPlan::build(const std::vector<FockState> &inputs, const OutputSpec &outputs,
                                     int modes) {
    if (inputs.empty()) {
        throw ArgumentError("input set must not be empty");
    }
    for (const FockState &s : inputs) {
        if (s.modes() != modes) {
            throw ArgumentError("input mode count does not match the plan");
        }
        if (s.photons() != inputs.front().photons()) {
            throw ArgumentError("all inputs must share the photon count");
        }
    }
    const int n = inputs.front().photons();

    std::vector<FockState> input_list;
    for (const FockState &s : inputs) {
        if (std::find(input_list.begin(), input_list.end(), s) == input_list.end()) {
            input_list.push_back(s);
        }
    }
    std::vector<FockState> output_list = outputs.resolve(modes, n);
    if (output_list.empty()) {
        throw ArgumentError("output set must not be empty");
    }

    SequenceRanker ranker(modes, n);
    std::vector<LayerPlan> plans = build_layer_plans(output_list, n, ranker);
    InputSchedule schedule = build_schedule(input_list);

    RestrictedPlan plan;
    plan.data_ = std::make_unique<const Data>(Data{modes, n, std::move(input_list), std::move(output_list),
                                                   std::move(schedule), std::move(ranker), std::move(plans)});
    return plan;
}

namespace {

RestrictedResult run_restricted(const RestrictedPlan::Data &d, const UnitaryMatrix &u,
                                const RestrictedOptions &options) {
    const int m = d.modes;
    const int n = d.photons;
    const auto &plans = d.plans;
    const auto &ranker = d.ranker;
    const auto &schedule = d.schedule;

    // With a shared store, coefficients write through and prior results are
    // reused; without one, the per-call dense vectors below already memoize
    // everything the call needs.
    AmplitudeStore *const store = options.store;
    if (store != nullptr) {
        store->bind(m, u.fingerprint());
        store->slot(0, 0).try_emplace(0, Complex{1.0, 0.0});
    }

    // Dense values aligned to the layer plans, one vector per intermediate
    // input state; gather terms read these directly.
    std::vector<std::map<std::vector<int>, std::vector<Complex>>> dense(
        static_cast<std::size_t>(n) + 1);
    dense[0][FockState::vacuum(m).occupations] = {Complex{1.0, 0.0}};

    std::uint64_t mults = 0;
    for (int k = 0; k < n; ++k) {
        if (static_cast<std::size_t>(k) >= schedule.layers.size()) {
            break;
        }
        const auto &child_plan = plans[static_cast<std::size_t>(k) + 1];
        for (const ScheduleEntry &entry : schedule.layers[static_cast<std::size_t>(k)]) {
            const FockState child_state = entry.state.with_added_photon(entry.mode);
            const double norm =
                1.0 / std::sqrt(static_cast<double>(child_state.occupations[static_cast<std::size_t>(entry.mode)]));
            auto source_it = dense[static_cast<std::size_t>(k)].find(entry.state.occupations);
            if (source_it == dense[static_cast<std::size_t>(k)].end()) {
                throw StructuralError("schedule entry lacks a computed source state");
            }
            const std::vector<Complex> &source = source_it->second;
            std::vector<Complex> &values = dense[static_cast<std::size_t>(k) + 1][child_state.occupations];
            if (!values.empty()) {
                continue; // another entry already produced this state
            }
            values.resize(child_plan.set.size());
            AmplitudeStore::Coefficients *child_slot = nullptr;
            if (store != nullptr) {
                child_slot = &store->slot(k + 1, ranker.rank(enc_of(child_state)));
            }
            std::vector<Complex> column(static_cast<std::size_t>(m));
            for (int j = 0; j < m; ++j) {
                column[static_cast<std::size_t>(j)] = u(j, entry.mode);
            }
            for (std::size_t ti = 0; ti < child_plan.set.size(); ++ti) {
                if (child_slot != nullptr) {
                    auto it = child_slot->find(child_plan.ranks[ti]);
                    if (it != child_slot->end()) {
                        values[ti] = it->second;
                        continue;
                    }
                }
                Complex acc{0.0, 0.0};
                for (const GatherTerm &term : child_plan.terms[ti]) {
                    acc += term.weight * (column[term.mode] * source[term.parent_position]);
                    ++mults;
                }
                values[ti] = norm * acc;
                if (child_slot != nullptr) {
                    child_slot->emplace(child_plan.ranks[ti], values[ti]);
                }
            }
        }
    }
    add_op_count(mults);

    RestrictedResult result;
    result.table.resize(d.inputs.size() * d.outputs.size());
    for (std::size_t i = 0; i < d.inputs.size(); ++i) {
        auto input_it = dense[static_cast<std::size_t>(n)].find(d.inputs[i].occupations);
        if (input_it == dense[static_cast<std::size_t>(n)].end()) {
            throw StructuralError("requested amplitude was not computed");
        }
        for (std::size_t o = 0; o < d.outputs.size(); ++o) {
            result.table[i * d.outputs.size() + o] = input_it->second[o];
        }
    }
    result.layer_state_counts.reserve(plans.size());
    for (const auto &plan : plans) {
        result.layer_state_counts.push_back(plan.set.size());
    }
    result.inputs = d.inputs;
    result.outputs = d.outputs;
    return result;
}

} // namespace

RestrictedResult restricted_amplitudes(const RestrictedPlan &plan, const UnitaryMatrix &u,
                                       const RestrictedOptions &options) {
    if (plan.modes() != u.modes()) {
        throw ArgumentError("plan mode count does not match the matrix");
    }
    return run_restricted(plan.data(), u, options);
}

RestrictedResult restricted_amplitudes(const std::vector<FockState> &inputs, const OutputSpec &outputs,
                                       const UnitaryMatrix &u, const RestrictedOptions &options) {
    for (const FockState &s : inputs) {
        validate_state_for(u, s);
    }

    // A single pair where the input repeats more than the output is cheaper
    // through the adjoint: <t|U|s> = conj(<s|U^dag|t>).
    if (options.allow_conjugate_transpose && inputs.size() == 1) {
        std::vector<FockState> output_list = outputs.resolve(u.modes(), inputs.front().photons());
        if (output_list.size() == 1) {
            double rep_in = 1;
            double rep_out = 1;
            for (int occ : inputs[0].occupations) {
                for (int i = 2; i <= occ; ++i) {
                    rep_in *= i;
                }
            }
            for (int occ : output_list[0].occupations) {
                for (int i = 2; i <= occ; ++i) {
                    rep_out *= i;
                }
            }
            if (rep_in > rep_out) {
                RestrictedResult swapped = restricted_amplitudes(
                    {output_list[0]}, OutputSpec::states({inputs[0]}), u.conjugate_transpose(), {});
                RestrictedResult result;
                result.inputs = inputs;
                result.outputs = std::move(output_list);
                result.table = {std::conj(swapped.table[0])};
                result.layer_state_counts = std::move(swapped.layer_state_counts);
                return result;
            }
        }
    }

    const RestrictedPlan plan = RestrictedPlan::build(inputs, outputs, u.modes());
    return restricted_amplitudes(plan, u, options);
}

// ---------------------------------------------------------------------------
// Chain evaluation shared by the hybrid policies and the sampler

namespace {

// Amplitudes of one input prefix chain s^0..s^K, evaluated lazily against a
// memo store. Coefficients already flagged are never recomputed; absent
// parents are filled recursively.
class ChainEvaluator {
  public:
    ChainEvaluator(const UnitaryMatrix &u, AmplitudeStore &store, const SequenceRanker &ranker)
        : u_(u), store_(store), ranker_(ranker) {
        prefix_encs_.push_back({});
        prefix_ranks_.push_back(0);
        store_.slot(0, 0).try_emplace(0, Complex{1.0, 0.0});
    }

    /// Extends the chain by one photon in `mode`.
    void push_photon(int mode) {
        prefix_encs_.push_back(with_inserted(prefix_encs_.back(), static_cast<std::uint16_t>(mode)));
        prefix_ranks_.push_back(ranker_.rank(prefix_encs_.back()));
        modes_added_.push_back(mode);
    }

    int length() const { return static_cast<int>(modes_added_.size()); }

    /// Ensures <t|U|s^k> is stored for every t in `requested` (layer-k
    /// encodings, sorted).
    void ensure(int k, const std::vector<Enc> &requested) {
        auto &slot = store_.slot(k, prefix_ranks_[static_cast<std::size_t>(k)]);
        std::vector<const Enc *> missing;
        for (const Enc &e : requested) {
            if (!slot.contains(ranker_.rank(e))) {
                missing.push_back(&e);
            }
        }
        if (missing.empty()) {
            return;
        }
        if (k == 0) {
            slot.try_emplace(0, Complex{1.0, 0.0});
            return;
        }
        std::vector<Enc> children;
        children.reserve(missing.size());
        for (const Enc *e : missing) {
            children.push_back(*e);
        }
        ensure(k - 1, parent_closure(children));

        auto &parent_slot = store_.slot(k - 1, prefix_ranks_[static_cast<std::size_t>(k) - 1]);
        const int p = modes_added_[static_cast<std::size_t>(k) - 1];
        const double norm = 1.0 / std::sqrt(static_cast<double>(
                                occupancy_of(prefix_encs_[static_cast<std::size_t>(k)],
                                             static_cast<std::uint16_t>(p))));
        std::uint64_t mults = 0;
        for (const Enc *ep : missing) {
            const Enc &e = *ep;
            Complex acc{0.0, 0.0};
            for (std::size_t i = 0; i < e.size(); ++i) {
                if (i > 0 && e[i] == e[i - 1]) {
                    continue;
                }
                const Enc parent = with_erased(e, i);
                auto it = parent_slot.find(ranker_.rank(parent));
                if (it == parent_slot.end()) {
                    throw StructuralError("missing parent coefficient during gather");
                }
                acc += std::sqrt(static_cast<double>(occupancy_of(e, e[i]))) *
                       (u_(e[i], p) * it->second);
                ++mults;
            }
            slot.emplace(ranker_.rank(e), norm * acc);
        }
        add_op_count(mults);
    }

    Complex amplitude(int k, const Enc &e) const {
        const auto *slot = store_.find_slot(k, prefix_ranks_[static_cast<std::size_t>(k)]);
        auto it = slot->find(ranker_.rank(e));
        return it->second;
    }

  private:
    const UnitaryMatrix &u_;
    AmplitudeStore &store_;
    const SequenceRanker &ranker_;
    std::vector<Enc> prefix_encs_;
    std::vector<std::uint64_t> prefix_ranks_;
    std::vector<int> modes_added_;
};

// Deterministic portable RNG for the sampling chain (splitmix64 core).
struct SampleRng {
    std::uint64_t state;

    static std::uint64_t mix(std::uint64_t z) {
        z ^= z >> 30;
        z *= 0xBF58476D1CE4E5B9ull;
        z ^= z >> 27;
        z *= 0x94D049BB133111EBull;
        z ^= z >> 31;
        return z;
    }

    explicit SampleRng(std::uint64_t seed, std::uint64_t stream) {
        state = mix(seed + 0x9E3779B97F4A7C15ull * (stream + 1));
    }

    std::uint64_t next() {
        state += 0x9E3779B97F4A7C15ull;
        return mix(state);
    }

    double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    std::uint64_t bounded(std::uint64_t n) {
        const std::uint64_t limit = n * (~std::uint64_t{0} / n);
        std::uint64_t x;
        do {
            x = next();
        } while (x >= limit);
        return x % n;
    }
};

struct ChainWalkOutcome {
    Enc final_enc;
    Complex amplitude;
};

/// One weak-simulation walk: shuffles the photon order, then extends the
/// partial output one photon at a time with multiplicity-weighted exact
/// transition probabilities.
ChainWalkOutcome chain_walk(const UnitaryMatrix &u, const std::vector<int> &base_positions, SampleRng &rng,
                            AmplitudeStore &store, const SequenceRanker &ranker) {
    const int m = u.modes();
    const int n = static_cast<int>(base_positions.size());
    std::vector<int> order = base_positions;
    for (int i = n - 1; i >= 1; --i) {
        const auto j = static_cast<std::size_t>(rng.bounded(static_cast<std::uint64_t>(i) + 1));
        std::swap(order[static_cast<std::size_t>(i)], order[j]);
    }

    ChainEvaluator chain(u, store, ranker);
    Enc t;
    Complex amp{1.0, 0.0};
    for (int k = 0; k < n; ++k) {
        chain.push_photon(order[static_cast<std::size_t>(k)]);
        std::vector<Enc> candidates;
        candidates.reserve(static_cast<std::size_t>(m));
        for (int j = 0; j < m; ++j) {
            candidates.push_back(with_inserted(t, static_cast<std::uint16_t>(j)));
        }
        std::sort(candidates.begin(), candidates.end());
        chain.ensure(k + 1, candidates);

        double total = 0;
        std::vector<double> weights(static_cast<std::size_t>(m));
        for (int j = 0; j < m; ++j) {
            const Enc child = with_inserted(t, static_cast<std::uint16_t>(j));
            const double w = (occupancy_of(t, static_cast<std::uint16_t>(j)) + 1) *
                             std::norm(chain.amplitude(k + 1, child));
            weights[static_cast<std::size_t>(j)] = w;
            total += w;
        }
        if (!(total > 0)) {
            throw ValidationError("sampling chain stalled on a zero-probability frontier");
        }
        const double r = rng.uniform01() * total;
        double cum = 0;
        int picked = m - 1;
        for (int j = 0; j < m; ++j) {
            cum += weights[static_cast<std::size_t>(j)];
            if (r < cum) {
                picked = j;
                break;
            }
        }
        t = with_inserted(t, static_cast<std::uint16_t>(picked));
        amp = chain.amplitude(k + 1, t);
    }
    return {std::move(t), amp};
}

} // namespace

// ---------------------------------------------------------------------------
// Hybrid simulation

SelectPolicy SelectPolicy::threshold(double eta) {
    if (!(eta >= 0.0 && eta <= 1.0)) {
        throw ArgumentError("threshold must lie in [0, 1]");
    }
    return SelectPolicy(Threshold{eta});
}

SelectPolicy SelectPolicy::restricted(OutputSpec outputs) {
    return SelectPolicy(Restricted{std::move(outputs)});
}

SelectPolicy SelectPolicy::restricted(MaskSet masks) {
    return SelectPolicy(Restricted{OutputSpec::mask(std::move(masks))});
}

SelectPolicy SelectPolicy::restricted(std::vector<FockState> states) {
    return SelectPolicy(Restricted{OutputSpec::states(std::move(states))});
}

SelectPolicy SelectPolicy::sample_chain(std::uint64_t seed) {
    return SelectPolicy(SampleChain{seed});
}

namespace {

/// Pops entries in descending probability until the cumulative sum strictly
/// exceeds eta (or the set is exhausted). Returns the popped indices.
std::vector<std::size_t> pop_until_exceeds(const std::vector<Enc> &set, const std::vector<double> &probs,
                                           double eta) {
    std::vector<std::size_t> order(set.size());
    for (std::size_t i = 0; i < order.size(); ++i) {
        order[i] = i;
    }
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (probs[a] != probs[b]) {
            return probs[a] > probs[b];
        }
        return set[a] < set[b];
    });
    std::vector<std::size_t> popped;
    double cumulative = 0;
    for (std::size_t idx : order) {
        if (cumulative > eta) {
            break;
        }
        popped.push_back(idx);
        cumulative += probs[idx];
    }
    return popped;
}

Distribution hybrid_threshold(const FockState &input, const UnitaryMatrix &u, double eta,
                              AmplitudeStore &store) {
    const int m = u.modes();
    const int n = input.photons();
    const SequenceRanker ranker(m, n);
    ChainEvaluator chain(u, store, ranker);
    for (int p : state_to_sequence(input).positions) {
        chain.push_photon(p);
    }

    // One selection pass: pop each computed layer down to `tau`, expand the
    // popped states and compute their children. Returns the final frontier.
    auto run_pass = [&](double tau) {
        std::vector<Enc> frontier{Enc{}};
        for (int k = 1; k <= n; ++k) {
            std::vector<double> probs(frontier.size());
            for (std::size_t i = 0; i < frontier.size(); ++i) {
                probs[i] = std::norm(chain.amplitude(k - 1, frontier[i]));
            }
            std::vector<std::size_t> popped;
            if (tau >= 1.0) {
                popped.resize(frontier.size());
                for (std::size_t i = 0; i < popped.size(); ++i) {
                    popped[i] = i;
                }
            } else {
                popped = pop_until_exceeds(frontier, probs, tau);
            }
            std::vector<Enc> candidates;
            candidates.reserve(popped.size() * static_cast<std::size_t>(m));
            for (std::size_t idx : popped) {
                for (int j = 0; j < m; ++j) {
                    candidates.push_back(with_inserted(frontier[idx], static_cast<std::uint16_t>(j)));
                }
            }
            std::sort(candidates.begin(), candidates.end());
            candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
            chain.ensure(k, candidates);
            frontier = std::move(candidates);
        }
        return frontier;
    };

    // Children of unselected states are never computed, and interference can
    // shrink what the kept states pass on, so a pass may end with less than
    // eta in reach. Tighten the per-layer threshold geometrically until the
    // final selection exceeds eta; the memo store makes every retry
    // incremental, and tau = 1 computes whole layers, which always suffices.
    std::vector<Enc> frontier;
    std::vector<double> probs;
    std::vector<std::size_t> selected;
    double tau = eta;
    for (;;) {
        frontier = run_pass(tau);
        probs.assign(frontier.size(), 0.0);
        for (std::size_t i = 0; i < frontier.size(); ++i) {
            probs[i] = std::norm(chain.amplitude(n, frontier[i]));
        }
        selected = pop_until_exceeds(frontier, probs, eta);
        double total = 0;
        for (std::size_t idx : selected) {
            total += probs[idx];
        }
        if (total > eta || tau >= 1.0) {
            break;
        }
        tau = tau >= 1.0 - 1e-9 ? 1.0 : (1.0 + tau) / 2;
    }
    std::sort(selected.begin(), selected.end()); // canonical order: frontier is sorted

    std::vector<FockState> states;
    std::vector<Complex> amps;
    states.reserve(selected.size());
    amps.reserve(selected.size());
    for (std::size_t idx : selected) {
        states.push_back(state_of(m, frontier[idx]));
        amps.push_back(chain.amplitude(n, frontier[idx]));
    }
    return Distribution::sparse(m, n, std::move(states), std::move(amps));
}

Distribution hybrid_restricted(const FockState &input, const UnitaryMatrix &u, const OutputSpec &outputs,
                               AmplitudeStore &store) {
    RestrictedOptions options;
    options.store = &store;
    RestrictedResult r = restricted_amplitudes({input}, outputs, u, options);
    return Distribution::sparse(u.modes(), input.photons(), std::move(r.outputs), std::move(r.table));
}

Distribution hybrid_sample_chain(const FockState &input, const UnitaryMatrix &u, std::uint64_t seed,
                                 AmplitudeStore &store) {
    const SequenceRanker ranker(u.modes(), input.photons());
    SampleRng rng(seed, 0);
    const std::vector<int> positions = state_to_sequence(input).positions;
    ChainWalkOutcome outcome = chain_walk(u, positions, rng, store, ranker);
    std::vector<FockState> states{state_of(u.modes(), outcome.final_enc)};
    return Distribution::sparse(u.modes(), input.photons(), std::move(states), {outcome.amplitude});
}

} // namespace

Distribution hybrid_distribution(const FockState &input, const UnitaryMatrix &u, const SelectPolicy &policy,
                                 AmplitudeStore *store) {
    validate_state_for(u, input);
    AmplitudeStore local_store;
    AmplitudeStore &st = store != nullptr ? *store : local_store;
    st.bind(u.modes(), u.fingerprint());

    return std::visit(
        [&](const auto &p) -> Distribution {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, SelectPolicy::Threshold>) {
                return hybrid_threshold(input, u, p.eta, st);
            } else if constexpr (std::is_same_v<T, SelectPolicy::Restricted>) {
                return hybrid_restricted(input, u, p.outputs, st);
            } else {
                return hybrid_sample_chain(input, u, p.seed, st);
            }
        },
        policy.variant());
}

std::vector<FockState> sample_outputs(const FockState &input, const UnitaryMatrix &u, std::size_t count,
                                      std::uint64_t seed) {
    validate_state_for(u, input);
    if (count < 1) {
        throw ArgumentError("sample count must be at least 1");
    }
    const int m = u.modes();
    const int n = input.photons();
    const SequenceRanker ranker(m, n);
    AmplitudeStore store;
    store.bind(m, u.fingerprint());
    const std::vector<int> positions = state_to_sequence(input).positions;

    std::vector<FockState> samples;
    samples.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        SampleRng rng(seed, i);
        ChainWalkOutcome outcome = chain_walk(u, positions, rng, store, ranker);
        samples.push_back(state_of(m, outcome.final_enc));
    }
    return samples;
}

} // namespace fockflow
