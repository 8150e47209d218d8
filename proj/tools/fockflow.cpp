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

#include <chrono>
#include <fstream>
#include <functional>
#include <iostream>
#include <limits>

#include <CLI11.hpp>

#include "fockflow/engine.hpp"
#include "fockflow/errors.hpp"
#include "fockflow/estimate.hpp"
#include "fockflow/io.hpp"
#include "fockflow/op_counter.hpp"
#include "fockflow/permanent.hpp"
#include "fockflow/unitary.hpp"

namespace {

using namespace fockflow;

constexpr int kExitUsage = 2;
constexpr int kExitValidation = 3;

struct CommonFlags {
    std::string unitary_file;
    std::string input;
    std::string format = "jsonl";
    bool no_unitarity_check = false;
};

UnitaryMatrix load_unitary_checked(const CommonFlags &flags) {
    return load_unitary(flags.unitary_file, !flags.no_unitarity_check);
}

double best_of(int reps, const std::function<void()> &fn) {
    double best = std::numeric_limits<double>::infinity();
    for (int r = 0; r < reps; ++r) {
        const auto t0 = std::chrono::steady_clock::now();
        fn();
        const auto t1 = std::chrono::steady_clock::now();
        best = std::min(best, std::chrono::duration<double, std::nano>(t1 - t0).count());
    }
    return best;
}

int run_full(const CommonFlags &flags, int threads, double min_prob, bool use_precomputed,
             const std::string &precompute_dir) {
    const UnitaryMatrix u = load_unitary_checked(flags);
    const FockState input = parse_state(flags.input);
    FullOptions options;
    options.keep_layers = false;
    options.threads = threads;
    LayerStructures ls;
    if (use_precomputed) {
        if (precompute_dir.empty()) {
            throw ArgumentError("--use-precomputed requires --precompute-dir");
        }
        ls = load_layer_structures(precompute_dir, u.modes(), input.photons());
        options.structures = &ls;
    }
    const FullResult result = full_distribution(input, u, options);
    write_distribution(result.distribution, std::cout, parse_output_format(flags.format), min_prob);
    return 0;
}

int run_gen(const CommonFlags &flags, const std::vector<std::string> &input_flags,
            const std::vector<std::string> &output_flags, const std::vector<std::string> &mask_flags) {
    const UnitaryMatrix u = load_unitary_checked(flags);
    std::vector<FockState> inputs;
    inputs.reserve(input_flags.size());
    for (const std::string &text : input_flags) {
        inputs.push_back(parse_state(text));
    }
    if (inputs.empty()) {
        throw ArgumentError("at least one --input is required");
    }
    if (!output_flags.empty() && !mask_flags.empty()) {
        throw ArgumentError("--output and --mask are mutually exclusive");
    }
    const int n = inputs.front().photons();
    OutputSpec spec = OutputSpec::states({});
    if (!output_flags.empty()) {
        std::vector<FockState> outputs;
        outputs.reserve(output_flags.size());
        for (const std::string &text : output_flags) {
            outputs.push_back(parse_state(text));
        }
        spec = OutputSpec::states(std::move(outputs));
    } else if (!mask_flags.empty()) {
        std::vector<std::vector<int>> masks;
        masks.reserve(mask_flags.size());
        for (const std::string &text : mask_flags) {
            masks.push_back(parse_mask_pattern(text, n));
        }
        spec = OutputSpec::mask(MaskSet(std::move(masks)));
    } else {
        throw ArgumentError("either --output or --mask is required");
    }
    const RestrictedResult result = restricted_amplitudes(inputs, spec, u);
    write_amplitude_table(result, std::cout, parse_output_format(flags.format));
    return 0;
}

int run_sample(const CommonFlags &flags, std::uint64_t count, std::uint64_t seed) {
    const UnitaryMatrix u = load_unitary_checked(flags);
    const FockState input = parse_state(flags.input);
    const std::vector<FockState> samples = sample_outputs(input, u, count, seed);
    write_samples(samples, std::cout, parse_output_format(flags.format));
    return 0;
}

int run_threshold(const CommonFlags &flags, double eta) {
    const UnitaryMatrix u = load_unitary_checked(flags);
    const FockState input = parse_state(flags.input);
    const Distribution d = hybrid_distribution(input, u, SelectPolicy::threshold(eta));
    write_distribution(d, std::cout, parse_output_format(flags.format));
    std::cerr << "selected " << d.size() << " states, cumulative probability " << d.total_probability()
              << "\n";
    return 0;
}

int run_precompute(int m, int n, const std::vector<std::string> &mask_flags, const std::string &dir) {
    std::optional<MaskSet> masks;
    if (!mask_flags.empty()) {
        std::vector<std::vector<int>> bounds;
        bounds.reserve(mask_flags.size());
        for (const std::string &text : mask_flags) {
            bounds.push_back(parse_mask_pattern(text, n));
        }
        masks.emplace(std::move(bounds));
    }
    const LayerStructures ls = LayerStructures::build(m, n, masks ? &*masks : nullptr);
    save_layer_structures(ls, dir);
    std::cerr << "wrote layers 0.." << n << " for m=" << m << " to " << dir << "\n";
    return 0;
}

int run_bench(int n_min, int n_max, int reps, std::uint64_t seed, const std::string &format) {
    if (n_min < 1 || n_max < n_min) {
        throw ArgumentError("bench requires 1 <= n-min <= n-max");
    }
    const bool jsonl = parse_output_format(format) == OutputFormat::jsonl;
    if (!jsonl) {
        std::cout << "n,layered_mults,layered_ns,glynn_mults,glynn_ns,ryser_mults,ryser_ns\n";
    }
    for (int n = n_min; n <= n_max; ++n) {
        const UnitaryMatrix u = haar_random_unitary(n, seed + static_cast<std::uint64_t>(n));
        const FockState ones(std::vector<int>(static_cast<std::size_t>(n), 1));
        // Worst-case single output: no row or column repetition, the regime
        // where the generic permanent algorithms are the natural baseline.
        // The calculation path is matrix-independent, so it is built once
        // and shared across repetitions, like any precomputed structure;
        // every repetition still computes all coefficients afresh.
        const RestrictedPlan plan = RestrictedPlan::build({ones}, OutputSpec::states({ones}), n);
        reset_op_count();
        restricted_amplitudes(plan, u);
        const std::uint64_t layered_mults = op_count();
        const double layered_ns = best_of(reps, [&] { restricted_amplitudes(plan, u); });

        reset_op_count();
        permanent_glynn(u.matrix());
        const std::uint64_t glynn_mults = op_count();
        const double glynn_ns = best_of(reps, [&] { permanent_glynn(u.matrix()); });

        reset_op_count();
        permanent_ryser(u.matrix());
        const std::uint64_t ryser_mults = op_count();
        const double ryser_ns = best_of(reps, [&] { permanent_ryser(u.matrix()); });

        if (jsonl) {
            std::cout << "{\"n\": " << n << ", \"layered\": {\"mults\": " << layered_mults
                      << ", \"ns\": " << layered_ns << "}, \"glynn\": {\"mults\": " << glynn_mults
                      << ", \"ns\": " << glynn_ns << "}, \"ryser\": {\"mults\": " << ryser_mults
                      << ", \"ns\": " << ryser_ns << "}}\n";
        } else {
            std::cout << n << ',' << layered_mults << ',' << layered_ns << ',' << glynn_mults << ',' << glynn_ns
                      << ',' << ryser_mults << ',' << ryser_ns << '\n';
        }
    }
    return 0;
}

int run_estimate(int m, int n, const std::string &format) {
    const ComplexityEstimate e = estimate(m, n);
    if (parse_output_format(format) == OutputFormat::jsonl) {
        std::cout << "{\"m\": " << e.modes << ", \"n\": " << e.photons << ", \"theta\": " << e.theta
                  << ", \"states\": " << e.state_count << ", \"full_ops\": " << e.full_ops
                  << ", \"single_output_avg_ops\": " << e.single_output_avg_ops
                  << ", \"worst_single_ops\": " << e.worst_single_ops
                  << ", \"index_bytes\": " << e.index_bytes
                  << ", \"memory_bytes_full\": " << e.memory_bytes_full
                  << ", \"memory_bytes_all_layers\": " << e.memory_bytes_all_layers << "}\n";
    } else {
        std::cout << "m: " << e.modes << "\nn: " << e.photons << "\ntheta: " << e.theta
                  << "\nstates: " << e.state_count << "\nfull_ops: " << e.full_ops
                  << "\nsingle_output_avg_ops: " << e.single_output_avg_ops
                  << "\nworst_single_ops: " << e.worst_single_ops << "\nindex_bytes: " << e.index_bytes
                  << "\nmemory_bytes_full: " << e.memory_bytes_full
                  << "\nmemory_bytes_all_layers: " << e.memory_bytes_all_layers << "\n";
    }
    return 0;
}

int run_haar(int m, std::uint64_t seed, const std::string &out_file) {
    const UnitaryMatrix u = haar_random_unitary(m, seed);
    if (out_file.empty()) {
        write_unitary(u, std::cout);
    } else {
        std::ofstream out(out_file);
        if (!out) {
            throw FormatError("cannot open file for writing: " + out_file);
        }
        write_unitary(u, out);
    }
    return 0;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Strong and weak simulation of photons through linear optical interferometers"};
    app.require_subcommand(1);

    CommonFlags flags;
    int threads = 1;
    double min_prob = 0.0;
    bool use_precomputed = false;
    std::string precompute_dir;
    std::vector<std::string> input_flags;
    std::vector<std::string> output_flags;
    std::vector<std::string> mask_flags;
    std::uint64_t count = 1;
    std::uint64_t seed = 0;
    double eta = 0.0;
    int m = 0;
    int n = 0;
    int n_min = 8;
    int n_max = 14;
    int reps = 3;
    std::string out_file;

    auto add_common = [&](CLI::App *cmd, bool with_input) {
        cmd->add_option("--unitary", flags.unitary_file, "Unitary JSON file")->required();
        if (with_input) {
            cmd->add_option("--input", flags.input, "Input state, e.g. 1,1,0")->required();
        }
        cmd->add_option("--format", flags.format, "Output format: jsonl or csv");
        cmd->add_flag("--no-unitarity-check", flags.no_unitarity_check,
                      "Skip the unitarity validation of the matrix");
    };

    CLI::App *full = app.add_subcommand("full", "Full output distribution of one input");
    add_common(full, true);
    full->add_option("--threads", threads, "Worker threads for the layer computation");
    full->add_option("--min-prob", min_prob, "Only emit states at or above this probability");
    full->add_flag("--use-precomputed", use_precomputed, "Load precomputed layer structures");
    full->add_option("--precompute-dir", precompute_dir, "Directory holding .fsa/.fsm files");

    CLI::App *gen = app.add_subcommand("gen", "Amplitudes of chosen outputs for chosen inputs");
    gen->add_option("--unitary", flags.unitary_file, "Unitary JSON file")->required();
    gen->add_option("--input", input_flags, "Input state (repeatable)")->required();
    gen->add_option("--output", output_flags, "Output state (repeatable)");
    gen->add_option("--mask", mask_flags, "Output mask, e.g. 1,1,*,* (repeatable)");
    gen->add_option("--format", flags.format, "Output format: jsonl or csv");
    gen->add_flag("--no-unitarity-check", flags.no_unitarity_check,
                  "Skip the unitarity validation of the matrix");

    CLI::App *sample = app.add_subcommand("sample", "Draw exact samples from the output distribution");
    add_common(sample, true);
    sample->add_option("--count", count, "Number of samples")->required();
    sample->add_option("--seed", seed, "RNG seed");

    CLI::App *threshold = app.add_subcommand("threshold", "Outputs whose cumulative probability exceeds eta");
    add_common(threshold, true);
    threshold->add_option("--eta", eta, "Probability threshold in [0, 1]")->required();

    CLI::App *precompute = app.add_subcommand("precompute", "Write layer bases and index maps to files");
    precompute->add_option("--m", m, "Mode count")->required();
    precompute->add_option("--n", n, "Photon count")->required();
    precompute->add_option("--mask", mask_flags, "Occupancy mask (repeatable)");
    precompute->add_option("--precompute-dir", precompute_dir, "Target directory")->required();

    CLI::App *bench = app.add_subcommand("bench", "Single-permanent benchmark against Glynn and Ryser");
    bench->add_option("--n-min", n_min, "Smallest matrix size");
    bench->add_option("--n-max", n_max, "Largest matrix size");
    bench->add_option("--reps", reps, "Timing repetitions, best kept");
    bench->add_option("--seed", seed, "Seed for the Haar-random matrices");
    bench->add_option("--format", flags.format, "Output format: jsonl or csv");

    CLI::App *est = app.add_subcommand("estimate", "Operation counts and memory projections");
    est->add_option("--m", m, "Mode count")->required();
    est->add_option("--n", n, "Photon count")->required();
    est->add_option("--format", flags.format, "Output format: jsonl or csv");

    CLI::App *haar = app.add_subcommand("haar", "Write a seeded Haar-random unitary as JSON");
    haar->add_option("--m", m, "Mode count")->required();
    haar->add_option("--seed", seed, "RNG seed");
    haar->add_option("--out", out_file, "Output file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        if (e.get_exit_code() == 0) {
            return app.exit(e); // --help
        }
        std::cerr << e.what() << "\n";
        return kExitUsage;
    }

    try {
        if (full->parsed()) {
            return run_full(flags, threads, min_prob, use_precomputed, precompute_dir);
        }
        if (gen->parsed()) {
            return run_gen(flags, input_flags, output_flags, mask_flags);
        }
        if (sample->parsed()) {
            return run_sample(flags, count, seed);
        }
        if (threshold->parsed()) {
            return run_threshold(flags, eta);
        }
        if (precompute->parsed()) {
            return run_precompute(m, n, mask_flags, precompute_dir);
        }
        if (bench->parsed()) {
            return run_bench(n_min, n_max, reps, seed, flags.format);
        }
        if (est->parsed()) {
            return run_estimate(m, n, flags.format);
        }
        if (haar->parsed()) {
            return run_haar(m, seed, out_file);
        }
    } catch (const ValidationError &e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const OverflowError &e) {
        std::cerr << "overflow: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
