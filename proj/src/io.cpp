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

#include "fockflow/io.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "fockflow/counting.hpp"
#include "fockflow/errors.hpp"
#include "fockflow/serialize.hpp"

namespace fockflow {

namespace {

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_state_array(const FockState &s, std::ostream &out) {
    out << '[';
    for (int i = 0; i < s.modes(); ++i) {
        if (i) {
            out << ',';
        }
        out << s.occupations[static_cast<std::size_t>(i)];
    }
    out << ']';
}

void write_state_spaced(const FockState &s, std::ostream &out) {
    for (int i = 0; i < s.modes(); ++i) {
        if (i) {
            out << ' ';
        }
        out << s.occupations[static_cast<std::size_t>(i)];
    }
}

} // namespace

OutputFormat parse_output_format(const std::string &name) {
    if (name == "jsonl") {
        return OutputFormat::jsonl;
    }
    if (name == "csv") {
        return OutputFormat::csv;
    }
    throw ArgumentError("unknown output format: " + name);
}

UnitaryMatrix load_unitary(const std::filesystem::path &path, bool validate, double tolerance) {
    std::ifstream in(path);
    if (!in) {
        throw FormatError("cannot open unitary file: " + path.string());
    }
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception &e) {
        throw FormatError(std::string("malformed unitary file: ") + e.what());
    }
    if (!j.is_object() || !j.contains("m") || !j.contains("matrix")) {
        throw FormatError("unitary file must be an object with \"m\" and \"matrix\"");
    }
    const int m = j["m"].get<int>();
    const auto &rows = j["matrix"];
    if (m < 1 || !rows.is_array() || static_cast<int>(rows.size()) != m) {
        throw FormatError("unitary file matrix does not match its declared size");
    }
    ComplexMatrix u(m, m);
    for (int i = 0; i < m; ++i) {
        const auto &row = rows[static_cast<std::size_t>(i)];
        if (!row.is_array() || static_cast<int>(row.size()) != m) {
            throw FormatError("unitary file matrix does not match its declared size");
        }
        for (int c = 0; c < m; ++c) {
            const auto &cell = row[static_cast<std::size_t>(c)];
            if (!cell.is_array() || cell.size() != 2) {
                throw FormatError("matrix entries must be [re, im] pairs");
            }
            u(i, c) = std::complex<double>(cell[0].get<double>(), cell[1].get<double>());
        }
    }
    return UnitaryMatrix(std::move(u), validate, tolerance);
}

void write_unitary(const UnitaryMatrix &u, std::ostream &out) {
    const int m = u.modes();
    out << "{\"m\": " << m << ", \"matrix\": [";
    for (int i = 0; i < m; ++i) {
        out << (i ? ",\n" : "\n") << "  [";
        for (int c = 0; c < m; ++c) {
            const std::complex<double> v = u(i, c);
            out << (c ? ", " : "") << '[' << fmt_double(v.real()) << ", " << fmt_double(v.imag()) << ']';
        }
        out << ']';
    }
    out << "\n]}\n";
}

FockState parse_state(const std::string &text) {
    std::vector<int> occ;
    std::stringstream ss(text);
    std::string token;
    while (std::getline(ss, token, ',')) {
        try {
            std::size_t used = 0;
            const int v = std::stoi(token, &used);
            if (used != token.size()) {
                throw std::invalid_argument(token);
            }
            occ.push_back(v);
        } catch (const std::exception &) {
            throw ArgumentError("malformed state \"" + text + "\": expected comma-separated occupations");
        }
    }
    if (occ.empty()) {
        throw ArgumentError("state must list at least one mode");
    }
    return FockState(std::move(occ));
}

std::vector<int> parse_mask_pattern(const std::string &text, int photons) {
    std::vector<int> bounds;
    std::stringstream ss(text);
    std::string token;
    while (std::getline(ss, token, ',')) {
        if (token == "*") {
            bounds.push_back(photons);
            continue;
        }
        try {
            std::size_t used = 0;
            const int v = std::stoi(token, &used);
            if (used != token.size() || v < 0) {
                throw std::invalid_argument(token);
            }
            bounds.push_back(v);
        } catch (const std::exception &) {
            throw ArgumentError("malformed mask \"" + text + "\": expected occupancy bounds or '*'");
        }
    }
    if (bounds.empty()) {
        throw ArgumentError("mask must list at least one mode");
    }
    return bounds;
}

void write_distribution(const Distribution &d, std::ostream &out, OutputFormat format, double min_prob) {
    if (format == OutputFormat::csv) {
        out << "state,re,im,prob\n";
    }
    for (std::size_t i = 0; i < d.size(); ++i) {
        const double prob = d.probability_at(i);
        if (prob < min_prob) {
            continue;
        }
        const std::complex<double> a = d.amplitude_at(i);
        const FockState s = d.state_at(i);
        if (format == OutputFormat::jsonl) {
            out << "{\"state\": ";
            write_state_array(s, out);
            out << ", \"re\": " << fmt_double(a.real()) << ", \"im\": " << fmt_double(a.imag())
                << ", \"prob\": " << fmt_double(prob) << "}\n";
        } else {
            write_state_spaced(s, out);
            out << ',' << fmt_double(a.real()) << ',' << fmt_double(a.imag()) << ',' << fmt_double(prob)
                << '\n';
        }
    }
}

void write_amplitude_table(const RestrictedResult &r, std::ostream &out, OutputFormat format) {
    if (format == OutputFormat::csv) {
        out << "input,output,re,im,prob\n";
    }
    for (std::size_t i = 0; i < r.inputs.size(); ++i) {
        for (std::size_t o = 0; o < r.outputs.size(); ++o) {
            const std::complex<double> a = r.at(i, o);
            if (format == OutputFormat::jsonl) {
                out << "{\"input\": ";
                write_state_array(r.inputs[i], out);
                out << ", \"output\": ";
                write_state_array(r.outputs[o], out);
                out << ", \"re\": " << fmt_double(a.real()) << ", \"im\": " << fmt_double(a.imag())
                    << ", \"prob\": " << fmt_double(std::norm(a)) << "}\n";
            } else {
                write_state_spaced(r.inputs[i], out);
                out << ',';
                write_state_spaced(r.outputs[o], out);
                out << ',' << fmt_double(a.real()) << ',' << fmt_double(a.imag()) << ','
                    << fmt_double(std::norm(a)) << '\n';
            }
        }
    }
}

void write_samples(const std::vector<FockState> &samples, std::ostream &out, OutputFormat format) {
    if (format == OutputFormat::csv) {
        out << "state\n";
    }
    for (const FockState &s : samples) {
        if (format == OutputFormat::jsonl) {
            out << "{\"state\": ";
            write_state_array(s, out);
            out << "}\n";
        } else {
            write_state_spaced(s, out);
            out << '\n';
        }
    }
}

std::filesystem::path basis_file_name(int modes, int photons) {
    return "m" + std::to_string(modes) + "_k" + std::to_string(photons) + ".fsa";
}

std::filesystem::path index_map_file_name(int modes, int photons) {
    return "m" + std::to_string(modes) + "_k" + std::to_string(photons) + ".fsm";
}

void save_layer_structures(const LayerStructures &ls, const std::filesystem::path &dir) {
    std::filesystem::create_directories(dir);
    for (int k = 0; k <= ls.photons; ++k) {
        save_basis(*ls.bases[static_cast<std::size_t>(k)], dir / basis_file_name(ls.modes, k));
        if (k > 0) {
            save_index_map(*ls.maps[static_cast<std::size_t>(k)], dir / index_map_file_name(ls.modes, k));
        }
    }
}

LayerStructures load_layer_structures(const std::filesystem::path &dir, int modes, int photons) {
    LayerStructures ls;
    ls.modes = modes;
    ls.photons = photons;
    ls.bases.resize(static_cast<std::size_t>(photons) + 1);
    ls.maps.resize(static_cast<std::size_t>(photons) + 1);
    for (int k = 0; k <= photons; ++k) {
        FockBasis basis = load_basis(dir / basis_file_name(modes, k));
        if (basis.modes() != modes || basis.photons() != k) {
            throw StructuralError("basis file does not match the requested layer");
        }
        ls.bases[static_cast<std::size_t>(k)] = std::make_shared<FockBasis>(std::move(basis));
        if (k == 0) {
            continue;
        }
        FockIndexMap map = load_index_map(dir / index_map_file_name(modes, k));
        const FockBasis &child = *ls.bases[static_cast<std::size_t>(k)];
        const FockBasis &parent = *ls.bases[static_cast<std::size_t>(k) - 1];
        if (map.modes() != modes || map.photons() != k || map.size() != child.size()) {
            throw StructuralError("index map file does not match its layer");
        }
        for (std::uint64_t c = 0; c < child.size(); ++c) {
            auto enc = child.encoding_at(c);
            for (int slot = 0; slot < k; ++slot) {
                const bool used =
                    slot == 0 || enc[static_cast<std::size_t>(slot)] != enc[static_cast<std::size_t>(slot) - 1];
                const std::uint64_t value = map.slot_value(c, slot);
                if (used ? value >= parent.size() : value != map.sentinel_value()) {
                    throw StructuralError("index map slots are inconsistent with the bases");
                }
            }
        }
        ls.maps[static_cast<std::size_t>(k)] = std::make_shared<FockIndexMap>(std::move(map));
    }
    return ls;
}

} // namespace fockflow
