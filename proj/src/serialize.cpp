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

#include "fockflow/serialize.hpp"

#include <array>
#include <fstream>
#include <istream>
#include <ostream>

#include "fockflow/counting.hpp"
#include "fockflow/errors.hpp"

namespace fockflow {

namespace {

constexpr std::array<char, 4> kBasisMagic = {'F', 'S', 'A', '1'};
constexpr std::array<char, 4> kMapMagic = {'F', 'S', 'M', '1'};

void put_bytes(std::ostream &out, std::uint64_t value, int width) {
    for (int i = 0; i < width; ++i) {
        out.put(static_cast<char>((value >> (8 * i)) & 0xFF));
    }
}

std::uint64_t get_bytes(std::istream &in, int width) {
    std::uint64_t value = 0;
    for (int i = 0; i < width; ++i) {
        const int c = in.get();
        if (c == std::char_traits<char>::eof()) {
            throw FormatError("unexpected end of file");
        }
        value |= static_cast<std::uint64_t>(static_cast<unsigned char>(c)) << (8 * i);
    }
    return value;
}

void expect_magic(std::istream &in, const std::array<char, 4> &magic) {
    std::array<char, 4> got{};
    in.read(got.data(), got.size());
    if (!in || got != magic) {
        throw FormatError("bad magic");
    }
}

void expect_no_trailing(std::istream &in) {
    if (in.peek() != std::char_traits<char>::eof()) {
        throw FormatError("trailing bytes after payload");
    }
}

struct Header {
    int modes;
    int photons;
    int width;
    std::uint64_t count;
};

Header read_header(std::istream &in, const std::array<char, 4> &magic) {
    expect_magic(in, magic);
    const auto version = static_cast<std::uint16_t>(get_bytes(in, 2));
    if (version != kSerialVersion) {
        throw FormatError("unsupported version");
    }
    Header h{};
    h.modes = static_cast<int>(get_bytes(in, 2));
    h.photons = static_cast<int>(get_bytes(in, 2));
    h.width = static_cast<int>(get_bytes(in, 1));
    h.count = get_bytes(in, 8);
    if (h.modes < 1) {
        throw FormatError("invalid mode count");
    }
    return h;
}

void write_header(std::ostream &out, const std::array<char, 4> &magic, const Header &h) {
    out.write(magic.data(), magic.size());
    put_bytes(out, kSerialVersion, 2);
    put_bytes(out, static_cast<std::uint64_t>(h.modes), 2);
    put_bytes(out, static_cast<std::uint64_t>(h.photons), 2);
    put_bytes(out, static_cast<std::uint64_t>(h.width), 1);
    put_bytes(out, h.count, 8);
}

} // namespace

void serialize_basis(const FockBasis &basis, std::ostream &out) {
    const int width = byte_width_for(static_cast<std::uint64_t>(basis.modes()));
    write_header(out, kBasisMagic,
                 {basis.modes(), basis.photons(), width, basis.size()});
    for (std::uint64_t i = 0; i < basis.size(); ++i) {
        for (std::uint16_t pos : basis.encoding_at(i)) {
            put_bytes(out, pos, width);
        }
    }
    if (!out) {
        throw FormatError("write failure while serializing basis");
    }
}

FockBasis deserialize_basis(std::istream &in) {
    const Header h = read_header(in, kBasisMagic);
    if (h.width != byte_width_for(static_cast<std::uint64_t>(h.modes))) {
        throw FormatError("basis position width does not match the mode count");
    }
    std::vector<std::uint16_t> flat;
    flat.reserve(static_cast<std::size_t>(h.count) * static_cast<std::size_t>(h.photons));
    for (std::uint64_t i = 0; i < h.count; ++i) {
        for (int j = 0; j < h.photons; ++j) {
            const std::uint64_t pos = get_bytes(in, h.width);
            if (pos > 0xFFFF) {
                throw FormatError("photon position exceeds 16-bit range");
            }
            flat.push_back(static_cast<std::uint16_t>(pos));
        }
    }
    expect_no_trailing(in);
    FockBasis basis = FockBasis::from_encodings(h.modes, h.photons, std::move(flat));
    if (basis.size() != h.count) {
        throw FormatError("basis record count does not match its header");
    }
    return basis;
}

void serialize_index_map(const FockIndexMap &map, std::ostream &out) {
    write_header(out, kMapMagic,
                 {map.modes(), map.photons(), map.index_width_bytes(), map.size()});
    auto bytes = map.packed_bytes();
    out.write(reinterpret_cast<const char *>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!out) {
        throw FormatError("write failure while serializing index map");
    }
}

FockIndexMap deserialize_index_map(std::istream &in) {
    const Header h = read_header(in, kMapMagic);
    if (h.photons < 1) {
        throw FormatError("index map child layer must hold at least one photon");
    }
    if (h.width < 1 || h.width > 8) {
        throw FormatError("invalid rank width");
    }
    std::uint64_t payload = 0;
    try {
        payload = checked_mul(checked_mul(h.count, static_cast<std::uint64_t>(h.photons)),
                              static_cast<std::uint64_t>(h.width));
    } catch (const OverflowError &) {
        throw FormatError("index map header declares an impossible payload size");
    }
    std::vector<std::uint8_t> packed(payload);
    in.read(reinterpret_cast<char *>(packed.data()), static_cast<std::streamsize>(payload));
    if (static_cast<std::uint64_t>(in.gcount()) != payload) {
        throw FormatError("unexpected end of file");
    }
    expect_no_trailing(in);
    return FockIndexMap::from_packed(h.modes, h.photons, h.width, h.count, std::move(packed));
}

void save_basis(const FockBasis &basis, const std::filesystem::path &path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw FormatError("cannot open file for writing: " + path.string());
    }
    serialize_basis(basis, out);
}

FockBasis load_basis(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw FormatError("cannot open file: " + path.string());
    }
    return deserialize_basis(in);
}

void save_index_map(const FockIndexMap &map, const std::filesystem::path &path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw FormatError("cannot open file for writing: " + path.string());
    }
    serialize_index_map(map, out);
}

FockIndexMap load_index_map(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw FormatError("cannot open file: " + path.string());
    }
    return deserialize_index_map(in);
}

} // namespace fockflow
