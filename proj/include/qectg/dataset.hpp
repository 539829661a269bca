// Copyright 2026 The qectg Authors
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

#ifndef QECTG_DATASET_HPP
#define QECTG_DATASET_HPP

#include <cstddef>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "code_model.hpp"
#include "noise.hpp"
#include "simple_decoder.hpp"

namespace qectg {

struct Record {
    Syndrome syndrome;
    LogicalClass cls = LogicalClass::I;
};

/// Syndromes paired with the residual logical class left by the simple decoder.
struct Dataset {
    int d = 0;
    double p_train = 0.0;
    std::uint64_t seed = 0;
    std::vector<Record> records;

    /// FNV-1a over the serialized records.
    std::uint64_t digest() const {
        std::uint64_t h = 0xcbf29ce484222325ULL;
        auto feed = [&h](std::uint8_t byte) {
            h ^= byte;
            h *= 0x100000001b3ULL;
        };
        for (const auto &r : records) {
            for (auto b : r.syndrome.bits) {
                feed(b);
            }
            feed(static_cast<std::uint8_t>(class_char(r.cls)));
        }
        return h;
    }

    double class_fraction(LogicalClass c) const {
        if (records.empty()) {
            return 0.0;
        }
        std::size_t n = 0;
        for (const auto &r : records) {
            n += r.cls == c ? 1 : 0;
        }
        return static_cast<double>(n) / static_cast<double>(records.size());
    }
};

/// Record i samples its error with stream key i, so the dataset is a pure
/// function of (d, p, n, seed).
inline Dataset generate_dataset(const Lattice &lat, double p_train, std::size_t n, std::uint64_t seed) {
    if (n == 0) {
        throw std::invalid_argument("dataset size must be >= 1");
    }
    const SimpleDecoder simple(lat);
    Dataset ds{lat.d(), p_train, seed, {}};
    ds.records.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        auto error = sample_depolarizing(lat, p_train, TrialRng(seed, i));
        auto s = syndrome_of(lat, error);
        error ^= simple.decode(s);
        ds.records.push_back({std::move(s), residual_class(lat, error)});
    }
    return ds;
}

/// Fixed-width hex, most significant digit first; bit 0 (check 0) is the
/// least significant bit.
inline std::string syndrome_to_hex(const Syndrome &s) {
    static constexpr char digits[] = "0123456789abcdef";
    const std::size_t width = (s.size() + 3) / 4;
    std::string out(width, '0');
    for (std::size_t nib = 0; nib < width; ++nib) {
        unsigned v = 0;
        for (std::size_t b = 0; b < 4; ++b) {
            const std::size_t bit = nib * 4 + b;
            if (bit < s.size() && s.bits[bit]) {
                v |= 1U << b;
            }
        }
        out[width - 1 - nib] = digits[v];
    }
    return out;
}

inline Syndrome syndrome_from_hex(const std::string &hex, std::size_t nbits) {
    const std::size_t width = (nbits + 3) / 4;
    if (hex.size() != width) {
        throw std::invalid_argument("syndrome '" + hex + "' should have " + std::to_string(width) + " hex digits");
    }
    Syndrome s(nbits);
    for (std::size_t nib = 0; nib < width; ++nib) {
        const char ch = hex[width - 1 - nib];
        unsigned v;
        if (ch >= '0' && ch <= '9') {
            v = static_cast<unsigned>(ch - '0');
        } else if (ch >= 'a' && ch <= 'f') {
            v = static_cast<unsigned>(ch - 'a' + 10);
        } else if (ch >= 'A' && ch <= 'F') {
            v = static_cast<unsigned>(ch - 'A' + 10);
        } else {
            throw std::invalid_argument("bad hex digit in syndrome '" + hex + "'");
        }
        for (std::size_t b = 0; b < 4; ++b) {
            const std::size_t bit = nib * 4 + b;
            if (v & (1U << b)) {
                if (bit >= nbits) {
                    throw std::invalid_argument("syndrome '" + hex + "' sets bits past the check count");
                }
                s.bits[bit] = 1;
            }
        }
    }
    return s;
}

inline std::string format_probability(double p) {
    std::ostringstream os;
    os.precision(17);
    os << p;
    return os.str();
}

inline void write_dataset(std::ostream &os, const Dataset &ds) {
    os << "qectg-dataset v1 d=" << ds.d << " p=" << format_probability(ds.p_train) << " n=" << ds.records.size()
       << " seed=" << ds.seed << '\n';
    for (const auto &r : ds.records) {
        os << syndrome_to_hex(r.syndrome) << ' ' << class_char(r.cls) << '\n';
    }
}

inline void save_dataset(const std::string &path, const Dataset &ds) {
    std::ofstream os(path, std::ios::binary);
    if (!os) {
        throw std::runtime_error("cannot open '" + path + "' for writing");
    }
    write_dataset(os, ds);
    if (!os) {
        throw std::runtime_error("failed writing '" + path + "'");
    }
}

namespace detail {

/// Parses "key=value" out of a whitespace-separated header.
inline std::string header_field(const std::string &header, const std::string &key) {
    std::istringstream is(header);
    std::string tok;
    while (is >> tok) {
        if (tok.rfind(key + "=", 0) == 0) {
            return tok.substr(key.size() + 1);
        }
    }
    throw std::runtime_error("header is missing '" + key + "=': " + header);
}

}  // namespace detail

inline Dataset read_dataset(std::istream &is) {
    std::string header;
    if (!std::getline(is, header) || header.rfind("qectg-dataset v1 ", 0) != 0) {
        throw std::runtime_error("not a qectg-dataset v1 file");
    }
    Dataset ds;
    ds.d = std::stoi(detail::header_field(header, "d"));
    ds.p_train = std::stod(detail::header_field(header, "p"));
    ds.seed = std::stoull(detail::header_field(header, "seed"));
    const auto n = std::stoull(detail::header_field(header, "n"));
    const Lattice lat(ds.d);
    ds.records.reserve(n);
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty()) {
            continue;
        }
        std::istringstream ls(line);
        std::string hex;
        std::string cls;
        if (!(ls >> hex >> cls) || cls.size() != 1) {
            throw std::runtime_error("malformed dataset record: " + line);
        }
        ds.records.push_back({syndrome_from_hex(hex, lat.check_count()), class_from_char(cls[0])});
    }
    if (ds.records.size() != n) {
        throw std::runtime_error("dataset header promises " + std::to_string(n) + " records, found " +
                                 std::to_string(ds.records.size()));
    }
    return ds;
}

inline Dataset load_dataset(const std::string &path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) {
        throw std::runtime_error("cannot open '" + path + "'");
    }
    return read_dataset(is);
}

}  // namespace qectg

#endif  // QECTG_DATASET_HPP
