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

#ifndef QECTG_TILES_HPP
#define QECTG_TILES_HPP

#include <array>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "code_model.hpp"
#include "dataset.hpp"

namespace qectg {

constexpr std::size_t kTileChecks = 8;
constexpr std::size_t kTileWords = 256;

/// A distance-3 window of the lattice. Its eight checks are whole global
/// checks, listed in tile-local order: top, Z(0,0), X(0,1), left, right,
/// X(1,0), Z(1,1), bottom.
struct Tile {
    int origin_r = 0;
    int origin_c = 0;
    std::array<std::size_t, kTileChecks> check_ids{};
};

/// Overlapping d=3 tiles at even origins (2i, 2j); ((d-1)/2)^2 of them.
inline std::vector<Tile> make_tiles(const Lattice &lat) {
    std::vector<Tile> tiles;
    for (int r = 0; r <= lat.d() - 3; r += 2) {
        for (int c = 0; c <= lat.d() - 3; c += 2) {
            Tile t{r, c, {}};
            const std::array<Plaquette, kTileChecks> plaquettes{
                Plaquette{r - 1, c},     Plaquette{r, c},         Plaquette{r, c + 1},     Plaquette{r + 1, c - 1},
                Plaquette{r, c + 2},     Plaquette{r + 1, c},     Plaquette{r + 1, c + 1}, Plaquette{r + 2, c + 1}};
            for (std::size_t k = 0; k < kTileChecks; ++k) {
                t.check_ids[k] = lat.check_at_or_throw(plaquettes[k]);
            }
            tiles.push_back(t);
        }
    }
    return tiles;
}

/// Bit k of word t is the syndrome bit of tiles[t].check_ids[k].
inline std::vector<std::uint8_t> slice_syndrome(const std::vector<Tile> &tiles, const Syndrome &s) {
    std::vector<std::uint8_t> words(tiles.size(), 0);
    for (std::size_t t = 0; t < tiles.size(); ++t) {
        unsigned w = 0;
        for (std::size_t k = 0; k < kTileChecks; ++k) {
            if (s.bits.at(tiles[t].check_ids[k])) {
                w |= 1U << k;
            }
        }
        words[t] = static_cast<std::uint8_t>(w);
    }
    return words;
}

/// Per-tile conditional distribution of the global residual class given the
/// tile's 8-bit syndrome word, Laplace-smoothed:
///   P(c | w) = (count[w][c] + alpha) / (total[w] + 4 alpha).
class TileTableSet {
   public:
    using Row = std::array<double, kNumLogicalClasses>;
    using CountRow = std::array<std::uint64_t, kNumLogicalClasses>;

    TileTableSet() = default;
    TileTableSet(int d, std::size_t tile_count, double alpha)
        : d_(d),
          alpha_(alpha),
          counts_(tile_count * kTileWords, CountRow{}),
          probs_(tile_count * kTileWords, Row{}) {
        if (!(alpha > 0.0)) {
            throw std::invalid_argument("smoothing alpha must be positive");
        }
        normalize();
    }

    int d() const { return d_; }
    double alpha() const { return alpha_; }
    std::uint64_t digest() const { return digest_; }
    void set_digest(std::uint64_t digest) { digest_ = digest; }
    std::size_t tile_count() const { return probs_.size() / kTileWords; }

    const Row &row(std::size_t tile, std::uint8_t word) const { return probs_.at(tile * kTileWords + word); }
    const CountRow &counts(std::size_t tile, std::uint8_t word) const { return counts_.at(tile * kTileWords + word); }

    void add(const std::vector<std::uint8_t> &words, LogicalClass cls) {
        for (std::size_t t = 0; t < words.size(); ++t) {
            ++counts_[t * kTileWords + words[t]][static_cast<std::size_t>(cls)];
        }
    }

    /// Associative merge of raw counts; call normalize() afterwards.
    void merge(const TileTableSet &other) {
        if (other.counts_.size() != counts_.size()) {
            throw std::invalid_argument("cannot merge tables of different shape");
        }
        for (std::size_t i = 0; i < counts_.size(); ++i) {
            for (std::size_t c = 0; c < kNumLogicalClasses; ++c) {
                counts_[i][c] += other.counts_[i][c];
            }
        }
    }

    void normalize() {
        for (std::size_t i = 0; i < counts_.size(); ++i) {
            std::uint64_t total = 0;
            for (auto v : counts_[i]) {
                total += v;
            }
            const double denom = static_cast<double>(total) + 4.0 * alpha_;
            for (std::size_t c = 0; c < kNumLogicalClasses; ++c) {
                probs_[i][c] = (static_cast<double>(counts_[i][c]) + alpha_) / denom;
            }
        }
    }

    void write(std::ostream &os) const {
        os << "qectg-tables v1 d=" << d_ << " T=" << tile_count() << " alpha=" << format_probability(alpha_)
           << " digest=" << std::hex << std::setw(16) << std::setfill('0') << digest_ << std::dec << std::setfill(' ')
           << '\n';
        for (std::size_t t = 0; t < tile_count(); ++t) {
            os << "tile " << t << '\n';
            for (std::size_t w = 0; w < kTileWords; ++w) {
                const auto &r = probs_[t * kTileWords + w];
                os << format_probability(r[0]) << ' ' << format_probability(r[1]) << ' ' << format_probability(r[2])
                   << ' ' << format_probability(r[3]) << '\n';
            }
        }
    }

    static TileTableSet read(std::istream &is) {
        std::string header;
        if (!std::getline(is, header) || header.rfind("qectg-tables v1 ", 0) != 0) {
            throw std::runtime_error("not a qectg-tables v1 file");
        }
        TileTableSet out;
        out.d_ = std::stoi(detail::header_field(header, "d"));
        out.alpha_ = std::stod(detail::header_field(header, "alpha"));
        out.digest_ = std::stoull(detail::header_field(header, "digest"), nullptr, 16);
        const auto tiles = std::stoull(detail::header_field(header, "T"));
        out.counts_.assign(tiles * kTileWords, CountRow{});
        out.probs_.assign(tiles * kTileWords, Row{});
        std::string line;
        for (std::size_t t = 0; t < tiles; ++t) {
            if (!std::getline(is, line) || line != "tile " + std::to_string(t)) {
                throw std::runtime_error("table file: expected 'tile " + std::to_string(t) + "'");
            }
            for (std::size_t w = 0; w < kTileWords; ++w) {
                if (!std::getline(is, line) || is.eof()) {
                    throw std::runtime_error("table file truncated in tile " + std::to_string(t));
                }
                std::istringstream ls(line);
                auto &r = out.probs_[t * kTileWords + w];
                std::string tok;
                for (auto &v : r) {
                    if (!(ls >> tok)) {
                        throw std::runtime_error("table file: short row in tile " + std::to_string(t));
                    }
                    v = std::stod(tok);
                }
            }
        }
        return out;
    }

   private:
    int d_ = 0;
    double alpha_ = 1.0;
    std::uint64_t digest_ = 0;
    std::vector<CountRow> counts_;
    std::vector<Row> probs_;
};

inline TileTableSet fit_tables(const Lattice &lat, const std::vector<Tile> &tiles, const std::vector<Record> &records,
                               double alpha = 1.0) {
    if (records.empty()) {
        throw std::invalid_argument("cannot fit tile tables on an empty dataset");
    }
    TileTableSet tables(lat.d(), tiles.size(), alpha);
    for (const auto &r : records) {
        tables.add(slice_syndrome(tiles, r.syndrome), r.cls);
    }
    tables.normalize();
    return tables;
}

inline TileTableSet fit_tables(const Lattice &lat, const std::vector<Tile> &tiles, const Dataset &ds,
                               double alpha = 1.0) {
    auto tables = fit_tables(lat, tiles, ds.records, alpha);
    tables.set_digest(ds.digest());
    return tables;
}

/// Table rows concatenated tile-major, class-minor: 4 * T values.
inline std::vector<double> make_features(const TileTableSet &tables, const std::vector<std::uint8_t> &words) {
    if (words.size() != tables.tile_count()) {
        throw std::invalid_argument("expected " + std::to_string(tables.tile_count()) + " tile words, got " +
                                    std::to_string(words.size()));
    }
    std::vector<double> features;
    features.reserve(kNumLogicalClasses * words.size());
    for (std::size_t t = 0; t < words.size(); ++t) {
        const auto &r = tables.row(t, words[t]);
        features.insert(features.end(), r.begin(), r.end());
    }
    return features;
}

inline void save_tables(const std::string &path, const TileTableSet &tables) {
    std::ofstream os(path, std::ios::binary);
    if (!os) {
        throw std::runtime_error("cannot open '" + path + "' for writing");
    }
    tables.write(os);
}

inline TileTableSet load_tables(const std::string &path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) {
        throw std::runtime_error("cannot open '" + path + "'");
    }
    return TileTableSet::read(is);
}

}  // namespace qectg

#endif  // QECTG_TILES_HPP
