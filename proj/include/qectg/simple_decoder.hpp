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

#ifndef QECTG_SIMPLE_DECODER_HPP
#define QECTG_SIMPLE_DECODER_HPP

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "code_model.hpp"

namespace qectg {

enum class Boundary : std::uint8_t { Top, Bottom, Left, Right };

inline const char *boundary_name(Boundary b) {
    switch (b) {
        case Boundary::Top: return "top";
        case Boundary::Bottom: return "bottom";
        case Boundary::Left: return "left";
        case Boundary::Right: return "right";
    }
    return "?";
}

struct BoundaryDistance {
    Boundary boundary;
    int length;
};

/// Z-kind events route to the top or bottom boundary, X-kind events to the
/// left or right one. For odd d the two candidates never tie.
inline BoundaryDistance nearest_boundary(const Lattice &lat, std::size_t check_id) {
    const Check &check = lat.check(check_id);
    const int d = lat.d();
    if (check.kind == CheckKind::Z) {
        const int top = check.plaquette.pr + 1;
        const int bottom = d - 1 - check.plaquette.pr;
        return top < bottom ? BoundaryDistance{Boundary::Top, top} : BoundaryDistance{Boundary::Bottom, bottom};
    }
    const int left = check.plaquette.pc + 1;
    const int right = d - 1 - check.plaquette.pc;
    return left < right ? BoundaryDistance{Boundary::Left, left} : BoundaryDistance{Boundary::Right, right};
}

namespace detail {

struct Coord {
    int r;
    int c;
};

/// Rigid motion of the qubit grid that carries `target` onto the top row.
/// Carrying the left or right boundary to the top also swaps check kinds, so
/// every chain is walked as a Z-kind event heading up.
class TopFrame {
   public:
    TopFrame(int d, Boundary target) : d_(d), target_(target) {}

    Coord to_frame(Coord q) const {
        const int m = d_ - 1;
        switch (target_) {
            case Boundary::Top: return q;
            case Boundary::Bottom: return {m - q.r, m - q.c};
            case Boundary::Left: return {q.c, m - q.r};
            case Boundary::Right: return {m - q.c, q.r};
        }
        return q;
    }

    Coord from_frame(Coord q) const {
        const int m = d_ - 1;
        switch (target_) {
            case Boundary::Top: return q;
            case Boundary::Bottom: return {m - q.r, m - q.c};
            case Boundary::Left: return {m - q.c, q.r};
            case Boundary::Right: return {q.c, m - q.r};
        }
        return q;
    }

    /// Top-left corner of the image of a plaquette.
    Coord plaquette_to_frame(Plaquette pq) const {
        Coord lo{1 << 20, 1 << 20};
        for (int dr = 0; dr <= 1; ++dr) {
            for (int dc = 0; dc <= 1; ++dc) {
                Coord img = to_frame({pq.pr + dr, pq.pc + dc});
                lo.r = std::min(lo.r, img.r);
                lo.c = std::min(lo.c, img.c);
            }
        }
        return lo;
    }

   private:
    int d_;
    Boundary target_;
};

}  // namespace detail

/// Staircase of data qubits from a check to its nearest same-type boundary.
/// Walking up from plaquette (pr, pc): flip (pr, pc), or (pr, 0) on the left
/// edge, then step to (pr-1, pc-1), bouncing to (pr-1, pc+1) off the edge.
inline std::vector<std::size_t> correction_chain(const Lattice &lat, std::size_t check_id) {
    const Check &check = lat.check(check_id);
    const auto nb = nearest_boundary(lat, check_id);
    const detail::TopFrame frame(lat.d(), nb.boundary);
    auto pos = frame.plaquette_to_frame(check.plaquette);
    std::vector<std::size_t> chain;
    while (pos.r >= 0) {
        const detail::Coord flip{pos.r, pos.c >= 0 ? pos.c : pos.c + 1};
        const auto q = frame.from_frame(flip);
        chain.push_back(lat.qubit(q.r, q.c));
        pos = {pos.r - 1, pos.c - 1 >= -1 ? pos.c - 1 : pos.c + 1};
    }
    return chain;
}

/// Frame of single-qubit flips along `qubits` that a `kind` check detects.
inline PauliFrame flips_for(const Lattice &lat, CheckKind kind, const std::vector<std::size_t> &qubits) {
    PauliFrame f = lat.identity();
    auto &bits = kind == CheckKind::Z ? f.x_bits : f.z_bits;
    for (auto q : qubits) {
        bits[q] ^= 1;
    }
    return f;
}

/// Nearest-boundary decoder with every per-check chain built and validated up
/// front. Construction throws std::logic_error if any chain fails to fire
/// exactly its own check.
class SimpleDecoder {
   public:
    explicit SimpleDecoder(const Lattice &lat) : lat_(&lat) {
        chains_.reserve(lat.check_count());
        for (const auto &check : lat.checks()) {
            auto chain = correction_chain(lat, check.id);
            const auto nb = nearest_boundary(lat, check.id);
            const auto s = syndrome_of(lat, flips_for(lat, check.kind, chain));
            if (static_cast<int>(chain.size()) != nb.length || s.weight() != 1 || s.bits[check.id] != 1) {
                throw std::logic_error("simple decoder chain for check " + std::to_string(check.id) +
                                       " does not reproduce its syndrome");
            }
            chains_.push_back(std::move(chain));
        }
    }

    const Lattice &lattice() const { return *lat_; }
    const std::vector<std::size_t> &chain(std::size_t check_id) const { return chains_.at(check_id); }

    PauliFrame decode(const Syndrome &s) const {
        if (s.size() != lat_->check_count()) {
            throw std::invalid_argument("syndrome length does not match lattice");
        }
        PauliFrame f = lat_->identity();
        for (std::size_t id = 0; id < s.size(); ++id) {
            if (!s.bits[id]) {
                continue;
            }
            auto &bits = lat_->check(id).kind == CheckKind::Z ? f.x_bits : f.z_bits;
            for (auto q : chains_[id]) {
                bits[q] ^= 1;
            }
        }
        return f;
    }

   private:
    const Lattice *lat_;
    std::vector<std::vector<std::size_t>> chains_;
};

inline PauliFrame decode_simple(const Lattice &lat, const Syndrome &s) { return SimpleDecoder(lat).decode(s); }

}  // namespace qectg

#endif  // QECTG_SIMPLE_DECODER_HPP
