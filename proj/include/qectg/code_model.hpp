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

#ifndef QECTG_CODE_MODEL_HPP
#define QECTG_CODE_MODEL_HPP

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qectg {

enum class CheckKind : std::uint8_t { Z, X };

inline char kind_char(CheckKind k) { return k == CheckKind::Z ? 'Z' : 'X'; }

/// Plaquette coordinate. Bulk plaquettes have pr, pc in 0..d-2; boundary
/// plaquettes sit at pr = -1, pr = d-1, pc = -1 or pc = d-1.
struct Plaquette {
    int pr = 0;
    int pc = 0;
    auto operator<=>(const Plaquette &) const = default;
};

struct Check {
    std::size_t id = 0;
    CheckKind kind = CheckKind::Z;
    std::vector<std::size_t> support;  // sorted data-qubit indices, size 2 or 4
    Plaquette plaquette;
};

/// Pauli operator on the data qubits, up to global phase. Y is encoded as both
/// bits set.
struct PauliFrame {
    std::vector<std::uint8_t> x_bits;
    std::vector<std::uint8_t> z_bits;

    PauliFrame() = default;
    explicit PauliFrame(std::size_t n) : x_bits(n, 0), z_bits(n, 0) {}

    std::size_t size() const { return x_bits.size(); }

    bool is_identity() const {
        return std::none_of(x_bits.begin(), x_bits.end(), [](auto b) { return b != 0; }) &&
               std::none_of(z_bits.begin(), z_bits.end(), [](auto b) { return b != 0; });
    }

    PauliFrame &operator^=(const PauliFrame &other) {
        if (other.size() != size()) {
            throw std::invalid_argument("PauliFrame size mismatch");
        }
        for (std::size_t q = 0; q < size(); ++q) {
            x_bits[q] ^= other.x_bits[q];
            z_bits[q] ^= other.z_bits[q];
        }
        return *this;
    }

    bool operator==(const PauliFrame &) const = default;
};

/// Bit per check, indexed by check id.
struct Syndrome {
    std::vector<std::uint8_t> bits;

    Syndrome() = default;
    explicit Syndrome(std::size_t n) : bits(n, 0) {}

    std::size_t size() const { return bits.size(); }
    std::size_t weight() const {
        return static_cast<std::size_t>(std::count(bits.begin(), bits.end(), std::uint8_t{1}));
    }
    bool is_zero() const { return weight() == 0; }

    Syndrome &operator^=(const Syndrome &other) {
        if (other.size() != size()) {
            throw std::invalid_argument("Syndrome size mismatch");
        }
        for (std::size_t i = 0; i < size(); ++i) {
            bits[i] ^= other.bits[i];
        }
        return *this;
    }

    bool operator==(const Syndrome &) const = default;
};

enum class LogicalClass : std::uint8_t { I = 0, X = 1, Z = 2, Y = 3 };

constexpr std::size_t kNumLogicalClasses = 4;

inline LogicalClass logical_class_from_parities(bool cx, bool cz) {
    return static_cast<LogicalClass>((cx ? 1 : 0) | (cz ? 2 : 0));
}

inline char class_char(LogicalClass c) {
    static constexpr std::array<char, 4> chars{'I', 'X', 'Z', 'Y'};
    return chars[static_cast<std::size_t>(c)];
}

inline LogicalClass class_from_char(char c) {
    switch (c) {
        case 'I': return LogicalClass::I;
        case 'X': return LogicalClass::X;
        case 'Z': return LogicalClass::Z;
        case 'Y': return LogicalClass::Y;
        default: throw std::invalid_argument(std::string("unknown logical class '") + c + "'");
    }
}

/// Rotated surface code of odd distance d. Data qubit (r, c) has index r*d + c.
/// Checks are ordered Z-kind first, then X-kind, each by plaquette row-major.
class Lattice {
   public:
    explicit Lattice(int d) : d_(d) {
        if (d < 3 || d % 2 == 0) {
            throw std::invalid_argument("code distance must be odd and >= 3, got " + std::to_string(d));
        }
        std::vector<std::pair<CheckKind, Plaquette>> plaquettes;
        for (int pr = -1; pr <= d - 1; ++pr) {
            for (int pc = -1; pc <= d - 1; ++pc) {
                if (auto kind = plaquette_kind(pr, pc)) {
                    plaquettes.emplace_back(*kind, Plaquette{pr, pc});
                }
            }
        }
        for (CheckKind kind : {CheckKind::Z, CheckKind::X}) {
            for (const auto &[k, pq] : plaquettes) {
                if (k != kind) {
                    continue;
                }
                Check check;
                check.id = checks_.size();
                check.kind = kind;
                check.plaquette = pq;
                for (int dr = 0; dr <= 1; ++dr) {
                    for (int dc = 0; dc <= 1; ++dc) {
                        int r = pq.pr + dr;
                        int c = pq.pc + dc;
                        if (r >= 0 && r < d && c >= 0 && c < d) {
                            check.support.push_back(qubit(r, c));
                        }
                    }
                }
                std::sort(check.support.begin(), check.support.end());
                plaquette_index_[pq] = check.id;
                checks_.push_back(std::move(check));
            }
        }
        for (int r = 0; r < d; ++r) {
            logical_x_support_.push_back(qubit(r, 0));
        }
        for (int c = 0; c < d; ++c) {
            logical_z_support_.push_back(qubit(d - 1, c));
        }
        qubit_checks_.resize(data_count());
        for (const auto &check : checks_) {
            for (auto q : check.support) {
                qubit_checks_[q].push_back(check.id);
            }
        }
    }

    int d() const { return d_; }
    std::size_t data_count() const { return static_cast<std::size_t>(d_) * static_cast<std::size_t>(d_); }
    std::size_t check_count() const { return checks_.size(); }
    const std::vector<Check> &checks() const { return checks_; }
    const Check &check(std::size_t id) const { return checks_.at(id); }
    const std::vector<std::size_t> &logical_x_support() const { return logical_x_support_; }
    const std::vector<std::size_t> &logical_z_support() const { return logical_z_support_; }

    /// Checks (of either kind) whose support contains data qubit q.
    const std::vector<std::size_t> &checks_of_qubit(std::size_t q) const { return qubit_checks_.at(q); }

    std::size_t qubit(int r, int c) const {
        return static_cast<std::size_t>(r) * static_cast<std::size_t>(d_) + static_cast<std::size_t>(c);
    }

    /// Check id at a plaquette, if a check lives there.
    std::optional<std::size_t> check_at(Plaquette pq) const {
        auto it = plaquette_index_.find(pq);
        if (it == plaquette_index_.end()) {
            return std::nullopt;
        }
        return it->second;
    }

    std::size_t check_at_or_throw(Plaquette pq) const {
        auto id = check_at(pq);
        if (!id) {
            throw std::logic_error("no check at plaquette (" + std::to_string(pq.pr) + "," + std::to_string(pq.pc) + ")");
        }
        return *id;
    }

    PauliFrame identity() const { return PauliFrame(data_count()); }

   private:
    std::optional<CheckKind> plaquette_kind(int pr, int pc) const {
        const int d = d_;
        const bool row_bulk = pr >= 0 && pr <= d - 2;
        const bool col_bulk = pc >= 0 && pc <= d - 2;
        if (row_bulk && col_bulk) {
            return (pr + pc) % 2 == 0 ? CheckKind::Z : CheckKind::X;
        }
        if (pr == -1 && col_bulk && pc % 2 == 0) {
            return CheckKind::X;
        }
        if (pr == d - 1 && col_bulk && pc % 2 == 1) {
            return CheckKind::X;
        }
        if (pc == -1 && row_bulk && pr % 2 == 1) {
            return CheckKind::Z;
        }
        if (pc == d - 1 && row_bulk && pr % 2 == 0) {
            return CheckKind::Z;
        }
        return std::nullopt;
    }

    int d_;
    std::vector<Check> checks_;
    std::vector<std::size_t> logical_x_support_;
    std::vector<std::size_t> logical_z_support_;
    std::map<Plaquette, std::size_t> plaquette_index_;
    std::vector<std::vector<std::size_t>> qubit_checks_;
};

inline Lattice build_lattice(int d) { return Lattice(d); }

inline PauliFrame compose(const PauliFrame &a, const PauliFrame &b) {
    PauliFrame out = a;
    out ^= b;
    return out;
}

/// Z-kind checks see X components, X-kind checks see Z components.
inline Syndrome syndrome_of(const Lattice &lat, const PauliFrame &frame) {
    if (frame.size() != lat.data_count()) {
        throw std::invalid_argument("frame has " + std::to_string(frame.size()) + " qubits, lattice has " +
                                    std::to_string(lat.data_count()));
    }
    Syndrome s(lat.check_count());
    for (const auto &check : lat.checks()) {
        const auto &bits = check.kind == CheckKind::Z ? frame.x_bits : frame.z_bits;
        std::uint8_t parity = 0;
        for (auto q : check.support) {
            parity ^= bits[q];
        }
        s.bits[check.id] = parity;
    }
    return s;
}

/// Logical action of a frame with trivial syndrome.
inline LogicalClass residual_class(const Lattice &lat, const PauliFrame &frame) {
    if (!syndrome_of(lat, frame).is_zero()) {
        throw std::invalid_argument("residual_class: frame has a nontrivial syndrome");
    }
    std::uint8_t cx = 0;
    std::uint8_t cz = 0;
    for (auto q : lat.logical_z_support()) {
        cx ^= frame.x_bits[q];
    }
    for (auto q : lat.logical_x_support()) {
        cz ^= frame.z_bits[q];
    }
    return logical_class_from_parities(cx != 0, cz != 0);
}

/// Representative frame for a logical class: X on the logical-X support, Z on
/// the logical-Z support, both for Y.
inline PauliFrame logical_operator(const Lattice &lat, LogicalClass c) {
    PauliFrame f = lat.identity();
    const auto v = static_cast<unsigned>(c);
    if (v & 1U) {
        for (auto q : lat.logical_x_support()) {
            f.x_bits[q] ^= 1;
        }
    }
    if (v & 2U) {
        for (auto q : lat.logical_z_support()) {
            f.z_bits[q] ^= 1;
        }
    }
    return f;
}

inline PauliFrame single_pauli(const Lattice &lat, std::size_t q, char pauli) {
    PauliFrame f = lat.identity();
    if (pauli == 'X' || pauli == 'Y') {
        f.x_bits.at(q) = 1;
    }
    if (pauli == 'Z' || pauli == 'Y') {
        f.z_bits.at(q) = 1;
    }
    return f;
}

}  // namespace qectg

#endif  // QECTG_CODE_MODEL_HPP
