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

#ifndef QECTG_MATCHING_HPP
#define QECTG_MATCHING_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <array>
#include <optional>
#include <string>
#include <limits>
#include <stdexcept>
#include <utility>
#include <vector>

#include "blossom.hpp"
#include "code_model.hpp"

namespace qectg {

/// Unit-weight graph for one check kind: one node per check of that kind, one
/// virtual boundary node, and one edge per data qubit joining the checks of
/// that kind that contain it (or the check and the boundary).
class DetectorGraph {
   public:
    struct Edge {
        std::size_t a;
        std::size_t b;
        std::size_t qubit;
    };

    static constexpr std::size_t kUnreachable = std::numeric_limits<std::size_t>::max();

    DetectorGraph(const Lattice &lat, CheckKind kind) : kind_(kind), node_of_check_(lat.check_count(), kUnreachable) {
        for (const auto &check : lat.checks()) {
            if (check.kind == kind) {
                node_of_check_[check.id] = check_ids_.size();
                check_ids_.push_back(check.id);
            }
        }
        const std::size_t boundary = check_ids_.size();
        for (std::size_t q = 0; q < lat.data_count(); ++q) {
            std::vector<std::size_t> members;
            for (auto id : lat.checks_of_qubit(q)) {
                if (lat.check(id).kind == kind) {
                    members.push_back(node_of_check_[id]);
                }
            }
            if (members.size() == 1) {
                edges_.push_back({members[0], boundary, q});
            } else if (members.size() == 2) {
                edges_.push_back({std::min(members[0], members[1]), std::max(members[0], members[1]), q});
            } else {
                throw std::logic_error("data qubit in " + std::to_string(members.size()) + " checks of one kind");
            }
        }
        adjacency_.assign(node_count(), {});
        for (const auto &e : edges_) {
            adjacency_[e.a].push_back({e.b, e.qubit});
            adjacency_[e.b].push_back({e.a, e.qubit});
        }
        for (auto &adj : adjacency_) {
            std::sort(adj.begin(), adj.end());
        }
        trees_.reserve(node_count());
        for (std::size_t src = 0; src < node_count(); ++src) {
            trees_.push_back(bfs(src));
        }
    }

    CheckKind kind() const { return kind_; }
    std::size_t node_count() const { return check_ids_.size() + 1; }
    std::size_t boundary_node() const { return check_ids_.size(); }
    const std::vector<Edge> &edges() const { return edges_; }
    const std::vector<std::size_t> &check_ids() const { return check_ids_; }

    std::size_t node_of_check(std::size_t check_id) const {
        const auto n = node_of_check_.at(check_id);
        if (n == kUnreachable) {
            throw std::invalid_argument("check " + std::to_string(check_id) + " is not of this graph's kind");
        }
        return n;
    }

    std::size_t distance(std::size_t from, std::size_t to) const { return trees_.at(from).dist.at(to); }

    /// Data qubits along the canonical shortest path from `from` to `to`.
    std::vector<std::size_t> path(std::size_t from, std::size_t to) const {
        const auto &tree = trees_.at(from);
        if (tree.dist.at(to) == kUnreachable) {
            throw std::logic_error("detector graph nodes are disconnected");
        }
        std::vector<std::size_t> qubits;
        for (std::size_t v = to; v != from; v = tree.parent[v]) {
            qubits.push_back(tree.parent_qubit[v]);
        }
        return qubits;
    }

   private:
    struct Tree {
        std::vector<std::size_t> dist;
        std::vector<std::size_t> parent;
        std::vector<std::size_t> parent_qubit;
    };

    // Paths never pass through the boundary node; lowest-id neighbor first.
    Tree bfs(std::size_t src) const {
        Tree t{std::vector<std::size_t>(node_count(), kUnreachable), std::vector<std::size_t>(node_count(), kUnreachable),
               std::vector<std::size_t>(node_count(), kUnreachable)};
        std::deque<std::size_t> frontier{src};
        t.dist[src] = 0;
        while (!frontier.empty()) {
            const auto v = frontier.front();
            frontier.pop_front();
            if (v == boundary_node() && v != src) {
                continue;
            }
            for (const auto &[w, q] : adjacency_[v]) {
                if (t.dist[w] == kUnreachable) {
                    t.dist[w] = t.dist[v] + 1;
                    t.parent[w] = v;
                    t.parent_qubit[w] = q;
                    frontier.push_back(w);
                }
            }
        }
        return t;
    }

    CheckKind kind_;
    std::vector<std::size_t> check_ids_;
    std::vector<std::size_t> node_of_check_;
    std::vector<Edge> edges_;
    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> adjacency_;
    std::vector<Tree> trees_;
};

inline DetectorGraph build_detector_graph(const Lattice &lat, CheckKind kind) { return DetectorGraph(lat, kind); }

/// Boundary-twin matching problem for m events: node i < m is event i, node
/// m + i is its boundary twin. Event-event pairs weigh their graph distance,
/// an event and its own twin weigh the boundary distance, twins pair for free,
/// and event/other-twin pairs are absent.
struct MatchingInstance {
    std::vector<std::size_t> events;  // detector-graph node ids
    std::vector<WeightedEdge> edges;

    std::size_t node_count() const { return 2 * events.size(); }

    /// Weight of the (u, v) edge, if present.
    std::optional<std::int64_t> weight(std::size_t u, std::size_t v) const {
        for (const auto &e : edges) {
            if ((e.u == u && e.v == v) || (e.u == v && e.v == u)) {
                return e.weight;
            }
        }
        return std::nullopt;
    }
};

inline MatchingInstance distances(const DetectorGraph &g, const std::vector<std::size_t> &event_checks) {
    MatchingInstance inst;
    const std::size_t m = event_checks.size();
    inst.events.reserve(m);
    for (auto id : event_checks) {
        inst.events.push_back(g.node_of_check(id));
    }
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = i + 1; j < m; ++j) {
            inst.edges.push_back({i, j, static_cast<std::int64_t>(g.distance(inst.events[i], inst.events[j]))});
        }
        inst.edges.push_back({i, m + i, static_cast<std::int64_t>(g.distance(inst.events[i], g.boundary_node()))});
        for (std::size_t j = i + 1; j < m; ++j) {
            inst.edges.push_back({m + i, m + j, 0});
        }
    }
    return inst;
}

inline std::vector<std::pair<std::size_t, std::size_t>> mwpm(const MatchingInstance &inst) {
    return min_weight_perfect_matching(inst.node_count(), inst.edges);
}

/// Exact minimum-weight perfect matching decoder, run independently on the Z
/// events (yielding X corrections) and the X events (yielding Z corrections).
class MatchingDecoder {
   public:
    explicit MatchingDecoder(const Lattice &lat)
        : lat_(&lat), graphs_{DetectorGraph(lat, CheckKind::Z), DetectorGraph(lat, CheckKind::X)} {}

    const DetectorGraph &graph(CheckKind kind) const { return graphs_[kind == CheckKind::Z ? 0 : 1]; }

    PauliFrame decode(const Syndrome &s) const {
        if (s.size() != lat_->check_count()) {
            throw std::invalid_argument("syndrome length does not match lattice");
        }
        PauliFrame f = lat_->identity();
        for (const auto &g : graphs_) {
            std::vector<std::size_t> events;
            for (auto id : g.check_ids()) {
                if (s.bits[id]) {
                    events.push_back(id);
                }
            }
            if (events.empty()) {
                continue;
            }
            const auto inst = distances(g, events);
            const std::size_t m = inst.events.size();
            auto &bits = g.kind() == CheckKind::Z ? f.x_bits : f.z_bits;
            for (const auto &[a, b] : mwpm(inst)) {
                if (a >= m) {
                    continue;  // twin-twin
                }
                const auto to = b < m ? inst.events[b] : g.boundary_node();
                for (auto q : g.path(inst.events[a], to)) {
                    bits[q] ^= 1;
                }
            }
        }
        return f;
    }

   private:
    const Lattice *lat_;
    std::array<DetectorGraph, 2> graphs_;
};

inline PauliFrame decode_mwpm(const Lattice &lat, const Syndrome &s) { return MatchingDecoder(lat).decode(s); }

}  // namespace qectg

#endif  // QECTG_MATCHING_HPP
