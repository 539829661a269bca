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

#ifndef QECTG_BLOSSOM_HPP
#define QECTG_BLOSSOM_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qectg {

struct WeightedEdge {
    std::size_t u;
    std::size_t v;
    std::int64_t weight;
};

namespace detail {

/// Edmonds' weighted blossom algorithm for general graphs, O(n^3), primal-dual
/// with integer arithmetic: vertex duals and edge slacks are kept doubled so
/// integer weights never produce fractions.
///
/// Edge k has endpoints 2k (its u side) and 2k+1 (its v side); endpoint p
/// belongs to vertex endpoint_[p] and p ^ 1 is the opposite end. Indices in
/// [0, n) are vertices, [n, 2n) are nontrivial blossoms.
class MaxWeightMatcher {
   public:
    MaxWeightMatcher(std::size_t nvertex, const std::vector<WeightedEdge> &edges, bool max_cardinality)
        : n_(static_cast<long>(nvertex)), edges_(edges), max_cardinality_(max_cardinality) {}

    /// mate[v] is v's partner or -1.
    std::vector<long> run() {
        const long n = n_;
        const long nedge = static_cast<long>(edges_.size());
        std::vector<long> result(static_cast<std::size_t>(n), -1);
        if (nedge == 0) {
            return result;
        }
        std::int64_t max_weight = 0;
        for (const auto &e : edges_) {
            if (e.u == e.v || static_cast<long>(e.u) >= n || static_cast<long>(e.v) >= n) {
                throw std::invalid_argument("matching edge has invalid endpoints");
            }
            max_weight = std::max(max_weight, e.weight);
        }
        endpoint_.resize(2 * nedge);
        for (long p = 0; p < 2 * nedge; ++p) {
            const auto &e = edges_[p / 2];
            endpoint_[p] = static_cast<long>(p % 2 == 0 ? e.u : e.v);
        }
        neighbend_.assign(n, {});
        for (long k = 0; k < nedge; ++k) {
            neighbend_[edges_[k].u].push_back(2 * k + 1);
            neighbend_[edges_[k].v].push_back(2 * k);
        }
        mate_.assign(n, -1);
        label_.assign(2 * n, 0);
        labelend_.assign(2 * n, -1);
        inblossom_.resize(n);
        for (long v = 0; v < n; ++v) inblossom_[v] = v;
        blossomparent_.assign(2 * n, -1);
        blossomchilds_.assign(2 * n, {});
        blossombase_.assign(2 * n, -1);
        for (long v = 0; v < n; ++v) blossombase_[v] = v;
        blossomendps_.assign(2 * n, {});
        bestedge_.assign(2 * n, -1);
        blossombestedges_.assign(2 * n, {});
        has_bestedges_.assign(2 * n, false);
        unusedblossoms_.clear();
        for (long b = n; b < 2 * n; ++b) unusedblossoms_.push_back(b);
        dualvar_.assign(2 * n, 0);
        for (long v = 0; v < n; ++v) dualvar_[v] = max_weight;
        allowedge_.assign(nedge, false);

        for (long stage = 0; stage < n; ++stage) {
            std::fill(label_.begin(), label_.end(), 0);
            std::fill(bestedge_.begin(), bestedge_.end(), -1);
            for (long b = n; b < 2 * n; ++b) {
                blossombestedges_[b].clear();
                has_bestedges_[b] = false;
            }
            std::fill(allowedge_.begin(), allowedge_.end(), false);
            queue_.clear();
            for (long v = 0; v < n; ++v) {
                if (mate_[v] == -1 && label_[inblossom_[v]] == 0) {
                    assign_label(v, 1, -1);
                }
            }
            bool augmented = false;
            while (true) {
                while (!queue_.empty() && !augmented) {
                    const long v = queue_.back();
                    queue_.pop_back();
                    for (long p : neighbend_[v]) {
                        const long k = p / 2;
                        const long w = endpoint_[p];
                        if (inblossom_[v] == inblossom_[w]) {
                            continue;
                        }
                        std::int64_t kslack = 0;
                        if (!allowedge_[k]) {
                            kslack = slack(k);
                            if (kslack <= 0) {
                                allowedge_[k] = true;
                            }
                        }
                        if (allowedge_[k]) {
                            if (label_[inblossom_[w]] == 0) {
                                assign_label(w, 2, p ^ 1);
                            } else if (label_[inblossom_[w]] == 1) {
                                const long base = scan_blossom(v, w);
                                if (base >= 0) {
                                    add_blossom(base, k);
                                } else {
                                    augment_matching(k);
                                    augmented = true;
                                    break;
                                }
                            } else if (label_[w] == 0) {
                                label_[w] = 2;
                                labelend_[w] = p ^ 1;
                            }
                        } else if (label_[inblossom_[w]] == 1) {
                            const long b = inblossom_[v];
                            if (bestedge_[b] == -1 || kslack < slack(bestedge_[b])) {
                                bestedge_[b] = k;
                            }
                        } else if (label_[w] == 0) {
                            if (bestedge_[w] == -1 || kslack < slack(bestedge_[w])) {
                                bestedge_[w] = k;
                            }
                        }
                    }
                }
                if (augmented) {
                    break;
                }

                int deltatype = -1;
                std::int64_t delta = 0;
                long deltaedge = -1;
                long deltablossom = -1;
                if (!max_cardinality_) {
                    deltatype = 1;
                    delta = *std::min_element(dualvar_.begin(), dualvar_.begin() + n);
                }
                for (long v = 0; v < n; ++v) {
                    if (label_[inblossom_[v]] == 0 && bestedge_[v] != -1) {
                        const std::int64_t dv = slack(bestedge_[v]);
                        if (deltatype == -1 || dv < delta) {
                            delta = dv;
                            deltatype = 2;
                            deltaedge = bestedge_[v];
                        }
                    }
                }
                for (long b = 0; b < 2 * n; ++b) {
                    if (blossomparent_[b] == -1 && label_[b] == 1 && bestedge_[b] != -1) {
                        const std::int64_t ks = slack(bestedge_[b]);
                        if (ks % 2 != 0) {
                            throw std::logic_error("blossom: odd slack between S-vertices");
                        }
                        const std::int64_t dv = ks / 2;
                        if (deltatype == -1 || dv < delta) {
                            delta = dv;
                            deltatype = 3;
                            deltaedge = bestedge_[b];
                        }
                    }
                }
                for (long b = n; b < 2 * n; ++b) {
                    if (blossombase_[b] >= 0 && blossomparent_[b] == -1 && label_[b] == 2 &&
                        (deltatype == -1 || dualvar_[b] < delta)) {
                        delta = dualvar_[b];
                        deltatype = 4;
                        deltablossom = b;
                    }
                }
                if (deltatype == -1) {
                    deltatype = 1;
                    delta = std::max<std::int64_t>(0, *std::min_element(dualvar_.begin(), dualvar_.begin() + n));
                }
                for (long v = 0; v < n; ++v) {
                    if (label_[inblossom_[v]] == 1) {
                        dualvar_[v] -= delta;
                    } else if (label_[inblossom_[v]] == 2) {
                        dualvar_[v] += delta;
                    }
                }
                for (long b = n; b < 2 * n; ++b) {
                    if (blossombase_[b] >= 0 && blossomparent_[b] == -1) {
                        if (label_[b] == 1) {
                            dualvar_[b] += delta;
                        } else if (label_[b] == 2) {
                            dualvar_[b] -= delta;
                        }
                    }
                }
                if (deltatype == 1) {
                    break;
                } else if (deltatype == 2) {
                    allowedge_[deltaedge] = true;
                    long i = static_cast<long>(edges_[deltaedge].u);
                    long j = static_cast<long>(edges_[deltaedge].v);
                    if (label_[inblossom_[i]] == 0) {
                        std::swap(i, j);
                    }
                    queue_.push_back(i);
                } else if (deltatype == 3) {
                    allowedge_[deltaedge] = true;
                    queue_.push_back(static_cast<long>(edges_[deltaedge].u));
                } else {
                    expand_blossom(deltablossom, false);
                }
            }
            if (!augmented) {
                break;
            }
            for (long b = n; b < 2 * n; ++b) {
                if (blossomparent_[b] == -1 && blossombase_[b] >= 0 && label_[b] == 1 && dualvar_[b] == 0) {
                    expand_blossom(b, true);
                }
            }
        }
        for (long v = 0; v < n; ++v) {
            result[v] = mate_[v] >= 0 ? endpoint_[mate_[v]] : -1;
        }
        return result;
    }

   private:
    static long wrap(long j, std::size_t len) {
        const long m = static_cast<long>(len);
        return ((j % m) + m) % m;
    }

    std::int64_t slack(long k) const {
        const auto &e = edges_[k];
        return dualvar_[e.u] + dualvar_[e.v] - 2 * e.weight;
    }

    void blossom_leaves(long b, std::vector<long> &out) const {
        if (b < n_) {
            out.push_back(b);
            return;
        }
        for (long t : blossomchilds_[b]) {
            blossom_leaves(t, out);
        }
    }

    std::vector<long> leaves(long b) const {
        std::vector<long> out;
        blossom_leaves(b, out);
        return out;
    }

    void assign_label(long w, int t, long p) {
        const long b = inblossom_[w];
        label_[w] = label_[b] = t;
        labelend_[w] = labelend_[b] = p;
        bestedge_[w] = bestedge_[b] = -1;
        if (t == 1) {
            blossom_leaves(b, queue_);
        } else if (t == 2) {
            const long base = blossombase_[b];
            assign_label(endpoint_[mate_[base]], 1, mate_[base] ^ 1);
        }
    }

    /// Trace back from v and w to find a new blossom's base, or -1 if the two
    /// trees are disjoint (augmenting path).
    long scan_blossom(long v, long w) {
        std::vector<long> path;
        long base = -1;
        while (v != -1 || w != -1) {
            long b = inblossom_[v];
            if (label_[b] & 4) {
                base = blossombase_[b];
                break;
            }
            path.push_back(b);
            label_[b] = 5;
            if (labelend_[b] == -1) {
                v = -1;
            } else {
                v = endpoint_[labelend_[b]];
                b = inblossom_[v];
                v = endpoint_[labelend_[b]];
            }
            if (w != -1) {
                std::swap(v, w);
            }
        }
        for (long b : path) {
            label_[b] = 1;
        }
        return base;
    }

    void add_blossom(long base, long k) {
        long v = static_cast<long>(edges_[k].u);
        long w = static_cast<long>(edges_[k].v);
        const long bb = inblossom_[base];
        long bv = inblossom_[v];
        long bw = inblossom_[w];
        const long b = unusedblossoms_.back();
        unusedblossoms_.pop_back();
        blossombase_[b] = base;
        blossomparent_[b] = -1;
        blossomparent_[bb] = b;
        auto &path = blossomchilds_[b];
        auto &endps = blossomendps_[b];
        path.clear();
        endps.clear();
        while (bv != bb) {
            blossomparent_[bv] = b;
            path.push_back(bv);
            endps.push_back(labelend_[bv]);
            v = endpoint_[labelend_[bv]];
            bv = inblossom_[v];
        }
        path.push_back(bb);
        std::reverse(path.begin(), path.end());
        std::reverse(endps.begin(), endps.end());
        endps.push_back(2 * k);
        while (bw != bb) {
            blossomparent_[bw] = b;
            path.push_back(bw);
            endps.push_back(labelend_[bw] ^ 1);
            w = endpoint_[labelend_[bw]];
            bw = inblossom_[w];
        }
        label_[b] = 1;
        labelend_[b] = labelend_[bb];
        dualvar_[b] = 0;
        for (long leaf : leaves(b)) {
            if (label_[inblossom_[leaf]] == 2) {
                queue_.push_back(leaf);
            }
            inblossom_[leaf] = b;
        }
        std::vector<long> bestedgeto(2 * n_, -1);
        for (long child : path) {
            std::vector<long> candidates;
            if (!has_bestedges_[child]) {
                for (long leaf : leaves(child)) {
                    for (long p : neighbend_[leaf]) {
                        candidates.push_back(p / 2);
                    }
                }
            } else {
                candidates = blossombestedges_[child];
            }
            for (long kk : candidates) {
                long i = static_cast<long>(edges_[kk].u);
                long j = static_cast<long>(edges_[kk].v);
                if (inblossom_[j] == b) {
                    std::swap(i, j);
                }
                const long bj = inblossom_[j];
                if (bj != b && label_[bj] == 1 && (bestedgeto[bj] == -1 || slack(kk) < slack(bestedgeto[bj]))) {
                    bestedgeto[bj] = kk;
                }
            }
            blossombestedges_[child].clear();
            has_bestedges_[child] = false;
            bestedge_[child] = -1;
        }
        blossombestedges_[b].clear();
        for (long kk : bestedgeto) {
            if (kk != -1) {
                blossombestedges_[b].push_back(kk);
            }
        }
        has_bestedges_[b] = true;
        bestedge_[b] = -1;
        for (long kk : blossombestedges_[b]) {
            if (bestedge_[b] == -1 || slack(kk) < slack(bestedge_[b])) {
                bestedge_[b] = kk;
            }
        }
    }

    void expand_blossom(long b, bool endstage) {
        const std::vector<long> childs = blossomchilds_[b];
        for (long s : childs) {
            blossomparent_[s] = -1;
            if (s < n_) {
                inblossom_[s] = s;
            } else if (endstage && dualvar_[s] == 0) {
                expand_blossom(s, endstage);
            } else {
                for (long leaf : leaves(s)) {
                    inblossom_[leaf] = s;
                }
            }
        }
        if (!endstage && label_[b] == 2) {
            const auto &ch = blossomchilds_[b];
            const auto &eps = blossomendps_[b];
            const long entrychild = inblossom_[endpoint_[labelend_[b] ^ 1]];
            long j = static_cast<long>(std::find(ch.begin(), ch.end(), entrychild) - ch.begin());
            long jstep;
            long endptrick;
            if (j & 1) {
                j -= static_cast<long>(ch.size());
                jstep = 1;
                endptrick = 0;
            } else {
                jstep = -1;
                endptrick = 1;
            }
            long p = labelend_[b];
            while (j != 0) {
                label_[endpoint_[p ^ 1]] = 0;
                label_[endpoint_[eps[wrap(j - endptrick, eps.size())] ^ endptrick ^ 1]] = 0;
                assign_label(endpoint_[p ^ 1], 2, p);
                allowedge_[eps[wrap(j - endptrick, eps.size())] / 2] = true;
                j += jstep;
                p = eps[wrap(j - endptrick, eps.size())] ^ endptrick;
                allowedge_[p / 2] = true;
                j += jstep;
            }
            long bv = ch[wrap(j, ch.size())];
            label_[endpoint_[p ^ 1]] = label_[bv] = 2;
            labelend_[endpoint_[p ^ 1]] = labelend_[bv] = p;
            bestedge_[bv] = -1;
            j += jstep;
            while (ch[wrap(j, ch.size())] != entrychild) {
                bv = ch[wrap(j, ch.size())];
                if (label_[bv] == 1) {
                    j += jstep;
                    continue;
                }
                long labeled = -1;
                for (long leaf : leaves(bv)) {
                    if (label_[leaf] != 0) {
                        labeled = leaf;
                        break;
                    }
                }
                if (labeled != -1) {
                    label_[labeled] = 0;
                    label_[endpoint_[mate_[blossombase_[bv]]]] = 0;
                    assign_label(labeled, 2, labelend_[labeled]);
                }
                j += jstep;
            }
        }
        label_[b] = -1;
        labelend_[b] = -1;
        blossomchilds_[b].clear();
        blossomendps_[b].clear();
        blossombase_[b] = -1;
        blossombestedges_[b].clear();
        has_bestedges_[b] = false;
        bestedge_[b] = -1;
        unusedblossoms_.push_back(b);
    }

    /// Swap matched/unmatched edges along the even-length path inside blossom
    /// b from vertex v to the base.
    void augment_blossom(long b, long v) {
        long t = v;
        while (blossomparent_[t] != b) {
            t = blossomparent_[t];
        }
        if (t >= n_) {
            augment_blossom(t, v);
        }
        auto &ch = blossomchilds_[b];
        auto &eps = blossomendps_[b];
        const long i = static_cast<long>(std::find(ch.begin(), ch.end(), t) - ch.begin());
        long j = i;
        long jstep;
        long endptrick;
        if (i & 1) {
            j -= static_cast<long>(ch.size());
            jstep = 1;
            endptrick = 0;
        } else {
            jstep = -1;
            endptrick = 1;
        }
        while (j != 0) {
            j += jstep;
            t = ch[wrap(j, ch.size())];
            const long p = eps[wrap(j - endptrick, eps.size())] ^ endptrick;
            if (t >= n_) {
                augment_blossom(t, endpoint_[p]);
            }
            j += jstep;
            t = ch[wrap(j, ch.size())];
            if (t >= n_) {
                augment_blossom(t, endpoint_[p ^ 1]);
            }
            mate_[endpoint_[p]] = p ^ 1;
            mate_[endpoint_[p ^ 1]] = p;
        }
        std::rotate(ch.begin(), ch.begin() + i, ch.end());
        std::rotate(eps.begin(), eps.begin() + i, eps.end());
        blossombase_[b] = blossombase_[ch[0]];
    }

    void augment_matching(long k) {
        const long v = static_cast<long>(edges_[k].u);
        const long w = static_cast<long>(edges_[k].v);
        for (auto [s, p] : {std::pair<long, long>{v, 2 * k + 1}, std::pair<long, long>{w, 2 * k}}) {
            while (true) {
                const long bs = inblossom_[s];
                if (bs >= n_) {
                    augment_blossom(bs, s);
                }
                mate_[s] = p;
                if (labelend_[bs] == -1) {
                    break;
                }
                const long t = endpoint_[labelend_[bs]];
                const long bt = inblossom_[t];
                s = endpoint_[labelend_[bt]];
                const long j = endpoint_[labelend_[bt] ^ 1];
                if (bt >= n_) {
                    augment_blossom(bt, j);
                }
                mate_[j] = labelend_[bt];
                p = labelend_[bt] ^ 1;
            }
        }
    }

    long n_;
    const std::vector<WeightedEdge> &edges_;
    bool max_cardinality_;

    std::vector<long> endpoint_;
    std::vector<std::vector<long>> neighbend_;
    std::vector<long> mate_;
    std::vector<int> label_;
    std::vector<long> labelend_;
    std::vector<long> inblossom_;
    std::vector<long> blossomparent_;
    std::vector<std::vector<long>> blossomchilds_;
    std::vector<long> blossombase_;
    std::vector<std::vector<long>> blossomendps_;
    std::vector<long> bestedge_;
    std::vector<std::vector<long>> blossombestedges_;
    std::vector<bool> has_bestedges_;
    std::vector<long> unusedblossoms_;
    std::vector<std::int64_t> dualvar_;
    std::vector<bool> allowedge_;
    std::vector<long> queue_;
};

}  // namespace detail

/// Maximum-weight matching on a general graph. With max_cardinality set, the
/// weight is maximized among matchings of maximum size.
inline std::vector<long> max_weight_matching(std::size_t node_count, const std::vector<WeightedEdge> &edges,
                                             bool max_cardinality = false) {
    return detail::MaxWeightMatcher(node_count, edges, max_cardinality).run();
}

/// Minimum-weight perfect matching over the given edges (absent pairs are
/// forbidden). Returns pairs (a, b) with a < b, sorted. Throws if the node
/// count is odd or no perfect matching exists.
inline std::vector<std::pair<std::size_t, std::size_t>> min_weight_perfect_matching(
    std::size_t node_count, const std::vector<WeightedEdge> &edges) {
    if (node_count % 2 != 0) {
        throw std::invalid_argument("perfect matching needs an even node count, got " + std::to_string(node_count));
    }
    if (node_count == 0) {
        return {};
    }
    std::int64_t max_w = 0;
    for (const auto &e : edges) {
        if (e.weight < 0) {
            throw std::invalid_argument("matching weights must be nonnegative");
        }
        max_w = std::max(max_w, e.weight);
    }
    // Maximizing sum(C - w) over maximum-cardinality matchings minimizes sum(w)
    // over perfect ones.
    std::vector<WeightedEdge> flipped;
    flipped.reserve(edges.size());
    for (const auto &e : edges) {
        flipped.push_back({e.u, e.v, max_w + 1 - e.weight});
    }
    const auto mate = max_weight_matching(node_count, flipped, true);
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t v = 0; v < node_count; ++v) {
        if (mate[v] < 0) {
            throw std::runtime_error("no perfect matching exists");
        }
        if (static_cast<std::size_t>(mate[v]) > v) {
            pairs.emplace_back(v, static_cast<std::size_t>(mate[v]));
        }
    }
    return pairs;
}

}  // namespace qectg

#endif  // QECTG_BLOSSOM_HPP
