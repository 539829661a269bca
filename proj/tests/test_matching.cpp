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

#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "qectg/matching.hpp"
#include "qectg/noise.hpp"

using namespace qectg;

namespace {

std::int64_t matching_weight(const std::vector<std::vector<std::int64_t>> &w,
                             const std::vector<std::pair<std::size_t, std::size_t>> &pairs) {
    std::int64_t total = 0;
    for (auto [a, b] : pairs) total += w[a][b];
    return total;
}

std::vector<WeightedEdge> complete_edges(const std::vector<std::vector<std::int64_t>> &w) {
    std::vector<WeightedEdge> edges;
    for (std::size_t i = 0; i < w.size(); ++i)
        for (std::size_t j = i + 1; j < w.size(); ++j) edges.push_back({i, j, w[i][j]});
    return edges;
}

}  // namespace

TEST(DetectorGraph, DistanceThreeStructure) {
    Lattice lat(3);
    const auto g = build_detector_graph(lat, CheckKind::Z);
    EXPECT_EQ(g.node_count(), 5u);
    EXPECT_EQ(g.edges().size(), 9u);
    const auto n00 = g.node_of_check(lat.check_at_or_throw({0, 0}));
    const auto n11 = g.node_of_check(lat.check_at_or_throw({1, 1}));
    const auto &e4 = g.edges()[4];
    EXPECT_EQ(e4.qubit, 4u);
    EXPECT_EQ(std::minmax(e4.a, e4.b), std::minmax(n00, n11));
    const auto &e2 = g.edges()[2];
    EXPECT_EQ(e2.qubit, 2u);
    EXPECT_EQ(e2.b, g.boundary_node());
    EXPECT_THROW(g.node_of_check(lat.check_at_or_throw({0, 1})), std::invalid_argument);
}

TEST(DetectorGraph, EdgeCountEqualsDataQubits) {
    for (int d : {3, 5, 7, 9}) {
        Lattice lat(d);
        for (auto kind : {CheckKind::Z, CheckKind::X}) {
            EXPECT_EQ(build_detector_graph(lat, kind).edges().size(), lat.data_count());
        }
    }
}

TEST(DetectorGraph, BoundaryDistanceClosedForm) {
    for (int d : {3, 5, 7, 9}) {
        Lattice lat(d);
        for (auto kind : {CheckKind::Z, CheckKind::X}) {
            const auto g = build_detector_graph(lat, kind);
            for (auto id : g.check_ids()) {
                const auto &pq = lat.check(id).plaquette;
                const int coord = kind == CheckKind::Z ? pq.pr : pq.pc;
                EXPECT_EQ(g.distance(g.node_of_check(id), g.boundary_node()),
                          static_cast<std::size_t>(std::min(coord + 1, d - 1 - coord)));
            }
        }
    }
}

TEST(DetectorGraph, MetricIsSymmetricWithTriangleInequality) {
    Lattice lat(7);
    std::mt19937_64 rng(8);
    for (auto kind : {CheckKind::Z, CheckKind::X}) {
        const auto g = build_detector_graph(lat, kind);
        const auto n = g.check_ids().size();
        for (int t = 0; t < 2000; ++t) {
            const auto a = rng() % n, b = rng() % n, c = rng() % n;
            EXPECT_EQ(g.distance(a, b), g.distance(b, a));
            EXPECT_LE(g.distance(a, c), g.distance(a, b) + g.distance(b, c));
            EXPECT_EQ(g.path(a, b).size(), g.distance(a, b));
        }
    }
}

TEST(Distances, Examples) {
    Lattice lat(3);
    const auto g = build_detector_graph(lat, CheckKind::Z);
    EXPECT_EQ(distances(g, {}).node_count(), 0u);
    EXPECT_TRUE(mwpm(distances(g, {})).empty());

    const auto a = lat.check_at_or_throw({0, 0});
    const auto b = lat.check_at_or_throw({1, 1});
    const auto inst = distances(g, {a, b});
    EXPECT_EQ(inst.weight(0, 1), 1);
    EXPECT_EQ(inst.weight(0, 2), 1);
    EXPECT_EQ(inst.weight(2, 3), 0);
    EXPECT_FALSE(inst.weight(0, 3).has_value());
    EXPECT_THROW(distances(g, {lat.check_at_or_throw({0, 1})}), std::invalid_argument);
}

TEST(Mwpm, SingleEventPairsWithTwin) {
    Lattice lat(5);
    const auto g = build_detector_graph(lat, CheckKind::Z);
    const auto pairs = mwpm(distances(g, {g.check_ids()[3]}));
    ASSERT_EQ(pairs.size(), 1u);
    EXPECT_EQ(pairs[0], (std::pair<std::size_t, std::size_t>{0, 1}));
}

TEST(Mwpm, CloseEventsPairTogether) {
    // Events at distance 1 from each other, 2 from the boundary.
    MatchingInstance inst;
    inst.events = {0, 1};
    inst.edges = {{0, 1, 1}, {0, 2, 2}, {1, 3, 2}, {2, 3, 0}};
    const auto pairs = mwpm(inst);
    EXPECT_EQ(pairs, (std::vector<std::pair<std::size_t, std::size_t>>{{0, 1}, {2, 3}}));
}

TEST(Mwpm, RejectsOddAndInfeasible) {
    EXPECT_THROW(min_weight_perfect_matching(3, {{0, 1, 1}, {1, 2, 1}}), std::invalid_argument);
    EXPECT_THROW(min_weight_perfect_matching(4, {{0, 1, 1}, {0, 2, 1}, {0, 3, 1}}), std::runtime_error);
}

TEST(Mwpm, MatchesBruteForceOnRandomCompleteGraphs) {
    std::mt19937_64 rng(1234);
    EXPECT_EQ(oracle::perfect_matching_count(12), 10395u);
    for (int t = 0; t < 300; ++t) {
        const std::size_t n = 2 * (1 + rng() % 6);
        std::vector<std::vector<std::int64_t>> w(n, std::vector<std::int64_t>(n, 0));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) w[i][j] = w[j][i] = static_cast<std::int64_t>(rng() % 21);
        const auto pairs = min_weight_perfect_matching(n, complete_edges(w));
        ASSERT_EQ(pairs.size(), n / 2);
        EXPECT_EQ(matching_weight(w, pairs), oracle::brute_force_min_matching(w)) << "instance " << t;
    }
}

TEST(Mwpm, MaxWeightMatchingKnownCases) {
    // Classic blossom cases: a triangle plus pendant forces blossom handling.
    auto mate = max_weight_matching(4, {{0, 1, 5}, {1, 2, 11}, {2, 0, 5}, {2, 3, 5}});
    EXPECT_EQ(mate, (std::vector<long>{-1, 2, 1, -1}));
    mate = max_weight_matching(4, {{0, 1, 5}, {1, 2, 11}, {2, 0, 5}, {2, 3, 5}}, true);
    EXPECT_EQ(mate, (std::vector<long>{1, 0, 3, 2}));
    // S-blossom relabeled as T-blossom.
    mate = max_weight_matching(7, {{1, 2, 9}, {1, 3, 8}, {2, 3, 10}, {1, 4, 5}, {4, 5, 4}, {1, 6, 3}});
    EXPECT_EQ(mate, (std::vector<long>{-1, 6, 3, 2, 5, 4, 1}));
    // Nested S-blossom, augment.
    mate = max_weight_matching(7, {{1, 2, 9}, {1, 3, 9}, {2, 3, 10}, {2, 4, 8}, {3, 5, 8}, {4, 5, 10}, {5, 6, 6}});
    EXPECT_EQ(mate, (std::vector<long>{-1, 3, 4, 1, 2, 6, 5}));
}

TEST(Mwpm, NestedBlossomRegressionCases) {
    struct Case {
        std::size_t n;
        std::vector<WeightedEdge> edges;
        std::vector<long> mate;
    };
    const std::vector<Case> cases{
        {5, {{1, 2, 8}, {1, 3, 9}, {2, 3, 10}, {3, 4, 7}}, {-1, 2, 1, 4, 3}},
        {7, {{1, 2, 8}, {1, 3, 9}, {2, 3, 10}, {3, 4, 7}, {1, 6, 5}, {4, 5, 6}}, {-1, 6, 3, 2, 5, 4, 1}},
        {7, {{1, 2, 9}, {1, 3, 8}, {2, 3, 10}, {1, 4, 5}, {4, 5, 3}, {3, 6, 4}}, {-1, 2, 1, 6, 5, 4, 3}},
        {9, {{1, 2, 10}, {1, 7, 10}, {2, 3, 12}, {3, 4, 20}, {3, 5, 20}, {4, 5, 25}, {5, 6, 10}, {6, 7, 10}, {7, 8, 8}},
         {-1, 2, 1, 4, 3, 6, 5, 8, 7}},
        {9,
         {{1, 2, 8}, {1, 3, 8}, {2, 3, 10}, {2, 4, 12}, {3, 5, 12}, {4, 5, 14}, {4, 6, 12}, {5, 7, 12}, {6, 7, 14},
          {7, 8, 12}},
         {-1, 2, 1, 5, 6, 3, 4, 8, 7}},
        {9, {{1, 2, 23}, {1, 5, 22}, {1, 6, 15}, {2, 3, 25}, {3, 4, 22}, {4, 5, 25}, {4, 8, 14}, {5, 7, 13}},
         {-1, 6, 3, 2, 8, 7, 1, 5, 4}},
        {9,
         {{1, 2, 19}, {1, 3, 20}, {1, 8, 8}, {2, 3, 25}, {2, 4, 18}, {3, 5, 18}, {4, 5, 13}, {4, 7, 7}, {5, 6, 7}},
         {-1, 8, 3, 2, 7, 6, 5, 4, 1}},
        {11,
         {{1, 2, 45}, {1, 5, 45}, {2, 3, 50}, {3, 4, 45}, {4, 5, 50}, {1, 6, 30}, {3, 9, 35}, {4, 8, 35}, {5, 7, 26},
          {9, 10, 5}},
         {-1, 6, 3, 2, 8, 7, 1, 5, 4, 10, 9}},
        {11,
         {{1, 2, 45}, {1, 5, 45}, {2, 3, 50}, {3, 4, 45}, {4, 5, 50}, {1, 6, 30}, {3, 9, 35}, {4, 8, 26}, {5, 7, 40},
          {9, 10, 5}},
         {-1, 6, 3, 2, 8, 7, 1, 5, 4, 10, 9}},
        {11,
         {{1, 2, 45}, {1, 5, 45}, {2, 3, 50}, {3, 4, 45}, {4, 5, 50}, {1, 6, 30}, {3, 9, 35}, {4, 8, 28}, {5, 7, 26},
          {9, 10, 5}},
         {-1, 6, 3, 2, 8, 7, 1, 5, 4, 10, 9}},
        {13,
         {{1, 2, 45}, {1, 7, 45}, {2, 3, 50}, {3, 4, 45}, {4, 5, 95}, {4, 6, 94}, {5, 6, 94}, {6, 7, 50}, {1, 8, 30},
          {3, 11, 35}, {5, 9, 36}, {7, 10, 26}, {11, 12, 5}},
         {-1, 8, 3, 2, 6, 9, 4, 10, 1, 5, 7, 12, 11}},
        {11,
         {{1, 2, 40}, {1, 3, 40}, {2, 3, 60}, {2, 4, 55}, {3, 5, 55}, {4, 5, 50}, {1, 8, 15}, {5, 7, 30}, {7, 6, 10},
          {8, 10, 10}, {4, 9, 30}},
         {-1, 2, 1, 5, 9, 3, 7, 6, 10, 4, 8}},
    };
    for (std::size_t i = 0; i < cases.size(); ++i) {
        EXPECT_EQ(max_weight_matching(cases[i].n, cases[i].edges), cases[i].mate) << "case " << i;
    }
}

TEST(MatchingDecoder, CorrectsAllWeightOneAtDistanceThree) {
    Lattice lat(3);
    MatchingDecoder dec(lat);
    EXPECT_TRUE(dec.decode(Syndrome(lat.check_count())).is_identity());
    for (std::size_t q = 0; q < lat.data_count(); ++q) {
        for (char p : {'X', 'Z', 'Y'}) {
            const auto e = single_pauli(lat, q, p);
            const auto s = syndrome_of(lat, e);
            const auto f = dec.decode(s);
            EXPECT_EQ(syndrome_of(lat, f), s);
            EXPECT_EQ(residual_class(lat, compose(e, f)), LogicalClass::I) << p << q;
        }
    }
}

TEST(MatchingDecoder, ReproducesSyndromesFromNoise) {
    for (int d : {3, 5, 7, 9}) {
        Lattice lat(d);
        MatchingDecoder dec(lat);
        for (std::uint64_t t = 0; t < 3000; ++t) {
            const auto e = sample_depolarizing(lat, 0.15, TrialRng(77, t));
            const auto s = syndrome_of(lat, e);
            ASSERT_EQ(syndrome_of(lat, dec.decode(s)), s);
        }
    }
}
