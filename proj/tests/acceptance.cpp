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

// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit status if
// any criterion fails. Every criterion runs at its full stated size.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "oracles.hpp"
#include "qectg/qectg.hpp"

using namespace qectg;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string &what) {
        if (!ok) {
            pass = false;
            detail += (detail.empty() ? "" : "; ") + std::string("violated: ") + what;
        }
    }
    void note(const std::string &what) { detail += (detail.empty() ? "" : "; ") + what; }
};

std::string fmt(const char *format, double a) {
    char buf[64];
    std::snprintf(buf, sizeof buf, format, a);
    return buf;
}

std::string describe(const EvalResult &r) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "%s p=%.2f ler=%.5f [%.5f, %.5f]", r.decoder.c_str(), r.p, r.ler, r.ci_low,
                  r.ci_high);
    return buf;
}

int failures = 0;

void run(int id, const std::string &title, double limit_s, const std::function<Outcome()> &body) {
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
        out = body();
    } catch (const std::exception &e) {
        out.pass = false;
        out.note(std::string("exception: ") + e.what());
    }
    const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (limit_s > 0.0 && elapsed > limit_s) {
        out.require(false, "runtime " + fmt("%.1f", elapsed) + " s exceeds " + fmt("%.0f", limit_s) + " s");
    }
    failures += out.pass ? 0 : 1;
    std::printf("%s [%2d] %s (%.1f s): %s\n", out.pass ? "PASS" : "FAIL", id, title.c_str(), elapsed,
                out.detail.c_str());
    std::fflush(stdout);
}

const unsigned kWorkers = default_workers();
constexpr std::uint64_t kTrainSeed = 11;
constexpr std::uint64_t kEvalSeed = 7;
constexpr std::uint64_t kTrials = 100000;

/// Distance-5 dataset and models shared by the learned-decoder criteria; each
/// piece is built on first use so its cost lands in the first criterion that
/// needs it.
struct Distance5 {
    Lattice lat{5};
    std::optional<Dataset> ds;
    std::optional<DistributedModels> distributed;
    std::optional<GatedModels> gated;
    std::optional<DecoderSuite> suite;

    const Dataset &dataset() {
        if (!ds) ds = generate_dataset(lat, 0.1, 200000, kTrainSeed);
        return *ds;
    }
    DecoderSuite &with_distributed() {
        if (!suite) suite.emplace(lat);
        if (!distributed) {
            distributed = train_distributed(dataset(), lat, ClassifierConfig{});
            suite->set_distributed(*distributed);
        }
        return *suite;
    }
    DecoderSuite &with_gated() {
        with_distributed();
        if (!gated) {
            gated = train_gated(dataset(), lat, ClassifierConfig{});
            suite->set_gated(*gated);
        }
        return *suite;
    }
} d5;

Outcome geometry() {
    Outcome out;
    for (int d : {3, 5, 7, 9}) {
        Lattice lat(d);
        const std::size_t expect = static_cast<std::size_t>(d * d - 1);
        out.require(lat.check_count() == expect, "d=" + std::to_string(d) + " check count");
        std::size_t z = 0;
        for (const auto &c : lat.checks()) z += c.kind == CheckKind::Z ? 1 : 0;
        out.require(z == expect / 2 && lat.check_count() - z == expect / 2, "d=" + std::to_string(d) + " per kind");
        for (const auto &a : lat.checks())
            for (const auto &b : lat.checks())
                if (a.kind != b.kind)
                    out.require(oracle::overlap(a.support, b.support) % 2 == 0,
                                "d=" + std::to_string(d) + " checks " + std::to_string(a.id) + "," +
                                    std::to_string(b.id) + " anticommute");
        const auto lx = logical_operator(lat, LogicalClass::X);
        const auto lz = logical_operator(lat, LogicalClass::Z);
        out.require(oracle::commutes_with_all_checks(lat, lx) && oracle::commutes_with_all_checks(lat, lz),
                    "d=" + std::to_string(d) + " logicals commute with checks");
        out.require(oracle::overlap(lat.logical_x_support(), lat.logical_z_support()) % 2 == 1,
                    "d=" + std::to_string(d) + " logical anticommutation");
        out.require(lat.logical_x_support().size() == static_cast<std::size_t>(d) &&
                        lat.logical_z_support().size() == static_cast<std::size_t>(d),
                    "d=" + std::to_string(d) + " logical weight");
        out.require(residual_class(lat, lx) == LogicalClass::X && residual_class(lat, lz) == LogicalClass::Z,
                    "d=" + std::to_string(d) + " logical classes");
    }
    out.note("d=3,5,7,9 checks 8/24/48/80, commuting, logicals anticommute");
    return out;
}

Outcome tile_structure() {
    Outcome out;
    const std::size_t expect_tiles[] = {4, 9, 16};
    const std::size_t expect_features[] = {16, 36, 64};
    int i = 0;
    for (int d : {5, 7, 9}) {
        Lattice lat(d);
        const auto tiles = make_tiles(lat);
        out.require(tiles.size() == expect_tiles[i], "d=" + std::to_string(d) + " tile count");
        std::vector<int> membership(lat.check_count(), 0);
        for (const auto &t : tiles)
            for (auto id : t.check_ids) ++membership[id];
        out.require(*std::min_element(membership.begin(), membership.end()) >= 1,
                    "d=" + std::to_string(d) + " coverage");
        out.require(*std::max_element(membership.begin(), membership.end()) == 2,
                    "d=" + std::to_string(d) + " max membership 2");
        const auto words = slice_syndrome(tiles, Syndrome(lat.check_count()));
        if (d == 5) out.require(words.size() * kTileChecks == 32, "d=5 sliced bits 32");
        TileTableSet tables(d, tiles.size(), 1.0);
        out.require(make_features(tables, words).size() == expect_features[i],
                    "d=" + std::to_string(d) + " feature dim");
        ++i;
    }
    out.note("tiles 4/9/16, features 16/36/64, d=5 sliced bits 32, max membership 2");
    return out;
}

Outcome simple_contract() {
    Outcome out;
    std::size_t violations = 0, checked = 0;
    {
        Lattice lat(3);
        const SimpleDecoder simple(lat);
        for (unsigned word = 0; word < 256; ++word, ++checked) {
            Syndrome s(8);
            for (unsigned b = 0; b < 8; ++b) s.bits[b] = (word >> b) & 1U;
            violations += syndrome_of(lat, simple.decode(s)) == s ? 0 : 1;
        }
    }
    for (int d : {5, 7, 9}) {
        Lattice lat(d);
        const SimpleDecoder simple(lat);
        std::mt19937_64 rng(1000 + d);
        for (int t = 0; t < 100000; ++t, ++checked) {
            Syndrome s(lat.check_count());
            for (auto &b : s.bits) b = static_cast<std::uint8_t>(rng() & 1U);
            violations += syndrome_of(lat, simple.decode(s)) == s ? 0 : 1;
        }
    }
    out.require(violations == 0, std::to_string(violations) + " syndromes not reproduced");
    out.note(std::to_string(checked) + " syndromes checked, " + std::to_string(violations) + " violations");
    return out;
}

std::size_t count_failures(const Lattice &lat, const std::vector<PauliFrame> &errors,
                           const std::function<PauliFrame(const Syndrome &)> &decode) {
    std::size_t failed = 0;
    for (const auto &e : errors) {
        failed += residual_class(lat, compose(e, decode(syndrome_of(lat, e)))) == LogicalClass::I ? 0 : 1;
    }
    return failed;
}

std::vector<PauliFrame> weight_one(const Lattice &lat) {
    std::vector<PauliFrame> out;
    for (std::size_t q = 0; q < lat.data_count(); ++q)
        for (char p : {'X', 'Z', 'Y'}) out.push_back(single_pauli(lat, q, p));
    return out;
}

std::vector<PauliFrame> weight_two(const Lattice &lat) {
    std::vector<PauliFrame> out;
    for (std::size_t a = 0; a < lat.data_count(); ++a)
        for (std::size_t b = a + 1; b < lat.data_count(); ++b)
            for (char pa : {'X', 'Z', 'Y'})
                for (char pb : {'X', 'Z', 'Y'}) out.push_back(compose(single_pauli(lat, a, pa), single_pauli(lat, b, pb)));
    return out;
}

Outcome exhaustive_correction() {
    Outcome out;
    Lattice lat3(3), lat5(5);
    const MatchingDecoder m3(lat3), m5(lat5);
    const auto w1 = weight_one(lat3);
    const auto w2 = weight_two(lat5);
    out.require(w1.size() == 27 && w2.size() == 2700, "pattern counts");
    const auto f1 = count_failures(lat3, w1, [&](const Syndrome &s) { return m3.decode(s); });
    const auto f2 = count_failures(lat5, w2, [&](const Syndrome &s) { return m5.decode(s); });
    out.require(f1 == 0, "mwpm d=3 weight-1 failures " + std::to_string(f1));
    out.require(f2 == 0, "mwpm d=5 weight-2 failures " + std::to_string(f2));

    const auto ds = generate_dataset(lat3, 0.15, 100000, 5);
    std::set<std::vector<std::uint8_t>> distinct;
    for (const auto &r : ds.records) distinct.insert(r.syndrome.bits);
    out.require(distinct.size() == 256, "d=3 training set has " + std::to_string(distinct.size()) + " syndromes");
    ClassifierConfig cfg;
    cfg.train.epochs = 5;
    DecoderSuite suite(lat3);
    suite.set_distributed(train_distributed(ds, lat3, cfg));
    const auto f3 = count_failures(lat3, w1, [&](const Syndrome &s) { return suite.decode(DecoderKind::Distributed, s); });
    out.require(f3 == 0, "distributed d=3 weight-1 failures " + std::to_string(f3));
    out.note("mwpm 0/27 and " + std::to_string(f2) + "/2700, distributed " + std::to_string(f3) + "/27");
    return out;
}

Outcome matching_optimality() {
    Outcome out;
    std::mt19937_64 rng(2718);
    std::size_t mismatches = 0;
    for (int inst = 0; inst < 1000; ++inst) {
        const std::size_t n = 2 * (1 + rng() % 6);
        std::vector<std::vector<std::int64_t>> w(n, std::vector<std::int64_t>(n, 0));
        std::vector<WeightedEdge> edges;
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = a + 1; b < n; ++b) {
                w[a][b] = w[b][a] = static_cast<std::int64_t>(rng() % 21);
                edges.push_back({a, b, w[a][b]});
            }
        std::int64_t total = 0;
        for (const auto &[a, b] : min_weight_perfect_matching(n, edges)) total += w[a][b];
        mismatches += total == oracle::brute_force_min_matching(w) ? 0 : 1;
    }
    out.require(mismatches == 0, std::to_string(mismatches) + " non-optimal matchings");
    out.note("1000 instances, " + std::to_string(mismatches) + " mismatches");
    return out;
}

Outcome exact_oracle() {
    Outcome out;
    Lattice lat(3);
    const SimpleDecoder simple(lat);
    const double exact = oracle::exact_ler_d3(lat, 0.1, [&](const Syndrome &s) { return simple.decode(s); });
    DecoderSuite suite(lat);
    const auto mc = evaluate(DecoderKind::Simple, suite, 0.1, 1000000, kEvalSeed, kWorkers);
    const auto [lo, hi] = oracle::binomial_band(exact, 1e6, kZ999);
    out.require(mc.ler >= lo && mc.ler <= hi, "Monte Carlo outside band");
    out.note("exact " + fmt("%.6f", exact) + ", MC " + fmt("%.6f", mc.ler) + ", band [" + fmt("%.6f", lo) + ", " +
             fmt("%.6f", hi) + "]");
    return out;
}

Outcome improvement() {
    Outcome out;
    auto &suite = d5.with_distributed();
    for (double p : {0.05, 0.10}) {
        const auto s = evaluate(DecoderKind::Simple, suite, p, kTrials, kEvalSeed, kWorkers);
        const auto n = evaluate(DecoderKind::Distributed, suite, p, kTrials, kEvalSeed, kWorkers);
        out.require(n.ler < s.ler && n.ci_high < s.ci_low, "p=" + fmt("%.2f", p) + " distributed not below simple");
        out.note(describe(s) + " vs " + describe(n));
    }
    return out;
}

Outcome parity() {
    Outcome out;
    auto &suite = d5.with_distributed();
    const auto m = evaluate(DecoderKind::Mwpm, suite, 0.08, kTrials, kEvalSeed, kWorkers);
    const auto n = evaluate(DecoderKind::Distributed, suite, 0.08, kTrials, kEvalSeed, kWorkers);
    const double ratio = n.ler / m.ler;
    out.require(ratio <= 3.0, "ratio above 3");
    out.note(describe(m) + " vs " + describe(n) + ", ratio " + fmt("%.3f", ratio) +
             (ratio <= 2.0 ? " (within factor 2)" : " (between 2 and 3)"));
    return out;
}

Outcome gated_equivalence() {
    Outcome out;
    auto &suite = d5.with_gated();
    for (double p : {0.02, 0.06, 0.10}) {
        const auto n = evaluate(DecoderKind::Distributed, suite, p, kTrials, kEvalSeed, kWorkers);
        const auto g = evaluate(DecoderKind::Gated, suite, p, kTrials, kEvalSeed, kWorkers);
        out.require(intervals_overlap(n.ci(), g.ci()), "p=" + fmt("%.2f", p) + " intervals disjoint");
        out.note(describe(n) + " vs " + describe(g));
    }
    return out;
}

Outcome dataset_structure() {
    Outcome out;
    Lattice lat3(3);
    const auto ds3 = generate_dataset(lat3, 0.1, 200000, kTrainSeed);
    std::set<std::vector<std::uint8_t>> distinct;
    for (const auto &r : ds3.records) distinct.insert(r.syndrome.bits);
    out.require(distinct.size() <= 256, "d=3 distinct syndromes above 256");
    out.note("d=3 distinct syndromes " + std::to_string(distinct.size()));
    for (int d : {5, 7, 9}) {
        const double frac = d == 5 ? d5.dataset().class_fraction(LogicalClass::I)
                                   : generate_dataset(Lattice(d), 0.1, 200000, kTrainSeed).class_fraction(LogicalClass::I);
        out.require(frac >= 0.30 && frac <= 0.55, "d=" + std::to_string(d) + " class-I fraction outside [0.30, 0.55]");
        out.note("d=" + std::to_string(d) + " class-I fraction " + fmt("%.4f", frac));
    }
    return out;
}

Outcome numerics() {
    Outcome out;
    std::mt19937_64 rng(4242);
    const std::vector<std::vector<std::size_t>> shapes{{16, 128, 64, 4}, {24, 32, 2}, {36, 20, 10, 4}, {8, 6, 4}};
    double worst = 0.0;
    int pairs = 0;
    for (int i = 0; i < 12; ++i, ++pairs) {
        const auto &dims = shapes[static_cast<std::size_t>(i) % shapes.size()];
        MlpModel m;
        TrainingSet data(dims.front());
        do {
            m = init_mlp(dims, rng());
            for (auto &l : m.layers())
                for (auto &b : l.biases) b = std::normal_distribution<double>(0.0, 0.1)(rng);
            data = TrainingSet(dims.front());
            std::vector<double> x(dims.front());
            for (int k = 0; k < 8; ++k) {
                for (auto &v : x) v = std::normal_distribution<double>(0.0, 1.0)(rng);
                data.add(x, rng() % dims.back());
            }
        } while (oracle::kink_margin(m, data) < 1e-4);
        const std::vector<std::size_t> batch{0, 1, 2, 3, 4, 5, 6, 7};
        const double l2 = i % 2 ? 1e-3 : 0.0;
        const auto analytic = loss_grad(m, data, batch, l2);
        const auto numeric = oracle::numeric_gradient(m, data, batch, l2);
        std::size_t k = 0;
        for (const auto &g : analytic.grads)
            for (const auto *vec : {&g.weights, &g.biases})
                for (double a : *vec) {
                    const double b = numeric[k++];
                    worst = std::max(worst, std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-3}));
                }
        out.require(k == numeric.size(), "gradient length");
    }
    out.require(worst < 1e-4, "gradient relative error " + fmt("%.2e", worst));
    out.note(std::to_string(pairs) + " gradient pairs, worst relative error " + fmt("%.2e", worst));

    Lattice lat(5);
    const auto ds = generate_dataset(lat, 0.1, 5000, 99);
    const auto again = generate_dataset(lat, 0.1, 5000, 99);
    std::stringstream a, b;
    write_dataset(a, ds);
    write_dataset(b, again);
    out.require(a.str() == b.str(), "datasets differ for identical seeds");

    const auto tables = fit_tables(lat, make_tiles(lat), ds);
    std::stringstream ts;
    tables.write(ts);
    const auto tables2 = TileTableSet::read(ts);
    bool same = tables2.tile_count() == tables.tile_count() && tables2.digest() == tables.digest();
    for (std::size_t t = 0; t < tables.tile_count(); ++t)
        for (unsigned w = 0; w < kTileWords; ++w)
            same = same && tables.row(t, static_cast<std::uint8_t>(w)) == tables2.row(t, static_cast<std::uint8_t>(w));
    out.require(same, "table round trip");

    auto m = init_mlp({16, 128, 64, 4}, 5);
    for (auto &l : m.layers())
        for (auto &v : l.biases) v = std::normal_distribution<double>(0.0, 1.0)(rng);
    std::stringstream ms;
    write_model(ms, m);
    out.require(read_model(ms) == m, "model round trip");

    DecoderSuite suite(lat);
    suite.set_distributed(train_distributed(ds, lat, ClassifierConfig{{16}, {}, 1.0}));
    for (auto k : {DecoderKind::Simple, DecoderKind::Mwpm, DecoderKind::Distributed}) {
        const auto one = evaluate(k, suite, 0.08, 20000, kEvalSeed, 1);
        for (unsigned w : {2U, 5U})
            out.require(evaluate(k, suite, 0.08, 20000, kEvalSeed, w).failures == one.failures,
                        std::string(decoder_name(k)) + " counts depend on workers");
    }
    out.note("datasets byte-identical, table and model files exact, counts worker-independent");
    return out;
}

Outcome gate_dims() {
    Outcome out;
    const std::size_t expect[] = {24, 48, 80};
    int i = 0;
    for (int d : {5, 7, 9}) {
        Lattice lat(d);
        const auto dims = detail::with_io(lat.check_count(), ClassifierConfig{}.hidden, 2);
        const auto gate = init_mlp(dims, 1);
        out.require(gate.input_dim() == expect[i] &&
                        syndrome_inputs(Syndrome(lat.check_count())).size() == expect[i],
                    "d=" + std::to_string(d) + " gate input");
        ++i;
    }
    out.note("gate inputs 24/48/80");
    return out;
}

}  // namespace

int main() {
    std::printf("qectg acceptance suite, %u worker thread(s)\n", kWorkers);
    run(1, "geometry", 1.0, geometry);
    run(2, "tile structure", 1.0, tile_structure);
    run(3, "simple decoder reproduces syndromes", 60.0, simple_contract);
    run(4, "exhaustive low-weight correction", 300.0, exhaustive_correction);
    run(5, "matching optimality", 60.0, matching_optimality);
    run(6, "exact enumeration oracle", 300.0, exact_oracle);
    run(7, "distributed improves on simple", 900.0, improvement);
    run(8, "distributed comparable to mwpm", 0.0, parity);
    run(9, "gated equivalent to distributed", 1200.0, gated_equivalence);
    run(10, "dataset structure", 0.0, dataset_structure);
    run(11, "numerics and reproducibility", 60.0, numerics);
    run(12, "gate input dimensions", 1.0, gate_dims);
    std::printf("%d of 12 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
