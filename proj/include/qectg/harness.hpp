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

#ifndef QECTG_HARNESS_HPP
#define QECTG_HARNESS_HPP

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <iostream>
#include <mutex>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "code_model.hpp"
#include "dataset.hpp"
#include "matching.hpp"
#include "mlp.hpp"
#include "noise.hpp"
#include "simple_decoder.hpp"
#include "stats.hpp"
#include "tiles.hpp"

namespace qectg {

enum class DecoderKind { Simple, Mwpm, Distributed, Gated };

inline const char *decoder_name(DecoderKind k) {
    switch (k) {
        case DecoderKind::Simple: return "simple";
        case DecoderKind::Mwpm: return "mwpm";
        case DecoderKind::Distributed: return "distributed";
        case DecoderKind::Gated: return "gated";
    }
    return "?";
}

inline DecoderKind parse_decoder_kind(const std::string &name) {
    if (name == "simple") return DecoderKind::Simple;
    if (name == "mwpm") return DecoderKind::Mwpm;
    if (name == "distributed") return DecoderKind::Distributed;
    if (name == "gated") return DecoderKind::Gated;
    throw std::invalid_argument("unknown decoder '" + name + "' (expected simple|mwpm|distributed|gated)");
}

inline bool needs_models(DecoderKind k) { return k == DecoderKind::Distributed || k == DecoderKind::Gated; }

struct ClassifierConfig {
    std::vector<std::size_t> hidden{128, 64};
    TrainConfig train;
    double alpha = 1.0;
};

/// Tile tables plus the 4-class network reading their features.
struct DistributedModels {
    TileTableSet tables;
    MlpModel classifier;
    std::vector<double> loss_trace;
};

struct GatedModels {
    MlpModel gate;
    DistributedModels distributed;
    std::vector<double> gate_loss_trace;
    double non_identity_fraction = 0.0;
};

inline std::vector<double> syndrome_inputs(const Syndrome &s) { return {s.bits.begin(), s.bits.end()}; }

namespace detail {

inline std::vector<std::size_t> with_io(std::size_t in, const std::vector<std::size_t> &hidden, std::size_t out) {
    std::vector<std::size_t> dims{in};
    dims.insert(dims.end(), hidden.begin(), hidden.end());
    dims.push_back(out);
    return dims;
}

inline void warn_missing_classes(const TrainingSet &set, std::size_t classes, const char *what,
                                 std::size_t first_expected = 0) {
    std::vector<std::size_t> seen(classes, 0);
    for (auto y : set.labels) {
        ++seen[y];
    }
    for (std::size_t c = first_expected; c < classes; ++c) {
        if (seen[c] == 0) {
            std::cerr << "warning: " << what << " training set has no examples of class " << c << '\n';
        }
    }
}

inline void check_dataset(const Dataset &ds, const Lattice &lat) {
    if (ds.d != lat.d()) {
        throw std::invalid_argument("dataset distance " + std::to_string(ds.d) + " does not match lattice " +
                                    std::to_string(lat.d()));
    }
    if (ds.records.empty()) {
        throw std::invalid_argument("empty dataset");
    }
}

inline DistributedModels train_classifier(const Lattice &lat, const TileTableSet &tables,
                                          const std::vector<const Record *> &records, const ClassifierConfig &cfg,
                                          bool identity_expected = true) {
    const auto tiles = make_tiles(lat);
    TrainingSet set(kNumLogicalClasses * tiles.size());
    for (const auto *r : records) {
        set.add(make_features(tables, slice_syndrome(tiles, r->syndrome)), static_cast<std::size_t>(r->cls));
    }
    warn_missing_classes(set, kNumLogicalClasses, "distributed", identity_expected ? 0 : 1);
    auto model = init_mlp(with_io(set.dim, cfg.hidden, kNumLogicalClasses), cfg.train.seed);
    auto result = train(std::move(model), set, cfg.train);
    return {tables, std::move(result.model), std::move(result.loss_trace)};
}

}  // namespace detail

/// Fits per-tile tables on every record and trains the 4-class network on
/// their features.
inline DistributedModels train_distributed(const Dataset &ds, const Lattice &lat, const ClassifierConfig &cfg) {
    detail::check_dataset(ds, lat);
    const auto tables = fit_tables(lat, make_tiles(lat), ds, cfg.alpha);
    std::vector<const Record *> all;
    all.reserve(ds.records.size());
    for (const auto &r : ds.records) {
        all.push_back(&r);
    }
    return detail::train_classifier(lat, tables, all, cfg);
}

/// Gate: raw syndrome bits -> {I, not I}, trained on every record. The 4-class
/// network only sees records whose class is not I but keeps all four outputs.
inline GatedModels train_gated(const Dataset &ds, const Lattice &lat, const ClassifierConfig &cfg) {
    detail::check_dataset(ds, lat);
    GatedModels out;
    TrainingSet gate_set(lat.check_count());
    std::vector<const Record *> errors;
    for (const auto &r : ds.records) {
        const bool logical_error = r.cls != LogicalClass::I;
        gate_set.add(syndrome_inputs(r.syndrome), logical_error ? 1 : 0);
        if (logical_error) {
            errors.push_back(&r);
        }
    }
    out.non_identity_fraction = static_cast<double>(errors.size()) / static_cast<double>(ds.records.size());
    detail::warn_missing_classes(gate_set, 2, "gate");
    auto gate = init_mlp(detail::with_io(gate_set.dim, cfg.hidden, 2), cfg.train.seed);
    auto gate_result = train(std::move(gate), gate_set, cfg.train);
    out.gate = std::move(gate_result.model);
    out.gate_loss_trace = std::move(gate_result.loss_trace);

    const auto tables = fit_tables(lat, make_tiles(lat), ds, cfg.alpha);
    if (errors.empty()) {
        std::cerr << "warning: dataset has no logical-error records; gated classifier left untrained\n";
        out.distributed = {tables, init_mlp(detail::with_io(tables.tile_count() * kNumLogicalClasses, cfg.hidden,
                                                            kNumLogicalClasses),
                                            cfg.train.seed),
                           {}};
    } else {
        out.distributed = detail::train_classifier(lat, tables, errors, cfg, false);
    }
    return out;
}

/// All four decoders over one lattice. Neural kinds are available once their
/// models are attached.
class DecoderSuite {
   public:
    explicit DecoderSuite(const Lattice &lat) : lat_(&lat), tiles_(make_tiles(lat)), simple_(lat), matching_(lat) {}

    void set_distributed(DistributedModels m) {
        check_distributed(m);
        distributed_ = std::move(m);
    }

    void set_gated(GatedModels m) {
        check_distributed(m.distributed);
        if (m.gate.input_dim() != lat_->check_count() || m.gate.output_dim() != 2) {
            throw std::invalid_argument("gate network must map " + std::to_string(lat_->check_count()) +
                                        " syndrome bits to 2 classes");
        }
        gated_ = std::move(m);
    }

    const Lattice &lattice() const { return *lat_; }
    const std::vector<Tile> &tiles() const { return tiles_; }
    const SimpleDecoder &simple() const { return simple_; }
    const std::optional<DistributedModels> &distributed() const { return distributed_; }
    const std::optional<GatedModels> &gated() const { return gated_; }

    bool supports(DecoderKind k) const {
        switch (k) {
            case DecoderKind::Distributed: return distributed_.has_value();
            case DecoderKind::Gated: return gated_.has_value();
            default: return true;
        }
    }

    /// Class predicted by the 4-class network for a syndrome.
    LogicalClass predict_class(const DistributedModels &m, const Syndrome &s) const {
        const auto features = make_features(m.tables, slice_syndrome(tiles_, s));
        return static_cast<LogicalClass>(m.classifier.predict(features));
    }

    bool gate_flags_error(const Syndrome &s) const {
        if (!gated_) {
            throw std::logic_error("no gated models attached");
        }
        return gated_->gate.predict(syndrome_inputs(s)) == 1;
    }

    PauliFrame decode(DecoderKind kind, const Syndrome &s) const {
        switch (kind) {
            case DecoderKind::Simple: return simple_.decode(s);
            case DecoderKind::Mwpm: return matching_.decode(s);
            case DecoderKind::Distributed: {
                if (!distributed_) {
                    throw std::logic_error("distributed decoder has no models");
                }
                return supervised(*distributed_, s);
            }
            case DecoderKind::Gated: {
                if (!gated_) {
                    throw std::logic_error("gated decoder has no models");
                }
                if (!gate_flags_error(s)) {
                    return simple_.decode(s);
                }
                return supervised(gated_->distributed, s);
            }
        }
        throw std::logic_error("unknown decoder kind");
    }

   private:
    PauliFrame supervised(const DistributedModels &m, const Syndrome &s) const {
        auto f = simple_.decode(s);
        f ^= logical_operator(*lat_, predict_class(m, s));
        return f;
    }

    void check_distributed(const DistributedModels &m) const {
        if (m.tables.d() != lat_->d() || m.tables.tile_count() != tiles_.size()) {
            throw std::invalid_argument("tile tables were fitted for a different lattice");
        }
        if (m.classifier.input_dim() != kNumLogicalClasses * tiles_.size() ||
            m.classifier.output_dim() != kNumLogicalClasses) {
            throw std::invalid_argument("classifier must map " + std::to_string(kNumLogicalClasses * tiles_.size()) +
                                        " features to 4 classes");
        }
    }

    const Lattice *lat_;
    std::vector<Tile> tiles_;
    SimpleDecoder simple_;
    MatchingDecoder matching_;
    std::optional<DistributedModels> distributed_;
    std::optional<GatedModels> gated_;
};

struct EvalResult {
    std::string decoder;
    int d = 0;
    double p = 0.0;
    std::uint64_t trials = 0;
    std::uint64_t failures = 0;
    double ler = 0.0;
    double ci_low = 0.0;
    double ci_high = 0.0;
    std::uint64_t seed = 0;
    double wall_time_s = 0.0;

    Interval ci() const { return {ci_low, ci_high}; }
};

/// QECTG_WORKERS if set, else hardware concurrency.
inline unsigned default_workers() {
    if (const char *env = std::getenv("QECTG_WORKERS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v > 0) {
            return static_cast<unsigned>(v);
        }
    }
    return std::max(1U, std::thread::hardware_concurrency());
}

/// Monte Carlo logical error rate. Trial i samples its error from stream key
/// i, so the failure count depends only on (p, trials, seed). `decode` gets
/// the syndrome and the sampled error and returns a correction.
template <class DecodeFn>
EvalResult evaluate_with(const Lattice &lat, const std::string &name, double p, std::uint64_t trials,
                         std::uint64_t seed, unsigned workers, DecodeFn &&decode) {
    if (trials == 0) {
        throw std::invalid_argument("trials must be >= 1");
    }
    if (!(p >= 0.0 && p <= 1.0)) {
        throw std::invalid_argument("error probability must lie in [0, 1]");
    }
    workers = std::max(1U, static_cast<unsigned>(std::min<std::uint64_t>(workers, trials)));
    const auto start = std::chrono::steady_clock::now();
    std::vector<std::uint64_t> failures(workers, 0);
    std::vector<std::exception_ptr> errors(workers);
    auto run = [&](unsigned w) {
        try {
            const std::uint64_t lo = trials * w / workers;
            const std::uint64_t hi = trials * (w + 1) / workers;
            for (std::uint64_t i = lo; i < hi; ++i) {
                auto error = sample_depolarizing(lat, p, TrialRng(seed, i));
                const auto s = syndrome_of(lat, error);
                error ^= decode(s, error);
                if (!syndrome_of(lat, error).is_zero()) {
                    throw std::logic_error(name + " correction does not reproduce the syndrome (trial " +
                                           std::to_string(i) + ")");
                }
                if (residual_class(lat, error) != LogicalClass::I) {
                    ++failures[w];
                }
            }
        } catch (...) {
            errors[w] = std::current_exception();
        }
    };
    if (workers == 1) {
        run(0);
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back(run, w);
        }
        for (auto &t : pool) {
            t.join();
        }
    }
    for (const auto &e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }
    EvalResult r;
    r.decoder = name;
    r.d = lat.d();
    r.p = p;
    r.trials = trials;
    for (auto f : failures) {
        r.failures += f;
    }
    r.ler = static_cast<double>(r.failures) / static_cast<double>(trials);
    const auto ci = wilson_interval(r.failures, trials);
    r.ci_low = ci.low;
    r.ci_high = ci.high;
    r.seed = seed;
    r.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return r;
}

inline EvalResult evaluate(DecoderKind kind, const DecoderSuite &suite, double p, std::uint64_t trials,
                           std::uint64_t seed, unsigned workers) {
    if (!suite.supports(kind)) {
        throw std::invalid_argument(std::string("no models loaded for decoder '") + decoder_name(kind) + "'");
    }
    return evaluate_with(suite.lattice(), decoder_name(kind), p, trials, seed, workers,
                         [&](const Syndrome &s, const PauliFrame &) { return suite.decode(kind, s); });
}

inline constexpr const char *kCsvHeader = "decoder,d,p,trials,failures,ler,ci_low,ci_high,seed,wall_time_s";

inline std::string csv_row(const EvalResult &r) {
    std::ostringstream os;
    os.precision(10);
    os << r.decoder << ',' << r.d << ',' << r.p << ',' << r.trials << ',' << r.failures << ',' << r.ler << ','
       << r.ci_low << ',' << r.ci_high << ',' << r.seed << ',';
    os.precision(6);
    os << std::fixed << r.wall_time_s;
    return os.str();
}

/// One row per (kind, p), kinds outermost. Every point reuses `seed`.
inline std::vector<EvalResult> sweep(const std::vector<DecoderKind> &kinds, const DecoderSuite &suite,
                                     const std::vector<double> &p_grid, std::uint64_t trials, std::uint64_t seed,
                                     const std::string &csv_path, unsigned workers) {
    for (auto k : kinds) {
        if (!suite.supports(k)) {
            throw std::invalid_argument(std::string("no models loaded for decoder '") + decoder_name(k) + "'");
        }
    }
    std::ofstream os(csv_path, std::ios::binary);
    if (!os) {
        throw std::runtime_error("cannot open '" + csv_path + "' for writing");
    }
    os << kCsvHeader << '\n';
    std::vector<EvalResult> rows;
    for (auto k : kinds) {
        for (double p : p_grid) {
            rows.push_back(evaluate(k, suite, p, trials, seed, workers));
            os << csv_row(rows.back()) << '\n';
            os.flush();
        }
    }
    if (!os) {
        throw std::runtime_error("failed writing '" + csv_path + "'");
    }
    return rows;
}

/// <prefix>.tables and <prefix>.mlp; gated models add <prefix>.gate.mlp.
inline void save_distributed(const std::string &prefix, const DistributedModels &m) {
    save_tables(prefix + ".tables", m.tables);
    save_model(prefix + ".mlp", m.classifier);
}

inline DistributedModels load_distributed(const std::string &prefix) {
    return {load_tables(prefix + ".tables"), load_model(prefix + ".mlp"), {}};
}

inline void save_gated(const std::string &prefix, const GatedModels &m) {
    save_distributed(prefix, m.distributed);
    save_model(prefix + ".gate.mlp", m.gate);
}

inline GatedModels load_gated(const std::string &prefix) {
    GatedModels m;
    m.distributed = load_distributed(prefix);
    m.gate = load_model(prefix + ".gate.mlp");
    return m;
}

}  // namespace qectg

#endif  // QECTG_HARNESS_HPP
