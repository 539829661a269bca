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

// Command-line front end: lattice inspection, dataset generation, training,
// evaluation and sweeps.

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "qectg/qectg.hpp"

using namespace qectg;

namespace {

std::string support_string(const std::vector<std::size_t> &support) {
    std::string out;
    for (auto q : support) out += (out.empty() ? "" : ",") + std::to_string(q);
    return out;
}

int run_info(int d) {
    const Lattice lat(d);
    const auto tiles = make_tiles(lat);
    std::printf("distance %d: %zu data qubits, %zu checks (%zu Z, %zu X)\n", d, lat.data_count(), lat.check_count(),
                lat.check_count() / 2, lat.check_count() / 2);
    std::printf("logical X support: %s\n", support_string(lat.logical_x_support()).c_str());
    std::printf("logical Z support: %s\n", support_string(lat.logical_z_support()).c_str());
    std::printf("tiles: %zu, distributed inputs: %zu, gate inputs: %zu\n", tiles.size(),
                tiles.size() * kNumLogicalClasses, lat.check_count());
    std::printf("%4s %4s %10s  %-12s %s\n", "id", "kind", "plaquette", "support", "nearest boundary");
    for (const auto &c : lat.checks()) {
        const auto nb = nearest_boundary(lat, c.id);
        char plaq[32];
        std::snprintf(plaq, sizeof plaq, "(%d,%d)", c.plaquette.pr, c.plaquette.pc);
        std::printf("%4zu %4c %10s  %-12s %s %d\n", c.id, kind_char(c.kind), plaq, support_string(c.support).c_str(),
                    boundary_name(nb.boundary), nb.length);
    }
    return 0;
}

int run_gen_data(int d, double p, std::size_t n, std::uint64_t seed, const std::string &out) {
    const Lattice lat(d);
    const auto ds = generate_dataset(lat, p, n, seed);
    save_dataset(out, ds);
    std::printf("wrote %zu records to %s (class fractions I=%.4f X=%.4f Z=%.4f Y=%.4f)\n", ds.records.size(),
                out.c_str(), ds.class_fraction(LogicalClass::I), ds.class_fraction(LogicalClass::X),
                ds.class_fraction(LogicalClass::Z), ds.class_fraction(LogicalClass::Y));
    return 0;
}

void print_trace(const char *what, const std::vector<double> &trace) {
    std::printf("%s loss:", what);
    for (double l : trace) std::printf(" %.5f", l);
    std::printf("\n");
}

int run_train(const std::string &mode, const std::string &data, const std::string &prefix,
              const ClassifierConfig &cfg) {
    const auto ds = load_dataset(data);
    const Lattice lat(ds.d);
    if (mode == "distributed") {
        const auto m = train_distributed(ds, lat, cfg);
        print_trace("classifier", m.loss_trace);
        save_distributed(prefix, m);
        std::printf("wrote %s.tables and %s.mlp\n", prefix.c_str(), prefix.c_str());
    } else {
        const auto m = train_gated(ds, lat, cfg);
        std::printf("non-identity fraction %.4f\n", m.non_identity_fraction);
        print_trace("gate", m.gate_loss_trace);
        print_trace("classifier", m.distributed.loss_trace);
        save_gated(prefix, m);
        std::printf("wrote %s.tables, %s.mlp and %s.gate.mlp\n", prefix.c_str(), prefix.c_str(), prefix.c_str());
    }
    return 0;
}

/// Loads the models needed by `kinds` into `suite`. Distributed and gated
/// decoders use separate model sets since the gated classifier is trained
/// only on logical-error records.
void load_models(DecoderSuite &suite, const std::vector<DecoderKind> &kinds, const std::string &distributed_prefix,
                 const std::string &gated_prefix) {
    for (auto k : kinds) {
        if (k == DecoderKind::Distributed && !suite.supports(k)) {
            if (distributed_prefix.empty()) throw std::invalid_argument("decoder 'distributed' needs --models");
            suite.set_distributed(load_distributed(distributed_prefix));
        }
        if (k == DecoderKind::Gated && !suite.supports(k)) {
            if (gated_prefix.empty()) throw std::invalid_argument("decoder 'gated' needs model files");
            suite.set_gated(load_gated(gated_prefix));
        }
    }
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Surface-code decoder simulator: simple, matching and neural decoders"};
    app.require_subcommand(1);

    int d = 5;
    double p = 0.1;
    std::uint64_t seed = 1;
    std::size_t n = 200000;
    std::uint64_t trials = 100000;
    unsigned workers = default_workers();
    std::string out, data, prefix, mode, decoder, models, gated_models, csv;
    std::vector<std::string> decoders;
    std::vector<double> p_grid;
    ClassifierConfig cfg;

    auto *info = app.add_subcommand("info", "Print the check table of a distance-d lattice");
    info->add_option("--d", d, "Code distance (odd, >= 3)")->required();

    auto *gen = app.add_subcommand("gen-data", "Generate a labelled syndrome dataset");
    gen->add_option("--d", d, "Code distance")->required();
    gen->add_option("--p", p, "Depolarizing error rate")->capture_default_str();
    gen->add_option("--n", n, "Number of records")->capture_default_str();
    gen->add_option("--seed", seed, "Master seed")->capture_default_str();
    gen->add_option("--out", out, "Output dataset path")->required();

    auto *trn = app.add_subcommand("train", "Train distributed or gated models from a dataset");
    trn->add_option("--mode", mode, "distributed or gated")->required()->check(CLI::IsMember({"distributed", "gated"}));
    trn->add_option("--data", data, "Dataset path")->required()->check(CLI::ExistingFile);
    trn->add_option("--out-prefix", prefix, "Prefix for the model files")->required();
    trn->add_option("--hidden", cfg.hidden, "Hidden layer widths")->delimiter(',')->capture_default_str();
    trn->add_option("--lr", cfg.train.learning_rate, "Learning rate")->capture_default_str();
    trn->add_option("--momentum", cfg.train.momentum, "Momentum")->capture_default_str();
    trn->add_option("--batch", cfg.train.batch_size, "Mini-batch size")->capture_default_str();
    trn->add_option("--epochs", cfg.train.epochs, "Training epochs")->capture_default_str();
    trn->add_option("--l2", cfg.train.l2_penalty, "L2 penalty on weights")->capture_default_str();
    trn->add_option("--seed", cfg.train.seed, "Initialization and shuffling seed")->capture_default_str();

    auto *ev = app.add_subcommand("eval", "Estimate the logical error rate of one decoder");
    ev->add_option("--decoder", decoder, "simple, mwpm, distributed or gated")
        ->required()
        ->check(CLI::IsMember({"simple", "mwpm", "distributed", "gated"}));
    ev->add_option("--d", d, "Code distance")->required();
    ev->add_option("--p", p, "Depolarizing error rate")->required();
    ev->add_option("--trials", trials, "Monte Carlo trials")->capture_default_str();
    ev->add_option("--seed", seed, "Master seed")->capture_default_str();
    ev->add_option("--models", models, "Model file prefix for neural decoders");
    ev->add_option("--workers", workers, "Worker threads (default: QECTG_WORKERS or all cores)");

    auto *sw = app.add_subcommand("sweep", "Evaluate several decoders over a grid of error rates");
    sw->add_option("--decoders", decoders, "Comma-separated decoder list")
        ->required()
        ->delimiter(',')
        ->check(CLI::IsMember({"simple", "mwpm", "distributed", "gated"}));
    sw->add_option("--d", d, "Code distance")->required();
    sw->add_option("--p-grid", p_grid, "Comma-separated error rates")->required()->delimiter(',');
    sw->add_option("--trials", trials, "Monte Carlo trials per point")->capture_default_str();
    sw->add_option("--seed", seed, "Master seed")->capture_default_str();
    sw->add_option("--csv", csv, "Output CSV path")->required();
    sw->add_option("--models", models, "Model file prefix for the distributed decoder");
    sw->add_option("--gated-models", gated_models, "Model file prefix for the gated decoder (default: --models)");
    sw->add_option("--workers", workers, "Worker threads (default: QECTG_WORKERS or all cores)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*info) return run_info(d);
        if (*gen) return run_gen_data(d, p, n, seed, out);
        if (*trn) return run_train(mode, data, prefix, cfg);
        const Lattice lat(d);
        DecoderSuite suite(lat);
        if (*ev) {
            const auto kind = parse_decoder_kind(decoder);
            load_models(suite, {kind}, models, models);
            const auto r = evaluate(kind, suite, p, trials, seed, workers);
            std::printf("%s\n%s\n", kCsvHeader, csv_row(r).c_str());
            return 0;
        }
        std::vector<DecoderKind> kinds;
        for (const auto &name : decoders) kinds.push_back(parse_decoder_kind(name));
        load_models(suite, kinds, models, gated_models.empty() ? models : gated_models);
        for (const auto &r : sweep(kinds, suite, p_grid, trials, seed, csv, workers)) {
            std::printf("%s\n", csv_row(r).c_str());
        }
        std::printf("wrote %s\n", csv.c_str());
    } catch (const std::exception &e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
