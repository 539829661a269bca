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

#ifndef QECTG_MLP_HPP
#define QECTG_MLP_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <numeric>
#include <random>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace qectg {

struct DenseLayer {
    std::size_t in = 0;
    std::size_t out = 0;
    std::vector<double> weights;  // out x in, row-major
    std::vector<double> biases;   // out

    DenseLayer() = default;
    DenseLayer(std::size_t in_dim, std::size_t out_dim) : in(in_dim), out(out_dim), weights(in_dim * out_dim, 0.0), biases(out_dim, 0.0) {}

    bool operator==(const DenseLayer &) const = default;
};

/// Dense feed-forward classifier: rectifier hidden layers, softmax output.
class MlpModel {
   public:
    MlpModel() = default;

    /// Zero-initialized model.
    explicit MlpModel(std::vector<std::size_t> layer_dims, std::uint64_t seed = 0) : dims_(std::move(layer_dims)), seed_(seed) {
        if (dims_.size() < 2) {
            throw std::invalid_argument("an MLP needs at least input and output dims");
        }
        for (auto d : dims_) {
            if (d == 0) {
                throw std::invalid_argument("layer dims must be positive");
            }
        }
        for (std::size_t l = 0; l + 1 < dims_.size(); ++l) {
            layers_.emplace_back(dims_[l], dims_[l + 1]);
        }
    }

    const std::vector<std::size_t> &dims() const { return dims_; }
    std::size_t input_dim() const { return dims_.front(); }
    std::size_t output_dim() const { return dims_.back(); }
    std::uint64_t seed() const { return seed_; }
    std::vector<DenseLayer> &layers() { return layers_; }
    const std::vector<DenseLayer> &layers() const { return layers_; }

    std::size_t parameter_count() const {
        std::size_t n = 0;
        for (const auto &l : layers_) {
            n += l.weights.size() + l.biases.size();
        }
        return n;
    }

    bool all_finite() const {
        for (const auto &l : layers_) {
            for (double v : l.weights) {
                if (!std::isfinite(v)) return false;
            }
            for (double v : l.biases) {
                if (!std::isfinite(v)) return false;
            }
        }
        return true;
    }

    /// Activations of every layer; acts[0] is the input, acts.back() the
    /// softmax output.
    void forward_all(std::span<const double> x, std::vector<std::vector<double>> &acts) const {
        if (x.size() != input_dim()) {
            throw std::invalid_argument("MLP input has " + std::to_string(x.size()) + " values, expected " +
                                        std::to_string(input_dim()));
        }
        acts.resize(layers_.size() + 1);
        acts[0].assign(x.begin(), x.end());
        for (std::size_t l = 0; l < layers_.size(); ++l) {
            const auto &layer = layers_[l];
            const auto &a = acts[l];
            auto &z = acts[l + 1];
            z.resize(layer.out);
            for (std::size_t o = 0; o < layer.out; ++o) {
                const double *w = &layer.weights[o * layer.in];
                double sum = layer.biases[o];
                for (std::size_t i = 0; i < layer.in; ++i) {
                    sum += w[i] * a[i];
                }
                z[o] = sum;
            }
            if (l + 1 < layers_.size()) {
                for (auto &v : z) {
                    v = v > 0.0 ? v : 0.0;
                }
            } else {
                softmax_in_place(z);
            }
        }
    }

    std::vector<double> forward(std::span<const double> x) const {
        std::vector<std::vector<double>> acts;
        forward_all(x, acts);
        return std::move(acts.back());
    }

    std::size_t predict(std::span<const double> x) const {
        const auto p = forward(x);
        return static_cast<std::size_t>(std::max_element(p.begin(), p.end()) - p.begin());
    }

    static void softmax_in_place(std::vector<double> &z) {
        const double mx = *std::max_element(z.begin(), z.end());
        double sum = 0.0;
        for (auto &v : z) {
            v = std::exp(v - mx);
            sum += v;
        }
        for (auto &v : z) {
            v /= sum;
        }
    }

    bool operator==(const MlpModel &) const = default;

   private:
    std::vector<std::size_t> dims_;
    std::uint64_t seed_ = 0;
    std::vector<DenseLayer> layers_;
};

/// Weights uniform in [-1/sqrt(fan_in), 1/sqrt(fan_in)], biases zero.
inline MlpModel init_mlp(const std::vector<std::size_t> &layer_dims, std::uint64_t seed) {
    if (layer_dims.size() < 2) {
        throw std::invalid_argument("an MLP needs at least input and output dims");
    }
    if (layer_dims.back() != 2 && layer_dims.back() != 4) {
        throw std::invalid_argument("classifier output dim must be 2 or 4");
    }
    MlpModel m(layer_dims, seed);
    std::mt19937_64 rng(seed);
    for (auto &layer : m.layers()) {
        const double scale = 1.0 / std::sqrt(static_cast<double>(layer.in));
        std::uniform_real_distribution<double> dist(-scale, scale);
        for (auto &w : layer.weights) {
            w = dist(rng);
        }
    }
    return m;
}

/// Labeled examples stored as one flat row-major matrix.
struct TrainingSet {
    std::size_t dim = 0;
    std::vector<double> inputs;
    std::vector<std::uint8_t> labels;

    explicit TrainingSet(std::size_t input_dim = 0) : dim(input_dim) {}

    std::size_t size() const { return labels.size(); }
    std::span<const double> input(std::size_t i) const { return {inputs.data() + i * dim, dim}; }

    void add(std::span<const double> x, std::size_t label) {
        if (x.size() != dim) {
            throw std::invalid_argument("training example has wrong dimension");
        }
        inputs.insert(inputs.end(), x.begin(), x.end());
        labels.push_back(static_cast<std::uint8_t>(label));
    }
};

struct LossAndGradient {
    double loss = 0.0;
    std::vector<DenseLayer> grads;
};

/// Mean cross-entropy over the selected examples plus (l2/2) * sum of squared
/// weights (biases are not penalized), with its exact gradient.
inline LossAndGradient loss_grad(const MlpModel &m, const TrainingSet &data, std::span<const std::size_t> batch,
                                 double l2 = 0.0) {
    if (batch.empty()) {
        throw std::invalid_argument("loss_grad needs a nonempty batch");
    }
    const auto &layers = m.layers();
    LossAndGradient out;
    for (const auto &l : layers) {
        out.grads.emplace_back(l.in, l.out);
    }
    std::vector<std::vector<double>> acts;
    std::vector<double> delta;
    std::vector<double> prev_delta;
    const double inv = 1.0 / static_cast<double>(batch.size());
    for (auto idx : batch) {
        m.forward_all(data.input(idx), acts);
        const std::size_t label = data.labels[idx];
        if (label >= m.output_dim()) {
            throw std::invalid_argument("label out of range for classifier");
        }
        const auto &probs = acts.back();
        out.loss -= std::log(std::max(probs[label], 1e-300)) * inv;
        delta.assign(probs.begin(), probs.end());
        delta[label] -= 1.0;
        for (std::size_t l = layers.size(); l-- > 0;) {
            const auto &layer = layers[l];
            auto &g = out.grads[l];
            const auto &a = acts[l];
            for (std::size_t o = 0; o < layer.out; ++o) {
                const double dz = delta[o] * inv;
                if (dz == 0.0) {
                    continue;
                }
                double *gw = &g.weights[o * layer.in];
                for (std::size_t i = 0; i < layer.in; ++i) {
                    gw[i] += dz * a[i];
                }
                g.biases[o] += dz;
            }
            if (l == 0) {
                break;
            }
            prev_delta.assign(layer.in, 0.0);
            for (std::size_t o = 0; o < layer.out; ++o) {
                const double dv = delta[o];
                if (dv == 0.0) {
                    continue;
                }
                const double *w = &layer.weights[o * layer.in];
                for (std::size_t i = 0; i < layer.in; ++i) {
                    prev_delta[i] += w[i] * dv;
                }
            }
            for (std::size_t i = 0; i < layer.in; ++i) {
                if (a[i] <= 0.0) {
                    prev_delta[i] = 0.0;
                }
            }
            delta.swap(prev_delta);
        }
    }
    if (l2 != 0.0) {
        for (std::size_t l = 0; l < layers.size(); ++l) {
            for (std::size_t k = 0; k < layers[l].weights.size(); ++k) {
                const double w = layers[l].weights[k];
                out.loss += 0.5 * l2 * w * w;
                out.grads[l].weights[k] += l2 * w;
            }
        }
    }
    return out;
}

struct TrainConfig {
    double learning_rate = 0.02;
    double momentum = 0.9;
    std::size_t batch_size = 32;
    std::size_t epochs = 15;
    double l2_penalty = 0.0;
    std::uint64_t seed = 1;
};

struct TrainResult {
    MlpModel model;
    /// loss_trace[0] is the full-data loss before training; entry e > 0 is the
    /// mean mini-batch loss of epoch e.
    std::vector<double> loss_trace;
};

inline double mean_loss(const MlpModel &m, const TrainingSet &data) {
    std::vector<std::size_t> all(data.size());
    std::iota(all.begin(), all.end(), std::size_t{0});
    double total = 0.0;
    constexpr std::size_t chunk = 4096;
    for (std::size_t s = 0; s < all.size(); s += chunk) {
        const std::size_t e = std::min(all.size(), s + chunk);
        total += loss_grad(m, data, std::span(all).subspan(s, e - s)).loss * static_cast<double>(e - s);
    }
    return total / static_cast<double>(data.size());
}

inline double accuracy(const MlpModel &m, const TrainingSet &data) {
    if (data.size() == 0) {
        return 0.0;
    }
    std::size_t hits = 0;
    for (std::size_t i = 0; i < data.size(); ++i) {
        hits += m.predict(data.input(i)) == data.labels[i] ? 1 : 0;
    }
    return static_cast<double>(hits) / static_cast<double>(data.size());
}

/// Mini-batch gradient descent with classical momentum and a per-epoch
/// shuffle drawn from cfg.seed. Throws std::runtime_error on a non-finite loss.
inline TrainResult train(MlpModel model, const TrainingSet &data, const TrainConfig &cfg) {
    if (!(cfg.learning_rate > 0.0) || cfg.batch_size == 0) {
        throw std::invalid_argument("learning rate must be > 0 and batch size >= 1");
    }
    if (data.dim != model.input_dim()) {
        throw std::invalid_argument("training data dim " + std::to_string(data.dim) + " does not match model input " +
                                    std::to_string(model.input_dim()));
    }
    if (data.size() == 0) {
        throw std::invalid_argument("cannot train on an empty set");
    }
    TrainResult result;
    result.loss_trace.push_back(mean_loss(model, data));
    std::vector<DenseLayer> velocity;
    for (const auto &l : model.layers()) {
        velocity.emplace_back(l.in, l.out);
    }
    std::vector<std::size_t> order(data.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::mt19937_64 rng(cfg.seed);
    for (std::size_t epoch = 0; epoch < cfg.epochs; ++epoch) {
        std::shuffle(order.begin(), order.end(), rng);
        double epoch_loss = 0.0;
        std::size_t batches = 0;
        for (std::size_t s = 0; s < order.size(); s += cfg.batch_size) {
            const std::size_t e = std::min(order.size(), s + cfg.batch_size);
            auto lg = loss_grad(model, data, std::span(order).subspan(s, e - s), cfg.l2_penalty);
            if (!std::isfinite(lg.loss)) {
                throw std::runtime_error("training diverged at epoch " + std::to_string(epoch) + ": non-finite loss");
            }
            epoch_loss += lg.loss;
            ++batches;
            auto &layers = model.layers();
            for (std::size_t l = 0; l < layers.size(); ++l) {
                auto &v = velocity[l];
                for (std::size_t k = 0; k < v.weights.size(); ++k) {
                    v.weights[k] = cfg.momentum * v.weights[k] - cfg.learning_rate * lg.grads[l].weights[k];
                    layers[l].weights[k] += v.weights[k];
                }
                for (std::size_t k = 0; k < v.biases.size(); ++k) {
                    v.biases[k] = cfg.momentum * v.biases[k] - cfg.learning_rate * lg.grads[l].biases[k];
                    layers[l].biases[k] += v.biases[k];
                }
            }
        }
        if (!model.all_finite()) {
            throw std::runtime_error("training diverged at epoch " + std::to_string(epoch) + ": non-finite weights");
        }
        result.loss_trace.push_back(epoch_loss / static_cast<double>(batches));
    }
    result.model = std::move(model);
    return result;
}

inline void write_model(std::ostream &os, const MlpModel &m) {
    os << "qectg-mlp v1 dims=";
    for (std::size_t i = 0; i < m.dims().size(); ++i) {
        os << (i ? "," : "") << m.dims()[i];
    }
    os << " seed=" << m.seed() << '\n';
    os.precision(17);
    for (std::size_t l = 0; l < m.layers().size(); ++l) {
        const auto &layer = m.layers()[l];
        os << "layer " << l << " in=" << layer.in << " out=" << layer.out << '\n';
        for (std::size_t o = 0; o < layer.out; ++o) {
            for (std::size_t i = 0; i < layer.in; ++i) {
                os << (i ? " " : "") << layer.weights[o * layer.in + i];
            }
            os << '\n';
        }
        for (std::size_t o = 0; o < layer.out; ++o) {
            os << (o ? " " : "") << layer.biases[o];
        }
        os << '\n';
    }
}

inline MlpModel read_model(std::istream &is) {
    std::string header;
    if (!std::getline(is, header) || header.rfind("qectg-mlp v1 ", 0) != 0) {
        throw std::runtime_error("not a qectg-mlp v1 file");
    }
    std::vector<std::size_t> dims;
    std::uint64_t seed = 0;
    {
        std::istringstream hs(header.substr(13));
        std::string tok;
        while (hs >> tok) {
            if (tok.rfind("dims=", 0) == 0) {
                std::istringstream ds(tok.substr(5));
                std::string part;
                while (std::getline(ds, part, ',')) {
                    dims.push_back(std::stoull(part));
                }
            } else if (tok.rfind("seed=", 0) == 0) {
                seed = std::stoull(tok.substr(5));
            }
        }
    }
    MlpModel m(dims, seed);
    auto read_values = [&is](std::vector<double>::iterator first, std::size_t count, const std::string &what) {
        std::string line;
        if (!std::getline(is, line) || is.eof()) {
            throw std::runtime_error("model file truncated reading " + what);
        }
        std::istringstream ls(line);
        std::string tok;
        for (std::size_t i = 0; i < count; ++i) {
            if (!(ls >> tok)) {
                throw std::runtime_error("model file: short line reading " + what);
            }
            *first++ = std::stod(tok);
        }
        if (ls >> tok) {
            throw std::runtime_error("model file: extra values reading " + what);
        }
    };
    for (std::size_t l = 0; l < m.layers().size(); ++l) {
        auto &layer = m.layers()[l];
        std::string line;
        const std::string expect =
            "layer " + std::to_string(l) + " in=" + std::to_string(layer.in) + " out=" + std::to_string(layer.out);
        if (!std::getline(is, line)) {
            throw std::runtime_error("model file truncated before layer " + std::to_string(l));
        }
        if (line != expect) {
            throw std::runtime_error("model file: expected '" + expect + "', got '" + line + "'");
        }
        for (std::size_t o = 0; o < layer.out; ++o) {
            read_values(layer.weights.begin() + static_cast<std::ptrdiff_t>(o * layer.in), layer.in,
                        "layer " + std::to_string(l) + " weights");
        }
        read_values(layer.biases.begin(), layer.out, "layer " + std::to_string(l) + " biases");
    }
    return m;
}

inline void save_model(const std::string &path, const MlpModel &m) {
    std::ofstream os(path, std::ios::binary);
    if (!os) {
        throw std::runtime_error("cannot open '" + path + "' for writing");
    }
    write_model(os, m);
}

inline MlpModel load_model(const std::string &path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) {
        throw std::runtime_error("cannot open '" + path + "'");
    }
    return read_model(is);
}

}  // namespace qectg

#endif  // QECTG_MLP_HPP
