/*
   Copyright 2026 The etherscope Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#include <etherscope/error.hpp>
#include <etherscope/ponzi/model.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <numeric>
#include <random>
#include <sstream>

namespace etherscope::ponzi {

namespace fs = std::filesystem;

namespace {

constexpr std::string_view kModelFormat = "etherscope-logreg";
constexpr int kModelVersion = 1;

// ln(1 + e^z) without overflow.
double softplus(double z) noexcept { return z > 0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z)); }

double dot(std::span<const double> a, std::span<const double> b) {
    double s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

void check_matrix(const Matrix& x) {
    if (x.empty()) throw Error(Errc::kEmptyInput, "no examples");
    const auto d = x.front().size();
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i].size() != d) {
            throw Error(Errc::kDimensionMismatch, "row " + std::to_string(i) + " has " + std::to_string(x[i].size()) +
                                                      " features, expected " + std::to_string(d));
        }
        for (double v : x[i]) {
            if (!std::isfinite(v)) throw Error(Errc::kNonFiniteFeature, "row " + std::to_string(i));
        }
    }
}

std::string real(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

template <class Range, class F>
std::string join(const Range& r, F&& fmt) {
    std::string out;
    bool first = true;
    for (const auto& v : r) {
        if (!first) out += ',';
        first = false;
        out += fmt(v);
    }
    return out;
}

}  // namespace

double sigmoid(double z) noexcept {
    if (z >= 0) return 1.0 / (1.0 + std::exp(-z));
    const double e = std::exp(z);
    return e / (1.0 + e);
}

std::vector<double> Standardization::apply(std::span<const double> x) const {
    std::vector<double> out(x.size());
    for (std::size_t j = 0; j < x.size(); ++j) out[j] = (x[j] - mean[j]) / stddev[j];
    return out;
}

Standardization fit_standardization(const Matrix& x) {
    check_matrix(x);
    const std::size_t n = x.size(), d = x.front().size();
    Standardization s{std::vector<double>(d, 0.0), std::vector<double>(d, 0.0)};
    for (std::size_t j = 0; j < d; ++j) {
        double m = 0;
        for (const auto& row : x) m += row[j];
        m /= static_cast<double>(n);
        double var = 0;
        for (const auto& row : x) var += (row[j] - m) * (row[j] - m);
        var /= static_cast<double>(n);
        const double sd = std::sqrt(var);
        s.mean[j] = m;
        s.stddev[j] = sd > 0 && std::isfinite(sd) ? sd : 1.0;
    }
    return s;
}

LossGradient logistic_loss(const Matrix& x, std::span<const double> y, std::span<const double> w, double b,
                           double lambda) {
    const std::size_t n = x.size();
    LossGradient out;
    out.grad_w.assign(w.size(), 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        const double z = dot(x[i], w) + b;
        // -[y ln s(z) + (1-y) ln(1-s(z))] = softplus(z) - y z
        out.loss += softplus(z) - y[i] * z;
        const double err = sigmoid(z) - y[i];
        for (std::size_t j = 0; j < w.size(); ++j) out.grad_w[j] += err * x[i][j];
        out.grad_b += err;
    }
    const double inv_n = 1.0 / static_cast<double>(n);
    out.loss *= inv_n;
    out.grad_b *= inv_n;
    double norm2 = 0;
    for (std::size_t j = 0; j < w.size(); ++j) {
        out.grad_w[j] = out.grad_w[j] * inv_n + 2.0 * lambda * w[j];
        norm2 += w[j] * w[j];
    }
    out.loss += lambda * norm2;
    return out;
}

TrainResult train(const Matrix& x, std::span<const Label> labels, const Hyperparams& hp,
                  std::vector<std::string> feature_names) {
    check_matrix(x);
    if (labels.size() != x.size()) {
        throw Error(Errc::kDimensionMismatch, std::to_string(labels.size()) + " labels for " +
                                                  std::to_string(x.size()) + " examples");
    }
    const auto positives = std::count(labels.begin(), labels.end(), Label::kPonzi);
    if (positives == 0 || positives == static_cast<std::ptrdiff_t>(labels.size())) {
        throw Error(Errc::kDegenerateLabels, "training needs both classes");
    }
    const std::size_t d = x.front().size();
    if (!feature_names.empty() && feature_names.size() != d) {
        throw Error(Errc::kDimensionMismatch, "feature name count differs from feature count");
    }

    TrainResult result;
    Model& m = result.model;
    m.feature_names = std::move(feature_names);
    m.hyperparams = hp;
    m.standardization = fit_standardization(x);
    m.weights.assign(d, 0.0);

    Matrix xs;
    xs.reserve(x.size());
    for (const auto& row : x) xs.push_back(m.standardization.apply(row));
    std::vector<double> y;
    y.reserve(labels.size());
    for (auto l : labels) y.push_back(l == Label::kPonzi ? 1.0 : 0.0);

    std::mt19937_64 rng(hp.seed);
    std::vector<std::size_t> order(xs.size());
    std::iota(order.begin(), order.end(), 0);

    for (uint32_t epoch = 0; epoch < hp.epochs; ++epoch) {
        if (hp.batch_size == 0 || hp.batch_size >= xs.size()) {
            auto lg = logistic_loss(xs, y, m.weights, m.bias, hp.l2_lambda);
            result.loss_history.push_back(lg.loss);
            for (std::size_t j = 0; j < d; ++j) m.weights[j] -= hp.learning_rate * lg.grad_w[j];
            m.bias -= hp.learning_rate * lg.grad_b;
            continue;
        }
        result.loss_history.push_back(logistic_loss(xs, y, m.weights, m.bias, hp.l2_lambda).loss);
        // Fisher-Yates with the raw engine output so shuffles are identical across standard libraries.
        for (std::size_t i = order.size(); i > 1; --i) std::swap(order[i - 1], order[rng() % i]);
        for (std::size_t start = 0; start < order.size(); start += hp.batch_size) {
            const std::size_t end = std::min(order.size(), start + hp.batch_size);
            Matrix bx;
            std::vector<double> by;
            for (std::size_t k = start; k < end; ++k) {
                bx.push_back(xs[order[k]]);
                by.push_back(y[order[k]]);
            }
            auto lg = logistic_loss(bx, by, m.weights, m.bias, hp.l2_lambda);
            for (std::size_t j = 0; j < d; ++j) m.weights[j] -= hp.learning_rate * lg.grad_w[j];
            m.bias -= hp.learning_rate * lg.grad_b;
        }
    }
    result.loss_history.push_back(logistic_loss(xs, y, m.weights, m.bias, hp.l2_lambda).loss);
    for (double w : m.weights) {
        if (!std::isfinite(w)) throw Error(Errc::kNonFiniteFeature, "training diverged");
    }
    return result;
}

Prediction predict(const Model& model, std::span<const double> x) {
    if (x.size() != model.weights.size()) {
        throw Error(Errc::kDimensionMismatch, "model expects " + std::to_string(model.weights.size()) +
                                                  " features, got " + std::to_string(x.size()));
    }
    const auto z = dot(model.standardization.apply(x), model.weights) + model.bias;
    Prediction p;
    p.probability = sigmoid(z);
    p.label = p.probability >= model.threshold ? Label::kPonzi : Label::kNormal;
    return p;
}

Evaluation evaluate_predictions(std::span<const Label> truth, std::span<const Label> predicted) {
    if (truth.empty()) throw Error(Errc::kEmptySet, "nothing to evaluate");
    if (truth.size() != predicted.size()) throw Error(Errc::kDimensionMismatch, "prediction count mismatch");
    Evaluation e;
    for (std::size_t i = 0; i < truth.size(); ++i) {
        const bool t = truth[i] == Label::kPonzi, p = predicted[i] == Label::kPonzi;
        if (t && p) ++e.true_positive;
        if (!t && p) ++e.false_positive;
        if (!t && !p) ++e.true_negative;
        if (t && !p) ++e.false_negative;
    }
    const auto tp = static_cast<double>(e.true_positive);
    e.precision = e.true_positive + e.false_positive ? tp / static_cast<double>(e.true_positive + e.false_positive) : 0;
    e.recall = e.true_positive + e.false_negative ? tp / static_cast<double>(e.true_positive + e.false_negative) : 0;
    e.f1 = e.precision + e.recall > 0 ? 2 * e.precision * e.recall / (e.precision + e.recall) : 0;
    return e;
}

Evaluation evaluate(const Model& model, const Matrix& x, std::span<const Label> truth) {
    if (x.size() != truth.size()) throw Error(Errc::kDimensionMismatch, "label count mismatch");
    std::vector<Label> predicted;
    predicted.reserve(x.size());
    for (const auto& row : x) predicted.push_back(predict(model, row).label);
    return evaluate_predictions(truth, predicted);
}

Evaluation cross_validate(const Matrix& x, std::span<const Label> labels, uint32_t folds, const Hyperparams& hp,
                          uint64_t seed) {
    if (folds < 2) throw Error(Errc::kInvalidConfig, "need at least two folds");
    if (x.size() != labels.size()) throw Error(Errc::kDimensionMismatch, "label count mismatch");
    std::vector<uint32_t> fold_of(x.size());
    std::mt19937_64 rng(seed);
    for (Label cls : {Label::kNormal, Label::kPonzi}) {
        std::vector<std::size_t> members;
        for (std::size_t i = 0; i < labels.size(); ++i) {
            if (labels[i] == cls) members.push_back(i);
        }
        for (std::size_t i = members.size(); i > 1; --i) std::swap(members[i - 1], members[rng() % i]);
        for (std::size_t k = 0; k < members.size(); ++k) fold_of[members[k]] = static_cast<uint32_t>(k % folds);
    }

    std::vector<Label> predicted(x.size());
    for (uint32_t f = 0; f < folds; ++f) {
        Matrix train_x;
        std::vector<Label> train_y;
        for (std::size_t i = 0; i < x.size(); ++i) {
            if (fold_of[i] != f) {
                train_x.push_back(x[i]);
                train_y.push_back(labels[i]);
            }
        }
        const auto model = train(train_x, train_y, hp).model;
        for (std::size_t i = 0; i < x.size(); ++i) {
            if (fold_of[i] == f) predicted[i] = predict(model, x[i]).label;
        }
    }
    return evaluate_predictions(labels, predicted);
}

void save_model(const Model& m, const fs::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(Errc::kIoError, "cannot write " + path.string());
    out << "format=" << kModelFormat << '\n';
    out << "version=" << kModelVersion << '\n';
    out << "feature_layout=" << kFeatureLayoutVersion << '\n';
    out << "dimension=" << m.weights.size() << '\n';
    out << "learning_rate=" << real(m.hyperparams.learning_rate) << '\n';
    out << "l2_lambda=" << real(m.hyperparams.l2_lambda) << '\n';
    out << "epochs=" << m.hyperparams.epochs << '\n';
    out << "seed=" << m.hyperparams.seed << '\n';
    out << "batch_size=" << m.hyperparams.batch_size << '\n';
    out << "threshold=" << real(m.threshold) << '\n';
    out << "bias=" << real(m.bias) << '\n';
    out << "features=" << join(m.feature_names, [](const std::string& s) { return s; }) << '\n';
    out << "weights=" << join(m.weights, real) << '\n';
    out << "means=" << join(m.standardization.mean, real) << '\n';
    out << "stddevs=" << join(m.standardization.stddev, real) << '\n';
    out.flush();
    if (!out) throw Error(Errc::kIoError, "write failed: " + path.string());
}

Model load_model(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(Errc::kIoError, "cannot open " + path.string());
    std::map<std::string, std::string> kv;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        auto eq = line.find('=');
        if (eq == std::string::npos) throw Error(Errc::kMalformedModel, "line without '=': " + line);
        kv[line.substr(0, eq)] = line.substr(eq + 1);
    }
    auto need = [&](const std::string& key) -> const std::string& {
        auto it = kv.find(key);
        if (it == kv.end()) throw Error(Errc::kMalformedModel, "missing key '" + key + "'");
        return it->second;
    };
    auto number = [&](const std::string& key, const std::string& text) {
        char* end = nullptr;
        double v = std::strtod(text.c_str(), &end);
        if (text.empty() || end != text.c_str() + text.size()) {
            throw Error(Errc::kMalformedModel, "key '" + key + "' holds a non-number");
        }
        return v;
    };
    auto list = [&](const std::string& key) {
        std::vector<double> out;
        const auto& text = need(key);
        std::size_t pos = 0;
        while (pos <= text.size() && !text.empty()) {
            auto comma = text.find(',', pos);
            out.push_back(number(key, text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos)));
            if (comma == std::string::npos) break;
            pos = comma + 1;
        }
        return out;
    };

    if (need("format") != kModelFormat) throw Error(Errc::kMalformedModel, "not a model file");
    if (need("version") != std::to_string(kModelVersion)) {
        throw Error(Errc::kMalformedModel, "unsupported model version " + need("version"));
    }
    Model m;
    m.hyperparams.learning_rate = number("learning_rate", need("learning_rate"));
    m.hyperparams.l2_lambda = number("l2_lambda", need("l2_lambda"));
    m.hyperparams.epochs = static_cast<uint32_t>(number("epochs", need("epochs")));
    m.hyperparams.seed = std::strtoull(need("seed").c_str(), nullptr, 10);
    m.hyperparams.batch_size = static_cast<uint32_t>(number("batch_size", need("batch_size")));
    m.threshold = number("threshold", need("threshold"));
    m.bias = number("bias", need("bias"));
    m.weights = list("weights");
    m.standardization.mean = list("means");
    m.standardization.stddev = list("stddevs");
    const auto& names = need("features");
    std::size_t pos = 0;
    while (!names.empty()) {
        auto comma = names.find(',', pos);
        m.feature_names.push_back(names.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos));
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    const auto d = static_cast<std::size_t>(number("dimension", need("dimension")));
    if (m.weights.size() != d || m.standardization.mean.size() != d || m.standardization.stddev.size() != d ||
        (!m.feature_names.empty() && m.feature_names.size() != d)) {
        throw Error(Errc::kMalformedModel, "list lengths disagree with dimension " + std::to_string(d));
    }
    return m;
}

}  // namespace etherscope::ponzi
