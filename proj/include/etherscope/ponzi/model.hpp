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

#pragma once

#include <etherscope/ponzi/features.hpp>

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace etherscope::ponzi {

using Matrix = std::vector<std::vector<double>>;

struct Hyperparams {
    double learning_rate{0.1};
    double l2_lambda{1e-3};
    uint32_t epochs{500};
    uint64_t seed{0};
    uint32_t batch_size{0};  // 0 = full batch; otherwise the seed drives per-epoch shuffling
};

struct Standardization {
    std::vector<double> mean;
    std::vector<double> stddev;  // constant columns get 1

    [[nodiscard]] std::vector<double> apply(std::span<const double> x) const;
};

Standardization fit_standardization(const Matrix& x);

// L2-regularised logistic regression over standardised features.
struct Model {
    std::vector<std::string> feature_names;
    std::vector<double> weights;
    double bias{0};
    Standardization standardization;
    Hyperparams hyperparams;
    double threshold{0.5};
};

struct TrainResult {
    Model model;
    std::vector<double> loss_history;  // loss before each epoch, then the final loss
};

double sigmoid(double z) noexcept;

struct LossGradient {
    double loss{0};
    std::vector<double> grad_w;
    double grad_b{0};
};

// L(w, b) = -(1/n) sum [y ln s + (1 - y) ln(1 - s)] + lambda |w|^2 with
// s = sigmoid(w.x + b), and its analytic gradient. `x` is already standardised.
LossGradient logistic_loss(const Matrix& x, std::span<const double> y, std::span<const double> w, double b,
                           double lambda);

// Full-batch gradient descent from zero. Throws kDegenerateLabels (one class),
// kNonFiniteFeature, kDimensionMismatch or kEmptyInput.
TrainResult train(const Matrix& x, std::span<const Label> labels, const Hyperparams& hp = {},
                  std::vector<std::string> feature_names = {});

struct Prediction {
    double probability{0.5};
    Label label{Label::kNormal};
};

// Throws kDimensionMismatch.
Prediction predict(const Model& model, std::span<const double> x);

struct Evaluation {
    uint64_t true_positive{0};
    uint64_t false_positive{0};
    uint64_t true_negative{0};
    uint64_t false_negative{0};
    double precision{0};
    double recall{0};
    double f1{0};
};

// Ponzi is the positive class. Throws kEmptySet.
Evaluation evaluate_predictions(std::span<const Label> truth, std::span<const Label> predicted);
Evaluation evaluate(const Model& model, const Matrix& x, std::span<const Label> truth);

// Stratified k-fold: each class is shuffled with `seed` and dealt round-robin
// into folds. Returns the pooled out-of-fold evaluation.
Evaluation cross_validate(const Matrix& x, std::span<const Label> labels, uint32_t folds, const Hyperparams& hp,
                          uint64_t seed);

// Plain-text key=value model file, versioned.
void save_model(const Model& model, const std::filesystem::path& path);
Model load_model(const std::filesystem::path& path);

}  // namespace etherscope::ponzi
