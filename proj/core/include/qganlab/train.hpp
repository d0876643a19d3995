// Copyright 2026 The qganlab authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QGANLAB_TRAIN_HPP
#define QGANLAB_TRAIN_HPP

#include <cstdint>
#include <utility>
#include <variant>
#include <vector>

#include "qganlab/ansatz.hpp"
#include "qganlab/data.hpp"
#include "qganlab/neural.hpp"

namespace qganlab {

struct AdamParams {
    double lr = 0.01;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double epsilon = 1e-8;
};

//! Standard bias-corrected ADAM. Moment vectors are owned by the optimizer
//! and sized once at construction.
class Adam {
  public:
    explicit Adam(std::size_t n_params, AdamParams opts = {});

    void step(std::span<double> params, std::span<const double> grads);

    std::int64_t steps_taken() const noexcept { return t_; }
    const AdamParams& options() const noexcept { return opts_; }

  private:
    AdamParams opts_;
    std::vector<double> m_;
    std::vector<double> v_;
    std::int64_t t_ = 0;
};

//! Mean squared error between discriminator predictions and labels.
double supervised_loss(const DiscriminatorSpec& disc, const LabeledDataset& dataset);

//! Predictions for every dataset item, in dataset order.
std::vector<double> predict_all(const DiscriminatorSpec& disc, const LabeledDataset& dataset);

struct ClassificationMetrics {
    double accuracy = 0.0;          // threshold 0.5, prediction < 0.5 means y=0
    double accuracy_low = 0.0;      // recall on the y=0 class
    double accuracy_high = 0.0;     // recall on the y=1 class
    double balanced_accuracy = 0.0; // mean of the class recalls
};

ClassificationMetrics classification_metrics(std::span<const double> predictions,
                                             const LabeledDataset& dataset);

struct SupervisedOptions {
    int steps = 2000;
    int batch_size = 0; // 0 = full dataset every step
    AdamParams adam{};
    int check_every = 0;        // > 0: evaluate full-set accuracy periodically
    double stop_accuracy = 1.0; // early stop threshold for that accuracy
};

struct SupervisedResult {
    DiscriminatorSpec disc;
    std::vector<double> loss;        // per-step minibatch loss
    std::vector<double> predictions; // final predictions, dataset order
    ClassificationMetrics metrics;
    int steps_run = 0;
};

//! ADAM on the mean squared error. Initial parameters are drawn from the
//! stream (uniform angles); minibatches, when enabled, are drawn without
//! replacement each step. Deterministic for a given stream state.
SupervisedResult train_discriminator_supervised(DiscriminatorSpec disc,
                                                const LabeledDataset& dataset,
                                                const SupervisedOptions& options,
                                                RandomStream& rng);

//! A generator for adversarial training: either a parameterized circuit or
//! one of the classical toy models.
using GeneratorModel = std::variant<GeneratorSpec, AmplitudeModel, MlpModel>;

//! Noise dimension the model consumes (0 for the noiseless amplitude model).
int generator_noise_dim(const GeneratorModel& generator);

//! Output state for one noise vector (ignored by the amplitude model).
StateVector generator_output(const GeneratorModel& generator, std::span<const double> z);

//! Batch of i.i.d. noise vectors, each component uniform on [lo, hi).
std::vector<std::vector<double>> sample_noise(int dim, int count, double lo, double hi,
                                              RandomStream& rng);

//! Noise component range for a generator kind: [0, 0.5) for circuit
//! generators, [-1, 1) for the MLP, empty for the amplitude model.
std::pair<double, double> noise_range(const GeneratorModel& generator);

//! Wasserstein-style losses under the label map y = (1 + <Z_0>)/2:
//!   loss_D = mean_z y_fake - mean_x y_real   (discriminator minimizes)
//!   loss_G = -mean_z y_fake                  (generator minimizes)
//! At equilibrium (every label 0.5) they equal (0, -0.5).
std::pair<double, double> wgan_losses(const DiscriminatorSpec& disc,
                                      const GeneratorModel& generator,
                                      std::span<const BitString> real_batch,
                                      const std::vector<std::vector<double>>& noise_batch);

enum class GeneratorKind : std::uint8_t { Reupload, Linear, Amplitude, Mlp };

struct QganConfig {
    GeneratorKind generator_kind = GeneratorKind::Reupload;
    int n_data = 4;
    int gen_depth = 40;
    int disc_depth = 20;
    int n_aux = 0;
    Entangler entangler = Entangler::Chain;
    int n_critic = 5;
    AdamParams adam_d{}; // lr 0.01
    AdamParams adam_g{}; // lr 0.01
    int noise_batch = 8;
    int real_batch = 0; // 0 = automatic: full dataset if small, else 8
    int iterations = 300;
    int eval_noise = 100; // noise draws for the final distribution
    std::uint64_t seed = 0;
    std::vector<BitString> data;

    void validate() const;
};

struct RunTrace {
    std::vector<double> loss_d; // one entry per generator iteration
    std::vector<double> loss_g;
    DiscriminatorSpec disc;       // final parameters
    GeneratorModel generator;     // final parameters
    std::vector<double> final_distribution; // exact probs, basis order
    std::uint64_t seed = 0;
    std::int64_t disc_updates = 0;
    std::int64_t gen_updates = 0;
};

//! The adversarial loop: per generator iteration, n_critic discriminator
//! ADAM steps (fresh noise and real minibatches each) followed by one
//! generator ADAM step; the recorded losses are evaluated on the generator
//! step's batches. Deterministic per config.seed.
RunTrace train_qgan(const QganConfig& config);

} // namespace qganlab

#endif // QGANLAB_TRAIN_HPP
