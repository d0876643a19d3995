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

#include "qganlab/train.hpp"

#include <algorithm>
#include <cmath>

#include "qganlab/eval.hpp"
#include "qganlab/gradients.hpp"

namespace qganlab {

Adam::Adam(std::size_t n_params, AdamParams opts)
    : opts_(opts), m_(n_params, 0.0), v_(n_params, 0.0) {
    if (opts.lr <= 0.0 || opts.beta1 < 0.0 || opts.beta1 >= 1.0 || opts.beta2 < 0.0 ||
        opts.beta2 >= 1.0 || opts.epsilon <= 0.0) {
        throw std::invalid_argument("Adam: invalid hyperparameters");
    }
}

void Adam::step(std::span<double> params, std::span<const double> grads) {
    if (params.size() != m_.size() || grads.size() != m_.size()) {
        throw std::invalid_argument("Adam::step: length mismatch");
    }
    ++t_;
    const double bc1 = 1.0 - std::pow(opts_.beta1, static_cast<double>(t_));
    const double bc2 = 1.0 - std::pow(opts_.beta2, static_cast<double>(t_));
    for (std::size_t i = 0; i < params.size(); ++i) {
        m_[i] = opts_.beta1 * m_[i] + (1.0 - opts_.beta1) * grads[i];
        v_[i] = opts_.beta2 * v_[i] + (1.0 - opts_.beta2) * grads[i] * grads[i];
        const double m_hat = m_[i] / bc1;
        const double v_hat = v_[i] / bc2;
        params[i] -= opts_.lr * m_hat / (std::sqrt(v_hat) + opts_.epsilon);
    }
}

std::vector<double> predict_all(const DiscriminatorSpec& disc, const LabeledDataset& dataset) {
    if (dataset.items.empty()) {
        throw std::invalid_argument("predict_all: empty dataset");
    }
    const CircuitSpec circuit = discriminator_circuit(disc);
    std::vector<double> predictions;
    predictions.reserve(dataset.items.size());
    for (const LabeledItem& item : dataset.items) {
        StateVector state = basis_encode(item.x, disc.n_qubits());
        circuit.apply(state, disc.params);
        predictions.push_back(label_from_expectation(state.expectation_z(0)));
    }
    return predictions;
}

double supervised_loss(const DiscriminatorSpec& disc, const LabeledDataset& dataset) {
    const std::vector<double> predictions = predict_all(disc, dataset);
    double loss = 0.0;
    for (std::size_t i = 0; i < predictions.size(); ++i) {
        const double r = predictions[i] - static_cast<double>(dataset.items[i].label);
        loss += r * r;
    }
    return loss / static_cast<double>(predictions.size());
}

ClassificationMetrics classification_metrics(std::span<const double> predictions,
                                             const LabeledDataset& dataset) {
    if (predictions.size() != dataset.items.size() || dataset.items.empty()) {
        throw std::invalid_argument("classification_metrics: length mismatch or empty");
    }
    std::int64_t correct = 0, low_total = 0, low_correct = 0, high_total = 0, high_correct = 0;
    for (std::size_t i = 0; i < predictions.size(); ++i) {
        const int predicted = predictions[i] < 0.5 ? 0 : 1;
        const int label = dataset.items[i].label;
        correct += predicted == label;
        if (label == 0) {
            ++low_total;
            low_correct += predicted == 0;
        } else {
            ++high_total;
            high_correct += predicted == 1;
        }
    }
    ClassificationMetrics metrics;
    metrics.accuracy = static_cast<double>(correct) / static_cast<double>(predictions.size());
    metrics.accuracy_low =
        low_total ? static_cast<double>(low_correct) / static_cast<double>(low_total) : 0.0;
    metrics.accuracy_high =
        high_total ? static_cast<double>(high_correct) / static_cast<double>(high_total) : 0.0;
    metrics.balanced_accuracy = 0.5 * (metrics.accuracy_low + metrics.accuracy_high);
    return metrics;
}

namespace {

// First k entries of a partial Fisher-Yates shuffle over [0, n).
std::vector<std::size_t> draw_indices(std::size_t n, std::size_t k, RandomStream& rng) {
    std::vector<std::size_t> indices(n);
    for (std::size_t i = 0; i < n; ++i) {
        indices[i] = i;
    }
    for (std::size_t i = 0; i < k; ++i) {
        const std::size_t j = i + rng.uniform_index(n - i);
        std::swap(indices[i], indices[j]);
    }
    indices.resize(k);
    return indices;
}

} // namespace

SupervisedResult train_discriminator_supervised(DiscriminatorSpec disc,
                                                const LabeledDataset& dataset,
                                                const SupervisedOptions& options,
                                                RandomStream& rng) {
    dataset.validate();
    if (dataset.n_bits() != disc.n_data) {
        throw std::invalid_argument("train_discriminator_supervised: dataset width != n_data");
    }
    if (options.steps < 1) {
        throw std::invalid_argument("train_discriminator_supervised: steps must be >= 1");
    }
    if (disc.params.empty() && disc.n_params() > 0) {
        disc.params = random_angles(disc.n_params(), rng);
    }
    disc.validate();

    const CircuitSpec circuit = discriminator_circuit(disc);
    const std::size_t data_size = dataset.items.size();
    const std::size_t batch_size =
        options.batch_size > 0 ? std::min<std::size_t>(options.batch_size, data_size) : data_size;

    Adam adam(disc.params.size(), options.adam);
    AdjointWorkspace ws;
    std::vector<double> item_grad(disc.params.size());
    std::vector<double> grad(disc.params.size());

    SupervisedResult result;
    result.loss.reserve(static_cast<std::size_t>(options.steps));

    for (int step = 0; step < options.steps; ++step) {
        std::vector<std::size_t> batch;
        if (batch_size == data_size) {
            batch.resize(data_size);
            for (std::size_t i = 0; i < data_size; ++i) {
                batch[i] = i;
            }
        } else {
            batch = draw_indices(data_size, batch_size, rng);
        }

        std::fill(grad.begin(), grad.end(), 0.0);
        double loss = 0.0;
        for (const std::size_t idx : batch) {
            const LabeledItem& item = dataset.items[idx];
            const StateVector input = basis_encode(item.x, disc.n_qubits());
            const double e =
                adjoint_expectation_gradient(circuit, disc.params, input, 0, item_grad, 0, -1, &ws);
            const double y = label_from_expectation(e);
            const double residual = y - static_cast<double>(item.label);
            loss += residual * residual;
            // d/dtheta (y - t)^2 = 2 (y - t) * dy/dtheta, dy/dtheta = gZ/2.
            for (std::size_t p = 0; p < grad.size(); ++p) {
                grad[p] += residual * item_grad[p];
            }
        }
        const double scale = 1.0 / static_cast<double>(batch.size());
        for (double& g : grad) {
            g *= scale;
        }
        adam.step(disc.params, grad);
        result.loss.push_back(loss * scale);
        result.steps_run = step + 1;

        if (options.check_every > 0 && (step + 1) % options.check_every == 0) {
            const auto predictions = predict_all(disc, dataset);
            const auto metrics = classification_metrics(predictions, dataset);
            if (metrics.accuracy >= options.stop_accuracy) {
                break;
            }
        }
    }

    result.predictions = predict_all(disc, dataset);
    result.metrics = classification_metrics(result.predictions, dataset);
    result.disc = std::move(disc);
    return result;
}

int generator_noise_dim(const GeneratorModel& generator) {
    return std::visit(
        [](const auto& model) -> int {
            using T = std::decay_t<decltype(model)>;
            if constexpr (std::is_same_v<T, GeneratorSpec>) {
                return model.n_qubits;
            } else if constexpr (std::is_same_v<T, MlpModel>) {
                return MlpModel::kInputs;
            } else {
                return 0;
            }
        },
        generator);
}

StateVector generator_output(const GeneratorModel& generator, std::span<const double> z) {
    return std::visit(
        [z](const auto& model) -> StateVector {
            using T = std::decay_t<decltype(model)>;
            if constexpr (std::is_same_v<T, GeneratorSpec>) {
                return generator_state(model, z);
            } else if constexpr (std::is_same_v<T, MlpModel>) {
                return toy_state(model, z);
            } else {
                return toy_state(model);
            }
        },
        generator);
}

std::vector<std::vector<double>> sample_noise(int dim, int count, double lo, double hi,
                                              RandomStream& rng) {
    if (dim < 0 || count < 1) {
        throw std::invalid_argument("sample_noise: dim must be >= 0 and count >= 1");
    }
    std::vector<std::vector<double>> batch(static_cast<std::size_t>(count));
    for (auto& z : batch) {
        z.resize(static_cast<std::size_t>(dim));
        for (double& v : z) {
            v = rng.uniform(lo, hi);
        }
    }
    return batch;
}

std::pair<double, double> noise_range(const GeneratorModel& generator) {
    if (std::holds_alternative<MlpModel>(generator)) {
        return {-1.0, 1.0};
    }
    if (std::holds_alternative<AmplitudeModel>(generator)) {
        return {0.0, 0.0};
    }
    // Sub-period angles keep circuit generators trainable. Full-circle uniform
    // noise twirls each injection rotation into a depolarizing channel, which
    // pins the noise-averaged fake label at 1/2 for every parameter setting.
    // Half a radian per injection still compounds over reuploading layers into
    // enough output diversity to cover multimodal targets, while keeping the
    // noise-conditional states clustered enough for a stable adversarial
    // equilibrium near (loss_D, loss_G) = (0, -0.5).
    return {0.0, 0.5};
}

std::pair<double, double> wgan_losses(const DiscriminatorSpec& disc,
                                      const GeneratorModel& generator,
                                      std::span<const BitString> real_batch,
                                      const std::vector<std::vector<double>>& noise_batch) {
    if (real_batch.empty() || noise_batch.empty()) {
        throw std::invalid_argument("wgan_losses: batches must be nonempty");
    }
    const double mean_real = batch_real_label(disc, real_batch);
    double mean_fake = 0.0;
    for (const auto& z : noise_batch) {
        mean_fake += fake_label(disc, generator_output(generator, z));
    }
    mean_fake /= static_cast<double>(noise_batch.size());
    return {mean_fake - mean_real, -mean_fake};
}

void QganConfig::validate() const {
    if (n_data < 1 || n_data + n_aux > StateVector::kMaxQubits) {
        throw std::invalid_argument("QganConfig: qubit counts out of range");
    }
    if (n_aux < 0 || gen_depth < 0 || disc_depth < 0) {
        throw std::invalid_argument("QganConfig: negative depth or aux count");
    }
    if (n_critic < 1 || iterations < 1 || noise_batch < 1 || real_batch < 0 || eval_noise < 1) {
        throw std::invalid_argument("QganConfig: invalid loop sizes");
    }
    if (data.empty()) {
        throw std::invalid_argument("QganConfig: training data must be nonempty");
    }
    for (const BitString& x : data) {
        if (x.size() != n_data) {
            throw std::invalid_argument("QganConfig: data width != n_data");
        }
    }
    if (generator_kind == GeneratorKind::Mlp && n_data != 4) {
        throw std::invalid_argument("QganConfig: the MLP toy generator requires n_data = 4");
    }
}

namespace {

GeneratorModel make_generator(const QganConfig& config, RandomStream& rng) {
    switch (config.generator_kind) {
    case GeneratorKind::Reupload: {
        GeneratorSpec gen = make_reuploading_generator(config.n_data, config.gen_depth);
        gen.entangler = config.entangler;
        gen.params = random_angles(gen.n_params(), rng);
        return gen;
    }
    case GeneratorKind::Linear: {
        GeneratorSpec gen = make_linear_noise_generator(config.n_data, config.gen_depth);
        gen.entangler = config.entangler;
        gen.params = random_angles(gen.n_params(), rng);
        return gen;
    }
    case GeneratorKind::Amplitude:
        return AmplitudeModel::random(config.n_data, rng);
    default:
        return MlpModel::random(rng);
    }
}

// Noise batch for one optimizer step; the noiseless amplitude model gets a
// single empty vector so batch means stay well-defined.
std::vector<std::vector<double>> noise_batch_for(const GeneratorModel& generator, int count,
                                                 RandomStream& rng) {
    const int dim = generator_noise_dim(generator);
    if (dim == 0) {
        return {std::vector<double>{}};
    }
    const auto [lo, hi] = noise_range(generator);
    return sample_noise(dim, count, lo, hi, rng);
}

std::span<double> generator_params(GeneratorModel& generator, std::vector<double>& mlp_buffer) {
    if (auto* spec = std::get_if<GeneratorSpec>(&generator)) {
        return spec->params;
    }
    if (auto* amp = std::get_if<AmplitudeModel>(&generator)) {
        return amp->c;
    }
    auto& mlp = std::get<MlpModel>(generator);
    mlp_buffer = mlp.flatten();
    return mlp_buffer;
}

} // namespace

RunTrace train_qgan(const QganConfig& config) {
    config.validate();
    RandomStream rng(config.seed);

    DiscriminatorSpec disc;
    disc.n_data = config.n_data;
    disc.n_aux = config.n_aux;
    disc.depth = config.disc_depth;
    disc.entangler = config.entangler;
    disc.params = random_angles(disc.n_params(), rng);
    const CircuitSpec disc_circuit = discriminator_circuit(disc);

    GeneratorModel generator = make_generator(config, rng);
    const auto* gen_spec = std::get_if<GeneratorSpec>(&generator);

    const std::size_t data_size = config.data.size();
    const std::size_t real_batch_size =
        config.real_batch > 0 ? std::min<std::size_t>(config.real_batch, data_size)
                              : (data_size <= 16 ? data_size : 8);

    Adam adam_d(disc.params.size(), config.adam_d);
    std::vector<double> mlp_buffer;
    const std::size_t gen_param_count = generator_params(generator, mlp_buffer).size();
    Adam adam_g(gen_param_count, config.adam_g);

    AdjointWorkspace ws;
    std::vector<double> disc_grad(disc.params.size());
    std::vector<double> disc_item_grad(disc.params.size());

    RunTrace trace;
    trace.seed = config.seed;
    trace.loss_d.reserve(static_cast<std::size_t>(config.iterations));
    trace.loss_g.reserve(static_cast<std::size_t>(config.iterations));

    auto draw_real_batch = [&]() {
        std::vector<BitString> batch;
        if (real_batch_size == data_size) {
            batch = config.data;
        } else {
            for (const std::size_t idx : draw_indices(data_size, real_batch_size, rng)) {
                batch.push_back(config.data[idx]);
            }
        }
        return batch;
    };

    // Mean fake label and its gradient w.r.t. the discriminator parameters.
    auto fake_disc_pass = [&](const std::vector<std::vector<double>>& noise,
                              std::vector<double>& grad_out) {
        std::fill(grad_out.begin(), grad_out.end(), 0.0);
        double mean_fake = 0.0;
        for (const auto& z : noise) {
            const StateVector embedded =
                embed_with_aux(generator_output(generator, z), disc.n_aux);
            const double e = adjoint_expectation_gradient(disc_circuit, disc.params, embedded, 0,
                                                          disc_item_grad, 0, -1, &ws);
            mean_fake += label_from_expectation(e);
            for (std::size_t p = 0; p < grad_out.size(); ++p) {
                grad_out[p] += disc_item_grad[p];
            }
        }
        const double scale = 0.5 / static_cast<double>(noise.size()); // d y / d<Z> = 1/2
        for (double& g : grad_out) {
            g *= scale;
        }
        return mean_fake / static_cast<double>(noise.size());
    };

    std::vector<double> real_grad(disc.params.size());
    std::vector<double> fake_grad(disc.params.size());
    std::vector<double> gen_grad(gen_param_count);
    std::vector<double> pipeline_grad;

    for (int iteration = 0; iteration < config.iterations; ++iteration) {
        // Discriminator phase: n_critic ADAM steps on loss_D.
        for (int critic = 0; critic < config.n_critic; ++critic) {
            const std::vector<BitString> real = draw_real_batch();
            const auto noise = noise_batch_for(generator, config.noise_batch, rng);

            std::fill(real_grad.begin(), real_grad.end(), 0.0);
            for (const BitString& x : real) {
                const StateVector input = basis_encode(x, disc.n_qubits());
                adjoint_expectation_gradient(disc_circuit, disc.params, input, 0, disc_item_grad,
                                             0, -1, &ws);
                for (std::size_t p = 0; p < real_grad.size(); ++p) {
                    real_grad[p] += disc_item_grad[p];
                }
            }
            const double real_scale = 0.5 / static_cast<double>(real.size());
            fake_disc_pass(noise, fake_grad);
            for (std::size_t p = 0; p < disc_grad.size(); ++p) {
                disc_grad[p] = fake_grad[p] - real_grad[p] * real_scale;
            }
            adam_d.step(disc.params, disc_grad);
            ++trace.disc_updates;
        }

        // Generator phase: one ADAM step on loss_G = -mean y_fake.
        const auto noise = noise_batch_for(generator, config.noise_batch, rng);
        std::fill(gen_grad.begin(), gen_grad.end(), 0.0);
        double mean_fake = 0.0;

        if (gen_spec != nullptr) {
            const std::vector<double> params = pipeline_params(*gen_spec, disc);
            const int n_gen_params = gen_spec->n_params();
            for (const auto& z : noise) {
                const CircuitSpec pipeline = qgan_pipeline_circuit(*gen_spec, disc, z);
                pipeline_grad.assign(params.size(), 0.0);
                const double e =
                    adjoint_expectation_gradient(pipeline, params, StateVector(disc.n_qubits()), 0,
                                                 pipeline_grad, 0, n_gen_params, &ws);
                mean_fake += label_from_expectation(e);
                for (int p = 0; p < n_gen_params; ++p) {
                    // loss_G = -mean y_fake and dy/d<Z> = 1/2.
                    gen_grad[static_cast<std::size_t>(p)] -=
                        0.5 * pipeline_grad[static_cast<std::size_t>(p)];
                }
            }
            const double scale = 1.0 / static_cast<double>(noise.size());
            for (double& g : gen_grad) {
                g *= scale;
            }
            adam_g.step(std::get<GeneratorSpec>(generator).params, gen_grad);
        } else if (auto* amp = std::get_if<AmplitudeModel>(&generator)) {
            // Noiseless: one evaluation is the whole batch.
            mean_fake = fake_label(disc, toy_state(*amp)) * static_cast<double>(noise.size());
            const auto grad = toy_gradient(*amp, disc, LabelTarget::Maximize);
            std::copy(grad.begin(), grad.end(), gen_grad.begin());
            adam_g.step(amp->c, gen_grad);
        } else {
            auto& mlp = std::get<MlpModel>(generator);
            for (const auto& z : noise) {
                mean_fake += fake_label(disc, toy_state(mlp, z));
                const auto grad = toy_gradient(mlp, disc, z, LabelTarget::Maximize);
                for (std::size_t p = 0; p < gen_grad.size(); ++p) {
                    gen_grad[p] += grad[p];
                }
            }
            const double scale = 1.0 / static_cast<double>(noise.size());
            for (double& g : gen_grad) {
                g *= scale;
            }
            std::vector<double> flat = mlp.flatten();
            adam_g.step(flat, gen_grad);
            mlp.unflatten(flat);
        }
        ++trace.gen_updates;
        mean_fake /= static_cast<double>(noise.size());

        // Record the losses of this iteration from the generator-step batch.
        const std::vector<BitString> record_real = draw_real_batch();
        const double mean_real = batch_real_label(disc, record_real);
        trace.loss_d.push_back(mean_fake - mean_real);
        trace.loss_g.push_back(-mean_fake);
    }

    const auto eval_noise = noise_batch_for(
        generator, std::holds_alternative<AmplitudeModel>(generator) ? 1 : config.eval_noise, rng);
    trace.final_distribution = generator_distribution(generator, eval_noise).probs;
    trace.disc = std::move(disc);
    trace.generator = std::move(generator);
    return trace;
}

} // namespace qganlab
