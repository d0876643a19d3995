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

#include "qganlab/neural.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

namespace qganlab {

namespace {

int qubits_from_length(std::size_t len) {
    if (len < 2 || !std::has_single_bit(len)) {
        throw std::invalid_argument("amplitude vector length must be a power of two >= 2");
    }
    const int n = std::countr_zero(len);
    if (n > StateVector::kMaxQubits) {
        throw ResourceError("amplitude vector implies more than 20 qubits");
    }
    return n;
}

StateVector normalized_real_state(std::span<const double> c) {
    const int n = qubits_from_length(c.size());
    double norm_sq = 0.0;
    for (double v : c) {
        norm_sq += v * v;
    }
    const double norm = std::sqrt(norm_sq);
    if (norm == 0.0) {
        throw DegenerateStateError("toy model emitted a zero-norm amplitude vector");
    }
    StateVector state(n);
    auto amps = state.amplitudes();
    for (std::size_t i = 0; i < c.size(); ++i) {
        amps[i] = cdouble{c[i] / norm, 0.0};
    }
    return state;
}

// d y / d psi_hat_j for the real-amplitude state psi_hat: the fake label is
// y = (1 + <psi_e| U^dag Z_0 U |psi_e>)/2 with psi_e = psi_hat (x) |0>^aux,
// so the derivative is Re of the transformed-observable state read back on
// the data register.
std::vector<double> label_gradient_wrt_state(const DiscriminatorSpec& disc,
                                             const StateVector& data_state) {
    StateVector w = embed_with_aux(data_state, disc.n_aux);
    const CircuitSpec circuit = discriminator_circuit(disc);
    circuit.apply(w, disc.params);
    w.apply_pauli_z(0);
    circuit.apply_inverse(w, disc.params);
    const auto amps = w.amplitudes();
    std::vector<double> grad(data_state.dim());
    for (std::size_t j = 0; j < grad.size(); ++j) {
        grad[j] = amps[j << disc.n_aux].real();
    }
    return grad;
}

// Chains d y / d psi_hat through the normalization psi_hat = c / ||c||:
// grad_c = (g - (g . psi_hat) psi_hat) / ||c||.
std::vector<double> chain_through_normalization(std::span<const double> g,
                                                std::span<const double> c) {
    double norm_sq = 0.0;
    for (double v : c) {
        norm_sq += v * v;
    }
    const double norm = std::sqrt(norm_sq);
    if (norm == 0.0) {
        throw DegenerateStateError("toy model emitted a zero-norm amplitude vector");
    }
    double dot = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) {
        dot += g[i] * c[i] / norm;
    }
    std::vector<double> grad(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) {
        grad[i] = (g[i] - dot * c[i] / norm) / norm;
    }
    return grad;
}

void apply_target_sign(std::vector<double>& grad, LabelTarget target) {
    if (target == LabelTarget::Maximize) {
        for (double& g : grad) {
            g = -g;
        }
    }
}

} // namespace

AmplitudeModel AmplitudeModel::random(int n_qubits, RandomStream& rng) {
    if (n_qubits < 1 || n_qubits > StateVector::kMaxQubits) {
        throw std::invalid_argument("AmplitudeModel: qubit count out of range");
    }
    AmplitudeModel model;
    model.c.resize(std::size_t{1} << n_qubits);
    for (double& v : model.c) {
        v = rng.uniform(-1.0, 1.0);
    }
    return model;
}

int AmplitudeModel::n_qubits() const { return qubits_from_length(c.size()); }

MlpModel MlpModel::random(RandomStream& rng) {
    MlpModel model;
    const double bound1 = 1.0 / std::sqrt(static_cast<double>(kInputs));
    const double bound2 = 1.0 / std::sqrt(static_cast<double>(kHidden));
    model.w1.resize(static_cast<std::size_t>(kHidden * kInputs));
    model.b1.resize(static_cast<std::size_t>(kHidden));
    model.w2.resize(static_cast<std::size_t>(kOutputs * kHidden));
    model.b2.resize(static_cast<std::size_t>(kOutputs));
    for (double& v : model.w1) {
        v = rng.uniform(-bound1, bound1);
    }
    for (double& v : model.b1) {
        v = rng.uniform(-bound1, bound1);
    }
    for (double& v : model.w2) {
        v = rng.uniform(-bound2, bound2);
    }
    for (double& v : model.b2) {
        v = rng.uniform(-bound2, bound2);
    }
    return model;
}

std::size_t MlpModel::n_params() const noexcept {
    return w1.size() + b1.size() + w2.size() + b2.size();
}

std::vector<double> MlpModel::flatten() const {
    std::vector<double> flat;
    flat.reserve(n_params());
    flat.insert(flat.end(), w1.begin(), w1.end());
    flat.insert(flat.end(), b1.begin(), b1.end());
    flat.insert(flat.end(), w2.begin(), w2.end());
    flat.insert(flat.end(), b2.begin(), b2.end());
    return flat;
}

void MlpModel::unflatten(std::span<const double> flat) {
    if (flat.size() != n_params()) {
        throw std::invalid_argument("MlpModel::unflatten: wrong parameter count");
    }
    auto it = flat.begin();
    auto take = [&it](std::vector<double>& dst) {
        std::copy(it, it + static_cast<std::ptrdiff_t>(dst.size()), dst.begin());
        it += static_cast<std::ptrdiff_t>(dst.size());
    };
    take(w1);
    take(b1);
    take(w2);
    take(b2);
}

std::vector<double> MlpModel::forward(std::span<const double> z) const {
    if (z.size() != static_cast<std::size_t>(kInputs)) {
        throw std::invalid_argument("MlpModel::forward: noise vector must have length 8");
    }
    std::vector<double> hidden(static_cast<std::size_t>(kHidden));
    for (int h = 0; h < kHidden; ++h) {
        double acc = b1[static_cast<std::size_t>(h)];
        for (int i = 0; i < kInputs; ++i) {
            acc += w1[static_cast<std::size_t>(h * kInputs + i)] * z[static_cast<std::size_t>(i)];
        }
        hidden[static_cast<std::size_t>(h)] = std::max(0.0, acc);
    }
    std::vector<double> out(static_cast<std::size_t>(kOutputs));
    for (int o = 0; o < kOutputs; ++o) {
        double acc = b2[static_cast<std::size_t>(o)];
        for (int h = 0; h < kHidden; ++h) {
            acc += w2[static_cast<std::size_t>(o * kHidden + h)] * hidden[static_cast<std::size_t>(h)];
        }
        out[static_cast<std::size_t>(o)] = std::tanh(acc);
    }
    return out;
}

StateVector toy_state(const AmplitudeModel& model) { return normalized_real_state(model.c); }

StateVector toy_state(const MlpModel& model, std::span<const double> z) {
    return normalized_real_state(model.forward(z));
}

std::vector<double> toy_gradient(const AmplitudeModel& model, const DiscriminatorSpec& disc,
                                 LabelTarget target) {
    const StateVector psi = toy_state(model);
    if (psi.n_qubits() != disc.n_data) {
        throw std::invalid_argument("toy_gradient: model width != disc n_data");
    }
    const std::vector<double> g = label_gradient_wrt_state(disc, psi);
    std::vector<double> grad = chain_through_normalization(g, model.c);
    apply_target_sign(grad, target);
    return grad;
}

std::vector<double> toy_gradient(const MlpModel& model, const DiscriminatorSpec& disc,
                                 std::span<const double> z, LabelTarget target) {
    if (disc.n_data != 4) {
        throw std::invalid_argument("toy_gradient: MLP output is 16 amplitudes (4 qubits)");
    }
    // Forward pass, keeping intermediates for backprop.
    if (z.size() != static_cast<std::size_t>(MlpModel::kInputs)) {
        throw std::invalid_argument("toy_gradient: noise vector must have length 8");
    }
    std::vector<double> h_pre(static_cast<std::size_t>(MlpModel::kHidden));
    std::vector<double> hidden(static_cast<std::size_t>(MlpModel::kHidden));
    for (int h = 0; h < MlpModel::kHidden; ++h) {
        double acc = model.b1[static_cast<std::size_t>(h)];
        for (int i = 0; i < MlpModel::kInputs; ++i) {
            acc += model.w1[static_cast<std::size_t>(h * MlpModel::kInputs + i)] *
                   z[static_cast<std::size_t>(i)];
        }
        h_pre[static_cast<std::size_t>(h)] = acc;
        hidden[static_cast<std::size_t>(h)] = std::max(0.0, acc);
    }
    std::vector<double> c(static_cast<std::size_t>(MlpModel::kOutputs));
    for (int o = 0; o < MlpModel::kOutputs; ++o) {
        double acc = model.b2[static_cast<std::size_t>(o)];
        for (int h = 0; h < MlpModel::kHidden; ++h) {
            acc += model.w2[static_cast<std::size_t>(o * MlpModel::kHidden + h)] *
                   hidden[static_cast<std::size_t>(h)];
        }
        c[static_cast<std::size_t>(o)] = std::tanh(acc);
    }

    const StateVector psi = normalized_real_state(c);
    const std::vector<double> g = label_gradient_wrt_state(disc, psi);
    const std::vector<double> d_c = chain_through_normalization(g, c);

    // Backpropagate through tanh, the linear layers, and the rectifier.
    std::vector<double> d_cpre(static_cast<std::size_t>(MlpModel::kOutputs));
    for (int o = 0; o < MlpModel::kOutputs; ++o) {
        const double t = c[static_cast<std::size_t>(o)];
        d_cpre[static_cast<std::size_t>(o)] = d_c[static_cast<std::size_t>(o)] * (1.0 - t * t);
    }
    std::vector<double> d_hidden(static_cast<std::size_t>(MlpModel::kHidden), 0.0);
    for (int o = 0; o < MlpModel::kOutputs; ++o) {
        for (int h = 0; h < MlpModel::kHidden; ++h) {
            d_hidden[static_cast<std::size_t>(h)] +=
                model.w2[static_cast<std::size_t>(o * MlpModel::kHidden + h)] *
                d_cpre[static_cast<std::size_t>(o)];
        }
    }

    MlpModel grads;
    grads.w1.assign(model.w1.size(), 0.0);
    grads.b1.assign(model.b1.size(), 0.0);
    grads.w2.assign(model.w2.size(), 0.0);
    grads.b2.assign(model.b2.size(), 0.0);
    for (int o = 0; o < MlpModel::kOutputs; ++o) {
        grads.b2[static_cast<std::size_t>(o)] = d_cpre[static_cast<std::size_t>(o)];
        for (int h = 0; h < MlpModel::kHidden; ++h) {
            grads.w2[static_cast<std::size_t>(o * MlpModel::kHidden + h)] =
                d_cpre[static_cast<std::size_t>(o)] * hidden[static_cast<std::size_t>(h)];
        }
    }
    for (int h = 0; h < MlpModel::kHidden; ++h) {
        const double d_hpre =
            h_pre[static_cast<std::size_t>(h)] > 0.0 ? d_hidden[static_cast<std::size_t>(h)] : 0.0;
        grads.b1[static_cast<std::size_t>(h)] = d_hpre;
        for (int i = 0; i < MlpModel::kInputs; ++i) {
            grads.w1[static_cast<std::size_t>(h * MlpModel::kInputs + i)] =
                d_hpre * z[static_cast<std::size_t>(i)];
        }
    }
    std::vector<double> flat = grads.flatten();
    apply_target_sign(flat, target);
    return flat;
}

} // namespace qganlab
