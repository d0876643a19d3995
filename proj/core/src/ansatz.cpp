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

#include "qganlab/ansatz.hpp"

#include <algorithm>

namespace qganlab {

namespace {

// One hardware-efficient layer: Rz(alpha) Ry(beta) Rz(gamma) on every qubit
// (slots in application order), then the CZ entangler. Gates act on qubits
// [qubit_base, qubit_base + width) of the circuit; slots start at slot_base.
int append_layer(CircuitSpec& circuit, int qubit_base, int width, int slot_base,
                 Entangler entangler) {
    int slot = slot_base;
    for (int q = 0; q < width; ++q) {
        const int target = qubit_base + q;
        circuit.rotation(Axis::Z, target, slot++);
        circuit.rotation(Axis::Y, target, slot++);
        circuit.rotation(Axis::Z, target, slot++);
    }
    for (int q = 0; q + 1 < width; ++q) {
        circuit.cz(qubit_base + q, qubit_base + q + 1);
    }
    if (entangler == Entangler::Ring && width > 2) {
        circuit.cz(qubit_base + width - 1, qubit_base);
    }
    return slot;
}

void append_noise_layer(CircuitSpec& circuit, int width, Axis axis,
                        std::span<const double> noise) {
    for (int q = 0; q < width; ++q) {
        circuit.fixed_rotation(axis, q, noise[static_cast<std::size_t>(q)]);
    }
}

void append_generator_gates(CircuitSpec& circuit, const GeneratorSpec& gen,
                            std::span<const double> noise, int slot_base) {
    if (noise.size() != static_cast<std::size_t>(gen.n_qubits)) {
        throw std::invalid_argument("generator: noise vector has wrong length");
    }
    int slot = slot_base;
    if (gen.noise_mode == NoiseMode::Linear) {
        append_noise_layer(circuit, gen.n_qubits, Axis::Y, noise);
        for (int layer = 0; layer < gen.depth; ++layer) {
            slot = append_layer(circuit, 0, gen.n_qubits, slot, gen.entangler);
        }
    } else {
        for (int layer = 0; layer < gen.depth; ++layer) {
            append_noise_layer(circuit, gen.n_qubits, Axis::X, noise);
            slot = append_layer(circuit, 0, gen.n_qubits, slot, gen.entangler);
        }
    }
}

} // namespace

void DiscriminatorSpec::validate() const {
    if (n_data < 1) {
        throw std::invalid_argument("DiscriminatorSpec: n_data must be at least 1");
    }
    if (n_aux < 0) {
        throw std::invalid_argument("DiscriminatorSpec: n_aux must be non-negative");
    }
    if (depth < 0) {
        throw std::invalid_argument("DiscriminatorSpec: depth must be non-negative");
    }
    if (n_qubits() > StateVector::kMaxQubits) {
        throw ResourceError("DiscriminatorSpec: total qubit count exceeds 20");
    }
    if (params.size() != static_cast<std::size_t>(n_params())) {
        throw std::invalid_argument("DiscriminatorSpec: params length does not match depth");
    }
}

void GeneratorSpec::validate() const {
    if (n_qubits < 1) {
        throw std::invalid_argument("GeneratorSpec: n_qubits must be at least 1");
    }
    if (depth < 0) {
        throw std::invalid_argument("GeneratorSpec: depth must be non-negative");
    }
    if (n_qubits > StateVector::kMaxQubits) {
        throw ResourceError("GeneratorSpec: qubit count exceeds 20");
    }
    if (params.size() != static_cast<std::size_t>(n_params())) {
        throw std::invalid_argument("GeneratorSpec: params length does not match depth");
    }
}

GeneratorSpec make_reuploading_generator(int n_qubits, int depth) {
    GeneratorSpec gen;
    gen.n_qubits = n_qubits;
    gen.depth = depth;
    gen.noise_mode = NoiseMode::Reupload;
    gen.params.assign(static_cast<std::size_t>(gen.n_params()), 0.0);
    gen.validate();
    return gen;
}

GeneratorSpec make_linear_noise_generator(int n_qubits, int depth) {
    GeneratorSpec gen = make_reuploading_generator(n_qubits, depth);
    gen.noise_mode = NoiseMode::Linear;
    return gen;
}

CircuitSpec discriminator_circuit(const DiscriminatorSpec& spec) {
    spec.validate();
    CircuitSpec circuit(spec.n_qubits());
    int slot = 0;
    for (int layer = 0; layer < spec.depth; ++layer) {
        slot = append_layer(circuit, 0, spec.n_qubits(), slot, spec.entangler);
    }
    return circuit;
}

CircuitSpec generator_circuit(const GeneratorSpec& spec, std::span<const double> noise) {
    spec.validate();
    CircuitSpec circuit(spec.n_qubits);
    append_generator_gates(circuit, spec, noise, 0);
    return circuit;
}

CircuitSpec qgan_pipeline_circuit(const GeneratorSpec& gen, const DiscriminatorSpec& disc,
                                  std::span<const double> noise) {
    gen.validate();
    disc.validate();
    if (gen.n_qubits != disc.n_data) {
        throw std::invalid_argument("qgan_pipeline_circuit: generator width != disc n_data");
    }
    CircuitSpec circuit(disc.n_qubits());
    append_generator_gates(circuit, gen, noise, 0);
    int slot = gen.n_params();
    for (int layer = 0; layer < disc.depth; ++layer) {
        slot = append_layer(circuit, 0, disc.n_qubits(), slot, disc.entangler);
    }
    return circuit;
}

std::vector<double> pipeline_params(const GeneratorSpec& gen, const DiscriminatorSpec& disc) {
    std::vector<double> params;
    params.reserve(gen.params.size() + disc.params.size());
    params.insert(params.end(), gen.params.begin(), gen.params.end());
    params.insert(params.end(), disc.params.begin(), disc.params.end());
    return params;
}

double discriminator_predict(const DiscriminatorSpec& disc, const BitString& x) {
    if (x.size() != disc.n_data) {
        throw std::invalid_argument("discriminator_predict: input length != n_data");
    }
    StateVector state = basis_encode(x, disc.n_qubits());
    const CircuitSpec circuit = discriminator_circuit(disc);
    circuit.apply(state, disc.params);
    return label_from_expectation(state.expectation_z(0));
}

double batch_real_label(const DiscriminatorSpec& disc, std::span<const BitString> batch) {
    if (batch.empty()) {
        throw std::invalid_argument("batch_real_label: empty batch");
    }
    const CircuitSpec circuit = discriminator_circuit(disc);
    double acc = 0.0;
    for (const BitString& x : batch) {
        if (x.size() != disc.n_data) {
            throw std::invalid_argument("batch_real_label: input length != n_data");
        }
        StateVector state = basis_encode(x, disc.n_qubits());
        circuit.apply(state, disc.params);
        acc += label_from_expectation(state.expectation_z(0));
    }
    return acc / static_cast<double>(batch.size());
}

StateVector generator_state(const GeneratorSpec& gen, std::span<const double> noise) {
    StateVector state(gen.n_qubits);
    generator_circuit(gen, noise).apply(state, gen.params);
    return state;
}

StateVector embed_with_aux(const StateVector& data_state, int n_aux) {
    if (n_aux < 0) {
        throw std::invalid_argument("embed_with_aux: n_aux must be non-negative");
    }
    if (n_aux == 0) {
        return data_state;
    }
    StateVector extended(data_state.n_qubits() + n_aux);
    auto dst = extended.amplitudes();
    const auto src = data_state.amplitudes();
    dst[0] = cdouble{0.0, 0.0};
    for (std::size_t i = 0; i < src.size(); ++i) {
        dst[i << n_aux] = src[i];
    }
    return extended;
}

double fake_label(const DiscriminatorSpec& disc, const StateVector& generator_output) {
    if (generator_output.n_qubits() != disc.n_data) {
        throw std::invalid_argument("fake_label: generator output width != disc n_data");
    }
    StateVector state = embed_with_aux(generator_output, disc.n_aux);
    const CircuitSpec circuit = discriminator_circuit(disc);
    circuit.apply(state, disc.params);
    return label_from_expectation(state.expectation_z(0));
}

} // namespace qganlab
