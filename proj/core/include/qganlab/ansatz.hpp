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

#ifndef QGANLAB_ANSATZ_HPP
#define QGANLAB_ANSATZ_HPP

#include <span>
#include <vector>

#include "qganlab/circuit.hpp"

namespace qganlab {

//! Two-qubit entangler connectivity for the layered ansatz. An open chain
//! (i, i+1) is the default; a ring additionally closes (n-1, 0).
enum class Entangler : std::uint8_t { Chain, Ring };

//! How classical noise enters the generator circuit.
//!
//! Reupload: a fresh Rx(z_j) layer precedes every parameterized layer (the
//! same z each time). Linear: a single Ry(z_j) layer acts once on |0...0>
//! before all parameterized layers.
enum class NoiseMode : std::uint8_t { Reupload, Linear };

//! Quantum discriminator: basis-encoded input on n_data qubits, n_aux
//! auxiliary qubits appended in |0>, `depth` layers of per-qubit
//! Rz(gamma) Ry(beta) Rz(alpha) followed by a CZ entangler, with the label
//! read off qubit 0.
struct DiscriminatorSpec {
    int n_data = 0;
    int n_aux = 0;
    int depth = 0;
    Entangler entangler = Entangler::Chain;
    std::vector<double> params; // length depth * (n_data + n_aux) * 3

    int n_qubits() const noexcept { return n_data + n_aux; }
    int n_params() const noexcept { return depth * n_qubits() * 3; }
    void validate() const;
};

//! Quantum generator on n_qubits data qubits with `depth` parameterized
//! layers and one of the two noise injection modes.
struct GeneratorSpec {
    int n_qubits = 0;
    int depth = 0;
    NoiseMode noise_mode = NoiseMode::Reupload;
    Entangler entangler = Entangler::Chain;
    std::vector<double> params; // length depth * n_qubits * 3

    int n_params() const noexcept { return depth * n_qubits * 3; }
    void validate() const;
};

GeneratorSpec make_reuploading_generator(int n_qubits, int depth);
GeneratorSpec make_linear_noise_generator(int n_qubits, int depth);

//! Gate sequence of the discriminator unitary. Trainable slots are
//! [0, spec.n_params()); parameters are supplied at apply time.
CircuitSpec discriminator_circuit(const DiscriminatorSpec& spec);

//! Gate sequence of the generator unitary with the noise angles baked in as
//! fixed gates. Trainable slots are [0, spec.n_params()).
CircuitSpec generator_circuit(const GeneratorSpec& spec, std::span<const double> noise);

//! Generator followed by discriminator on the extended register (generator
//! gates act on the data qubits, aux qubits stay |0> until the discriminator
//! runs). Slots [0, nG) belong to the generator and [nG, nG + nD) to the
//! discriminator, so one adjoint sweep yields both blocks' gradients.
CircuitSpec qgan_pipeline_circuit(const GeneratorSpec& gen, const DiscriminatorSpec& disc,
                                  std::span<const double> noise);

//! Concatenated (generator, discriminator) parameter vector matching the
//! slot layout of qgan_pipeline_circuit.
std::vector<double> pipeline_params(const GeneratorSpec& gen, const DiscriminatorSpec& disc);

//! Maps <Z> in [-1, 1] to a label in [0, 1].
inline double label_from_expectation(double z) noexcept { return 0.5 * (z + 1.0); }

//! Label the discriminator assigns to a classical input:
//! y = (1 + <Z_0>)/2 of U_D basis_encode(x).
double discriminator_predict(const DiscriminatorSpec& disc, const BitString& x);

//! Mean of discriminator_predict over a nonempty batch.
double batch_real_label(const DiscriminatorSpec& disc, std::span<const BitString> batch);

//! |psi_G(z)> on the generator's own qubits.
StateVector generator_state(const GeneratorSpec& gen, std::span<const double> noise);

//! Embeds a data-register state into a larger register with trailing aux
//! qubits in |0>.
StateVector embed_with_aux(const StateVector& data_state, int n_aux);

//! Label for a generated state: the discriminator unitary runs directly on
//! generator_output (x) |0>^n_aux with no intermediate measurement.
double fake_label(const DiscriminatorSpec& disc, const StateVector& generator_output);

} // namespace qganlab

#endif // QGANLAB_ANSATZ_HPP
