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

#ifndef QGANLAB_NEURAL_HPP
#define QGANLAB_NEURAL_HPP

#include <span>
#include <vector>

#include "qganlab/ansatz.hpp"

namespace qganlab {

//! Thrown when a toy model's output vector has zero norm and therefore
//! cannot be interpreted as a quantum state.
class DegenerateStateError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

//! Whether a toy-model gradient should ascend or descend the fake label.
//! The generator maximizes y_fake, so its descent direction uses Maximize;
//! toy_gradient returns the gradient of the corresponding minimization
//! objective (-y_fake for Maximize, +y_fake for Minimize).
enum class LabelTarget : std::uint8_t { Maximize, Minimize };

//! Noiseless toy generator: one raw real amplitude per basis state. The
//! forward pass emits c / ||c||, so the model is scale-invariant.
struct AmplitudeModel {
    std::vector<double> c; // length 2^N, unnormalized

    static AmplitudeModel random(int n_qubits, RandomStream& rng);
    int n_qubits() const;
};

//! Small feed-forward toy generator: 8 noise inputs -> 8 rectified hidden
//! nodes -> 16 tanh outputs, interpreted as unnormalized amplitudes on 4
//! qubits. Parameter order: W1 (row-major 8x8), b1, W2 (16x8), b2.
struct MlpModel {
    static constexpr int kInputs = 8;
    static constexpr int kHidden = 8;
    static constexpr int kOutputs = 16;

    std::vector<double> w1; // kHidden x kInputs
    std::vector<double> b1; // kHidden
    std::vector<double> w2; // kOutputs x kHidden
    std::vector<double> b2; // kOutputs

    //! Uniform init on [-1/sqrt(fan_in), 1/sqrt(fan_in)] per layer.
    static MlpModel random(RandomStream& rng);

    std::size_t n_params() const noexcept;
    std::vector<double> flatten() const;
    void unflatten(std::span<const double> flat);

    //! Raw (unnormalized) output amplitudes for one noise vector.
    std::vector<double> forward(std::span<const double> z) const;
};

//! Normalized state emitted by a toy model. AmplitudeModel ignores noise.
StateVector toy_state(const AmplitudeModel& model);
StateVector toy_state(const MlpModel& model, std::span<const double> z);

//! Exact gradient of the +/- fake label w.r.t. the raw model parameters,
//! chaining through the normalization (I - psi psi^T)/||c|| and, for the
//! MLP, through the tanh/rectifier layers. The discriminator-side factor is
//! Re of the transformed-observable state U_D^dag Z_0 U_D |psi_e> read back
//! on the data register.
std::vector<double> toy_gradient(const AmplitudeModel& model, const DiscriminatorSpec& disc,
                                 LabelTarget target);
std::vector<double> toy_gradient(const MlpModel& model, const DiscriminatorSpec& disc,
                                 std::span<const double> z, LabelTarget target);

} // namespace qganlab

#endif // QGANLAB_NEURAL_HPP
