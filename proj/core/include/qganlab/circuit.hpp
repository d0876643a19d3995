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

#ifndef QGANLAB_CIRCUIT_HPP
#define QGANLAB_CIRCUIT_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "qganlab/statevec.hpp"

namespace qganlab {

//! Thrown when a gradient rule is asked to differentiate a gate it does not
//! support (anything other than a single-qubit rotation).
class UnsupportedGateError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

//! One gate in a circuit: either a single-qubit rotation or a CZ.
//!
//! A rotation reads its angle from parameter slot `slot` when slot >= 0 and
//! from the fixed `angle` field otherwise. Several gates may share a slot;
//! gradients then accumulate over all occurrences.
struct GateOp {
    enum class Kind : std::uint8_t { Rotation, CZ };

    Kind kind = Kind::Rotation;
    Axis axis = Axis::Z;
    std::int16_t qubit = 0;
    std::int16_t qubit2 = -1; // second CZ qubit, unused for rotations
    std::int32_t slot = -1;   // trainable parameter slot, -1 = fixed angle
    double angle = 0.0;       // fixed angle, ignored when slot >= 0

    double bound_angle(std::span<const double> params) const {
        return slot >= 0 ? params[static_cast<std::size_t>(slot)] : angle;
    }
};

//! An ordered gate sequence on a fixed qubit count, with `n_params` trainable
//! rotation-angle slots. The spec is immutable once built except through the
//! fluent append methods; applying it never mutates the spec.
class CircuitSpec {
  public:
    explicit CircuitSpec(int n_qubits);

    //! Builds from a raw gate list. Validates qubit and slot ranges but not
    //! gate kinds, so gradient-rule violations surface later as
    //! UnsupportedGateError.
    static CircuitSpec from_gates(int n_qubits, std::vector<GateOp> gates, int n_params);

    int n_qubits() const noexcept { return n_qubits_; }
    int n_params() const noexcept { return n_params_; }
    std::size_t n_gates() const noexcept { return gates_.size(); }
    const std::vector<GateOp>& gates() const noexcept { return gates_; }

    //! Appends a trainable rotation reading slot `slot` (extends the slot
    //! count as needed).
    CircuitSpec& rotation(Axis axis, int qubit, int slot);

    //! Appends a rotation with a fixed, non-trainable angle.
    CircuitSpec& fixed_rotation(Axis axis, int qubit, double angle);

    CircuitSpec& cz(int a, int b);

    //! Applies every gate in order. params.size() must equal n_params().
    void apply(StateVector& state, std::span<const double> params) const;

    //! Applies the inverse circuit (reversed order, negated angles).
    void apply_inverse(StateVector& state, std::span<const double> params) const;

  private:
    void check_qubit(int qubit) const;
    void check_params(std::span<const double> params) const;

    std::vector<GateOp> gates_;
    int n_qubits_ = 0;
    int n_params_ = 0;
};

//! Runs `circuit` on a copy of `input` and returns <Z> on `obs_qubit`.
double circuit_expectation(const CircuitSpec& circuit, std::span<const double> params,
                           const StateVector& input, int obs_qubit);

//! Uniform angles in [0, 2*pi), the standard initializer for rotation slots.
std::vector<double> random_angles(int count, RandomStream& rng);

} // namespace qganlab

#endif // QGANLAB_CIRCUIT_HPP
