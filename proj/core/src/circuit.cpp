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

#include "qganlab/circuit.hpp"

#include <numbers>

namespace qganlab {

CircuitSpec::CircuitSpec(int n_qubits) : n_qubits_(n_qubits) {
    if (n_qubits < 1 || n_qubits > StateVector::kMaxQubits) {
        throw ResourceError("CircuitSpec: qubit count must be between 1 and 20");
    }
}

CircuitSpec CircuitSpec::from_gates(int n_qubits, std::vector<GateOp> gates, int n_params) {
    CircuitSpec spec(n_qubits);
    if (n_params < 0) {
        throw std::invalid_argument("CircuitSpec: negative parameter count");
    }
    for (const GateOp& gate : gates) {
        spec.check_qubit(gate.qubit);
        if (gate.kind == GateOp::Kind::CZ) {
            spec.check_qubit(gate.qubit2);
            if (gate.qubit == gate.qubit2) {
                throw std::invalid_argument("CircuitSpec: CZ qubits must be distinct");
            }
        }
        if (gate.slot >= n_params) {
            throw std::invalid_argument("CircuitSpec: slot exceeds parameter count");
        }
    }
    spec.gates_ = std::move(gates);
    spec.n_params_ = n_params;
    return spec;
}

void CircuitSpec::check_qubit(int qubit) const {
    if (qubit < 0 || qubit >= n_qubits_) {
        throw std::out_of_range("CircuitSpec: qubit index out of range");
    }
}

void CircuitSpec::check_params(std::span<const double> params) const {
    if (params.size() != static_cast<std::size_t>(n_params_)) {
        throw std::invalid_argument("CircuitSpec: parameter vector has wrong length");
    }
}

CircuitSpec& CircuitSpec::rotation(Axis axis, int qubit, int slot) {
    check_qubit(qubit);
    if (slot < 0) {
        throw std::invalid_argument("CircuitSpec::rotation: slot must be non-negative");
    }
    GateOp gate;
    gate.kind = GateOp::Kind::Rotation;
    gate.axis = axis;
    gate.qubit = static_cast<std::int16_t>(qubit);
    gate.slot = slot;
    gates_.push_back(gate);
    n_params_ = std::max(n_params_, slot + 1);
    return *this;
}

CircuitSpec& CircuitSpec::fixed_rotation(Axis axis, int qubit, double angle) {
    check_qubit(qubit);
    GateOp gate;
    gate.kind = GateOp::Kind::Rotation;
    gate.axis = axis;
    gate.qubit = static_cast<std::int16_t>(qubit);
    gate.angle = angle;
    gates_.push_back(gate);
    return *this;
}

CircuitSpec& CircuitSpec::cz(int a, int b) {
    check_qubit(a);
    check_qubit(b);
    if (a == b) {
        throw std::invalid_argument("CircuitSpec::cz: qubits must be distinct");
    }
    GateOp gate;
    gate.kind = GateOp::Kind::CZ;
    gate.qubit = static_cast<std::int16_t>(a);
    gate.qubit2 = static_cast<std::int16_t>(b);
    gates_.push_back(gate);
    return *this;
}

void CircuitSpec::apply(StateVector& state, std::span<const double> params) const {
    check_params(params);
    if (state.n_qubits() != n_qubits_) {
        throw std::invalid_argument("CircuitSpec::apply: state has wrong qubit count");
    }
    for (const GateOp& gate : gates_) {
        if (gate.kind == GateOp::Kind::CZ) {
            state.apply_cz(gate.qubit, gate.qubit2);
        } else {
            state.apply_rotation(gate.axis, gate.qubit, gate.bound_angle(params));
        }
    }
}

void CircuitSpec::apply_inverse(StateVector& state, std::span<const double> params) const {
    check_params(params);
    if (state.n_qubits() != n_qubits_) {
        throw std::invalid_argument("CircuitSpec::apply_inverse: state has wrong qubit count");
    }
    for (auto it = gates_.rbegin(); it != gates_.rend(); ++it) {
        if (it->kind == GateOp::Kind::CZ) {
            state.apply_cz(it->qubit, it->qubit2);
        } else {
            state.apply_rotation(it->axis, it->qubit, -it->bound_angle(params));
        }
    }
}

double circuit_expectation(const CircuitSpec& circuit, std::span<const double> params,
                           const StateVector& input, int obs_qubit) {
    StateVector work = input;
    circuit.apply(work, params);
    return work.expectation_z(obs_qubit);
}

std::vector<double> random_angles(int count, RandomStream& rng) {
    if (count < 0) {
        throw std::invalid_argument("random_angles: count must be non-negative");
    }
    std::vector<double> angles(static_cast<std::size_t>(count));
    for (double& a : angles) {
        a = rng.uniform(0.0, 2.0 * std::numbers::pi);
    }
    return angles;
}

} // namespace qganlab
