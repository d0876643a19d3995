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

#include "qganlab/gradients.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace qganlab {

namespace {

void require_rotations_trainable(const CircuitSpec& circuit) {
    for (const GateOp& gate : circuit.gates()) {
        if (gate.slot >= 0 && gate.kind != GateOp::Kind::Rotation) {
            throw UnsupportedGateError("gradient rules support only trainable rotations");
        }
    }
}

void check_obs_qubit(const CircuitSpec& circuit, int obs_qubit) {
    if (obs_qubit < 0 || obs_qubit >= circuit.n_qubits()) {
        throw std::out_of_range("gradient: observable qubit out of range");
    }
}

// Undoes one rotation gate on ket and bra in a single pass and, when
// `want_ip` is set, accumulates ip = <bra| sigma_axis |ket> from the
// pre-undo values. The per-axis inner-product terms are
//   X: conj(b0) k1 + conj(b1) k0
//   Y: i (conj(b1) k0 - conj(b0) k1)
//   Z: conj(b0) k0 - conj(b1) k1
// and the gradient contribution of the gate is Im(ip).
template <Axis axis>
cdouble backward_rotation(cdouble* ket, cdouble* bra, std::size_t dim, std::uint64_t mask,
                          double angle, bool want_ip) {
    const double c = std::cos(0.5 * angle);
    const double s = std::sin(0.5 * angle);
    const std::uint64_t lo = mask - 1;
    const std::uint64_t hi = ~lo;
    const std::uint64_t half = dim >> 1;
    double ip_re = 0.0;
    double ip_im = 0.0;
    for (std::uint64_t k = 0; k < half; ++k) {
        const std::uint64_t i0 = ((k & hi) << 1) | (k & lo);
        const std::uint64_t i1 = i0 | mask;
        const cdouble k0 = ket[i0], k1 = ket[i1];
        const cdouble b0 = bra[i0], b1 = bra[i1];
        if (want_ip) {
            cdouble term;
            if constexpr (axis == Axis::X) {
                term = std::conj(b0) * k1 + std::conj(b1) * k0;
            } else if constexpr (axis == Axis::Y) {
                term = cdouble{0.0, 1.0} * (std::conj(b1) * k0 - std::conj(b0) * k1);
            } else {
                term = std::conj(b0) * k0 - std::conj(b1) * k1;
            }
            ip_re += term.real();
            ip_im += term.imag();
        }
        // Apply the inverse rotation to both vectors.
        if constexpr (axis == Axis::X) {
            // [[c, is], [is, c]]
            ket[i0] = cdouble{c * k0.real() - s * k1.imag(), c * k0.imag() + s * k1.real()};
            ket[i1] = cdouble{-s * k0.imag() + c * k1.real(), s * k0.real() + c * k1.imag()};
            bra[i0] = cdouble{c * b0.real() - s * b1.imag(), c * b0.imag() + s * b1.real()};
            bra[i1] = cdouble{-s * b0.imag() + c * b1.real(), s * b0.real() + c * b1.imag()};
        } else if constexpr (axis == Axis::Y) {
            // [[c, s], [-s, c]]
            ket[i0] = c * k0 + s * k1;
            ket[i1] = -s * k0 + c * k1;
            bra[i0] = c * b0 + s * b1;
            bra[i1] = -s * b0 + c * b1;
        } else {
            // diag(c + is, c - is)
            ket[i0] = cdouble{c * k0.real() - s * k0.imag(), c * k0.imag() + s * k0.real()};
            ket[i1] = cdouble{c * k1.real() + s * k1.imag(), c * k1.imag() - s * k1.real()};
            bra[i0] = cdouble{c * b0.real() - s * b0.imag(), c * b0.imag() + s * b0.real()};
            bra[i1] = cdouble{c * b1.real() + s * b1.imag(), c * b1.imag() - s * b1.real()};
        }
    }
    return cdouble{ip_re, ip_im};
}

void backward_cz(cdouble* ket, cdouble* bra, std::size_t dim, std::uint64_t both) {
    for (std::size_t i = 0; i < dim; ++i) {
        if ((i & both) == both) {
            ket[i] = -ket[i];
            bra[i] = -bra[i];
        }
    }
}

} // namespace

std::vector<double> finite_difference_gradient(
    const std::function<double(std::span<const double>)>& f, std::span<const double> params,
    double step) {
    if (step <= 0.0) {
        throw std::invalid_argument("finite_difference_gradient: step must be positive");
    }
    std::vector<double> shifted(params.begin(), params.end());
    std::vector<double> grad(params.size(), 0.0);
    for (std::size_t p = 0; p < params.size(); ++p) {
        const double original = shifted[p];
        shifted[p] = original + step;
        const double plus = f(shifted);
        shifted[p] = original - step;
        const double minus = f(shifted);
        shifted[p] = original;
        grad[p] = (plus - minus) / (2.0 * step);
    }
    return grad;
}

std::vector<double> parameter_shift_gradient(const CircuitSpec& circuit,
                                             std::span<const double> params,
                                             const StateVector& input, int obs_qubit) {
    require_rotations_trainable(circuit);
    check_obs_qubit(circuit, obs_qubit);
    if (params.size() != static_cast<std::size_t>(circuit.n_params())) {
        throw std::invalid_argument("parameter_shift_gradient: wrong parameter count");
    }
    constexpr double kShift = std::numbers::pi / 2.0;
    std::vector<double> shifted(params.begin(), params.end());
    std::vector<double> grad(params.size(), 0.0);
    StateVector work(input.n_qubits());
    for (std::size_t p = 0; p < params.size(); ++p) {
        const double original = shifted[p];
        shifted[p] = original + kShift;
        work = input;
        circuit.apply(work, shifted);
        const double plus = work.expectation_z(obs_qubit);
        shifted[p] = original - kShift;
        work = input;
        circuit.apply(work, shifted);
        const double minus = work.expectation_z(obs_qubit);
        shifted[p] = original;
        grad[p] = 0.5 * (plus - minus);
    }
    return grad;
}

double adjoint_expectation_gradient(const CircuitSpec& circuit, std::span<const double> params,
                                    const StateVector& input, int obs_qubit,
                                    std::span<double> grad_out, int slot_begin, int slot_end,
                                    AdjointWorkspace* workspace) {
    require_rotations_trainable(circuit);
    check_obs_qubit(circuit, obs_qubit);
    if (grad_out.size() != static_cast<std::size_t>(circuit.n_params())) {
        throw std::invalid_argument("adjoint_expectation_gradient: wrong gradient length");
    }
    if (slot_end < 0) {
        slot_end = circuit.n_params();
    }
    std::fill(grad_out.begin(), grad_out.end(), 0.0);

    AdjointWorkspace local;
    AdjointWorkspace& ws = workspace ? *workspace : local;
    ws.ket = input;
    circuit.apply(ws.ket, params);
    const double expectation = ws.ket.expectation_z(obs_qubit);

    // bra starts as Z|psi>; sweeping backwards keeps the invariant
    // ket_k = U_k ... U_1 |in>,  bra_k = (U_{k+1} ... U_L)^dag Z |psi>.
    ws.bra = ws.ket;
    ws.bra.apply_pauli_z(obs_qubit);

    cdouble* ket = ws.ket.amplitudes().data();
    cdouble* bra = ws.bra.amplitudes().data();
    const std::size_t dim = ws.ket.dim();
    const int n = circuit.n_qubits();
    const auto& gates = circuit.gates();
    for (auto it = gates.rbegin(); it != gates.rend(); ++it) {
        const GateOp& gate = *it;
        if (gate.kind == GateOp::Kind::CZ) {
            const std::uint64_t both = (std::uint64_t{1} << (n - 1 - gate.qubit)) |
                                       (std::uint64_t{1} << (n - 1 - gate.qubit2));
            backward_cz(ket, bra, dim, both);
            continue;
        }
        const bool want_ip = gate.slot >= slot_begin && gate.slot < slot_end;
        const std::uint64_t mask = std::uint64_t{1} << (n - 1 - gate.qubit);
        const double angle = gate.bound_angle(params);
        cdouble ip;
        switch (gate.axis) {
        case Axis::X:
            ip = backward_rotation<Axis::X>(ket, bra, dim, mask, angle, want_ip);
            break;
        case Axis::Y:
            ip = backward_rotation<Axis::Y>(ket, bra, dim, mask, angle, want_ip);
            break;
        default:
            ip = backward_rotation<Axis::Z>(ket, bra, dim, mask, angle, want_ip);
            break;
        }
        if (want_ip) {
            grad_out[static_cast<std::size_t>(gate.slot)] += ip.imag();
        }
    }
    return expectation;
}

std::vector<double> adjoint_gradient(const CircuitSpec& circuit, std::span<const double> params,
                                     const StateVector& input, int obs_qubit) {
    std::vector<double> grad(static_cast<std::size_t>(circuit.n_params()), 0.0);
    adjoint_expectation_gradient(circuit, params, input, obs_qubit, grad);
    return grad;
}

} // namespace qganlab
