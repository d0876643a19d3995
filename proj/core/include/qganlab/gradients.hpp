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

#ifndef QGANLAB_GRADIENTS_HPP
#define QGANLAB_GRADIENTS_HPP

#include <functional>
#include <span>
#include <vector>

#include "qganlab/circuit.hpp"

namespace qganlab {

//! Central finite differences of an arbitrary scalar function. The oracle
//! the exact rules are tested against; O(step^2) truncation error.
std::vector<double> finite_difference_gradient(
    const std::function<double(std::span<const double>)>& f, std::span<const double> params,
    double step = 1e-5);

//! Exact gradient of <Z_obs> by the parameter-shift rule:
//! d<Z>/dt = (E(t + pi/2) - E(t - pi/2)) / 2 for rotation gates.
//! Costs two circuit executions per parameter slot. Throws
//! UnsupportedGateError if any trainable gate is not a rotation.
std::vector<double> parameter_shift_gradient(const CircuitSpec& circuit,
                                             std::span<const double> params,
                                             const StateVector& input, int obs_qubit);

//! Reusable ket/bra buffers for repeated adjoint sweeps over equally sized
//! circuits; avoids two statevector allocations per gradient call.
struct AdjointWorkspace {
    StateVector ket{1};
    StateVector bra{1};
};

//! Adjoint-mode gradient of <Z_obs>: one forward sweep plus one backward
//! sweep over the gate list, independent of the parameter count.
//!
//! Returns the expectation value and writes the gradient into `grad_out`
//! (length n_params, zeroed first). Only slots in [slot_begin, slot_end) are
//! accumulated; pass slot_end = -1 for all slots. Restricting the range
//! skips the per-gate inner products outside it, which matters when a large
//! composite circuit is trained blockwise.
double adjoint_expectation_gradient(const CircuitSpec& circuit, std::span<const double> params,
                                    const StateVector& input, int obs_qubit,
                                    std::span<double> grad_out, int slot_begin = 0,
                                    int slot_end = -1, AdjointWorkspace* workspace = nullptr);

//! Convenience wrapper: full-range adjoint gradient, freshly allocated.
std::vector<double> adjoint_gradient(const CircuitSpec& circuit, std::span<const double> params,
                                     const StateVector& input, int obs_qubit);

} // namespace qganlab

#endif // QGANLAB_GRADIENTS_HPP
