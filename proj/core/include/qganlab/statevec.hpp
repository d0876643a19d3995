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

#ifndef QGANLAB_STATEVEC_HPP
#define QGANLAB_STATEVEC_HPP

#include <complex>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "qganlab/rng.hpp"

namespace qganlab {

using cdouble = std::complex<double>;

//! Thrown when a request exceeds the simulator's hard resource limits.
class ResourceError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

//! Rotation generator axis for single-qubit rotations exp(-i angle sigma/2).
enum class Axis : std::uint8_t { X, Y, Z };

//! A fixed-width classical bit sequence.
//!
//! Bit 0 is the leftmost (most significant) bit: the string "0011" on four
//! bits has basis index 3, and bit(0) of "1000" is 1. Width is limited to 20
//! bits to match the simulator's qubit cap.
class BitString {
  public:
    BitString() = default;

    //! Builds from a basis index: value must fit in `size` bits.
    BitString(std::uint32_t index, int size);

    //! Parses a string of '0'/'1' characters, leftmost character first.
    static BitString parse(const std::string& text);

    int size() const noexcept { return size_; }
    std::uint32_t index() const noexcept { return index_; }

    //! Bit i, counting from the most significant end (i = 0).
    int bit(int i) const;

    //! Number of set bits.
    int weight() const noexcept;

    //! Spin value +1/-1 for bit i under the map s = 1 - 2b.
    int spin(int i) const { return 1 - 2 * bit(i); }

    std::string str() const;

    friend bool operator==(const BitString& a, const BitString& b) noexcept {
        return a.size_ == b.size_ && a.index_ == b.index_;
    }
    friend bool operator!=(const BitString& a, const BitString& b) noexcept { return !(a == b); }
    friend bool operator<(const BitString& a, const BitString& b) noexcept {
        return a.size_ != b.size_ ? a.size_ < b.size_ : a.index_ < b.index_;
    }

  private:
    std::uint32_t index_ = 0;
    int size_ = 0;
};

//! Dense statevector over n qubits: 2^n complex amplitudes, mutated in place.
//!
//! Qubit 0 is the most significant bit of the basis index, so on two qubits
//! the amplitude order is |00>, |01>, |10>, |11> and a gate on qubit 0 pairs
//! indices (i, i + 2). All gates preserve the 2-norm up to rounding.
class StateVector {
  public:
    static constexpr int kMaxQubits = 20;

    //! |0...0> on n qubits. Throws ResourceError unless 1 <= n <= 20.
    explicit StateVector(int n_qubits);

    int n_qubits() const noexcept { return n_qubits_; }
    std::size_t dim() const noexcept { return amps_.size(); }

    std::span<const cdouble> amplitudes() const noexcept { return amps_; }
    std::span<cdouble> amplitudes() noexcept { return amps_; }

    //! Resets to |0...0> without reallocating.
    void reset();

    //! Applies exp(-i angle sigma_axis / 2) to one qubit.
    void apply_rotation(Axis axis, int qubit, double angle);

    //! Applies an arbitrary 2x2 matrix {u00, u01, u10, u11} to one qubit.
    void apply_matrix(int qubit, const cdouble u[4]);

    //! Controlled-Z between two distinct qubits (symmetric in its arguments).
    void apply_cz(int a, int b);

    //! Flips the sign of every amplitude whose `qubit` bit is 1 (Pauli Z).
    void apply_pauli_z(int qubit);

    //! <Z> on one qubit: P(bit = 0) - P(bit = 1).
    double expectation_z(int qubit) const;

    //! Measurement distribution over all 2^n basis states.
    std::vector<double> probabilities() const;

    //! Draws `shots` basis states from the measurement distribution.
    std::vector<BitString> sample_bitstrings(int shots, RandomStream& rng) const;

    double norm() const;

  private:
    std::uint64_t stride_of(int qubit) const;

    std::vector<cdouble> amps_;
    int n_qubits_ = 0;
};

//! Product-state encoding of a bit string: applies Rx(b_i * pi) per data
//! qubit to |0...0>, leaving `total_qubits - x.size()` trailing auxiliary
//! qubits in |0>. Each set bit contributes a factor -i, so the result is
//! (-i)^weight times the basis state |x> (x) |0...0>.
StateVector basis_encode(const BitString& x, int total_qubits);

} // namespace qganlab

#endif // QGANLAB_STATEVEC_HPP
