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

#include "qganlab/statevec.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

namespace qganlab {

BitString::BitString(std::uint32_t index, int size) : index_(index), size_(size) {
    if (size < 1 || size > StateVector::kMaxQubits) {
        throw std::invalid_argument("BitString: size out of range");
    }
    if (size < 32 && index >= (1u << size)) {
        throw std::invalid_argument("BitString: index does not fit in size bits");
    }
}

BitString BitString::parse(const std::string& text) {
    if (text.empty() || text.size() > StateVector::kMaxQubits) {
        throw std::invalid_argument("BitString::parse: length out of range");
    }
    std::uint32_t index = 0;
    for (char ch : text) {
        if (ch != '0' && ch != '1') {
            throw std::invalid_argument("BitString::parse: expected only '0' or '1'");
        }
        index = (index << 1) | static_cast<std::uint32_t>(ch - '0');
    }
    return BitString(index, static_cast<int>(text.size()));
}

int BitString::bit(int i) const {
    if (i < 0 || i >= size_) {
        throw std::out_of_range("BitString::bit: position out of range");
    }
    return static_cast<int>((index_ >> (size_ - 1 - i)) & 1u);
}

int BitString::weight() const noexcept { return std::popcount(index_); }

std::string BitString::str() const {
    std::string out(static_cast<std::size_t>(size_), '0');
    for (int i = 0; i < size_; ++i) {
        out[static_cast<std::size_t>(i)] = static_cast<char>('0' + bit(i));
    }
    return out;
}

StateVector::StateVector(int n_qubits) : n_qubits_(n_qubits) {
    if (n_qubits < 1 || n_qubits > kMaxQubits) {
        throw ResourceError("StateVector: qubit count must be between 1 and 20");
    }
    amps_.assign(std::size_t{1} << n_qubits, cdouble{0.0, 0.0});
    amps_[0] = cdouble{1.0, 0.0};
}

void StateVector::reset() {
    std::fill(amps_.begin(), amps_.end(), cdouble{0.0, 0.0});
    amps_[0] = cdouble{1.0, 0.0};
}

std::uint64_t StateVector::stride_of(int qubit) const {
    if (qubit < 0 || qubit >= n_qubits_) {
        throw std::out_of_range("StateVector: qubit index out of range");
    }
    // Qubit 0 is the most significant bit of the basis index.
    return std::uint64_t{1} << (n_qubits_ - 1 - qubit);
}

namespace {

// Iterates over all (i0, i1) index pairs that differ only in the bit given
// by `mask` and applies `body(i0, i1)` with i1 = i0 | mask.
template <typename Body>
inline void for_each_pair(std::size_t dim, std::uint64_t mask, Body&& body) {
    const std::uint64_t lo = mask - 1;
    const std::uint64_t hi = ~lo;
    const std::uint64_t half = dim >> 1;
    for (std::uint64_t k = 0; k < half; ++k) {
        const std::uint64_t i0 = ((k & hi) << 1) | (k & lo);
        body(i0, i0 | mask);
    }
}

} // namespace

void StateVector::apply_rotation(Axis axis, int qubit, double angle) {
    const std::uint64_t mask = stride_of(qubit);
    const double c = std::cos(0.5 * angle);
    const double s = std::sin(0.5 * angle);
    cdouble* amps = amps_.data();
    switch (axis) {
    case Axis::X:
        // [[c, -is], [-is, c]]
        for_each_pair(amps_.size(), mask, [=](std::uint64_t i0, std::uint64_t i1) {
            const cdouble a = amps[i0];
            const cdouble b = amps[i1];
            amps[i0] = cdouble{c * a.real() + s * b.imag(), c * a.imag() - s * b.real()};
            amps[i1] = cdouble{s * a.imag() + c * b.real(), -s * a.real() + c * b.imag()};
        });
        break;
    case Axis::Y:
        // [[c, -s], [s, c]]
        for_each_pair(amps_.size(), mask, [=](std::uint64_t i0, std::uint64_t i1) {
            const cdouble a = amps[i0];
            const cdouble b = amps[i1];
            amps[i0] = c * a - s * b;
            amps[i1] = s * a + c * b;
        });
        break;
    case Axis::Z:
        // diag(c - is, c + is)
        for_each_pair(amps_.size(), mask, [=](std::uint64_t i0, std::uint64_t i1) {
            const cdouble a = amps[i0];
            const cdouble b = amps[i1];
            amps[i0] = cdouble{c * a.real() + s * a.imag(), c * a.imag() - s * a.real()};
            amps[i1] = cdouble{c * b.real() - s * b.imag(), c * b.imag() + s * b.real()};
        });
        break;
    }
}

void StateVector::apply_matrix(int qubit, const cdouble u[4]) {
    const std::uint64_t mask = stride_of(qubit);
    cdouble* amps = amps_.data();
    const cdouble u00 = u[0], u01 = u[1], u10 = u[2], u11 = u[3];
    for_each_pair(amps_.size(), mask, [=](std::uint64_t i0, std::uint64_t i1) {
        const cdouble a = amps[i0];
        const cdouble b = amps[i1];
        amps[i0] = u00 * a + u01 * b;
        amps[i1] = u10 * a + u11 * b;
    });
}

void StateVector::apply_cz(int a, int b) {
    if (a == b) {
        throw std::invalid_argument("StateVector::apply_cz: qubits must be distinct");
    }
    const std::uint64_t both = stride_of(a) | stride_of(b);
    for (std::size_t i = 0; i < amps_.size(); ++i) {
        if ((i & both) == both) {
            amps_[i] = -amps_[i];
        }
    }
}

void StateVector::apply_pauli_z(int qubit) {
    const std::uint64_t mask = stride_of(qubit);
    for_each_pair(amps_.size(), mask, [amps = amps_.data()](std::uint64_t, std::uint64_t i1) {
        amps[i1] = -amps[i1];
    });
}

double StateVector::expectation_z(int qubit) const {
    const std::uint64_t mask = stride_of(qubit);
    double acc = 0.0;
    for_each_pair(amps_.size(), mask,
                  [&acc, amps = amps_.data()](std::uint64_t i0, std::uint64_t i1) {
                      acc += std::norm(amps[i0]) - std::norm(amps[i1]);
                  });
    return acc;
}

std::vector<double> StateVector::probabilities() const {
    std::vector<double> probs(amps_.size());
    for (std::size_t i = 0; i < amps_.size(); ++i) {
        probs[i] = std::norm(amps_[i]);
    }
    return probs;
}

std::vector<BitString> StateVector::sample_bitstrings(int shots, RandomStream& rng) const {
    if (shots < 0) {
        throw std::invalid_argument("sample_bitstrings: shots must be non-negative");
    }
    // Inverse-CDF sampling over the cumulative measurement distribution.
    std::vector<double> cdf(amps_.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < amps_.size(); ++i) {
        acc += std::norm(amps_[i]);
        cdf[i] = acc;
    }
    const double total = cdf.back();
    std::vector<BitString> out;
    out.reserve(static_cast<std::size_t>(shots));
    for (int s = 0; s < shots; ++s) {
        const double u = rng.uniform() * total;
        const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
        const auto idx = static_cast<std::uint32_t>(
            std::min<std::ptrdiff_t>(it - cdf.begin(), static_cast<std::ptrdiff_t>(cdf.size()) - 1));
        out.emplace_back(idx, n_qubits_);
    }
    return out;
}

double StateVector::norm() const {
    double acc = 0.0;
    for (const cdouble& a : amps_) {
        acc += std::norm(a);
    }
    return std::sqrt(acc);
}

StateVector basis_encode(const BitString& x, int total_qubits) {
    if (total_qubits < x.size()) {
        throw std::invalid_argument("basis_encode: total_qubits smaller than bit string");
    }
    StateVector state(total_qubits);
    // Rx(pi)|0> = -i|1>, so the product state is (-i)^weight |x>|0...0> with
    // the data bits occupying the most significant end of the index.
    static constexpr cdouble kPhases[4] = {{1.0, 0.0}, {0.0, -1.0}, {-1.0, 0.0}, {0.0, 1.0}};
    const int aux = total_qubits - x.size();
    const std::uint64_t index = std::uint64_t{x.index()} << aux;
    auto amps = state.amplitudes();
    amps[0] = cdouble{0.0, 0.0};
    amps[index] = kPhases[x.weight() % 4];
    return state;
}

} // namespace qganlab
