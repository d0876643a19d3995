#ifndef QGANLAB_TEST_HELPERS_HPP
#define QGANLAB_TEST_HELPERS_HPP

#include <array>
#include <cmath>
#include <complex>
#include <vector>

#include "qganlab/circuit.hpp"
#include "qganlab/rng.hpp"
#include "qganlab/statevec.hpp"

namespace qganlab::testing {

// Layered circuit with all-trainable rotations: per qubit Rz Ry Rz, then a
// CZ chain. Slot numbering is sequential, (layer * n + qubit) * 3 + k.
inline CircuitSpec random_layered_circuit(int n_qubits, int n_layers) {
    CircuitSpec circuit(n_qubits);
    int slot = 0;
    for (int layer = 0; layer < n_layers; ++layer) {
        for (int q = 0; q < n_qubits; ++q) {
            circuit.rotation(Axis::Z, q, slot++);
            circuit.rotation(Axis::Y, q, slot++);
            circuit.rotation(Axis::Z, q, slot++);
        }
        for (int q = 0; q + 1 < n_qubits; ++q) {
            circuit.cz(q, q + 1);
        }
    }
    return circuit;
}

// Haar-ish random state: uniform complex amplitudes, normalized.
inline StateVector random_state(int n_qubits, RandomStream& rng) {
    StateVector state(n_qubits);
    auto amps = state.amplitudes();
    for (auto& a : amps) {
        a = cdouble{rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
    }
    const double n = state.norm();
    for (auto& a : amps) {
        a /= n;
    }
    return state;
}

// Dense-matrix oracle for single-qubit gates, built by Kronecker products so
// it exercises an index path independent of the simulator kernels.
using DenseMatrix = std::vector<std::vector<cdouble>>;

inline DenseMatrix dense_identity(std::size_t d) {
    DenseMatrix m(d, std::vector<cdouble>(d, cdouble{0.0, 0.0}));
    for (std::size_t i = 0; i < d; ++i) {
        m[i][i] = cdouble{1.0, 0.0};
    }
    return m;
}

inline DenseMatrix dense_kron(const DenseMatrix& a, const DenseMatrix& b) {
    const std::size_t ra = a.size(), rb = b.size();
    DenseMatrix m(ra * rb, std::vector<cdouble>(ra * rb));
    for (std::size_t i = 0; i < ra; ++i) {
        for (std::size_t j = 0; j < ra; ++j) {
            for (std::size_t k = 0; k < rb; ++k) {
                for (std::size_t l = 0; l < rb; ++l) {
                    m[i * rb + k][j * rb + l] = a[i][j] * b[k][l];
                }
            }
        }
    }
    return m;
}

inline DenseMatrix dense_rotation(Axis axis, double angle) {
    const double c = std::cos(0.5 * angle);
    const double s = std::sin(0.5 * angle);
    switch (axis) {
    case Axis::X:
        return {{cdouble{c, 0}, cdouble{0, -s}}, {cdouble{0, -s}, cdouble{c, 0}}};
    case Axis::Y:
        return {{cdouble{c, 0}, cdouble{-s, 0}}, {cdouble{s, 0}, cdouble{c, 0}}};
    default:
        return {{cdouble{c, -s}, cdouble{0, 0}}, {cdouble{0, 0}, cdouble{c, s}}};
    }
}

// I_{2^q} (x) U (x) I_{2^{n-1-q}} applied as a dense matrix-vector product.
inline std::vector<cdouble> dense_apply_rotation(const StateVector& state, int qubit, Axis axis,
                                                 double angle) {
    const int n = state.n_qubits();
    DenseMatrix full = dense_identity(std::size_t{1} << qubit);
    full = dense_kron(full, dense_rotation(axis, angle));
    full = dense_kron(full, dense_identity(std::size_t{1} << (n - 1 - qubit)));
    const auto amps = state.amplitudes();
    std::vector<cdouble> out(amps.size(), cdouble{0.0, 0.0});
    for (std::size_t i = 0; i < out.size(); ++i) {
        for (std::size_t j = 0; j < out.size(); ++j) {
            out[i] += full[i][j] * amps[j];
        }
    }
    return out;
}

} // namespace qganlab::testing

#endif // QGANLAB_TEST_HELPERS_HPP
