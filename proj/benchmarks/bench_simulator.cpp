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

#include <benchmark/benchmark.h>

#include <numbers>
#include <vector>

#include "qganlab/circuit.hpp"
#include "qganlab/gradients.hpp"
#include "qganlab/rng.hpp"
#include "qganlab/statevec.hpp"

namespace {

using namespace qganlab;

CircuitSpec layered_circuit(int n_qubits, int n_layers) {
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

void BM_RotationKernel(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    StateVector sv(n);
    double angle = 0.001;
    for (auto _ : state) {
        sv.apply_rotation(Axis::Y, n / 2, angle);
        angle += 0.001;
        benchmark::DoNotOptimize(sv.amplitudes().data());
    }
    state.SetItemsProcessed(state.iterations() * (std::int64_t{1} << n));
}
BENCHMARK(BM_RotationKernel)->Arg(10)->Arg(12)->Arg(16);

void BM_RzKernel(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    StateVector sv(n);
    double angle = 0.001;
    for (auto _ : state) {
        sv.apply_rotation(Axis::Z, n / 2, angle);
        angle += 0.001;
        benchmark::DoNotOptimize(sv.amplitudes().data());
    }
    state.SetItemsProcessed(state.iterations() * (std::int64_t{1} << n));
}
BENCHMARK(BM_RzKernel)->Arg(10)->Arg(12);

void BM_CzKernel(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    StateVector sv(n);
    for (auto _ : state) {
        sv.apply_cz(0, n - 1);
        benchmark::DoNotOptimize(sv.amplitudes().data());
    }
    state.SetItemsProcessed(state.iterations() * (std::int64_t{1} << n));
}
BENCHMARK(BM_CzKernel)->Arg(10)->Arg(12);

void BM_CircuitForward(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const int depth = static_cast<int>(state.range(1));
    const CircuitSpec circuit = layered_circuit(n, depth);
    RandomStream rng(1);
    const std::vector<double> params = random_angles(circuit.n_params(), rng);
    StateVector sv(n);
    for (auto _ : state) {
        sv.reset();
        circuit.apply(sv, params);
        benchmark::DoNotOptimize(sv.amplitudes().data());
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(circuit.n_gates()));
}
BENCHMARK(BM_CircuitForward)->Args({8, 20})->Args({10, 20})->Args({12, 20});

void BM_AdjointGradient(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const int depth = static_cast<int>(state.range(1));
    const CircuitSpec circuit = layered_circuit(n, depth);
    RandomStream rng(1);
    const std::vector<double> params = random_angles(circuit.n_params(), rng);
    const StateVector input(n);
    std::vector<double> grad(static_cast<std::size_t>(circuit.n_params()));
    AdjointWorkspace ws;
    for (auto _ : state) {
        adjoint_expectation_gradient(circuit, params, input, 0, grad, 0, -1, &ws);
        benchmark::DoNotOptimize(grad.data());
    }
}
BENCHMARK(BM_AdjointGradient)->Args({8, 20})->Args({10, 20})->Args({12, 20})->Args({12, 10});

void BM_ParameterShiftGradient(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const int depth = static_cast<int>(state.range(1));
    const CircuitSpec circuit = layered_circuit(n, depth);
    RandomStream rng(1);
    const std::vector<double> params = random_angles(circuit.n_params(), rng);
    const StateVector input(n);
    for (auto _ : state) {
        auto grad = parameter_shift_gradient(circuit, params, input, 0);
        benchmark::DoNotOptimize(grad.data());
    }
}
BENCHMARK(BM_ParameterShiftGradient)->Args({6, 5})->Args({8, 5});

} // namespace

BENCHMARK_MAIN();
