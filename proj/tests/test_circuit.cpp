#include <doctest.h>

#include <cmath>
#include <numbers>

#include "qganlab/circuit.hpp"
#include "test_helpers.hpp"

using namespace qganlab;
using qganlab::testing::random_layered_circuit;
using qganlab::testing::random_state;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("circuit construction and slot bookkeeping") {
    CircuitSpec c(2);
    c.rotation(Axis::Z, 0, 0).rotation(Axis::Y, 0, 1).cz(0, 1).fixed_rotation(Axis::X, 1, kPi);
    CHECK(c.n_qubits() == 2);
    CHECK(c.n_params() == 2);
    CHECK(c.n_gates() == 4);
    CHECK(c.gates()[3].slot == -1);

    // Shared slots only count once.
    CircuitSpec shared(1);
    shared.rotation(Axis::Y, 0, 0).rotation(Axis::Y, 0, 0);
    CHECK(shared.n_params() == 1);

    CHECK_THROWS_AS(CircuitSpec(0), ResourceError);
    CHECK_THROWS_AS(CircuitSpec(2).rotation(Axis::X, 2, 0), std::out_of_range);
    CHECK_THROWS_AS(CircuitSpec(2).rotation(Axis::X, 0, -1), std::invalid_argument);
    CHECK_THROWS_AS(CircuitSpec(2).cz(1, 1), std::invalid_argument);
}

TEST_CASE("apply matches manual gate sequence") {
    CircuitSpec c(2);
    c.rotation(Axis::Y, 0, 0).fixed_rotation(Axis::X, 1, 0.4).cz(0, 1).rotation(Axis::Z, 1, 1);
    const std::vector<double> params{1.1, -0.6};

    StateVector via_circuit(2);
    c.apply(via_circuit, params);

    StateVector manual(2);
    manual.apply_rotation(Axis::Y, 0, 1.1);
    manual.apply_rotation(Axis::X, 1, 0.4);
    manual.apply_cz(0, 1);
    manual.apply_rotation(Axis::Z, 1, -0.6);

    for (std::size_t i = 0; i < manual.dim(); ++i) {
        CHECK(std::abs(via_circuit.amplitudes()[i] - manual.amplitudes()[i]) <= 1e-15);
    }

    StateVector s(2);
    const std::vector<double> wrong{1.0};
    CHECK_THROWS_AS(c.apply(s, wrong), std::invalid_argument);
    StateVector mismatched(3);
    CHECK_THROWS_AS(c.apply(mismatched, params), std::invalid_argument);
}

TEST_CASE("apply_inverse undoes apply") {
    RandomStream rng(43);
    const CircuitSpec c = random_layered_circuit(4, 3);
    const auto params = random_angles(c.n_params(), rng);
    const StateVector in = random_state(4, rng);

    StateVector s = in;
    c.apply(s, params);
    c.apply_inverse(s, params);
    for (std::size_t i = 0; i < s.dim(); ++i) {
        CHECK(std::abs(s.amplitudes()[i] - in.amplitudes()[i]) <= 1e-12);
    }
}

TEST_CASE("from_gates validates") {
    std::vector<GateOp> gates(1);
    gates[0].kind = GateOp::Kind::Rotation;
    gates[0].axis = Axis::Y;
    gates[0].qubit = 0;
    gates[0].slot = 0;
    const CircuitSpec ok = CircuitSpec::from_gates(1, gates, 1);
    CHECK(ok.n_params() == 1);

    gates[0].slot = 2;
    CHECK_THROWS_AS(CircuitSpec::from_gates(1, gates, 1), std::invalid_argument);
    gates[0].slot = 0;
    gates[0].qubit = 5;
    CHECK_THROWS_AS(CircuitSpec::from_gates(1, gates, 1), std::out_of_range);
}

TEST_CASE("circuit expectation helper") {
    CircuitSpec c(1);
    c.rotation(Axis::Y, 0, 0);
    const std::vector<double> params{kPi / 2.0};
    const double e = circuit_expectation(c, params, StateVector(1), 0);
    CHECK(e == doctest::Approx(0.0).epsilon(1e-12));

    // <Z> of Ry(theta)|0> is cos(theta).
    const std::vector<double> p2{0.8};
    CHECK(circuit_expectation(c, p2, StateVector(1), 0) == doctest::Approx(std::cos(0.8)));
}

TEST_CASE("random angle initializer") {
    RandomStream rng(3);
    const auto angles = random_angles(1000, rng);
    REQUIRE(angles.size() == 1000);
    double lo = angles[0], hi = angles[0];
    for (double a : angles) {
        lo = std::min(lo, a);
        hi = std::max(hi, a);
    }
    CHECK(lo >= 0.0);
    CHECK(hi < 2.0 * kPi);
    CHECK(hi - lo > kPi); // spread over most of the interval

    RandomStream r2(3);
    CHECK(random_angles(1000, r2) == angles);
    CHECK(random_angles(0, rng).empty());
    CHECK_THROWS_AS(random_angles(-1, rng), std::invalid_argument);
}
