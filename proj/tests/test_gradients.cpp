#include <doctest.h>

#include <cmath>
#include <numbers>

#include "qganlab/gradients.hpp"
#include "test_helpers.hpp"

using namespace qganlab;
using qganlab::testing::random_layered_circuit;
using qganlab::testing::random_state;

namespace {

constexpr double kPi = std::numbers::pi;

// Relative agreement with an absolute floor of 1, the yardstick used
// throughout: |a - b| <= tol * max(1, |a|, |b|).
bool close(double a, double b, double tol) {
    return std::abs(a - b) <= tol * std::max({1.0, std::abs(a), std::abs(b)});
}

} // namespace

TEST_CASE("parameter shift on single rotations") {
    CircuitSpec c(1);
    c.rotation(Axis::Y, 0, 0);

    // d<Z>/dtheta of Ry(theta)|0> is -sin(theta).
    for (double theta : {0.0, kPi / 2.0, 1.234, -2.2}) {
        const std::vector<double> params{theta};
        const auto grad = parameter_shift_gradient(c, params, StateVector(1), 0);
        REQUIRE(grad.size() == 1);
        CHECK(grad[0] == doctest::Approx(-std::sin(theta)).epsilon(1e-12));
    }
}

TEST_CASE("adjoint on single rotations") {
    CircuitSpec c(1);
    c.rotation(Axis::X, 0, 0);
    for (double theta : {0.3, kPi / 2.0, -1.7}) {
        const std::vector<double> params{theta};
        const auto grad = adjoint_gradient(c, params, StateVector(1), 0);
        CHECK(grad[0] == doctest::Approx(-std::sin(theta)).epsilon(1e-12));
    }
}

TEST_CASE("zero-parameter circuit gives empty gradient") {
    CircuitSpec c(2);
    c.fixed_rotation(Axis::Y, 0, 0.5).cz(0, 1);
    const std::vector<double> params;
    CHECK(parameter_shift_gradient(c, params, StateVector(2), 0).empty());
    CHECK(adjoint_gradient(c, params, StateVector(2), 0).empty());
}

TEST_CASE("finite differences on closed-form functions") {
    const std::vector<double> at{kPi / 3.0};
    const auto grad = finite_difference_gradient(
        [](std::span<const double> p) { return std::cos(p[0]); }, at, 1e-5);
    CHECK(grad[0] == doctest::Approx(-std::sin(kPi / 3.0)).epsilon(1e-9));

    const std::vector<double> multi{0.2, -0.4, 1.0};
    const auto zeros = finite_difference_gradient(
        [](std::span<const double>) { return 7.5; }, multi);
    for (double g : zeros) {
        CHECK(g == 0.0);
    }

    CHECK_THROWS_AS(finite_difference_gradient(
                        [](std::span<const double>) { return 0.0; }, at, 0.0),
                    std::invalid_argument);
}

TEST_CASE("finite difference truncation error scales as step squared") {
    RandomStream rng(97);
    const CircuitSpec c = random_layered_circuit(3, 2);
    const auto params = random_angles(c.n_params(), rng);
    const StateVector in(3);
    const auto exact = parameter_shift_gradient(c, params, in, 0);
    auto f = [&](std::span<const double> p) { return circuit_expectation(c, p, in, 0); };

    auto max_err = [&](double step) {
        const auto fd = finite_difference_gradient(f, params, step);
        double worst = 0.0;
        for (std::size_t i = 0; i < fd.size(); ++i) {
            worst = std::max(worst, std::abs(fd[i] - exact[i]));
        }
        return worst;
    };
    const double coarse = max_err(2e-3);
    const double fine = max_err(1e-3);
    REQUIRE(coarse > 1e-11); // step large enough for truncation to dominate
    const double ratio = coarse / fine;
    CHECK(ratio > 2.5);
    CHECK(ratio < 6.0);
}

TEST_CASE("parameter shift matches finite differences on layered circuits") {
    RandomStream rng(1234);
    for (int trial = 0; trial < 5; ++trial) {
        const int n = 2 + static_cast<int>(rng.uniform_index(3));
        const CircuitSpec c = random_layered_circuit(n, 1 + static_cast<int>(rng.uniform_index(3)));
        const auto params = random_angles(c.n_params(), rng);
        const StateVector in = random_state(n, rng);
        const int obs = static_cast<int>(rng.uniform_index(static_cast<std::uint64_t>(n)));

        const auto ps = parameter_shift_gradient(c, params, in, obs);
        const auto fd = finite_difference_gradient(
            [&](std::span<const double> p) { return circuit_expectation(c, p, in, obs); }, params);
        for (std::size_t i = 0; i < ps.size(); ++i) {
            CHECK(close(ps[i], fd[i], 1e-6));
        }
    }
}

TEST_CASE("adjoint matches parameter shift tightly") {
    RandomStream rng(555);
    for (int trial = 0; trial < 25; ++trial) {
        const int n = 1 + static_cast<int>(rng.uniform_index(5));
        const int layers = static_cast<int>(rng.uniform_index(6));
        const CircuitSpec c = random_layered_circuit(n, layers);
        const auto params = random_angles(c.n_params(), rng);
        const StateVector in = random_state(n, rng);
        const int obs = static_cast<int>(rng.uniform_index(static_cast<std::uint64_t>(n)));

        const auto ps = parameter_shift_gradient(c, params, in, obs);
        const auto ad = adjoint_gradient(c, params, in, obs);
        REQUIRE(ps.size() == ad.size());
        for (std::size_t i = 0; i < ps.size(); ++i) {
            CHECK(close(ad[i], ps[i], 1e-9));
        }
    }
}

TEST_CASE("adjoint handles shared slots and fixed gates") {
    // Two gates reading the same slot: gradient accumulates both terms.
    CircuitSpec c(1);
    c.rotation(Axis::Y, 0, 0).rotation(Axis::Y, 0, 0);
    const std::vector<double> params{0.37};
    // <Z> = cos(2 theta), derivative -2 sin(2 theta).
    const auto ad = adjoint_gradient(c, params, StateVector(1), 0);
    CHECK(ad[0] == doctest::Approx(-2.0 * std::sin(0.74)).epsilon(1e-12));

    // Interleaved fixed rotations do not disturb trainable slots.
    CircuitSpec m(2);
    m.fixed_rotation(Axis::X, 0, 0.9).rotation(Axis::Y, 1, 0).fixed_rotation(Axis::Z, 1, -0.3);
    const std::vector<double> p2{1.1};
    const auto ps = parameter_shift_gradient(m, p2, StateVector(2), 1);
    const auto a2 = adjoint_gradient(m, p2, StateVector(2), 1);
    CHECK(a2[0] == doctest::Approx(ps[0]).epsilon(1e-12));
}

TEST_CASE("adjoint expectation value matches direct evaluation") {
    RandomStream rng(8);
    const CircuitSpec c = random_layered_circuit(4, 2);
    const auto params = random_angles(c.n_params(), rng);
    const StateVector in = random_state(4, rng);
    std::vector<double> grad(static_cast<std::size_t>(c.n_params()));
    const double e = adjoint_expectation_gradient(c, params, in, 1, grad);
    CHECK(e == doctest::Approx(circuit_expectation(c, params, in, 1)).epsilon(1e-12));
}

TEST_CASE("adjoint slot range restricts accumulation") {
    RandomStream rng(9);
    const CircuitSpec c = random_layered_circuit(3, 2);
    const auto params = random_angles(c.n_params(), rng);
    const StateVector in(3);
    const auto full = adjoint_gradient(c, params, in, 0);

    const int split = c.n_params() / 2;
    std::vector<double> head(full.size()), tail(full.size());
    AdjointWorkspace ws;
    adjoint_expectation_gradient(c, params, in, 0, head, 0, split, &ws);
    adjoint_expectation_gradient(c, params, in, 0, tail, split, -1, &ws);
    for (std::size_t i = 0; i < full.size(); ++i) {
        const double merged = head[i] + tail[i];
        CHECK(merged == doctest::Approx(full[i]).epsilon(1e-12));
        if (static_cast<int>(i) < split) {
            CHECK(tail[i] == 0.0);
        } else {
            CHECK(head[i] == 0.0);
        }
    }
}

TEST_CASE("gradient rules reject trainable non-rotations") {
    std::vector<GateOp> gates(1);
    gates[0].kind = GateOp::Kind::CZ;
    gates[0].qubit = 0;
    gates[0].qubit2 = 1;
    gates[0].slot = 0;
    const CircuitSpec bad = CircuitSpec::from_gates(2, gates, 1);
    const std::vector<double> params{0.1};
    const StateVector in(2);
    std::vector<double> grad(1);
    CHECK_THROWS_AS(parameter_shift_gradient(bad, params, in, 0), UnsupportedGateError);
    CHECK_THROWS_AS(adjoint_expectation_gradient(bad, params, in, 0, grad), UnsupportedGateError);
}

TEST_CASE("gradient argument validation") {
    CircuitSpec c(2);
    c.rotation(Axis::Y, 0, 0);
    const std::vector<double> params{0.5};
    const StateVector in(2);
    CHECK_THROWS_AS(parameter_shift_gradient(c, params, in, 2), std::out_of_range);
    const std::vector<double> wrong{0.5, 0.6};
    CHECK_THROWS_AS(parameter_shift_gradient(c, wrong, in, 0), std::invalid_argument);
    std::vector<double> short_grad(0);
    CHECK_THROWS_AS(adjoint_expectation_gradient(c, params, in, 0, short_grad),
                    std::invalid_argument);
}
