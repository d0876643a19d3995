// End-to-end acceptance checks. Each test case evaluates one criterion,
// prints a single PASS/FAIL line with the measured values, and asserts the
// verdict. Thresholds live next to each criterion and are intentionally
// hard-coded.
#include <doctest.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <future>
#include <map>
#include <numbers>
#include <string>

#include "qganlab/ansatz.hpp"
#include "qganlab/data.hpp"
#include "qganlab/eval.hpp"
#include "qganlab/gradients.hpp"
#include "qganlab/train.hpp"
#include "test_helpers.hpp"

using namespace qganlab;

namespace {

class Stopwatch {
  public:
    double seconds() const {
        return std::chrono::duration<double>(clock::now() - start_).count();
    }

  private:
    using clock = std::chrono::steady_clock;
    clock::time_point start_ = clock::now();
};

bool report(const char* name, bool pass, const std::string& detail) {
    std::printf("%s: %s (%s)\n", name, pass ? "PASS" : "FAIL", detail.c_str());
    std::fflush(stdout);
    return pass;
}

std::string num(double value) {
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%.4g", value);
    return buffer;
}

double rel_gap(double a, double b) {
    return std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)});
}

// Runs n independent jobs concurrently and returns results in index order.
// Safe because every training run owns its state and RNG stream; outputs are
// identical to sequential execution.
template <typename T>
std::vector<T> parallel_map(int n, const std::function<T(int)>& job) {
    std::vector<std::future<T>> futures;
    futures.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        futures.push_back(std::async(std::launch::async, job, i));
    }
    std::vector<T> results;
    results.reserve(static_cast<std::size_t>(n));
    for (auto& f : futures) {
        results.push_back(f.get());
    }
    return results;
}

// The uniform target over the six bars-and-stripes members, basis order.
std::vector<double> uniform_over_members() {
    std::vector<double> target(16, 0.0);
    for (const BitString& x : bars_and_stripes_2x2()) {
        target[x.index()] = 1.0 / 6.0;
    }
    return target;
}

QganConfig bars_stripes_qgan(GeneratorKind kind) {
    QganConfig config;
    config.generator_kind = kind;
    config.n_data = 4;
    config.gen_depth = 40;
    config.disc_depth = 20;
    config.n_aux = 0;
    config.n_critic = 5;
    config.noise_batch = 8;
    config.iterations = 300;
    config.eval_noise = 100;
    config.data = bars_and_stripes_2x2();
    return config;
}

struct EnsembleSummary {
    double mean_loss_d = 0.0;
    double mean_loss_g = 0.0;
    std::vector<double> mean_histogram;
    std::vector<RunTrace> traces;
};

EnsembleSummary run_ensemble(const QganConfig& config, std::uint64_t master_seed, int n_seeds) {
    EnsembleSummary summary;
    summary.mean_histogram.assign(1u << config.n_data, 0.0);
    summary.traces = parallel_map<RunTrace>(n_seeds, [&](int s) {
        QganConfig seeded = config;
        seeded.seed = derive_seed(master_seed, static_cast<std::uint64_t>(s));
        return train_qgan(seeded);
    });
    for (const RunTrace& trace : summary.traces) {
        summary.mean_loss_d += trace.loss_d.back();
        summary.mean_loss_g += trace.loss_g.back();
        for (std::size_t i = 0; i < summary.mean_histogram.size(); ++i) {
            summary.mean_histogram[i] += trace.final_distribution[i];
        }
    }
    summary.mean_loss_d /= n_seeds;
    summary.mean_loss_g /= n_seeds;
    for (double& p : summary.mean_histogram) {
        p /= n_seeds;
    }
    return summary;
}

} // namespace

TEST_CASE("criterion 01 gradient cross-validation") {
    constexpr const char* kName = "criterion 01 gradient cross-validation";
    constexpr int kCircuits = 200;
    constexpr double kPsVsFd = 1e-6;  // relative, against central differences
    constexpr double kAdjVsPs = 1e-9; // relative, adjoint against shift rule
    constexpr double kBudgetSeconds = 60.0;

    const Stopwatch timer;
    RandomStream rng(101);
    double worst_ps_fd = 0.0;
    double worst_adj_ps = 0.0;
    for (int trial = 0; trial < kCircuits; ++trial) {
        const int n_qubits = 1 + static_cast<int>(rng.uniform_index(6));
        const int n_layers = 1 + static_cast<int>(rng.uniform_index(10));
        const CircuitSpec circuit = testing::random_layered_circuit(n_qubits, n_layers);
        const std::vector<double> params = random_angles(circuit.n_params(), rng);
        const int obs = static_cast<int>(rng.uniform_index(static_cast<std::size_t>(n_qubits)));
        const StateVector input(n_qubits);

        const auto ps = parameter_shift_gradient(circuit, params, input, obs);
        const auto fd = finite_difference_gradient(
            [&](std::span<const double> p) { return circuit_expectation(circuit, p, input, obs); },
            params);
        const auto adj = adjoint_gradient(circuit, params, input, obs);
        for (std::size_t i = 0; i < ps.size(); ++i) {
            worst_ps_fd = std::max(worst_ps_fd, rel_gap(ps[i], fd[i]));
            worst_adj_ps = std::max(worst_adj_ps, rel_gap(adj[i], ps[i]));
        }
    }
    const double elapsed = timer.seconds();
    const bool pass = worst_ps_fd <= kPsVsFd && worst_adj_ps <= kAdjVsPs &&
                      elapsed < kBudgetSeconds;
    CHECK(report(kName, pass,
                 "max rel ps-fd " + num(worst_ps_fd) + ", max rel adj-ps " + num(worst_adj_ps) +
                     ", t " + num(elapsed) + "s"));
}

TEST_CASE("criterion 02 simulator exactness") {
    constexpr const char* kName = "criterion 02 simulator exactness";
    constexpr int kGates = 1000;
    constexpr double kNormTol = 1e-12;
    constexpr double kBisectionTol = 1e-10;

    RandomStream rng(202);
    StateVector state(8);
    for (int g = 0; g < kGates; ++g) {
        const int qubit = static_cast<int>(rng.uniform_index(8));
        const std::size_t kind = rng.uniform_index(4);
        if (kind == 3) {
            state.apply_cz(qubit, (qubit + 1) % 8);
        } else {
            const Axis axis = kind == 0 ? Axis::X : kind == 1 ? Axis::Y : Axis::Z;
            state.apply_rotation(axis, qubit, rng.uniform(0.0, 2.0 * std::numbers::pi));
        }
    }
    const double norm_drift = std::abs(state.norm() - 1.0);

    // Half of all basis inputs land on each side of the label qubit, exactly,
    // for any parameter draw and any width.
    double worst_bisection = 0.0;
    for (int n = 4; n <= 8; ++n) {
        DiscriminatorSpec disc;
        disc.n_data = n;
        disc.n_aux = 0;
        disc.depth = 3;
        disc.params = random_angles(disc.n_params(), rng);
        double mean = 0.0;
        const std::uint32_t dim = 1u << n;
        for (std::uint32_t idx = 0; idx < dim; ++idx) {
            mean += discriminator_predict(disc, BitString(idx, n));
        }
        mean /= dim;
        worst_bisection = std::max(worst_bisection, std::abs(mean - 0.5));
    }

    const bool pass = norm_drift <= kNormTol && worst_bisection <= kBisectionTol;
    CHECK(report(kName, pass,
                 "norm drift " + num(norm_drift) + ", worst bisection gap " +
                     num(worst_bisection)));
}

TEST_CASE("criterion 03 ising spectrum") {
    constexpr const char* kName = "criterion 03 ising spectrum";
    const std::map<int, int> kExpected{{-5, 2}, {-3, 10}, {-1, 20}, {1, 20}, {3, 10}, {5, 2}};

    const auto spectrum = sorted_spectrum(chain_instance(6));
    std::map<int, int> counts;
    double mean = 0.0;
    for (const auto& [x, e] : spectrum) {
        counts[static_cast<int>(std::lround(e))] += 1;
        mean += e;
    }
    mean /= static_cast<double>(spectrum.size());

    const bool pass = spectrum.size() == 64 && counts == kExpected && std::abs(mean) <= 1e-12;
    CHECK(report(kName, pass,
                 "64 states, degeneracies " + std::string(counts == kExpected ? "ok" : "WRONG") +
                     ", mean " + num(mean)));
}

TEST_CASE("criterion 04 bars-and-stripes discriminator") {
    constexpr const char* kName = "criterion 04 bars-and-stripes discriminator";
    constexpr int kSeeds = 20;
    constexpr int kNeeded = 18;
    constexpr double kBudgetSeconds = 300.0;

    const Stopwatch timer;
    const LabeledDataset dataset = membership_dataset(bars_and_stripes_2x2(), 4);
    SupervisedOptions options;
    options.steps = 2000;
    options.check_every = 25;
    options.stop_accuracy = 1.0;

    int solved = 0;
    for (int s = 0; s < kSeeds; ++s) {
        DiscriminatorSpec disc;
        disc.n_data = 4;
        disc.n_aux = 0;
        disc.depth = 20;
        RandomStream rng(derive_seed(404, static_cast<std::uint64_t>(s)));
        const SupervisedResult result =
            train_discriminator_supervised(disc, dataset, options, rng);
        solved += result.metrics.accuracy == 1.0 ? 1 : 0;
    }
    const double elapsed = timer.seconds();
    const bool pass = solved >= kNeeded && elapsed < kBudgetSeconds;
    CHECK(report(kName, pass,
                 std::to_string(solved) + "/" + std::to_string(kSeeds) + " seeds solved, t " +
                     num(elapsed) + "s"));
}

TEST_CASE("criterion 05 auxiliary qubit advantage") {
    constexpr const char* kName = "criterion 05 auxiliary qubit advantage";
    constexpr int kSeeds = 10;
    constexpr double kGap = 0.15; // balanced accuracy, 4 aux qubits vs none
    constexpr double kBudgetSeconds = 1200.0;

    const Stopwatch timer;
    RandomStream split_rng(1); // imbalanced-full split is deterministic anyway
    const LabeledDataset dataset =
        labeled_split(chain_instance(8), SplitMode::ImbalancedFull, SplitParams{20, 60},
                      split_rng);
    SupervisedOptions options;
    options.steps = 300;
    options.batch_size = 16;

    // Jobs 0..9 train the aux arm, 10..19 the plain arm; RNG streams match
    // the sequential layout (2s for aux, 2s+1 for plain).
    const std::vector<double> accuracies = parallel_map<double>(2 * kSeeds, [&](int job) {
        const bool aux_arm = job < kSeeds;
        const int s = aux_arm ? job : job - kSeeds;
        DiscriminatorSpec disc;
        disc.n_data = 8;
        disc.n_aux = aux_arm ? 4 : 0;
        disc.depth = 20;
        RandomStream rng(
            derive_seed(505, static_cast<std::uint64_t>(aux_arm ? 2 * s : 2 * s + 1)));
        return train_discriminator_supervised(disc, dataset, options, rng).metrics
            .balanced_accuracy;
    });
    double mean_aux = 0.0;
    double mean_plain = 0.0;
    for (int s = 0; s < kSeeds; ++s) {
        mean_aux += accuracies[static_cast<std::size_t>(s)];
        mean_plain += accuracies[static_cast<std::size_t>(kSeeds + s)];
    }
    mean_aux /= kSeeds;
    mean_plain /= kSeeds;
    const double elapsed = timer.seconds();
    const bool pass = mean_aux - mean_plain >= kGap && elapsed < kBudgetSeconds;
    CHECK(report(kName, pass,
                 "balanced accuracy " + num(mean_aux) + " with aux vs " + num(mean_plain) +
                     " without, gap " + num(mean_aux - mean_plain) + ", t " + num(elapsed) + "s"));
}

TEST_CASE("criterion 06 classical-generator adversarial baseline") {
    constexpr const char* kName = "criterion 06 classical-generator adversarial baseline";
    constexpr int kSeeds = 20;
    constexpr double kLossDBand = 0.1;  // |mean loss_D|
    constexpr double kLossGBand = 0.1;  // |mean loss_G + 1/2|
    constexpr double kTvdBound = 0.15;  // mean histogram vs uniform-over-6

    QganConfig config = bars_stripes_qgan(GeneratorKind::Mlp);
    config.iterations = 500; // the toy generator converges but needs headroom
    const EnsembleSummary summary = run_ensemble(config, 606, kSeeds);
    const double tvd = total_variation_distance(summary.mean_histogram, uniform_over_members());
    const bool pass = std::abs(summary.mean_loss_d) < kLossDBand &&
                      std::abs(summary.mean_loss_g + 0.5) < kLossGBand && tvd < kTvdBound;
    CHECK(report(kName, pass,
                 "mean loss_d " + num(summary.mean_loss_d) + ", mean loss_g " +
                     num(summary.mean_loss_g) + ", tvd " + num(tvd)));
}

TEST_CASE("criterion 07 deterministic generator mode collapse") {
    constexpr const char* kName = "criterion 07 deterministic generator mode collapse";
    constexpr int kSeeds = 20;
    constexpr double kMinBelow = 1.0 / 24.0; // starved training state
    constexpr double kMaxAbove = 0.25;       // overfed training state
    constexpr double kLossGBand = 0.1;       // distance from the -0.5 fixed point

    QganConfig config = bars_stripes_qgan(GeneratorKind::Amplitude);
    const auto members = bars_and_stripes_2x2();
    int collapsed = 0;
    double mean_loss_g = 0.0;
    for (int s = 0; s < kSeeds; ++s) {
        config.seed = derive_seed(707, static_cast<std::uint64_t>(s));
        const RunTrace trace = train_qgan(config);
        const auto [min_p, max_p] = mode_collapse_metric(trace.final_distribution, members);
        const double final_g = trace.loss_g.back();
        mean_loss_g += final_g;
        const bool seed_collapsed =
            min_p < kMinBelow && max_p > kMaxAbove && std::abs(final_g + 0.5) > kLossGBand;
        collapsed += seed_collapsed ? 1 : 0;
    }
    mean_loss_g /= kSeeds;
    const bool pass = 2 * collapsed >= kSeeds;
    CHECK(report(kName, pass,
                 std::to_string(collapsed) + "/" + std::to_string(kSeeds) +
                     " seeds collapsed, mean final loss_g " + num(mean_loss_g)));
}

TEST_CASE("criterion 08 quantum generator adversarial training") {
    constexpr const char* kName = "criterion 08 quantum generator adversarial training";
    constexpr int kSeeds = 20;
    constexpr double kLossDBand = 0.1;
    constexpr double kLossGBand = 0.1;
    constexpr double kTvdBound = 0.15;

    QganConfig config = bars_stripes_qgan(GeneratorKind::Reupload);
    // The circuit-vs-circuit game needs a stronger critic than the toy models
    // to stay balanced, and reaches the documented equilibrium window by
    // ~1500 iterations; 2250 reads the converged plateau.
    config.n_critic = 10;
    config.adam_d.lr = 0.05;
    config.noise_batch = 32;
    config.iterations = 2250;
    const EnsembleSummary summary = run_ensemble(config, 808, kSeeds);
    const double tvd = total_variation_distance(summary.mean_histogram, uniform_over_members());
    const bool pass = std::abs(summary.mean_loss_d) < kLossDBand &&
                      std::abs(summary.mean_loss_g + 0.5) < kLossGBand && tvd < kTvdBound;
    CHECK(report(kName, pass,
                 "mean loss_d " + num(summary.mean_loss_d) + ", mean loss_g " +
                     num(summary.mean_loss_g) + ", tvd " + num(tvd)));
}

TEST_CASE("criterion 09 linear noise injection underperforms") {
    constexpr const char* kName = "criterion 09 linear noise injection underperforms";
    constexpr int kSeeds = 20;
    constexpr double kLossGFloor = -0.25; // stays short of the -0.5 fixed point

    const EnsembleSummary summary =
        run_ensemble(bars_stripes_qgan(GeneratorKind::Linear), 909, kSeeds);
    const bool pass = summary.mean_loss_g > kLossGFloor;
    CHECK(report(kName, pass, "mean final loss_g " + num(summary.mean_loss_g)));
}

TEST_CASE("criterion 10 low-energy state generation") {
    constexpr const char* kName = "criterion 10 low-energy state generation";
    constexpr int kSeeds = 10;
    constexpr double kMeanWithTraining = -1.0; // paper run: -2.6
    constexpr double kMeanWithout = 0.0;       // paper run: -0.34
    constexpr int kShotsPerNoise = 100;
    constexpr int kNoiseDraws = 100;
    constexpr double kBudgetSeconds = 1800.0;

    const Stopwatch timer;
    const IsingInstance instance = chain_instance(6);
    struct SeedOutcome {
        double with_training = 0.0;
        double without_training = 0.0;
        bool good = false;
    };
    const std::vector<SeedOutcome> outcomes = parallel_map<SeedOutcome>(kSeeds, [&](int s) {
        RandomStream data_rng(derive_seed(1010, static_cast<std::uint64_t>(2 * s)));
        const auto training = select_training_states(instance, 8, 0.25, data_rng);

        QganConfig config;
        config.generator_kind = GeneratorKind::Reupload;
        config.n_data = 6;
        config.gen_depth = 20;
        config.disc_depth = 20;
        config.n_aux = 4;
        config.n_critic = 5;
        config.noise_batch = 8;
        config.iterations = 300;
        config.eval_noise = 100;
        config.seed = derive_seed(1010, static_cast<std::uint64_t>(2 * s + 1));
        config.data = training;
        const RunTrace trace = train_qgan(config);

        RandomStream sample_rng(derive_seed(1010, static_cast<std::uint64_t>(3000 + s)));
        const auto [noise_lo, noise_hi] = noise_range(trace.generator);
        std::vector<BitString> samples;
        samples.reserve(static_cast<std::size_t>(kShotsPerNoise * kNoiseDraws));
        for (int draw = 0; draw < kNoiseDraws; ++draw) {
            const auto noise = sample_noise(6, 1, noise_lo, noise_hi, sample_rng);
            const StateVector state = generator_output(trace.generator, noise.front());
            for (BitString& x : state.sample_bitstrings(kShotsPerNoise, sample_rng)) {
                samples.push_back(std::move(x));
            }
        }
        SeedOutcome outcome;
        outcome.with_training =
            energy_statistics(std::span<const BitString>(samples), instance).mean_energy;
        bool excluded_ok = true;
        try {
            outcome.without_training =
                energy_statistics(std::span<const BitString>(samples), instance, training)
                    .mean_energy;
        } catch (const std::invalid_argument&) {
            excluded_ok = false; // every sample was a training state
        }
        outcome.good = outcome.with_training < kMeanWithTraining && excluded_ok &&
                       outcome.without_training < kMeanWithout;
        return outcome;
    });
    int good_seeds = 0;
    double sum_with = 0.0;
    double sum_without = 0.0;
    for (const SeedOutcome& outcome : outcomes) {
        good_seeds += outcome.good ? 1 : 0;
        sum_with += outcome.with_training;
        sum_without += outcome.without_training;
    }
    const double elapsed = timer.seconds();
    const bool pass = 2 * good_seeds >= kSeeds && elapsed < kBudgetSeconds;
    CHECK(report(kName, pass,
                 std::to_string(good_seeds) + "/" + std::to_string(kSeeds) +
                     " seeds generalized, mean energy " + num(sum_with / kSeeds) +
                     " with training states, " + num(sum_without / kSeeds) + " without, t " +
                     num(elapsed) + "s"));
}
