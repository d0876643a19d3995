#include <doctest.h>

#include <cmath>
#include <numbers>

#include "qganlab/eval.hpp"
#include "qganlab/train.hpp"

using namespace qganlab;

namespace {

constexpr double kPi = std::numbers::pi;

// Discriminator that outputs exactly 0.5 on both one-qubit basis states:
// a single Rz(0) Ry(pi/2) Rz(0) layer.
DiscriminatorSpec half_half_disc() {
    DiscriminatorSpec disc;
    disc.n_data = 1;
    disc.n_aux = 0;
    disc.depth = 1;
    disc.params = {0.0, kPi / 2.0, 0.0};
    return disc;
}

} // namespace

TEST_CASE("adam first step moves by roughly the learning rate") {
    AdamParams opts;
    Adam adam(2, opts);
    std::vector<double> params{1.0, -1.0};
    const std::vector<double> grads{0.5, -0.25};
    adam.step(params, grads);
    // Bias correction makes m_hat / (sqrt(v_hat) + eps) ~ sign(g) on step 1.
    CHECK(std::abs(params[0] - (1.0 - 0.01)) <= 1e-9);
    CHECK(std::abs(params[1] - (-1.0 + 0.01)) <= 1e-9);
    CHECK(adam.steps_taken() == 1);
}

TEST_CASE("adam leaves parameters alone on zero gradient") {
    Adam adam(3);
    std::vector<double> params{0.1, 0.2, 0.3};
    const std::vector<double> zero(3, 0.0);
    adam.step(params, zero);
    CHECK(params == std::vector<double>{0.1, 0.2, 0.3});
    CHECK(adam.steps_taken() == 1);
}

TEST_CASE("adam minimizes a quadratic") {
    AdamParams opts;
    opts.lr = 0.05;
    Adam adam(1, opts);
    std::vector<double> params{1.0};
    std::vector<double> grads(1);
    for (int step = 0; step < 200; ++step) {
        grads[0] = 2.0 * params[0];
        adam.step(params, grads);
    }
    CHECK(std::abs(params[0]) < 0.05);
}

TEST_CASE("adam validates arguments") {
    AdamParams bad;
    bad.lr = 0.0;
    CHECK_THROWS_AS(Adam(1, bad), std::invalid_argument);
    bad = AdamParams{};
    bad.beta1 = 1.0;
    CHECK_THROWS_AS(Adam(1, bad), std::invalid_argument);

    Adam adam(2);
    std::vector<double> params{0.0, 0.0};
    const std::vector<double> grads{0.0};
    CHECK_THROWS_AS(adam.step(params, grads), std::invalid_argument);
}

TEST_CASE("supervised loss on the identity discriminator") {
    DiscriminatorSpec disc;
    disc.n_data = 4;
    disc.depth = 0;

    LabeledDataset right;
    right.items.push_back({BitString::parse("0000"), 1, std::nullopt});
    CHECK(supervised_loss(disc, right) == doctest::Approx(0.0));

    LabeledDataset wrong;
    wrong.items.push_back({BitString::parse("0000"), 0, std::nullopt});
    CHECK(supervised_loss(disc, wrong) == doctest::Approx(1.0));

    LabeledDataset empty;
    CHECK_THROWS_AS(supervised_loss(disc, empty), std::invalid_argument);
}

TEST_CASE("classification metrics on a hand example") {
    LabeledDataset dataset;
    dataset.items.push_back({BitString::parse("00"), 0, std::nullopt});
    dataset.items.push_back({BitString::parse("01"), 0, std::nullopt});
    dataset.items.push_back({BitString::parse("10"), 1, std::nullopt});
    dataset.items.push_back({BitString::parse("11"), 1, std::nullopt});
    // Predictions: first low item right, second wrong, both high items right.
    const std::vector<double> preds{0.2, 0.7, 0.9, 0.6};
    const ClassificationMetrics m = classification_metrics(preds, dataset);
    CHECK(m.accuracy == doctest::Approx(0.75));
    CHECK(m.accuracy_low == doctest::Approx(0.5));
    CHECK(m.accuracy_high == doctest::Approx(1.0));
    CHECK(m.balanced_accuracy == doctest::Approx(0.75));

    const std::vector<double> short_preds{0.2};
    CHECK_THROWS_AS(classification_metrics(short_preds, dataset), std::invalid_argument);
}

TEST_CASE("supervised training solves bars-and-stripes membership") {
    DiscriminatorSpec disc;
    disc.n_data = 4;
    disc.n_aux = 0;
    disc.depth = 20;

    const LabeledDataset dataset = membership_dataset(bars_and_stripes_2x2(), 4);
    SupervisedOptions options;
    options.steps = 2000;
    options.check_every = 25;
    options.stop_accuracy = 1.0;

    RandomStream rng(12345);
    const SupervisedResult result = train_discriminator_supervised(disc, dataset, options, rng);
    CHECK(result.metrics.accuracy == doctest::Approx(1.0));
    CHECK(result.steps_run <= options.steps);
    CHECK(result.loss.size() == static_cast<std::size_t>(result.steps_run));
    CHECK(result.loss.front() > result.loss.back());
    CHECK(result.predictions.size() == dataset.items.size());
}

TEST_CASE("supervised training is deterministic per stream seed") {
    DiscriminatorSpec disc;
    disc.n_data = 4;
    disc.depth = 3;
    const LabeledDataset dataset = membership_dataset(bars_and_stripes_2x2(), 4);
    SupervisedOptions options;
    options.steps = 40;
    options.batch_size = 4;

    RandomStream a(777), b(777);
    const SupervisedResult ra = train_discriminator_supervised(disc, dataset, options, a);
    const SupervisedResult rb = train_discriminator_supervised(disc, dataset, options, b);
    CHECK(ra.loss == rb.loss);
    CHECK(ra.disc.params == rb.disc.params);
    CHECK(ra.predictions == rb.predictions);
}

TEST_CASE("sample noise ranges and determinism") {
    RandomStream a(5), b(5);
    const auto batch_a = sample_noise(4, 3, 0.0, 2.0 * kPi, a);
    const auto batch_b = sample_noise(4, 3, 0.0, 2.0 * kPi, b);
    REQUIRE(batch_a.size() == 3);
    REQUIRE(batch_a[0].size() == 4);
    CHECK(batch_a == batch_b);
    for (const auto& z : batch_a) {
        for (double v : z) {
            CHECK(v >= 0.0);
            CHECK(v < 2.0 * kPi);
        }
    }

    // Dimension zero is the noiseless case: vectors are empty but the batch
    // still has one entry per draw.
    RandomStream c(6);
    const auto empty_noise = sample_noise(0, 2, 0.0, 1.0, c);
    REQUIRE(empty_noise.size() == 2);
    CHECK(empty_noise[0].empty());

    RandomStream d(7);
    CHECK_THROWS_AS(sample_noise(-1, 2, 0.0, 1.0, d), std::invalid_argument);
    CHECK_THROWS_AS(sample_noise(2, 0, 0.0, 1.0, d), std::invalid_argument);
}

TEST_CASE("sample noise is uniform in the mean") {
    RandomStream rng(8);
    const auto batch = sample_noise(1, 100000, 0.0, 2.0 * kPi, rng);
    double mean = 0.0;
    for (const auto& z : batch) {
        mean += z[0];
    }
    mean /= static_cast<double>(batch.size());
    CHECK(std::abs(mean - kPi) < 0.02);
}

TEST_CASE("generator model dispatch") {
    const GeneratorModel circuit = make_reuploading_generator(3, 1);
    CHECK(generator_noise_dim(circuit) == 3);
    CHECK(noise_range(circuit).first == doctest::Approx(0.0));
    CHECK(noise_range(circuit).second == doctest::Approx(0.5));

    RandomStream rng(9);
    const GeneratorModel mlp = MlpModel::random(rng);
    CHECK(generator_noise_dim(mlp) == 8);
    CHECK(noise_range(mlp).first == doctest::Approx(-1.0));
    CHECK(noise_range(mlp).second == doctest::Approx(1.0));

    const GeneratorModel amp = AmplitudeModel::random(2, rng);
    CHECK(generator_noise_dim(amp) == 0);

    const std::vector<double> z{0.0, 0.0, 0.0};
    const StateVector out = generator_output(circuit, z);
    CHECK(out.n_qubits() == 3);
    CHECK(std::abs(out.amplitudes()[0] - cdouble{1.0, 0.0}) <= 1e-15);
}

TEST_CASE("wgan losses at the indifferent point") {
    // The discriminator labels everything 0.5, so loss_D = 0 and
    // loss_G = -0.5 exactly (the adversarial fixed point).
    const DiscriminatorSpec disc = half_half_disc();
    AmplitudeModel amp;
    amp.c = {1.0, 0.0};
    const GeneratorModel generator = amp;

    const std::vector<BitString> real{BitString::parse("0"), BitString::parse("1")};
    const std::vector<std::vector<double>> noise{{}};
    const auto [loss_d, loss_g] = wgan_losses(disc, generator, real, noise);
    CHECK(std::abs(loss_d - 0.0) <= 1e-12);
    CHECK(std::abs(loss_g - (-0.5)) <= 1e-12);

    const std::vector<BitString> empty;
    CHECK_THROWS_AS(wgan_losses(disc, generator, empty, noise), std::invalid_argument);
}

TEST_CASE("wgan losses stay inside their algebraic bounds") {
    RandomStream rng(10);
    for (int trial = 0; trial < 20; ++trial) {
        DiscriminatorSpec disc;
        disc.n_data = 3;
        disc.n_aux = 1;
        disc.depth = 2;
        disc.params = random_angles(disc.n_params(), rng);

        GeneratorSpec gen = make_reuploading_generator(3, 2);
        gen.params = random_angles(gen.n_params(), rng);
        const GeneratorModel generator = gen;

        std::vector<BitString> real;
        real.emplace_back(static_cast<std::uint32_t>(rng.uniform_index(8)), 3);
        const auto noise = sample_noise(3, 4, 0.0, 2.0 * kPi, rng);
        const auto [loss_d, loss_g] = wgan_losses(disc, generator, real, noise);
        CHECK(loss_d >= -1.0);
        CHECK(loss_d <= 1.0);
        CHECK(loss_g >= -1.0);
        CHECK(loss_g <= 0.0);
    }
}

TEST_CASE("adversarial loop bookkeeping with a circuit generator") {
    QganConfig config;
    config.generator_kind = GeneratorKind::Reupload;
    config.n_data = 2;
    config.gen_depth = 1;
    config.disc_depth = 1;
    config.n_aux = 1;
    config.n_critic = 2;
    config.noise_batch = 2;
    config.iterations = 3;
    config.eval_noise = 5;
    config.seed = 42;
    config.data = {BitString::parse("00"), BitString::parse("11")};

    const RunTrace trace = train_qgan(config);
    CHECK(trace.loss_d.size() == 3);
    CHECK(trace.loss_g.size() == 3);
    CHECK(trace.disc_updates == 6);
    CHECK(trace.gen_updates == 3);
    CHECK(trace.seed == 42);
    for (std::size_t i = 0; i < trace.loss_d.size(); ++i) {
        CHECK(trace.loss_d[i] >= -1.0);
        CHECK(trace.loss_d[i] <= 1.0);
        CHECK(trace.loss_g[i] >= -1.0);
        CHECK(trace.loss_g[i] <= 0.0);
    }
    REQUIRE(trace.final_distribution.size() == 4);
    double total = 0.0;
    for (double p : trace.final_distribution) {
        CHECK(p >= 0.0);
        total += p;
    }
    CHECK(std::abs(total - 1.0) <= 1e-9);
}

TEST_CASE("adversarial loop is bit-for-bit deterministic") {
    QganConfig config;
    config.generator_kind = GeneratorKind::Linear;
    config.n_data = 2;
    config.gen_depth = 1;
    config.disc_depth = 1;
    config.n_critic = 2;
    config.noise_batch = 2;
    config.iterations = 3;
    config.eval_noise = 4;
    config.seed = 7;
    config.data = {BitString::parse("01"), BitString::parse("10")};

    const RunTrace a = train_qgan(config);
    const RunTrace b = train_qgan(config);
    CHECK(a.loss_d == b.loss_d);
    CHECK(a.loss_g == b.loss_g);
    CHECK(a.final_distribution == b.final_distribution);
    CHECK(a.disc.params == b.disc.params);
    CHECK(std::get<GeneratorSpec>(a.generator).params ==
          std::get<GeneratorSpec>(b.generator).params);
}

TEST_CASE("adversarial loop with the amplitude toy model") {
    QganConfig config;
    config.generator_kind = GeneratorKind::Amplitude;
    config.n_data = 2;
    config.disc_depth = 1;
    config.n_critic = 1;
    config.noise_batch = 3;
    config.iterations = 2;
    config.seed = 11;
    config.data = {BitString::parse("00"), BitString::parse("11")};

    const RunTrace trace = train_qgan(config);
    const auto& amp = std::get<AmplitudeModel>(trace.generator);
    REQUIRE(amp.c.size() == 4);
    // Noiseless model: the final distribution is exactly its square.
    const auto probs = toy_state(amp).probabilities();
    REQUIRE(trace.final_distribution.size() == probs.size());
    for (std::size_t i = 0; i < probs.size(); ++i) {
        CHECK(trace.final_distribution[i] == doctest::Approx(probs[i]).epsilon(1e-12));
    }
}

TEST_CASE("adversarial loop with the mlp toy model") {
    QganConfig config;
    config.generator_kind = GeneratorKind::Mlp;
    config.n_data = 4;
    config.disc_depth = 1;
    config.n_critic = 2;
    config.noise_batch = 2;
    config.iterations = 2;
    config.eval_noise = 3;
    config.seed = 13;
    config.data = bars_and_stripes_2x2();

    const RunTrace trace = train_qgan(config);
    CHECK(trace.loss_d.size() == 2);
    CHECK(std::holds_alternative<MlpModel>(trace.generator));
    CHECK(trace.final_distribution.size() == 16);
}

TEST_CASE("qgan config validation") {
    QganConfig config;
    config.data = bars_and_stripes_2x2();
    CHECK_NOTHROW(config.validate());

    QganConfig empty = config;
    empty.data.clear();
    CHECK_THROWS_AS(empty.validate(), std::invalid_argument);

    QganConfig mismatch = config;
    mismatch.n_data = 3;
    CHECK_THROWS_AS(mismatch.validate(), std::invalid_argument);

    QganConfig mlp = config;
    mlp.generator_kind = GeneratorKind::Mlp;
    mlp.n_data = 3; // the toy MLP is wired for 4 data qubits
    CHECK_THROWS_AS(mlp.validate(), std::invalid_argument);

    QganConfig bad_critic = config;
    bad_critic.n_critic = 0;
    CHECK_THROWS_AS(bad_critic.validate(), std::invalid_argument);
}
