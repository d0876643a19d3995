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

#include "qganlab/eval.hpp"

#include <algorithm>
#include <cmath>

namespace qganlab {

DistributionHistogram generator_distribution(
    const GeneratorModel& generator, const std::vector<std::vector<double>>& noise_samples) {
    if (noise_samples.empty()) {
        throw std::invalid_argument("generator_distribution: noise list must be nonempty");
    }
    DistributionHistogram histogram;
    for (const auto& z : noise_samples) {
        const StateVector state = generator_output(generator, z);
        const auto probs = state.probabilities();
        if (histogram.probs.empty()) {
            histogram.probs.assign(probs.size(), 0.0);
        }
        for (std::size_t i = 0; i < probs.size(); ++i) {
            histogram.probs[i] += probs[i];
        }
    }
    const double scale = 1.0 / static_cast<double>(noise_samples.size());
    for (double& p : histogram.probs) {
        p *= scale;
    }
    return histogram;
}

namespace {

void check_normalized(std::span<const double> p, const char* who) {
    double total = 0.0;
    for (double v : p) {
        if (v < -1e-12) {
            throw std::invalid_argument(std::string(who) + ": negative probability");
        }
        total += v;
    }
    if (std::abs(total - 1.0) > 1e-6) {
        throw std::invalid_argument(std::string(who) + ": distribution is not normalized");
    }
}

} // namespace

double total_variation_distance(std::span<const double> p, std::span<const double> q) {
    if (p.size() != q.size()) {
        throw std::invalid_argument("total_variation_distance: length mismatch");
    }
    check_normalized(p, "total_variation_distance");
    check_normalized(q, "total_variation_distance");
    double acc = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        acc += std::abs(p[i] - q[i]);
    }
    return 0.5 * acc;
}

namespace {

std::vector<char> exclusion_mask(std::size_t dim, int n_bits, std::span<const BitString> exclude) {
    std::vector<char> mask(dim, 0);
    for (const BitString& x : exclude) {
        if (x.size() != n_bits) {
            throw std::invalid_argument("energy_statistics: exclusion width mismatch");
        }
        mask[x.index()] = 1;
    }
    return mask;
}

} // namespace

EnergyStats energy_statistics(std::span<const double> probs, const IsingInstance& instance,
                              std::span<const BitString> exclude) {
    instance.validate();
    const std::size_t dim = std::size_t{1} << instance.n_spins;
    if (probs.size() != dim) {
        throw std::invalid_argument("energy_statistics: histogram size != 2^n_spins");
    }
    const auto mask = exclusion_mask(dim, instance.n_spins, exclude);
    double mass = 0.0, weighted = 0.0;
    std::int64_t retained = 0;
    for (std::size_t i = 0; i < dim; ++i) {
        if (mask[i]) {
            continue;
        }
        if (probs[i] > 0.0) {
            ++retained;
        }
        mass += probs[i];
        weighted += probs[i] * ising_energy(instance, BitString(static_cast<std::uint32_t>(i),
                                                                instance.n_spins));
    }
    if (mass <= 0.0) {
        throw std::invalid_argument("energy_statistics: exclusion removed all mass");
    }
    return EnergyStats{weighted / mass, retained};
}

EnergyStats energy_statistics(std::span<const BitString> samples, const IsingInstance& instance,
                              std::span<const BitString> exclude) {
    instance.validate();
    const std::size_t dim = std::size_t{1} << instance.n_spins;
    const auto mask = exclusion_mask(dim, instance.n_spins, exclude);
    double weighted = 0.0;
    std::int64_t retained = 0;
    for (const BitString& x : samples) {
        if (x.size() != instance.n_spins) {
            throw std::invalid_argument("energy_statistics: sample width mismatch");
        }
        if (mask[x.index()]) {
            continue;
        }
        ++retained;
        weighted += ising_energy(instance, x);
    }
    if (retained == 0) {
        throw std::invalid_argument("energy_statistics: exclusion removed all samples");
    }
    return EnergyStats{weighted / static_cast<double>(retained), retained};
}

std::pair<double, double> mode_collapse_metric(std::span<const double> probs,
                                               std::span<const BitString> training_set) {
    if (training_set.empty()) {
        throw std::invalid_argument("mode_collapse_metric: training set must be nonempty");
    }
    double lo = 2.0, hi = -1.0;
    for (const BitString& x : training_set) {
        if (x.index() >= probs.size()) {
            throw std::invalid_argument("mode_collapse_metric: state outside histogram");
        }
        const double p = probs[x.index()];
        lo = std::min(lo, p);
        hi = std::max(hi, p);
    }
    return {lo, hi};
}

std::vector<double> reorder_by_energy(std::span<const double> probs,
                                      const IsingInstance& instance) {
    const auto spectrum = sorted_spectrum(instance);
    if (probs.size() != spectrum.size()) {
        throw std::invalid_argument("reorder_by_energy: histogram size != 2^n_spins");
    }
    std::vector<double> out;
    out.reserve(probs.size());
    for (const auto& [state, energy] : spectrum) {
        out.push_back(probs[state.index()]);
    }
    return out;
}

RunAggregate aggregate_runs(std::span<const RunTrace> traces) {
    if (traces.empty()) {
        throw std::invalid_argument("aggregate_runs: need at least one trace");
    }
    const std::size_t steps = traces.front().loss_d.size();
    const std::size_t bins = traces.front().final_distribution.size();
    for (const RunTrace& t : traces) {
        if (t.loss_d.size() != steps || t.loss_g.size() != steps ||
            t.final_distribution.size() != bins) {
            throw std::invalid_argument("aggregate_runs: traces have mismatched lengths");
        }
    }
    const double n = static_cast<double>(traces.size());

    auto mean_std = [&](auto&& get) {
        std::pair<std::vector<double>, std::vector<double>> out;
        out.first.assign(steps, 0.0);
        out.second.assign(steps, 0.0);
        for (const RunTrace& t : traces) {
            for (std::size_t i = 0; i < steps; ++i) {
                out.first[i] += get(t)[i];
            }
        }
        for (double& m : out.first) {
            m /= n;
        }
        for (const RunTrace& t : traces) {
            for (std::size_t i = 0; i < steps; ++i) {
                const double d = get(t)[i] - out.first[i];
                out.second[i] += d * d;
            }
        }
        for (double& s : out.second) {
            s = std::sqrt(s / n);
        }
        return out;
    };

    RunAggregate agg;
    agg.n_runs = traces.size();
    std::tie(agg.loss_d_mean, agg.loss_d_std) = mean_std([](const RunTrace& t) -> const auto& {
        return t.loss_d;
    });
    std::tie(agg.loss_g_mean, agg.loss_g_std) = mean_std([](const RunTrace& t) -> const auto& {
        return t.loss_g;
    });

    agg.histogram_mean.assign(bins, 0.0);
    agg.histogram_variance.assign(bins, 0.0);
    for (const RunTrace& t : traces) {
        for (std::size_t i = 0; i < bins; ++i) {
            agg.histogram_mean[i] += t.final_distribution[i];
        }
    }
    for (double& m : agg.histogram_mean) {
        m /= n;
    }
    for (const RunTrace& t : traces) {
        for (std::size_t i = 0; i < bins; ++i) {
            const double d = t.final_distribution[i] - agg.histogram_mean[i];
            agg.histogram_variance[i] += d * d;
        }
    }
    for (double& v : agg.histogram_variance) {
        v /= n;
    }
    return agg;
}

} // namespace qganlab
