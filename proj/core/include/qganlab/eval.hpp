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

#ifndef QGANLAB_EVAL_HPP
#define QGANLAB_EVAL_HPP

#include <utility>
#include <vector>

#include "qganlab/data.hpp"
#include "qganlab/train.hpp"

namespace qganlab {

enum class HistogramOrdering : std::uint8_t { BasisIndex, EnergySorted };

//! Exact measurement distribution over 2^N basis states.
struct DistributionHistogram {
    std::vector<double> probs;
    HistogramOrdering ordering = HistogramOrdering::BasisIndex;
};

//! Mean over the noise list of the exact output distribution of the
//! generator (no shot noise). The noiseless amplitude model takes a
//! singleton noise list.
DistributionHistogram generator_distribution(const GeneratorModel& generator,
                                             const std::vector<std::vector<double>>& noise_samples);

//! (1/2) sum_i |p_i - q_i| for two normalized distributions of equal length.
double total_variation_distance(std::span<const double> p, std::span<const double> q);

struct EnergyStats {
    double mean_energy = 0.0;
    std::int64_t retained = 0; // basis states (or samples) contributing mass
};

//! Probability-weighted mean energy, basis-index ordering, with optional
//! exclusion of states (mass renormalized over the rest).
EnergyStats energy_statistics(std::span<const double> probs, const IsingInstance& instance,
                              std::span<const BitString> exclude = {});

//! Empirical mean energy of drawn samples, with the same exclusion rule.
EnergyStats energy_statistics(std::span<const BitString> samples, const IsingInstance& instance,
                              std::span<const BitString> exclude = {});

//! (min, max) probability that a histogram assigns to the training states.
std::pair<double, double> mode_collapse_metric(std::span<const double> probs,
                                               std::span<const BitString> training_set);

//! Reorders a basis-index histogram by ascending energy (sorted_spectrum's
//! deterministic tie-break).
std::vector<double> reorder_by_energy(std::span<const double> probs,
                                      const IsingInstance& instance);

//! Seed-ensemble statistics: pointwise mean/std of the loss curves and
//! per-bin mean/variance of the final histograms. Standard deviation and
//! variance are population statistics (divide by the run count).
struct RunAggregate {
    std::vector<double> loss_d_mean, loss_d_std;
    std::vector<double> loss_g_mean, loss_g_std;
    std::vector<double> histogram_mean, histogram_variance;
    std::size_t n_runs = 0;
};

//! Aggregates one or more traces of equal length; a single trace yields zero
//! std/variance everywhere. Order of the traces does not matter.
RunAggregate aggregate_runs(std::span<const RunTrace> traces);

} // namespace qganlab

#endif // QGANLAB_EVAL_HPP
