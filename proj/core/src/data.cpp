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

#include "qganlab/data.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

#include "text_format.hpp"

namespace qganlab {

void IsingInstance::validate() const {
    if (n_spins < 2 || n_spins > 16) {
        throw std::invalid_argument("IsingInstance: n_spins must be between 2 and 16");
    }
    const auto n = static_cast<std::size_t>(n_spins);
    if (couplings.size() != n * n || fields.size() != n) {
        throw std::invalid_argument("IsingInstance: coupling/field shapes do not match n_spins");
    }
    for (int i = 0; i < n_spins; ++i) {
        if (coupling(i, i) != 0.0) {
            throw std::invalid_argument("IsingInstance: coupling diagonal must be zero");
        }
        for (int j = 0; j < n_spins; ++j) {
            if (coupling(i, j) != coupling(j, i)) {
                throw std::invalid_argument("IsingInstance: couplings must be symmetric");
            }
        }
    }
}

IsingInstance chain_instance(int n_spins) {
    IsingInstance instance;
    instance.n_spins = n_spins;
    if (n_spins >= 2 && n_spins <= 16) {
        const auto n = static_cast<std::size_t>(n_spins);
        instance.couplings.assign(n * n, 0.0);
        instance.fields.assign(n, 0.0);
        for (int i = 0; i + 1 < n_spins; ++i) {
            instance.couplings[static_cast<std::size_t>(i * n_spins + i + 1)] = 1.0;
            instance.couplings[static_cast<std::size_t>((i + 1) * n_spins + i)] = 1.0;
        }
    }
    instance.validate();
    return instance;
}

int LabeledDataset::n_bits() const {
    if (items.empty()) {
        throw std::invalid_argument("LabeledDataset: empty dataset has no width");
    }
    return items.front().x.size();
}

void LabeledDataset::validate() const {
    const int width = n_bits();
    for (const LabeledItem& item : items) {
        if (item.x.size() != width) {
            throw std::invalid_argument("LabeledDataset: inconsistent bit-string widths");
        }
        if (item.label != 0 && item.label != 1) {
            throw std::invalid_argument("LabeledDataset: labels must be 0 or 1");
        }
    }
}

std::vector<BitString> bars_and_stripes_2x2() {
    // 2x2 images (row-major bits) that are solid, all-bars, or all-stripes.
    static constexpr std::uint32_t kIndices[6] = {0, 3, 5, 10, 12, 15};
    std::vector<BitString> members;
    members.reserve(6);
    for (std::uint32_t idx : kIndices) {
        members.emplace_back(idx, 4);
    }
    return members;
}

double ising_energy(const IsingInstance& instance, const BitString& x) {
    instance.validate();
    if (x.size() != instance.n_spins) {
        throw std::invalid_argument("ising_energy: bit string length != n_spins");
    }
    double energy = 0.0;
    for (int i = 0; i < instance.n_spins; ++i) {
        const double si = x.spin(i);
        energy += instance.fields[static_cast<std::size_t>(i)] * si;
        for (int j = i + 1; j < instance.n_spins; ++j) {
            energy += instance.coupling(i, j) * si * x.spin(j);
        }
    }
    return energy;
}

double chain_energy(const BitString& x) {
    if (x.size() < 2) {
        throw std::invalid_argument("chain_energy: need at least 2 spins");
    }
    double energy = 0.0;
    for (int i = 0; i + 1 < x.size(); ++i) {
        energy += static_cast<double>(x.spin(i) * x.spin(i + 1));
    }
    return energy;
}

std::vector<std::pair<BitString, double>> sorted_spectrum(const IsingInstance& instance) {
    instance.validate();
    const std::size_t dim = std::size_t{1} << instance.n_spins;
    std::vector<std::pair<BitString, double>> spectrum;
    spectrum.reserve(dim);
    for (std::uint32_t idx = 0; idx < dim; ++idx) {
        const BitString x(idx, instance.n_spins);
        spectrum.emplace_back(x, ising_energy(instance, x));
    }
    std::sort(spectrum.begin(), spectrum.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) {
            return a.second < b.second;
        }
        return a.first.index() < b.first.index();
    });
    return spectrum;
}

std::vector<BitString> select_training_states(const IsingInstance& instance, int k,
                                              double quartile_fraction, RandomStream& rng) {
    if (quartile_fraction <= 0.0 || quartile_fraction > 1.0) {
        throw std::invalid_argument("select_training_states: fraction must be in (0, 1]");
    }
    const auto spectrum = sorted_spectrum(instance);
    const auto pool_size = static_cast<std::size_t>(
        std::floor(quartile_fraction * static_cast<double>(spectrum.size())));
    if (k < 1 || static_cast<std::size_t>(k) > pool_size) {
        throw std::invalid_argument("select_training_states: k exceeds the selected quartile");
    }
    std::vector<BitString> pool;
    pool.reserve(pool_size);
    for (std::size_t i = 0; i < pool_size; ++i) {
        pool.push_back(spectrum[i].first);
    }
    // Partial Fisher-Yates: the first k entries become the sample.
    for (int i = 0; i < k; ++i) {
        const auto j = static_cast<std::size_t>(i) +
                       rng.uniform_index(pool.size() - static_cast<std::size_t>(i));
        std::swap(pool[static_cast<std::size_t>(i)], pool[j]);
    }
    pool.resize(static_cast<std::size_t>(k));
    return pool;
}

LabeledDataset labeled_split(const IsingInstance& instance, SplitMode mode,
                             const SplitParams& params, RandomStream& rng) {
    const auto spectrum = sorted_spectrum(instance);
    const auto dim = spectrum.size();
    LabeledDataset dataset;

    auto push = [&dataset, &spectrum](std::size_t i, int label) {
        dataset.items.push_back(LabeledItem{spectrum[i].first, label, spectrum[i].second});
    };

    switch (mode) {
    case SplitMode::Balanced: {
        for (std::size_t i = 0; i < dim; ++i) {
            push(i, i < dim / 2 ? 0 : 1);
        }
        break;
    }
    case SplitMode::ImbalancedFull: {
        if (params.n_low < 1 || static_cast<std::size_t>(params.n_low) > dim) {
            throw std::invalid_argument("labeled_split: n_low out of range");
        }
        for (std::size_t i = 0; i < dim; ++i) {
            push(i, i < static_cast<std::size_t>(params.n_low) ? 0 : 1);
        }
        break;
    }
    case SplitMode::Reduced: {
        if (params.n_low < 1 || params.n_high < 1 ||
            static_cast<std::size_t>(params.n_low + params.n_high) > dim) {
            throw std::invalid_argument("labeled_split: reduced counts out of range");
        }
        for (std::size_t i = 0; i < static_cast<std::size_t>(params.n_low); ++i) {
            push(i, 0);
        }
        // High-energy side: n_high states drawn without replacement from the
        // remainder, kept in spectrum order for determinism.
        std::vector<std::size_t> high(dim - static_cast<std::size_t>(params.n_low));
        for (std::size_t i = 0; i < high.size(); ++i) {
            high[i] = static_cast<std::size_t>(params.n_low) + i;
        }
        for (int i = 0; i < params.n_high; ++i) {
            const auto j = static_cast<std::size_t>(i) +
                           rng.uniform_index(high.size() - static_cast<std::size_t>(i));
            std::swap(high[static_cast<std::size_t>(i)], high[j]);
        }
        high.resize(static_cast<std::size_t>(params.n_high));
        std::sort(high.begin(), high.end());
        for (std::size_t i : high) {
            push(i, 1);
        }
        break;
    }
    }
    dataset.validate();
    return dataset;
}

LabeledDataset membership_dataset(std::span<const BitString> members, int n_bits) {
    if (n_bits < 1 || n_bits > StateVector::kMaxQubits) {
        throw std::invalid_argument("membership_dataset: width out of range");
    }
    LabeledDataset dataset;
    const std::size_t dim = std::size_t{1} << n_bits;
    for (std::uint32_t idx = 0; idx < dim; ++idx) {
        const BitString x(idx, n_bits);
        const bool member = std::find(members.begin(), members.end(), x) != members.end();
        dataset.items.push_back(LabeledItem{x, member ? 0 : 1, std::nullopt});
    }
    dataset.validate();
    return dataset;
}

void write_dataset_csv(std::ostream& out, const LabeledDataset& dataset) {
    dataset.validate();
    bool any_energy = false;
    for (const LabeledItem& item : dataset.items) {
        any_energy = any_energy || item.energy.has_value();
    }
    out << (any_energy ? "bits,label,energy\n" : "bits,label\n");
    for (const LabeledItem& item : dataset.items) {
        out << item.x.str() << ',' << item.label;
        if (any_energy) {
            out << ',' << (item.energy ? detail::format_double(*item.energy) : "");
        }
        out << '\n';
    }
}

LabeledDataset read_dataset_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) {
        throw std::invalid_argument("read_dataset_csv: missing header row");
    }
    if (line != "bits,label" && line != "bits,label,energy") {
        throw std::invalid_argument("read_dataset_csv: unrecognized header: " + line);
    }
    LabeledDataset dataset;
    while (std::getline(in, line)) {
        if (line.empty()) {
            continue;
        }
        std::stringstream row(line);
        std::string bits, label, energy;
        if (!std::getline(row, bits, ',') || !std::getline(row, label, ',')) {
            throw std::invalid_argument("read_dataset_csv: malformed row: " + line);
        }
        LabeledItem item;
        item.x = BitString::parse(bits);
        if (label != "0" && label != "1") {
            throw std::invalid_argument("read_dataset_csv: label must be 0 or 1: " + line);
        }
        item.label = label == "1" ? 1 : 0;
        if (std::getline(row, energy, ',') && !energy.empty()) {
            item.energy = std::stod(energy);
        }
        dataset.items.push_back(std::move(item));
    }
    dataset.validate();
    return dataset;
}

} // namespace qganlab
