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

#ifndef QGANLAB_DATA_HPP
#define QGANLAB_DATA_HPP

#include <iosfwd>
#include <optional>
#include <vector>

#include "qganlab/statevec.hpp"

namespace qganlab {

//! Classical Ising problem E(s) = sum_{i<j} J_ij s_i s_j + sum_i h_i s_i
//! with spins s_i = 1 - 2 b_i (bit 0 maps to spin +1, the Z|0> eigenvalue).
struct IsingInstance {
    int n_spins = 0;
    std::vector<double> couplings; // row-major n_spins x n_spins, symmetric, zero diagonal
    std::vector<double> fields;    // length n_spins

    double coupling(int i, int j) const { return couplings[static_cast<std::size_t>(i * n_spins + j)]; }
    void validate() const;
};

//! Open chain with J_{i,i+1} = 1, all other couplings and all fields zero.
IsingInstance chain_instance(int n_spins);

//! Classification dataset: bit strings with binary labels, y = 0 marking the
//! real / low-energy class.
struct LabeledItem {
    BitString x;
    int label = 0;
    std::optional<double> energy;
};

struct LabeledDataset {
    std::vector<LabeledItem> items;

    int n_bits() const;
    void validate() const;
};

//! The six 2x2 bars-and-stripes patterns, ascending by basis index:
//! {0, 3, 5, 10, 12, 15} on 4 bits. The target distribution is uniform, 1/6
//! per member.
std::vector<BitString> bars_and_stripes_2x2();

//! General Ising energy of a spin configuration given by bits.
double ising_energy(const IsingInstance& instance, const BitString& x);

//! Nearest-neighbor chain energy sum_i s_i s_{i+1}, open boundary.
double chain_energy(const BitString& x);

//! Full spectrum sorted ascending by energy; ties broken by ascending basis
//! index so the order is deterministic.
std::vector<std::pair<BitString, double>> sorted_spectrum(const IsingInstance& instance);

//! Draws k distinct states uniformly without replacement from the lowest
//! `quartile_fraction` of the sorted spectrum.
std::vector<BitString> select_training_states(const IsingInstance& instance, int k,
                                              double quartile_fraction, RandomStream& rng);

enum class SplitMode : std::uint8_t {
    Balanced,       // all 2^N states; lower half y=0, upper half y=1
    ImbalancedFull, // all 2^N states; lowest n_low y=0, rest y=1
    Reduced,        // lowest n_low y=0 plus n_high random high states y=1
};

struct SplitParams {
    int n_low = 20;
    int n_high = 60; // Reduced mode only
};

//! Supervised split of an Ising spectrum into low-energy (y=0) and
//! high-energy (y=1) states. Reduced mode draws its high-energy subset at
//! random, so it consumes the stream; the other modes ignore it.
LabeledDataset labeled_split(const IsingInstance& instance, SplitMode mode,
                             const SplitParams& params, RandomStream& rng);

//! Membership task over all 2^n inputs: y = 0 for members, 1 otherwise.
LabeledDataset membership_dataset(std::span<const BitString> members, int n_bits);

//! Plain-text rows `bits,label[,energy]` with a header line.
void write_dataset_csv(std::ostream& out, const LabeledDataset& dataset);
LabeledDataset read_dataset_csv(std::istream& in);

} // namespace qganlab

#endif // QGANLAB_DATA_HPP
