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

#ifndef QGANLAB_RUNNER_HPP
#define QGANLAB_RUNNER_HPP

#include <string>
#include <vector>

#include "qganlab/eval.hpp"

namespace qganlab {

//! Thrown for malformed or inconsistent experiment configurations.
class ConfigError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

enum class ExperimentMode : std::uint8_t { Supervised, Adversarial };

enum class DatasetKind : std::uint8_t {
    BarsStripes,  // six 2x2 patterns on 4 bits
    IsingSplit,   // labeled low/high split of a chain spectrum (supervised)
    IsingLowEnergy // bottom-quartile training states (adversarial)
};

struct DatasetSpec {
    DatasetKind kind = DatasetKind::BarsStripes;
    int n_spins = 8;                 // Ising kinds
    SplitMode split = SplitMode::Balanced;
    SplitParams split_params{};      // IsingSplit
    int n_train = 8;                 // IsingLowEnergy
    double quartile_fraction = 0.25; // IsingLowEnergy

    int n_bits() const { return kind == DatasetKind::BarsStripes ? 4 : n_spins; }
    bool has_energy() const { return kind != DatasetKind::BarsStripes; }
};

struct DiscriminatorSettings {
    int n_aux = 0;
    int depth = 20;
    Entangler entangler = Entangler::Chain;
};

struct GeneratorSettings {
    GeneratorKind kind = GeneratorKind::Reupload;
    int depth = 40; // ignored by the toy models
};

struct SupervisedSettings {
    int steps = 2000;
    int batch_size = 0; // 0 = full dataset
    double lr = 0.01;
    int check_every = 0;
    double stop_accuracy = 1.0;
};

struct AdversarialSettings {
    int iterations = 300;
    int n_critic = 5;
    double lr_d = 0.01;
    double lr_g = 0.01;
    int noise_batch = 8;
    int real_batch = 0; // 0 = automatic
};

struct EvaluationSettings {
    int eval_noise = 100; // noise draws behind the exact final histogram
    int sample_shots = 0; // shots per noise instance; 0 disables samples.csv
    int sample_noise = 0; // noise instances for sampling
    HistogramOrdering ordering = HistogramOrdering::BasisIndex;
};

//! A fully resolved experiment: what to train, how often, and where to put
//! the artifacts. Normally produced by preset_config or parse_config.
struct ExperimentConfig {
    std::string preset; // empty for hand-written configs
    std::string out = "runs";
    int seeds = 1;
    int jobs = 1;
    std::uint64_t master_seed = 0;
    ExperimentMode mode = ExperimentMode::Adversarial;
    DatasetSpec dataset{};
    DiscriminatorSettings discriminator{};
    GeneratorSettings generator{}; // adversarial mode only
    SupervisedSettings supervised{};
    AdversarialSettings adversarial{};
    EvaluationSettings evaluation{};

    void validate() const;
};

struct PresetInfo {
    std::string name;
    std::string description;
};

//! Built-in experiment presets, one per reference figure.
std::vector<PresetInfo> list_presets();
ExperimentConfig preset_config(const std::string& name);

//! Parses a JSON config document. A "preset" field seeds the defaults and
//! any further fields override them; unknown fields are rejected.
ExperimentConfig parse_config(const std::string& json_text);
ExperimentConfig load_config_file(const std::string& path);

//! Serializes the fully resolved config (stable key order, 2-space indent).
std::string config_to_json(const ExperimentConfig& config);

struct SeedOutcome {
    int seed_index = 0;
    std::uint64_t run_seed = 0;
    std::string directory;
    bool ok = false;
    std::string error;
};

struct ExperimentResult {
    std::string preset_dir; // <out>/<preset>
    std::vector<SeedOutcome> outcomes;
    bool ok = false; // every seed completed
};

//! Runs config.seeds independent seeds (concurrently up to config.jobs),
//! writes per-seed artifacts under <out>/<preset>/<seed>/, then aggregates
//! the completed runs. Failed seeds keep a PARTIAL marker file and do not
//! abort the others.
ExperimentResult run_experiment(const ExperimentConfig& config);

//! (Re)aggregates the completed seed runs below a preset directory into
//! aggregate.csv and aggregate.json. Idempotent: identical input bytes give
//! identical output bytes.
void aggregate_directory(const std::string& preset_dir);

} // namespace qganlab

#endif // QGANLAB_RUNNER_HPP
