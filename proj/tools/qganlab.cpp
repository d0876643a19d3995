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

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "qganlab/runner.hpp"

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw qganlab::ConfigError("cannot read config file " + path);
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

// Builds the effective config: the file (or an empty document) with the
// command-line preset injected so that file fields still override preset
// defaults, then the remaining command-line overrides on top.
qganlab::ExperimentConfig resolve_config(const std::string& config_path,
                                         const std::string& preset, int seeds, int jobs,
                                         const std::string& out) {
    nlohmann::ordered_json doc = nlohmann::ordered_json::object();
    if (!config_path.empty()) {
        try {
            doc = nlohmann::ordered_json::parse(read_file(config_path));
        } catch (const nlohmann::json::parse_error& e) {
            throw qganlab::ConfigError(std::string("config is not valid JSON: ") + e.what());
        }
        if (!doc.is_object()) {
            throw qganlab::ConfigError("config must be a JSON object");
        }
    }
    if (!preset.empty()) {
        doc["preset"] = preset;
    }

    qganlab::ExperimentConfig config = qganlab::parse_config(doc.dump());
    if (seeds > 0) {
        config.seeds = seeds;
    }
    if (jobs > 0) {
        config.jobs = jobs;
    }
    if (!out.empty()) {
        config.out = out;
    }

    if (const char* env_seed = std::getenv("QGANLAB_SEED")) {
        char* end = nullptr;
        const unsigned long long value = std::strtoull(env_seed, &end, 10);
        if (end == env_seed || *end != '\0') {
            throw qganlab::ConfigError(std::string("QGANLAB_SEED is not an integer: ") + env_seed);
        }
        config.master_seed = static_cast<std::uint64_t>(value);
    }

    config.validate();
    return config;
}

int command_run(const std::string& config_path, const std::string& preset, int seeds, int jobs,
                const std::string& out) {
    const qganlab::ExperimentConfig config =
        resolve_config(config_path, preset, seeds, jobs, out);
    const qganlab::ExperimentResult result = qganlab::run_experiment(config);
    for (const qganlab::SeedOutcome& outcome : result.outcomes) {
        if (outcome.ok) {
            std::printf("seed %04d: ok (%s)\n", outcome.seed_index, outcome.directory.c_str());
        } else {
            std::fprintf(stderr, "seed %04d: FAILED: %s\n", outcome.seed_index,
                         outcome.error.c_str());
        }
    }
    std::printf("aggregate: %s/aggregate.csv\n", result.preset_dir.c_str());
    return result.ok ? 0 : 1;
}

int command_presets() {
    for (const qganlab::PresetInfo& info : qganlab::list_presets()) {
        std::printf("%-22s %s\n", info.name.c_str(), info.description.c_str());
    }
    return 0;
}

int command_aggregate(const std::string& dir) {
    qganlab::aggregate_directory(dir);
    std::printf("aggregate: %s/aggregate.csv\n", dir.c_str());
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Quantum adversarial training experiments on binary data"};
    app.require_subcommand(1);

    std::string config_path;
    std::string preset;
    std::string out;
    int seeds = 0;
    int jobs = 0;
    CLI::App* run = app.add_subcommand("run", "Run an experiment and persist its artifacts");
    run->add_option("--config", config_path, "JSON experiment config file");
    run->add_option("--preset", preset, "preset supplying the config defaults");
    run->add_option("--seeds", seeds, "number of independent seeds")->check(CLI::PositiveNumber);
    run->add_option("--jobs", jobs, "concurrent seed runs")->check(CLI::PositiveNumber);
    run->add_option("--out", out, "output root directory");

    CLI::App* presets = app.add_subcommand("presets", "List the built-in experiment presets");

    std::string aggregate_dir;
    CLI::App* aggregate =
        app.add_subcommand("aggregate", "Re-aggregate the seed runs under a preset directory");
    aggregate->add_option("dir", aggregate_dir, "preset directory holding seed runs")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) {
            if (config_path.empty() && preset.empty()) {
                throw qganlab::ConfigError("run needs --config and/or --preset");
            }
            return command_run(config_path, preset, seeds, jobs, out);
        }
        if (presets->parsed()) {
            return command_presets();
        }
        return command_aggregate(aggregate_dir);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}
