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

#include "qganlab/runner.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "text_format.hpp"

namespace qganlab {

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

namespace {

constexpr const char* kPartialMarker = "PARTIAL";

// --- enum <-> string -------------------------------------------------------

std::string mode_name(ExperimentMode mode) {
    return mode == ExperimentMode::Supervised ? "supervised" : "adversarial";
}

ExperimentMode parse_mode(const std::string& name) {
    if (name == "supervised") {
        return ExperimentMode::Supervised;
    }
    if (name == "adversarial") {
        return ExperimentMode::Adversarial;
    }
    throw ConfigError("unknown mode '" + name + "'");
}

std::string dataset_kind_name(DatasetKind kind) {
    switch (kind) {
    case DatasetKind::BarsStripes:
        return "bars-and-stripes";
    case DatasetKind::IsingSplit:
        return "ising-split";
    case DatasetKind::IsingLowEnergy:
        return "ising-low-energy";
    }
    return {};
}

DatasetKind parse_dataset_kind(const std::string& name) {
    if (name == "bars-and-stripes") {
        return DatasetKind::BarsStripes;
    }
    if (name == "ising-split") {
        return DatasetKind::IsingSplit;
    }
    if (name == "ising-low-energy") {
        return DatasetKind::IsingLowEnergy;
    }
    throw ConfigError("unknown dataset kind '" + name + "'");
}

std::string split_name(SplitMode mode) {
    switch (mode) {
    case SplitMode::Balanced:
        return "balanced";
    case SplitMode::ImbalancedFull:
        return "imbalanced-full";
    case SplitMode::Reduced:
        return "reduced";
    }
    return {};
}

SplitMode parse_split(const std::string& name) {
    if (name == "balanced") {
        return SplitMode::Balanced;
    }
    if (name == "imbalanced-full") {
        return SplitMode::ImbalancedFull;
    }
    if (name == "reduced") {
        return SplitMode::Reduced;
    }
    throw ConfigError("unknown split '" + name + "'");
}

std::string entangler_name(Entangler entangler) {
    return entangler == Entangler::Chain ? "chain" : "ring";
}

Entangler parse_entangler(const std::string& name) {
    if (name == "chain") {
        return Entangler::Chain;
    }
    if (name == "ring") {
        return Entangler::Ring;
    }
    throw ConfigError("unknown entangler '" + name + "'");
}

std::string generator_kind_name(GeneratorKind kind) {
    switch (kind) {
    case GeneratorKind::Reupload:
        return "reupload";
    case GeneratorKind::Linear:
        return "linear";
    case GeneratorKind::Amplitude:
        return "amplitude";
    case GeneratorKind::Mlp:
        return "mlp";
    }
    return {};
}

GeneratorKind parse_generator_kind(const std::string& name) {
    if (name == "reupload") {
        return GeneratorKind::Reupload;
    }
    if (name == "linear") {
        return GeneratorKind::Linear;
    }
    if (name == "amplitude") {
        return GeneratorKind::Amplitude;
    }
    if (name == "mlp") {
        return GeneratorKind::Mlp;
    }
    throw ConfigError("unknown generator kind '" + name + "'");
}

std::string ordering_name(HistogramOrdering ordering) {
    return ordering == HistogramOrdering::BasisIndex ? "basis" : "energy";
}

HistogramOrdering parse_ordering(const std::string& name) {
    if (name == "basis") {
        return HistogramOrdering::BasisIndex;
    }
    if (name == "energy") {
        return HistogramOrdering::EnergySorted;
    }
    throw ConfigError("unknown ordering '" + name + "'");
}

// --- JSON field access -----------------------------------------------------

void require_keys(const ordered_json& obj, const std::string& where,
                  std::initializer_list<const char*> allowed) {
    for (const auto& item : obj.items()) {
        const bool known = std::any_of(allowed.begin(), allowed.end(), [&](const char* key) {
            return item.key() == key;
        });
        if (!known) {
            throw ConfigError("unknown field '" + item.key() + "' in " + where);
        }
    }
}

const ordered_json* find(const ordered_json& obj, const char* key) {
    const auto it = obj.find(key);
    return it == obj.end() ? nullptr : &*it;
}

std::string get_string(const ordered_json& value, const std::string& where) {
    if (!value.is_string()) {
        throw ConfigError(where + " must be a string");
    }
    return value.get<std::string>();
}

int get_int(const ordered_json& value, const std::string& where) {
    if (!value.is_number_integer()) {
        throw ConfigError(where + " must be an integer");
    }
    return value.get<int>();
}

std::uint64_t get_u64(const ordered_json& value, const std::string& where) {
    if (!value.is_number_unsigned() && !value.is_number_integer()) {
        throw ConfigError(where + " must be a non-negative integer");
    }
    if (value.is_number_integer() && !value.is_number_unsigned() &&
        value.get<std::int64_t>() < 0) {
        throw ConfigError(where + " must be a non-negative integer");
    }
    return value.get<std::uint64_t>();
}

double get_double(const ordered_json& value, const std::string& where) {
    if (!value.is_number()) {
        throw ConfigError(where + " must be a number");
    }
    return value.get<double>();
}

void maybe_int(const ordered_json& obj, const char* key, const std::string& where, int& out) {
    if (const ordered_json* v = find(obj, key)) {
        out = get_int(*v, where + "." + key);
    }
}

void maybe_double(const ordered_json& obj, const char* key, const std::string& where,
                  double& out) {
    if (const ordered_json* v = find(obj, key)) {
        out = get_double(*v, where + "." + key);
    }
}

// --- section parsers -------------------------------------------------------

void apply_dataset(const ordered_json& obj, DatasetSpec& dataset) {
    if (!obj.is_object()) {
        throw ConfigError("dataset must be an object");
    }
    if (const ordered_json* v = find(obj, "kind")) {
        dataset.kind = parse_dataset_kind(get_string(*v, "dataset.kind"));
    }
    switch (dataset.kind) {
    case DatasetKind::BarsStripes:
        require_keys(obj, "dataset (bars-and-stripes)", {"kind"});
        break;
    case DatasetKind::IsingSplit:
        require_keys(obj, "dataset (ising-split)", {"kind", "n_spins", "split", "n_low", "n_high"});
        maybe_int(obj, "n_spins", "dataset", dataset.n_spins);
        if (const ordered_json* v = find(obj, "split")) {
            dataset.split = parse_split(get_string(*v, "dataset.split"));
        }
        maybe_int(obj, "n_low", "dataset", dataset.split_params.n_low);
        maybe_int(obj, "n_high", "dataset", dataset.split_params.n_high);
        break;
    case DatasetKind::IsingLowEnergy:
        require_keys(obj, "dataset (ising-low-energy)",
                     {"kind", "n_spins", "n_train", "quartile_fraction"});
        maybe_int(obj, "n_spins", "dataset", dataset.n_spins);
        maybe_int(obj, "n_train", "dataset", dataset.n_train);
        maybe_double(obj, "quartile_fraction", "dataset", dataset.quartile_fraction);
        break;
    }
}

void apply_discriminator(const ordered_json& obj, DiscriminatorSettings& disc) {
    if (!obj.is_object()) {
        throw ConfigError("discriminator must be an object");
    }
    require_keys(obj, "discriminator", {"n_aux", "depth", "entangler"});
    maybe_int(obj, "n_aux", "discriminator", disc.n_aux);
    maybe_int(obj, "depth", "discriminator", disc.depth);
    if (const ordered_json* v = find(obj, "entangler")) {
        disc.entangler = parse_entangler(get_string(*v, "discriminator.entangler"));
    }
}

void apply_generator(const ordered_json& obj, GeneratorSettings& gen) {
    if (!obj.is_object()) {
        throw ConfigError("generator must be an object");
    }
    require_keys(obj, "generator", {"kind", "depth"});
    if (const ordered_json* v = find(obj, "kind")) {
        gen.kind = parse_generator_kind(get_string(*v, "generator.kind"));
    }
    maybe_int(obj, "depth", "generator", gen.depth);
}

void apply_supervised_training(const ordered_json& obj, SupervisedSettings& opts) {
    if (!obj.is_object()) {
        throw ConfigError("training must be an object");
    }
    require_keys(obj, "training (supervised)",
                 {"steps", "batch_size", "lr", "check_every", "stop_accuracy"});
    maybe_int(obj, "steps", "training", opts.steps);
    maybe_int(obj, "batch_size", "training", opts.batch_size);
    maybe_double(obj, "lr", "training", opts.lr);
    maybe_int(obj, "check_every", "training", opts.check_every);
    maybe_double(obj, "stop_accuracy", "training", opts.stop_accuracy);
}

void apply_adversarial_training(const ordered_json& obj, AdversarialSettings& opts) {
    if (!obj.is_object()) {
        throw ConfigError("training must be an object");
    }
    require_keys(obj, "training (adversarial)",
                 {"iterations", "n_critic", "lr_d", "lr_g", "noise_batch", "real_batch"});
    maybe_int(obj, "iterations", "training", opts.iterations);
    maybe_int(obj, "n_critic", "training", opts.n_critic);
    maybe_double(obj, "lr_d", "training", opts.lr_d);
    maybe_double(obj, "lr_g", "training", opts.lr_g);
    maybe_int(obj, "noise_batch", "training", opts.noise_batch);
    maybe_int(obj, "real_batch", "training", opts.real_batch);
}

void apply_evaluation(const ordered_json& obj, EvaluationSettings& eval) {
    if (!obj.is_object()) {
        throw ConfigError("evaluation must be an object");
    }
    require_keys(obj, "evaluation", {"eval_noise", "sample_shots", "sample_noise", "ordering"});
    maybe_int(obj, "eval_noise", "evaluation", eval.eval_noise);
    maybe_int(obj, "sample_shots", "evaluation", eval.sample_shots);
    maybe_int(obj, "sample_noise", "evaluation", eval.sample_noise);
    if (const ordered_json* v = find(obj, "ordering")) {
        eval.ordering = parse_ordering(get_string(*v, "evaluation.ordering"));
    }
}

// --- config serialization --------------------------------------------------

ordered_json config_to_json_object(const ExperimentConfig& config) {
    ordered_json j;
    if (!config.preset.empty()) {
        j["preset"] = config.preset;
    }
    j["out"] = config.out;
    j["seeds"] = config.seeds;
    j["jobs"] = config.jobs;
    j["master_seed"] = config.master_seed;
    j["mode"] = mode_name(config.mode);

    ordered_json dataset;
    dataset["kind"] = dataset_kind_name(config.dataset.kind);
    switch (config.dataset.kind) {
    case DatasetKind::BarsStripes:
        break;
    case DatasetKind::IsingSplit:
        dataset["n_spins"] = config.dataset.n_spins;
        dataset["split"] = split_name(config.dataset.split);
        dataset["n_low"] = config.dataset.split_params.n_low;
        if (config.dataset.split == SplitMode::Reduced) {
            dataset["n_high"] = config.dataset.split_params.n_high;
        }
        break;
    case DatasetKind::IsingLowEnergy:
        dataset["n_spins"] = config.dataset.n_spins;
        dataset["n_train"] = config.dataset.n_train;
        dataset["quartile_fraction"] = config.dataset.quartile_fraction;
        break;
    }
    j["dataset"] = dataset;

    ordered_json disc;
    disc["n_aux"] = config.discriminator.n_aux;
    disc["depth"] = config.discriminator.depth;
    disc["entangler"] = entangler_name(config.discriminator.entangler);
    j["discriminator"] = disc;

    if (config.mode == ExperimentMode::Adversarial) {
        ordered_json gen;
        gen["kind"] = generator_kind_name(config.generator.kind);
        if (config.generator.kind == GeneratorKind::Reupload ||
            config.generator.kind == GeneratorKind::Linear) {
            gen["depth"] = config.generator.depth;
        }
        j["generator"] = gen;

        ordered_json training;
        training["iterations"] = config.adversarial.iterations;
        training["n_critic"] = config.adversarial.n_critic;
        training["lr_d"] = config.adversarial.lr_d;
        training["lr_g"] = config.adversarial.lr_g;
        training["noise_batch"] = config.adversarial.noise_batch;
        training["real_batch"] = config.adversarial.real_batch;
        j["training"] = training;

        ordered_json eval;
        eval["eval_noise"] = config.evaluation.eval_noise;
        eval["sample_shots"] = config.evaluation.sample_shots;
        eval["sample_noise"] = config.evaluation.sample_noise;
        eval["ordering"] = ordering_name(config.evaluation.ordering);
        j["evaluation"] = eval;
    } else {
        ordered_json training;
        training["steps"] = config.supervised.steps;
        training["batch_size"] = config.supervised.batch_size;
        training["lr"] = config.supervised.lr;
        training["check_every"] = config.supervised.check_every;
        training["stop_accuracy"] = config.supervised.stop_accuracy;
        j["training"] = training;
    }
    return j;
}

// --- dataset materialization -----------------------------------------------

IsingInstance dataset_instance(const DatasetSpec& dataset) {
    return chain_instance(dataset.n_spins);
}

LabeledDataset supervised_dataset(const DatasetSpec& dataset, RandomStream& rng) {
    if (dataset.kind == DatasetKind::BarsStripes) {
        return membership_dataset(bars_and_stripes_2x2(), 4);
    }
    return labeled_split(dataset_instance(dataset), dataset.split, dataset.split_params, rng);
}

std::vector<BitString> adversarial_data(const DatasetSpec& dataset, RandomStream& rng) {
    if (dataset.kind == DatasetKind::BarsStripes) {
        return bars_and_stripes_2x2();
    }
    return select_training_states(dataset_instance(dataset), dataset.n_train,
                                  dataset.quartile_fraction, rng);
}

// --- artifact writing ------------------------------------------------------

std::string fmt(double value) { return detail::format_double(value); }

std::ofstream open_out(const fs::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw std::runtime_error("cannot write " + path.string());
    }
    return out;
}

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream out = open_out(path);
    out << text;
    out.close();
    if (!out) {
        throw std::runtime_error("short write to " + path.string());
    }
}

void write_json(const fs::path& path, const ordered_json& j) { write_text(path, j.dump(2) + "\n"); }

void write_supervised_artifacts(const fs::path& dir, const LabeledDataset& dataset,
                                const SupervisedResult& result) {
    std::string trace = "step,loss\n";
    for (std::size_t i = 0; i < result.loss.size(); ++i) {
        trace += std::to_string(i) + "," + fmt(result.loss[i]) + "\n";
    }
    write_text(dir / "trace.csv", trace);

    const bool with_energy = !dataset.items.empty() && dataset.items.front().energy.has_value();
    std::string preds = with_energy ? "bits,label,prediction,energy\n" : "bits,label,prediction\n";
    for (std::size_t i = 0; i < dataset.items.size(); ++i) {
        const LabeledItem& item = dataset.items[i];
        preds += item.x.str() + "," + std::to_string(item.label) + "," +
                 fmt(result.predictions[i]);
        if (with_energy) {
            preds += "," + fmt(*item.energy);
        }
        preds += "\n";
    }
    write_text(dir / "predictions.csv", preds);

    ordered_json metrics;
    metrics["accuracy"] = result.metrics.accuracy;
    metrics["accuracy_low"] = result.metrics.accuracy_low;
    metrics["accuracy_high"] = result.metrics.accuracy_high;
    metrics["balanced_accuracy"] = result.metrics.balanced_accuracy;
    metrics["final_loss"] = result.loss.empty() ? 0.0 : result.loss.back();
    metrics["steps_run"] = result.steps_run;
    write_json(dir / "metrics.json", metrics);
}

void write_adversarial_artifacts(const fs::path& dir, const ExperimentConfig& config,
                                 const RunTrace& trace, std::uint64_t run_seed) {
    std::string text = "step,loss_d,loss_g\n";
    for (std::size_t i = 0; i < trace.loss_d.size(); ++i) {
        text += std::to_string(i) + "," + fmt(trace.loss_d[i]) + "," + fmt(trace.loss_g[i]) + "\n";
    }
    write_text(dir / "trace.csv", text);

    ordered_json dist;
    dist["ordering"] = ordering_name(config.evaluation.ordering);
    if (config.evaluation.ordering == HistogramOrdering::EnergySorted) {
        const IsingInstance instance = dataset_instance(config.dataset);
        dist["probs"] = reorder_by_energy(trace.final_distribution, instance);
        ordered_json energies = ordered_json::array();
        for (const auto& [x, e] : sorted_spectrum(instance)) {
            energies.push_back(e);
        }
        dist["energies"] = energies;
    } else {
        dist["probs"] = trace.final_distribution;
    }
    write_json(dir / "dist.json", dist);

    if (config.evaluation.sample_shots > 0) {
        const IsingInstance instance = dataset_instance(config.dataset);
        RandomStream sample_rng(derive_seed(run_seed, 2));
        const int dim = generator_noise_dim(trace.generator);
        const auto [lo, hi] = noise_range(trace.generator);
        std::string samples = "bits,energy\n";
        for (int draw = 0; draw < config.evaluation.sample_noise; ++draw) {
            const auto noise = dim == 0 ? std::vector<std::vector<double>>{{}}
                                        : sample_noise(dim, 1, lo, hi, sample_rng);
            const StateVector state = generator_output(trace.generator, noise.front());
            for (const BitString& x :
                 state.sample_bitstrings(config.evaluation.sample_shots, sample_rng)) {
                samples += x.str() + "," + fmt(ising_energy(instance, x)) + "\n";
            }
        }
        write_text(dir / "samples.csv", samples);
    }
}

// --- aggregation -----------------------------------------------------------

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    for (;;) {
        const std::size_t comma = line.find(',', start);
        if (comma == std::string::npos) {
            fields.push_back(line.substr(start));
            return fields;
        }
        fields.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
}

double parse_double_field(const std::string& field, const fs::path& path) {
    const char* begin = field.c_str();
    char* end = nullptr;
    const double value = std::strtod(begin, &end);
    if (end != begin + field.size() || field.empty()) {
        throw std::runtime_error("bad numeric field '" + field + "' in " + path.string());
    }
    return value;
}

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot read " + path.string());
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

// Reads a trace.csv with the given header back into loss columns.
std::vector<std::vector<double>> read_csv_columns(const fs::path& path,
                                                  const std::string& header) {
    std::istringstream in(read_file(path));
    std::string line;
    if (!std::getline(in, line) || line != header) {
        throw std::runtime_error("unexpected header in " + path.string());
    }
    const std::size_t n_cols = split_csv_line(header).size();
    std::vector<std::vector<double>> columns(n_cols);
    while (std::getline(in, line)) {
        if (line.empty()) {
            continue;
        }
        const auto fields = split_csv_line(line);
        if (fields.size() != n_cols) {
            throw std::runtime_error("ragged row in " + path.string());
        }
        for (std::size_t c = 0; c < n_cols; ++c) {
            columns[c].push_back(parse_double_field(fields[c], path));
        }
    }
    return columns;
}

struct StatPair {
    double mean = 0.0;
    double std_dev = 0.0;
};

StatPair mean_std(std::span<const double> values) {
    StatPair stats;
    if (values.empty()) {
        return stats;
    }
    for (double v : values) {
        stats.mean += v;
    }
    stats.mean /= static_cast<double>(values.size());
    double var = 0.0;
    for (double v : values) {
        const double d = v - stats.mean;
        var += d * d;
    }
    stats.std_dev = std::sqrt(var / static_cast<double>(values.size()));
    return stats;
}

std::vector<fs::path> completed_seed_dirs(const fs::path& preset_dir) {
    if (!fs::is_directory(preset_dir)) {
        throw ConfigError("not a directory: " + preset_dir.string());
    }
    std::vector<fs::path> dirs;
    for (const auto& entry : fs::directory_iterator(preset_dir)) {
        if (!entry.is_directory() || !fs::exists(entry.path() / "config.json")) {
            continue;
        }
        if (fs::exists(entry.path() / kPartialMarker)) {
            continue;
        }
        dirs.push_back(entry.path());
    }
    std::sort(dirs.begin(), dirs.end());
    if (dirs.empty()) {
        throw ConfigError("no completed runs under " + preset_dir.string());
    }
    return dirs;
}

void aggregate_supervised(const fs::path& preset_dir, const std::vector<fs::path>& dirs) {
    struct Row {
        std::string seed;
        ordered_json metrics;
    };
    std::vector<Row> rows;
    for (const fs::path& dir : dirs) {
        rows.push_back({dir.filename().string(), ordered_json::parse(read_file(dir / "metrics.json"))});
    }

    std::string csv = "seed,steps_run,final_loss,accuracy,accuracy_low,accuracy_high,"
                      "balanced_accuracy\n";
    for (const Row& row : rows) {
        csv += row.seed + "," + std::to_string(row.metrics.at("steps_run").get<int>()) + "," +
               fmt(row.metrics.at("final_loss").get<double>()) + "," +
               fmt(row.metrics.at("accuracy").get<double>()) + "," +
               fmt(row.metrics.at("accuracy_low").get<double>()) + "," +
               fmt(row.metrics.at("accuracy_high").get<double>()) + "," +
               fmt(row.metrics.at("balanced_accuracy").get<double>()) + "\n";
    }
    write_text(preset_dir / "aggregate.csv", csv);

    ordered_json agg;
    agg["n_runs"] = rows.size();
    const auto stat_fields = {"accuracy", "accuracy_low", "accuracy_high", "balanced_accuracy",
                              "final_loss"};
    for (const char* field : stat_fields) {
        std::vector<double> values;
        values.reserve(rows.size());
        for (const Row& row : rows) {
            values.push_back(row.metrics.at(field).get<double>());
        }
        const StatPair stats = mean_std(values);
        agg[std::string(field) + "_mean"] = stats.mean;
        agg[std::string(field) + "_std"] = stats.std_dev;
    }
    write_json(preset_dir / "aggregate.json", agg);
}

void aggregate_adversarial(const fs::path& preset_dir, const std::vector<fs::path>& dirs) {
    std::vector<RunTrace> traces;
    std::string ordering;
    for (const fs::path& dir : dirs) {
        const auto columns = read_csv_columns(dir / "trace.csv", "step,loss_d,loss_g");
        const ordered_json dist = ordered_json::parse(read_file(dir / "dist.json"));
        RunTrace trace;
        trace.loss_d = columns[1];
        trace.loss_g = columns[2];
        trace.final_distribution = dist.at("probs").get<std::vector<double>>();
        const std::string this_ordering = dist.at("ordering").get<std::string>();
        if (ordering.empty()) {
            ordering = this_ordering;
        } else if (ordering != this_ordering) {
            throw ConfigError("mixed histogram orderings under " + preset_dir.string());
        }
        traces.push_back(std::move(trace));
    }

    const RunAggregate agg = aggregate_runs(traces);

    std::string csv = "step,loss_d_mean,loss_d_std,loss_g_mean,loss_g_std\n";
    for (std::size_t i = 0; i < agg.loss_d_mean.size(); ++i) {
        csv += std::to_string(i) + "," + fmt(agg.loss_d_mean[i]) + "," + fmt(agg.loss_d_std[i]) +
               "," + fmt(agg.loss_g_mean[i]) + "," + fmt(agg.loss_g_std[i]) + "\n";
    }
    write_text(preset_dir / "aggregate.csv", csv);

    ordered_json out;
    out["n_runs"] = agg.n_runs;
    out["ordering"] = ordering;
    out["histogram_mean"] = agg.histogram_mean;
    out["histogram_variance"] = agg.histogram_variance;
    out["final_loss_d_mean"] = agg.loss_d_mean.empty() ? 0.0 : agg.loss_d_mean.back();
    out["final_loss_d_std"] = agg.loss_d_std.empty() ? 0.0 : agg.loss_d_std.back();
    out["final_loss_g_mean"] = agg.loss_g_mean.empty() ? 0.0 : agg.loss_g_mean.back();
    out["final_loss_g_std"] = agg.loss_g_std.empty() ? 0.0 : agg.loss_g_std.back();
    write_json(preset_dir / "aggregate.json", out);
}

// --- per-seed execution ----------------------------------------------------

std::string seed_dir_name(int seed_index) {
    char buffer[16];
    std::snprintf(buffer, sizeof(buffer), "%04d", seed_index);
    return buffer;
}

SeedOutcome run_one_seed(const ExperimentConfig& config, const fs::path& preset_dir,
                         int seed_index) {
    SeedOutcome outcome;
    outcome.seed_index = seed_index;
    outcome.run_seed = derive_seed(config.master_seed, static_cast<std::uint64_t>(seed_index));
    const fs::path dir = preset_dir / seed_dir_name(seed_index);
    outcome.directory = dir.string();
    try {
        fs::create_directories(dir);
        write_text(dir / kPartialMarker, "running\n");

        ordered_json echo = config_to_json_object(config);
        echo["seed_index"] = seed_index;
        echo["run_seed"] = outcome.run_seed;
        write_json(dir / "config.json", echo);

        RandomStream data_rng(derive_seed(outcome.run_seed, 0));
        if (config.mode == ExperimentMode::Supervised) {
            const LabeledDataset dataset = supervised_dataset(config.dataset, data_rng);
            DiscriminatorSpec disc;
            disc.n_data = config.dataset.n_bits();
            disc.n_aux = config.discriminator.n_aux;
            disc.depth = config.discriminator.depth;
            disc.entangler = config.discriminator.entangler;

            SupervisedOptions options;
            options.steps = config.supervised.steps;
            options.batch_size = config.supervised.batch_size;
            options.adam.lr = config.supervised.lr;
            options.check_every = config.supervised.check_every;
            options.stop_accuracy = config.supervised.stop_accuracy;

            RandomStream train_rng(derive_seed(outcome.run_seed, 1));
            const SupervisedResult result =
                train_discriminator_supervised(disc, dataset, options, train_rng);
            write_supervised_artifacts(dir, dataset, result);
        } else {
            QganConfig qgan;
            qgan.generator_kind = config.generator.kind;
            qgan.n_data = config.dataset.n_bits();
            qgan.gen_depth = config.generator.depth;
            qgan.disc_depth = config.discriminator.depth;
            qgan.n_aux = config.discriminator.n_aux;
            qgan.entangler = config.discriminator.entangler;
            qgan.n_critic = config.adversarial.n_critic;
            qgan.adam_d.lr = config.adversarial.lr_d;
            qgan.adam_g.lr = config.adversarial.lr_g;
            qgan.noise_batch = config.adversarial.noise_batch;
            qgan.real_batch = config.adversarial.real_batch;
            qgan.iterations = config.adversarial.iterations;
            qgan.eval_noise = config.evaluation.eval_noise;
            qgan.seed = derive_seed(outcome.run_seed, 1);
            qgan.data = adversarial_data(config.dataset, data_rng);

            const RunTrace trace = train_qgan(qgan);
            write_adversarial_artifacts(dir, config, trace, outcome.run_seed);
        }

        fs::remove(dir / kPartialMarker);
        outcome.ok = true;
    } catch (const std::exception& e) {
        outcome.ok = false;
        outcome.error = e.what();
        std::error_code ec;
        if (fs::is_directory(dir, ec)) {
            std::ofstream marker(dir / kPartialMarker, std::ios::binary | std::ios::trunc);
            marker << outcome.error << "\n";
        }
    }
    return outcome;
}

} // namespace

void ExperimentConfig::validate() const {
    if (out.empty()) {
        throw ConfigError("out must not be empty");
    }
    if (seeds < 1 || seeds > 9999) {
        throw ConfigError("seeds must be in [1, 9999]");
    }
    if (jobs < 1) {
        throw ConfigError("jobs must be positive");
    }
    if (discriminator.depth < 0 || discriminator.n_aux < 0) {
        throw ConfigError("discriminator depth and n_aux must be non-negative");
    }

    if (dataset.kind != DatasetKind::BarsStripes) {
        if (dataset.n_spins < 2 || dataset.n_spins > 16) {
            throw ConfigError("n_spins must be in [2, 16]");
        }
    }
    if (dataset.kind == DatasetKind::IsingSplit) {
        if (dataset.split_params.n_low < 1 ||
            (dataset.split == SplitMode::Reduced && dataset.split_params.n_high < 1)) {
            throw ConfigError("split sizes must be positive");
        }
    }
    if (dataset.kind == DatasetKind::IsingLowEnergy) {
        if (dataset.n_train < 1) {
            throw ConfigError("n_train must be positive");
        }
        if (dataset.quartile_fraction <= 0.0 || dataset.quartile_fraction > 1.0) {
            throw ConfigError("quartile_fraction must be in (0, 1]");
        }
    }
    if (dataset.n_bits() + discriminator.n_aux > 20) {
        throw ConfigError("data plus auxiliary qubits exceed the 20-qubit simulator cap");
    }

    if (mode == ExperimentMode::Supervised) {
        if (dataset.kind == DatasetKind::IsingLowEnergy) {
            throw ConfigError("supervised runs need a labeled dataset "
                              "(bars-and-stripes or ising-split)");
        }
        if (supervised.steps < 1 || supervised.batch_size < 0 || supervised.check_every < 0) {
            throw ConfigError("invalid supervised training settings");
        }
        if (supervised.lr <= 0.0) {
            throw ConfigError("lr must be positive");
        }
        if (supervised.stop_accuracy <= 0.0 || supervised.stop_accuracy > 1.0) {
            throw ConfigError("stop_accuracy must be in (0, 1]");
        }
    } else {
        if (dataset.kind == DatasetKind::IsingSplit) {
            throw ConfigError("adversarial runs train on unlabeled states "
                              "(bars-and-stripes or ising-low-energy)");
        }
        if (generator.kind == GeneratorKind::Mlp && dataset.n_bits() != 4) {
            throw ConfigError("the toy mlp generator is wired for 4 data qubits");
        }
        if ((generator.kind == GeneratorKind::Reupload ||
             generator.kind == GeneratorKind::Linear) &&
            generator.depth < 0) {
            throw ConfigError("generator depth must be non-negative");
        }
        if (adversarial.iterations < 1 || adversarial.n_critic < 1 ||
            adversarial.noise_batch < 1 || adversarial.real_batch < 0) {
            throw ConfigError("invalid adversarial training settings");
        }
        if (adversarial.lr_d <= 0.0 || adversarial.lr_g <= 0.0) {
            throw ConfigError("learning rates must be positive");
        }
        if (evaluation.eval_noise < 1 || evaluation.sample_shots < 0 ||
            evaluation.sample_noise < 0) {
            throw ConfigError("invalid evaluation settings");
        }
        if ((evaluation.sample_shots > 0) != (evaluation.sample_noise > 0)) {
            throw ConfigError("sample_shots and sample_noise must be enabled together");
        }
        if ((evaluation.sample_shots > 0 ||
             evaluation.ordering == HistogramOrdering::EnergySorted) &&
            !dataset.has_energy()) {
            throw ConfigError("energy-based evaluation needs an Ising dataset");
        }
    }
}

std::vector<PresetInfo> list_presets() {
    return {
        {"disc-bs", "supervised discriminator on 2x2 bars-and-stripes membership"},
        {"disc-ising-balanced", "supervised discriminator, N=8 chain, balanced 128/128 split"},
        {"disc-ising-imbalanced",
         "supervised discriminator, N=8 chain, 20/236 split, 4 auxiliary qubits"},
        {"disc-ising-reduced", "supervised discriminator, N=8 chain, reduced 20/60 split"},
        {"qgan-toy-amplitude", "adversarial run with the noiseless amplitude toy generator"},
        {"qgan-toy-mlp", "adversarial run with the classical mlp toy generator"},
        {"qgan-reupload-bs", "adversarial run, noise-reuploading quantum generator, depth 40"},
        {"qgan-linear-noise-bs", "adversarial run, linear-noise quantum generator, depth 40"},
        {"qgan-ising", "adversarial run on 8 low-energy states of the N=6 chain, with sampling"},
    };
}

ExperimentConfig preset_config(const std::string& name) {
    ExperimentConfig config;
    config.preset = name;

    if (name == "disc-bs") {
        config.mode = ExperimentMode::Supervised;
        config.dataset.kind = DatasetKind::BarsStripes;
        config.discriminator = {0, 20, Entangler::Chain};
        config.supervised = {2000, 0, 0.01, 25, 1.0};
        return config;
    }
    if (name == "disc-ising-balanced" || name == "disc-ising-imbalanced" ||
        name == "disc-ising-reduced") {
        config.mode = ExperimentMode::Supervised;
        config.dataset.kind = DatasetKind::IsingSplit;
        config.dataset.n_spins = 8;
        config.discriminator = {0, 20, Entangler::Chain};
        config.supervised = {1500, 32, 0.01, 0, 1.0};
        if (name == "disc-ising-balanced") {
            config.dataset.split = SplitMode::Balanced;
        } else if (name == "disc-ising-imbalanced") {
            config.dataset.split = SplitMode::ImbalancedFull;
            config.dataset.split_params.n_low = 20;
            config.discriminator.n_aux = 4;
        } else {
            config.dataset.split = SplitMode::Reduced;
            config.dataset.split_params = {20, 60};
            config.supervised.batch_size = 0;
        }
        return config;
    }
    if (name == "qgan-toy-amplitude" || name == "qgan-toy-mlp" || name == "qgan-reupload-bs" ||
        name == "qgan-linear-noise-bs") {
        config.mode = ExperimentMode::Adversarial;
        config.dataset.kind = DatasetKind::BarsStripes;
        config.discriminator = {0, 20, Entangler::Chain};
        config.adversarial = {300, 5, 0.01, 0.01, 8, 0};
        config.evaluation = {100, 0, 0, HistogramOrdering::BasisIndex};
        if (name == "qgan-toy-amplitude") {
            config.generator.kind = GeneratorKind::Amplitude;
        } else if (name == "qgan-toy-mlp") {
            config.generator.kind = GeneratorKind::Mlp;
        } else if (name == "qgan-reupload-bs") {
            config.generator = {GeneratorKind::Reupload, 40};
        } else {
            config.generator = {GeneratorKind::Linear, 40};
        }
        return config;
    }
    if (name == "qgan-ising") {
        config.mode = ExperimentMode::Adversarial;
        config.dataset.kind = DatasetKind::IsingLowEnergy;
        config.dataset.n_spins = 6;
        config.dataset.n_train = 8;
        config.dataset.quartile_fraction = 0.25;
        config.generator = {GeneratorKind::Reupload, 20};
        config.discriminator = {4, 40, Entangler::Chain};
        config.adversarial = {500, 5, 0.01, 0.01, 8, 0};
        config.evaluation = {100, 100, 100, HistogramOrdering::EnergySorted};
        return config;
    }
    throw ConfigError("unknown preset '" + name + "'");
}

ExperimentConfig parse_config(const std::string& json_text) {
    ordered_json j;
    try {
        j = ordered_json::parse(json_text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) {
        throw ConfigError("config must be a JSON object");
    }

    require_keys(j, "config",
                 {"preset", "out", "seeds", "jobs", "master_seed", "mode", "dataset",
                  "discriminator", "generator", "training", "evaluation",
                  // run_experiment echoes these into per-seed config.json files;
                  // accept them so an echoed config re-runs as-is.
                  "seed_index", "run_seed"});

    ExperimentConfig config;
    if (const ordered_json* v = find(j, "preset")) {
        config = preset_config(get_string(*v, "preset"));
    }
    if (const ordered_json* v = find(j, "out")) {
        config.out = get_string(*v, "out");
    }
    if (const ordered_json* v = find(j, "seeds")) {
        config.seeds = get_int(*v, "seeds");
    }
    if (const ordered_json* v = find(j, "jobs")) {
        config.jobs = get_int(*v, "jobs");
    }
    if (const ordered_json* v = find(j, "master_seed")) {
        config.master_seed = get_u64(*v, "master_seed");
    }
    if (const ordered_json* v = find(j, "mode")) {
        config.mode = parse_mode(get_string(*v, "mode"));
    }
    if (const ordered_json* v = find(j, "dataset")) {
        apply_dataset(*v, config.dataset);
    }
    if (const ordered_json* v = find(j, "discriminator")) {
        apply_discriminator(*v, config.discriminator);
    }
    if (const ordered_json* v = find(j, "generator")) {
        if (config.mode == ExperimentMode::Supervised) {
            throw ConfigError("generator section is not valid in supervised mode");
        }
        apply_generator(*v, config.generator);
    }
    if (const ordered_json* v = find(j, "training")) {
        if (config.mode == ExperimentMode::Supervised) {
            apply_supervised_training(*v, config.supervised);
        } else {
            apply_adversarial_training(*v, config.adversarial);
        }
    }
    if (const ordered_json* v = find(j, "evaluation")) {
        if (config.mode == ExperimentMode::Supervised) {
            throw ConfigError("evaluation section is not valid in supervised mode");
        }
        apply_evaluation(*v, config.evaluation);
    }

    config.validate();
    return config;
}

ExperimentConfig load_config_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ConfigError("cannot read config file " + path);
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_config(buffer.str());
}

std::string config_to_json(const ExperimentConfig& config) {
    return config_to_json_object(config).dump(2) + "\n";
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
    config.validate();

    ExperimentResult result;
    const fs::path preset_dir =
        fs::path(config.out) / (config.preset.empty() ? "custom" : config.preset);
    result.preset_dir = preset_dir.string();
    fs::create_directories(preset_dir);

    result.outcomes.resize(static_cast<std::size_t>(config.seeds));
    const int workers = std::min(config.jobs, config.seeds);
    if (workers <= 1) {
        for (int i = 0; i < config.seeds; ++i) {
            result.outcomes[static_cast<std::size_t>(i)] = run_one_seed(config, preset_dir, i);
        }
    } else {
        std::atomic<int> next{0};
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(workers));
        for (int w = 0; w < workers; ++w) {
            pool.emplace_back([&]() {
                for (;;) {
                    const int i = next.fetch_add(1);
                    if (i >= config.seeds) {
                        return;
                    }
                    result.outcomes[static_cast<std::size_t>(i)] =
                        run_one_seed(config, preset_dir, i);
                }
            });
        }
        for (std::thread& t : pool) {
            t.join();
        }
    }

    result.ok = std::all_of(result.outcomes.begin(), result.outcomes.end(),
                            [](const SeedOutcome& o) { return o.ok; });
    const bool any_ok = std::any_of(result.outcomes.begin(), result.outcomes.end(),
                                    [](const SeedOutcome& o) { return o.ok; });
    if (any_ok) {
        aggregate_directory(result.preset_dir);
    }
    return result;
}

void aggregate_directory(const std::string& preset_dir) {
    const fs::path dir(preset_dir);
    const std::vector<fs::path> dirs = completed_seed_dirs(dir);
    if (fs::exists(dirs.front() / "metrics.json")) {
        aggregate_supervised(dir, dirs);
    } else {
        aggregate_adversarial(dir, dirs);
    }
}

} // namespace qganlab
