#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "randla/parallel.hpp"
#include "randla/rng.hpp"
#include "randla/testbed/report.hpp"

namespace randla::testbed {

// Trial engine. Every trial gets the derived seed (seed, label, trial) and
// returns one value per metric, or nothing to mark a failed trial. Results
// land in per-trial slots before any reduction, so the report is identical
// whatever the execution order; identical configs give identical reports.
struct ExperimentConfig {
    std::string label;
    std::size_t trials = 100;
    std::uint64_t seed = 0;
    std::vector<std::string> metric_names;
    std::function<std::optional<std::vector<double>>(std::uint64_t trial_seed, std::size_t trial)> run_trial;

    std::string multiplier_token = "none";
    std::size_t refine_steps = 0;
    std::size_t dimension = 0;
};

inline ExperimentReport run_experiment(const ExperimentConfig& config) {
    if (config.trials < 1) throw DimensionError("run_experiment: trials must be >= 1");
    const std::uint64_t label_key = hash_label(config.label.c_str());
    std::vector<std::optional<std::vector<double>>> slots(config.trials);
    parallel_for_index(config.trials, [&](std::size_t t) {
        const std::uint64_t trial_seed = derive_seed(config.seed, label_key, t);
        try {
            slots[t] = config.run_trial(trial_seed, t);
        } catch (const std::runtime_error&) {
            slots[t] = std::nullopt;  // counted, not fatal
        }
    });

    ExperimentReport report;
    report.label = config.label;
    report.trials = config.trials;
    report.seed = config.seed;
    report.multiplier = config.multiplier_token;
    report.refine_steps = config.refine_steps;
    report.dimension = config.dimension;

    std::vector<std::vector<double>> columns(config.metric_names.size());
    for (const auto& slot : slots) {
        if (!slot) {
            ++report.failures;
            continue;
        }
        if (slot->size() != config.metric_names.size())
            throw std::logic_error("trial produced wrong metric count");
        for (std::size_t c = 0; c < columns.size(); ++c) columns[c].push_back((*slot)[c]);
    }
    for (std::size_t c = 0; c < columns.size(); ++c) {
        ReportColumn col;
        col.name = config.metric_names[c];
        col.values = columns[c];
        if (!col.values.empty()) col.stats = summarize(col.values);
        report.columns.push_back(std::move(col));
    }
    return report;
}

}  // namespace randla::testbed
