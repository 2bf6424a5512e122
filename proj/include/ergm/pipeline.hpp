#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include "ergm/estimation.hpp"

namespace ergm {

struct PipelineConfig {
    std::string network_path;
    std::string attributes_path;   // optional
    std::string rules_path;        // optional, extra screening rules
    std::string exogenous_terms;   // optional, '+'-separated; fit-time only
    std::string out_dir = ".";
    int refits = 30;
    int draws = 100;
    long long burn_in = 20;
    long long interval = 2;
    int threads = 1;
    double gw_decay = kDefaultGwDecay;
    int bridge_draws = 500;
    std::uint64_t seed = 0;
    bool seed_set = false;         // the seed is mandatory; runs must be reproducible

    void validate() const;
    EstimationConfig estimation() const;

    // CLI flags override file values
    void apply_file(const std::string& path);
    void apply_key(const std::string& key, const std::string& value);
};

// bound -> candidates -> select -> fit pairwise models -> screen -> report.
// Writes bounds.json, candidates.json, selection.json, screening.json,
// motifs.json, per-model draw edge lists and panels.svg under out_dir.
// Returns the number of surviving models; throws on failure.
int run_pipeline(const PipelineConfig& cfg, std::ostream& log);

} // namespace ergm
