#pragma once

#include <cstdint>
#include <vector>

#include "ergm/model.hpp"
#include "ergm/sampler.hpp"
#include "ergm/stats.hpp"

namespace ergm {

enum class MotifKind { edge, two_star, triangle, isolates };
enum class SummaryKind { mean, min, max };
enum class RuleMode { absolute, relative };

// A model fails the rule when |S_obs - S_sim| >= threshold (absolute) or
// |S_obs - S_sim| / max(S_obs, 1) >= threshold (relative).
struct ScreeningRule {
    MotifKind motif = MotifKind::edge;
    SummaryKind summary = SummaryKind::mean;
    RuleMode mode = RuleMode::relative;
    double threshold = 1.0;

    bool operator==(const ScreeningRule&) const = default;
};

// Mean simulated edge count deviating from the observed count by 100% or
// more flags the model as degenerate.
inline ScreeningRule default_degeneracy_rule() {
    return ScreeningRule{MotifKind::edge, SummaryKind::mean, RuleMode::relative, 1.0};
}

struct ModelScreenResult {
    ErgmModel model;
    double mean_edges = 0.0;        // paper-convention counts for 2-stars/triangles
    double mean_two_stars = 0.0;
    double mean_triangles = 0.0;
    double mean_isolates = 0.0;
    std::vector<bool> rule_pass;    // aligned with ScreeningReport::rules
    bool degenerate = false;        // verdict of the default degeneracy rule
    bool survived = false;          // all rules passed
    double distance = 0.0;          // relative L1 over edges/2-stars/triangles
};

struct ScreeningReport {
    MotifCensus observed;
    std::vector<ScreeningRule> rules;      // rules[0] is the default degeneracy rule
    std::vector<ModelScreenResult> models;
    std::vector<std::size_t> ranking;      // survivors, ascending by distance
};

// Simulates each fitted model (chains start at the observed network), applies
// every rule to the simulated motif summaries, flags degeneracy per the
// default edge rule, and ranks survivors by motif distance. Per-model chains
// draw their seeds from cfg.seed by the fixed splitting rule.
ScreeningReport screen(const Network& net, const std::vector<ErgmModel>& models,
                       const std::vector<ScreeningRule>& extra_rules,
                       const SamplerConfig& cfg, int threads = 1);

// Indices of the top_n surviving models by distance; throws
// AllModelsDegenerate when nothing survived.
std::vector<std::size_t> select_best(const ScreeningReport& report, std::size_t top_n);

} // namespace ergm
