#include "ergm/screening.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ergm/parallel.hpp"
#include "ergm/rng.hpp"

namespace ergm {

namespace {

double motif_count(const MotifCensus& c, MotifKind kind) {
    switch (kind) {
        case MotifKind::edge: return static_cast<double>(c.edges);
        case MotifKind::two_star: return static_cast<double>(c.two_stars_paper);
        case MotifKind::triangle: return static_cast<double>(c.triangles_paper);
        case MotifKind::isolates: return static_cast<double>(c.isolates);
    }
    return 0.0;
}

double summarize(const std::vector<double>& values, SummaryKind kind) {
    switch (kind) {
        case SummaryKind::mean: {
            double s = 0.0;
            for (double v : values) s += v;
            return s / static_cast<double>(values.size());
        }
        case SummaryKind::min: return *std::min_element(values.begin(), values.end());
        case SummaryKind::max: return *std::max_element(values.begin(), values.end());
    }
    return 0.0;
}

bool rule_passes(const ScreeningRule& rule, double observed, double simulated) {
    double gap = std::abs(observed - simulated);
    if (rule.mode == RuleMode::relative) gap /= std::max(observed, 1.0);
    return gap < rule.threshold;
}

} // namespace

ScreeningReport screen(const Network& net, const std::vector<ErgmModel>& models,
                       const std::vector<ScreeningRule>& extra_rules,
                       const SamplerConfig& cfg, int threads) {
    if (models.empty()) throw EmptyModelList("screening needs at least one model");
    for (const auto& m : models) {
        m.validate();
        if (!m.theta_finite())
            throw NonFiniteTheta("screening requires finite fitted coefficients");
    }
    cfg.validate();

    ScreeningReport report;
    report.observed = motif_census(net);
    report.rules.push_back(default_degeneracy_rule());
    report.rules.insert(report.rules.end(), extra_rules.begin(), extra_rules.end());

    report.models.resize(models.size());
    parallel_for(models.size(), threads, [&](std::size_t idx) {
        ModelScreenResult res;
        res.model = models[idx];

        SamplerConfig mcfg = cfg;
        mcfg.seed = split_seed(cfg.seed, idx);
        mcfg.init = InitState::observed;
        const SampleResult sim = sample(models[idx], net.node_count(), mcfg, &net);

        std::vector<std::vector<double>> counts(4);
        for (const auto& draw : sim.draws) {
            const MotifCensus c = motif_census(draw);
            counts[0].push_back(motif_count(c, MotifKind::edge));
            counts[1].push_back(motif_count(c, MotifKind::two_star));
            counts[2].push_back(motif_count(c, MotifKind::triangle));
            counts[3].push_back(motif_count(c, MotifKind::isolates));
        }
        res.mean_edges = summarize(counts[0], SummaryKind::mean);
        res.mean_two_stars = summarize(counts[1], SummaryKind::mean);
        res.mean_triangles = summarize(counts[2], SummaryKind::mean);
        res.mean_isolates = summarize(counts[3], SummaryKind::mean);

        res.survived = true;
        for (std::size_t r = 0; r < report.rules.size(); ++r) {
            const ScreeningRule& rule = report.rules[r];
            const double obs = motif_count(report.observed, rule.motif);
            const double sim_summary =
                summarize(counts[static_cast<int>(rule.motif)], rule.summary);
            const bool pass = rule_passes(rule, obs, sim_summary);
            res.rule_pass.push_back(pass);
            res.survived &= pass;
            if (r == 0) res.degenerate = !pass;
        }

        const double obs_e = motif_count(report.observed, MotifKind::edge);
        const double obs_s = motif_count(report.observed, MotifKind::two_star);
        const double obs_t = motif_count(report.observed, MotifKind::triangle);
        res.distance = std::abs(res.mean_edges - obs_e) / std::max(obs_e, 1.0) +
                       std::abs(res.mean_two_stars - obs_s) / std::max(obs_s, 1.0) +
                       std::abs(res.mean_triangles - obs_t) / std::max(obs_t, 1.0);

        report.models[idx] = std::move(res);
    });

    for (std::size_t i = 0; i < report.models.size(); ++i)
        if (report.models[i].survived) report.ranking.push_back(i);
    std::sort(report.ranking.begin(), report.ranking.end(),
              [&](std::size_t a, std::size_t b) {
                  const auto& ma = report.models[a];
                  const auto& mb = report.models[b];
                  if (ma.distance != mb.distance) return ma.distance < mb.distance;
                  return format_term_list(ma.model.terms) < format_term_list(mb.model.terms);
              });
    return report;
}

std::vector<std::size_t> select_best(const ScreeningReport& report, std::size_t top_n) {
    if (report.ranking.empty())
        throw AllModelsDegenerate("every candidate model failed screening");
    std::vector<std::size_t> out = report.ranking;
    if (out.size() > top_n) out.resize(top_n);
    return out;
}

} // namespace ergm
