#include "ergm/pipeline.hpp"

#include <filesystem>
#include <fstream>
#include <ostream>

#include "ergm/io.hpp"
#include "ergm/parallel.hpp"
#include "ergm/report.hpp"
#include "ergm/rng.hpp"
#include "ergm/selection.hpp"
#include "ergm/svg.hpp"

namespace ergm {

namespace fs = std::filesystem;

void PipelineConfig::validate() const {
    if (network_path.empty()) throw ConfigError("network path is required");
    if (!seed_set) throw ConfigError("a seed is required; runs must be reproducible");
    if (refits < 10) throw ConfigError("refits must be >= 10");
    if (draws < 1 || burn_in < 0 || interval < 1 || threads < 1 || bridge_draws < 1)
        throw ConfigError("counts must be positive");
    if (!(gw_decay >= 0.0)) throw ConfigError("gw decay must be non-negative");
}

EstimationConfig PipelineConfig::estimation() const {
    EstimationConfig cfg;
    cfg.sampler.draws = draws;
    cfg.sampler.burn_in = burn_in;
    cfg.sampler.interval = interval;
    cfg.bridge_draws = bridge_draws;
    return cfg;
}

void PipelineConfig::apply_key(const std::string& key, const std::string& value) {
    auto to_ll = [&](const std::string& v) {
        try {
            return std::stoll(v);
        } catch (...) {
            throw ConfigError("bad numeric value for " + key + ": '" + v + "'");
        }
    };
    if (key == "network") network_path = value;
    else if (key == "attributes") attributes_path = value;
    else if (key == "rules") rules_path = value;
    else if (key == "exogenous") exogenous_terms = value;
    else if (key == "out") out_dir = value;
    else if (key == "refits") refits = static_cast<int>(to_ll(value));
    else if (key == "draws") draws = static_cast<int>(to_ll(value));
    else if (key == "burn_in") burn_in = to_ll(value);
    else if (key == "interval") interval = to_ll(value);
    else if (key == "threads") threads = static_cast<int>(to_ll(value));
    else if (key == "bridge_draws") bridge_draws = static_cast<int>(to_ll(value));
    else if (key == "gw_decay") {
        try {
            gw_decay = std::stod(value);
        } catch (...) {
            throw ConfigError("bad gw_decay value '" + value + "'");
        }
    } else if (key == "seed") {
        seed = static_cast<std::uint64_t>(to_ll(value));
        seed_set = true;
    } else {
        throw ConfigError("unknown config key '" + key + "'");
    }
}

void PipelineConfig::apply_file(const std::string& path) {
    for (const auto& [key, value] : read_key_values(path)) apply_key(key, value);
}

int run_pipeline(const PipelineConfig& cfg, std::ostream& log) {
    cfg.validate();
    fs::create_directories(cfg.out_dir);
    const fs::path out(cfg.out_dir);

    Network net = read_edge_list(cfg.network_path);
    if (!cfg.attributes_path.empty()) read_attributes(cfg.attributes_path, net);
    log << "loaded " << cfg.network_path << ": " << net.node_count() << " nodes, "
        << net.edge_count() << " edges\n";

    write_report(motifs_report(net), (out / "motifs.json").string());

    // Algorithm: bound the k-parameterized families
    const Fitter bound_fitter = mple_fitter();
    const InputBounds bounds = bound_all_inputs(net, bound_fitter);
    write_report(bounds_report(net, bounds), (out / "bounds.json").string());
    log << "bounds: kstar " << bounds.kstar << ", dsp " << bounds.dsp << ", esp "
        << bounds.esp << ", nsp " << bounds.nsp << "\n";

    const CandidateSet cands = build_candidate_set(net, bounds, cfg.gw_decay);
    write_report(candidates_report(cands), (out / "candidates.json").string());
    log << "candidate terms: " << cands.terms.size() << " (model space "
        << model_space_size(static_cast<long long>(cands.terms.size())) << ")\n";

    // Algorithm: stochastic forward selection on the 10th AIC percentile
    const EstimationConfig est = cfg.estimation();
    const Fitter fitter = mcmle_fitter(est);
    const auto verdicts = stochastic_forward_select(net, cands, cfg.refits, fitter,
                                                    split_seed(cfg.seed, 1), cfg.threads);
    const double aic0 = fit_null(net).aic;
    write_report(selection_report(net, aic0, verdicts, cfg.refits, cfg.seed),
                 (out / "selection.json").string());
    const std::vector<TermSpec> survivors = surviving_terms(verdicts);
    log << "surviving terms: " << survivors.size() << "\n";

    // pairwise model space over the survivors, exogenous terms appended at
    // fit time only
    std::vector<TermSpec> exo;
    if (!cfg.exogenous_terms.empty()) exo = parse_term_list(cfg.exogenous_terms);
    std::vector<std::vector<TermSpec>> model_terms;
    for (std::size_t a = 0; a < survivors.size(); ++a) {
        model_terms.push_back({edges_term(), survivors[a]});
        for (std::size_t b = a + 1; b < survivors.size(); ++b)
            model_terms.push_back({edges_term(), survivors[a], survivors[b]});
    }
    if (model_terms.empty()) {
        // nothing beat the null; screen the null proposal itself
        log << "no surviving terms; falling back to the null model\n";
        model_terms.push_back({edges_term()});
    }
    for (auto& terms : model_terms)
        for (const auto& x : exo) terms.push_back(x);

    std::vector<FitResult> fits(model_terms.size());
    parallel_for(model_terms.size(), cfg.threads, [&](std::size_t i) {
        fits[i] = fit_mcmle(net, model_terms[i], est, split_seed(cfg.seed, 100000 + i));
    });

    std::vector<ErgmModel> fitted;
    int fit_failed = 0;
    for (const auto& f : fits) {
        if (f.all_finite())
            fitted.push_back(ErgmModel{f.terms, f.theta_hat});
        else
            ++fit_failed;
    }
    log << "fitted models: " << fitted.size() << " (" << fit_failed << " failed)\n";
    if (fitted.empty()) throw AllModelsDegenerate("no model reached screening");

    // Algorithm: homomorphism-density degeneracy screening
    std::vector<ScreeningRule> rules;
    if (!cfg.rules_path.empty()) rules = read_rules(cfg.rules_path);
    SamplerConfig scfg;
    scfg.draws = cfg.draws;
    scfg.burn_in = cfg.burn_in;
    scfg.interval = cfg.interval;
    scfg.seed = split_seed(cfg.seed, 2);
    scfg.init = InitState::observed;
    const ScreeningReport screening = screen(net, fitted, rules, scfg, cfg.threads);
    json sj = screening_report_json(screening, cfg.seed);
    sj["fit_failed"] = fit_failed;
    write_report(sj, (out / "screening.json").string());
    log << "screened: " << screening.ranking.size() << " survivors of "
        << fitted.size() << "\n";

    const auto best = select_best(screening, 1);
    const ErgmModel& best_model = screening.models[best[0]].model;
    SamplerConfig draw_cfg = scfg;
    draw_cfg.draws = 3;
    draw_cfg.seed = split_seed(cfg.seed, 3);
    const SampleResult panels = sample(best_model, net.node_count(), draw_cfg, &net);
    for (std::size_t d = 0; d < panels.draws.size(); ++d)
        write_edge_list(panels.draws[d],
                        (out / ("draw_" + std::to_string(d + 1) + ".edges")).string());
    std::ofstream svg_out(out / "panels.svg");
    svg_out << emit_drawing(net, panels.draws, split_seed(cfg.seed, 4));
    log << "best model: " << format_term_list(best_model.terms) << "\n";

    return static_cast<int>(screening.ranking.size());
}

} // namespace ergm
