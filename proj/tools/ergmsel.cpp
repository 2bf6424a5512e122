// ergmsel: fit, simulate, select and screen binary undirected ERGMs.

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "ergm/io.hpp"
#include "ergm/pipeline.hpp"
#include "ergm/report.hpp"
#include "ergm/rng.hpp"
#include "ergm/selection.hpp"
#include "ergm/svg.hpp"

namespace fs = std::filesystem;
using namespace ergm;

namespace {

struct GlobalOpts {
    std::uint64_t seed = 0;
    bool seed_set = false;
    int threads = 1;
    bool verbose = false;
};

std::ostream& log_stream(const GlobalOpts& g) {
    static std::ofstream null_sink;
    if (g.verbose) return std::cerr;
    if (!null_sink.is_open()) null_sink.setstate(std::ios_base::badbit);
    return null_sink;
}

Network load_network(const std::string& path, const std::string& attrs) {
    Network net = read_edge_list(path);
    if (!attrs.empty()) read_attributes(attrs, net);
    return net;
}

void write_or_print(const json& j, const std::string& out) {
    if (out.empty())
        std::cout << dump_report(j);
    else
        write_report(j, out);
}

std::vector<ErgmModel> load_models(const std::string& path) {
    std::vector<ErgmModel> models;
    auto add_json = [&](const json& j) {
        if (j.is_array())
            for (const auto& item : j) models.push_back(model_from_json(item));
        else
            models.push_back(model_from_json(j));
    };
    if (fs::is_directory(path)) {
        std::vector<fs::path> files;
        for (const auto& entry : fs::directory_iterator(path))
            if (entry.path().extension() == ".json") files.push_back(entry.path());
        std::sort(files.begin(), files.end());
        for (const auto& f : files) add_json(load_json(f.string()));
    } else {
        add_json(load_json(path));
    }
    return models;
}

int dispatch(int argc, char** argv) {
    CLI::App app{"ERGM endogenous-variable selection and degeneracy screening"};
    app.require_subcommand(1);
    app.fallthrough();

    GlobalOpts g;
    app.add_option("--seed", g.seed, "master RNG seed")->each([&](const std::string&) {
        g.seed_set = true;
    });
    app.add_option("--threads", g.threads, "worker threads for independent jobs");
    app.add_flag("--verbose", g.verbose, "progress log on stderr");

    // shared knobs
    std::string network_path, attrs_path, out_path, terms_text, rules_path;
    int draws = 100, refits = 30, bridge_draws = 500;
    long long burn_in = 20, interval = 2;

    auto* motifs_cmd = app.add_subcommand("motifs", "motif census of a network");
    motifs_cmd->add_option("--network", network_path)->required();
    motifs_cmd->add_option("--out", out_path);

    auto* fit_cmd = app.add_subcommand("fit", "fit one model to a network");
    std::string method = "mcmle";
    fit_cmd->add_option("--network", network_path)->required();
    fit_cmd->add_option("--attributes", attrs_path);
    fit_cmd->add_option("--terms", terms_text, "'+'-separated term grammar")->required();
    fit_cmd->add_option("--method", method)->check(CLI::IsMember({"mple", "mcmle", "exact"}));
    fit_cmd->add_option("--draws", draws);
    fit_cmd->add_option("--burn-in", burn_in);
    fit_cmd->add_option("--interval", interval);
    fit_cmd->add_option("--bridge-draws", bridge_draws);
    fit_cmd->add_option("--out", out_path);

    auto* sim_cmd = app.add_subcommand("simulate", "draw networks from a fitted model");
    std::string model_path, sim_out_dir;
    int sim_nodes = 0;
    sim_cmd->add_option("--model", model_path, "fit JSON with terms and theta")->required();
    sim_cmd->add_option("--nodes", sim_nodes)->required();
    sim_cmd->add_option("--draws", draws);
    sim_cmd->add_option("--burn-in", burn_in);
    sim_cmd->add_option("--interval", interval);
    sim_cmd->add_option("--out", sim_out_dir)->required();

    auto* bound_cmd = app.add_subcommand("bound", "bound the k inputs of kstar/dsp/esp/nsp");
    bound_cmd->add_option("--network", network_path)->required();
    bound_cmd->add_option("--out", out_path);

    auto* select_cmd = app.add_subcommand("select", "stochastic forward selection");
    select_cmd->add_option("--network", network_path)->required();
    select_cmd->add_option("--attributes", attrs_path);
    select_cmd->add_option("--refits", refits);
    select_cmd->add_option("--draws", draws);
    select_cmd->add_option("--burn-in", burn_in);
    select_cmd->add_option("--interval", interval);
    select_cmd->add_option("--bridge-draws", bridge_draws);
    select_cmd->add_option("--out", out_path);

    auto* screen_cmd = app.add_subcommand("screen", "degeneracy screening of fitted models");
    std::string models_path;
    screen_cmd->add_option("--network", network_path)->required();
    screen_cmd->add_option("--models", models_path, "model JSON file or directory")->required();
    screen_cmd->add_option("--rules", rules_path);
    screen_cmd->add_option("--draws", draws);
    screen_cmd->add_option("--burn-in", burn_in);
    screen_cmd->add_option("--interval", interval);
    screen_cmd->add_option("--out", out_path);

    auto* report_cmd = app.add_subcommand("report", "render report JSONs as tables");
    std::string report_dir;
    report_cmd->add_option("--in", report_dir, "directory with report JSON files")->required();

    auto* pipe_cmd = app.add_subcommand("pipeline", "bound + select + screen end to end");
    std::string config_path, exo_terms, pipe_out = ".";
    double gw_decay = kDefaultGwDecay;
    pipe_cmd->add_option("--config", config_path, "key=value config file");
    pipe_cmd->add_option("--network", network_path);
    pipe_cmd->add_option("--attributes", attrs_path);
    pipe_cmd->add_option("--rules", rules_path);
    pipe_cmd->add_option("--exogenous", exo_terms, "terms appended at fit time only");
    pipe_cmd->add_option("--refits", refits);
    pipe_cmd->add_option("--draws", draws);
    pipe_cmd->add_option("--burn-in", burn_in);
    pipe_cmd->add_option("--interval", interval);
    pipe_cmd->add_option("--bridge-draws", bridge_draws);
    pipe_cmd->add_option("--gw-decay", gw_decay);
    pipe_cmd->add_option("--out", pipe_out);

    CLI11_PARSE(app, argc, argv);

    auto require_seed = [&] {
        if (!g.seed_set) throw ConfigError("--seed is required; runs must be reproducible");
    };

    if (motifs_cmd->parsed()) {
        write_or_print(motifs_report(load_network(network_path, "")), out_path);
        return 0;
    }

    if (fit_cmd->parsed()) {
        const Network net = load_network(network_path, attrs_path);
        const auto terms = parse_term_list(terms_text);
        FitResult fit;
        if (method == "mple") {
            fit = fit_mple(net, terms);
        } else if (method == "exact") {
            fit = fit_exact(net, terms);
        } else {
            require_seed();
            EstimationConfig cfg;
            cfg.sampler.draws = draws;
            cfg.sampler.burn_in = burn_in;
            cfg.sampler.interval = interval;
            cfg.bridge_draws = bridge_draws;
            fit = fit_mcmle(net, terms, cfg, g.seed);
        }
        write_or_print(fit_report(fit), out_path);
        return 0;
    }

    if (sim_cmd->parsed()) {
        require_seed();
        const ErgmModel model = model_from_json(load_json(model_path));
        SamplerConfig cfg;
        cfg.draws = draws;
        cfg.burn_in = burn_in;
        cfg.interval = interval;
        cfg.seed = g.seed;
        cfg.init = InitState::empty;
        const SampleResult sim = sample(model, sim_nodes, cfg);
        fs::create_directories(sim_out_dir);
        std::ofstream csv(fs::path(sim_out_dir) / "statistics.csv");
        csv << "draw";
        for (const auto& t : model.terms) csv << "," << format_term(t);
        csv << ",edges,two_stars,triangles,isolates\n";
        for (std::size_t d = 0; d < sim.draws.size(); ++d) {
            write_edge_list(sim.draws[d], (fs::path(sim_out_dir) /
                                           ("draw_" + std::to_string(d + 1) + ".edges"))
                                              .string());
            csv << (d + 1);
            for (double v : sim.stats[d]) csv << "," << v;
            const MotifCensus c = motif_census(sim.draws[d]);
            csv << "," << c.edges << "," << c.two_stars_paper << "," << c.triangles_paper
                << "," << c.isolates << "\n";
        }
        return 0;
    }

    if (bound_cmd->parsed()) {
        const Network net = load_network(network_path, "");
        const InputBounds bounds = bound_all_inputs(net, mple_fitter());
        write_or_print(bounds_report(net, bounds), out_path);
        return 0;
    }

    if (select_cmd->parsed()) {
        require_seed();
        const Network net = load_network(network_path, attrs_path);
        const InputBounds bounds = bound_all_inputs(net, mple_fitter());
        const CandidateSet cands = build_candidate_set(net, bounds);
        EstimationConfig cfg;
        cfg.sampler.draws = draws;
        cfg.sampler.burn_in = burn_in;
        cfg.sampler.interval = interval;
        cfg.bridge_draws = bridge_draws;
        const auto verdicts = stochastic_forward_select(net, cands, refits,
                                                        mcmle_fitter(cfg), g.seed, g.threads);
        write_or_print(selection_report(net, fit_null(net).aic, verdicts, refits, g.seed),
                       out_path);
        return 0;
    }

    if (screen_cmd->parsed()) {
        require_seed();
        const Network net = load_network(network_path, attrs_path);
        const std::vector<ErgmModel> models = load_models(models_path);
        std::vector<ScreeningRule> rules;
        if (!rules_path.empty()) rules = read_rules(rules_path);
        SamplerConfig cfg;
        cfg.draws = draws;
        cfg.burn_in = burn_in;
        cfg.interval = interval;
        cfg.seed = g.seed;
        cfg.init = InitState::observed;
        const ScreeningReport rep = screen(net, models, rules, cfg, g.threads);
        write_or_print(screening_report_json(rep, g.seed), out_path);
        return 0;
    }

    if (report_cmd->parsed()) {
        const fs::path dir(report_dir);
        struct Entry {
            const char* file;
            std::string (*render)(const json&);
        };
        const Entry entries[] = {
            {"motifs.json", motifs_table},
            {"bounds.json", bounds_table},
            {"selection.json", selection_table},
            {"screening.json", screening_table},
        };
        bool any = false;
        for (const auto& e : entries) {
            const fs::path p = dir / e.file;
            if (!fs::exists(p)) continue;
            any = true;
            std::cout << "== " << e.file << " ==\n" << e.render(load_json(p.string())) << "\n";
        }
        if (!any) throw ConfigError("no report files found under " + report_dir);
        return 0;
    }

    if (pipe_cmd->parsed()) {
        PipelineConfig cfg;
        if (!config_path.empty()) cfg.apply_file(config_path);
        if (!network_path.empty()) cfg.network_path = network_path;
        if (!attrs_path.empty()) cfg.attributes_path = attrs_path;
        if (!rules_path.empty()) cfg.rules_path = rules_path;
        if (!exo_terms.empty()) cfg.exogenous_terms = exo_terms;
        if (pipe_cmd->count("--refits")) cfg.refits = refits;
        if (pipe_cmd->count("--draws")) cfg.draws = draws;
        if (pipe_cmd->count("--burn-in")) cfg.burn_in = burn_in;
        if (pipe_cmd->count("--interval")) cfg.interval = interval;
        if (pipe_cmd->count("--bridge-draws")) cfg.bridge_draws = bridge_draws;
        if (pipe_cmd->count("--gw-decay")) cfg.gw_decay = gw_decay;
        if (pipe_cmd->count("--out")) cfg.out_dir = pipe_out;
        if (g.seed_set) {
            cfg.seed = g.seed;
            cfg.seed_set = true;
        }
        cfg.threads = g.threads;
        run_pipeline(cfg, g.verbose ? std::cerr : log_stream(g));
        return 0;
    }

    return 3;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return dispatch(argc, argv);
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 1;
    } catch (const MalformedTerm& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 1;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 3;
    } catch (const AllModelsDegenerate& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
