#include "ergm/report.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "ergm/io.hpp"

namespace ergm {

namespace {

// JSON has no infinities; divergent values are serialized as tagged strings.
json finite_or_tag(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "+inf" : "-inf";
    return v;
}

json term_list_json(const std::vector<TermSpec>& terms) {
    json arr = json::array();
    for (const auto& t : terms) arr.push_back(format_term(t));
    return arr;
}

std::string pad(const std::string& s, std::size_t w) {
    return s.size() >= w ? s : s + std::string(w - s.size(), ' ');
}

std::string num(double v, int prec = 3) {
    std::ostringstream ss;
    ss << std::fixed << std::setprecision(prec) << v;
    return ss.str();
}

} // namespace

const char* category_name(Category c) {
    switch (c) {
        case Category::D1: return "D1";
        case Category::D2: return "D2";
        case Category::D3: return "D3";
    }
    return "?";
}

const char* flag_name(DivFlag f) {
    switch (f) {
        case DivFlag::finite: return "finite";
        case DivFlag::neg_inf: return "neg_inf";
        case DivFlag::pos_inf: return "pos_inf";
        case DivFlag::failed: return "failed";
    }
    return "?";
}

const char* method_name(FitMethod m) {
    switch (m) {
        case FitMethod::mple: return "mple";
        case FitMethod::cd_mcmle: return "cd_mcmle";
        case FitMethod::exact: return "exact";
    }
    return "?";
}

json network_summary(const Network& net) {
    json j;
    j["nodes"] = net.node_count();
    j["edges"] = net.edge_count();
    if (const auto* labels = net.labels()) j["node_labels"] = *labels;
    return j;
}

json motifs_report(const Network& net) {
    const MotifCensus c = motif_census(net);
    json j;
    j["network"] = network_summary(net);
    j["edges"] = c.edges;
    j["two_stars"] = {{"paper", c.two_stars_paper}, {"unordered", c.two_stars_unordered}};
    j["triangles"] = {{"paper", c.triangles_paper}, {"unordered", c.triangles_unordered}};
    j["isolates"] = c.isolates;
    j["convention"] = "paper counts are twice the unordered subgraph counts";
    j["homomorphism_densities"] = {
        {"edge", homomorphism_density(Motif::edge, net)},
        {"two_star_path", homomorphism_density(Motif::two_star_path, net)},
        {"triangle", homomorphism_density(Motif::triangle, net)},
    };
    return j;
}

json bounds_report(const Network& net, const InputBounds& bounds) {
    json j;
    j["network"] = network_summary(net);
    j["bounds"] = {{"kstar", bounds.kstar},
                   {"dsp", bounds.dsp},
                   {"esp", bounds.esp},
                   {"nsp", bounds.nsp}};
    return j;
}

json candidates_report(const CandidateSet& cands) {
    json j;
    j["terms"] = term_list_json(cands.terms);
    j["count"] = cands.terms.size();
    j["model_space"] = model_space_size(static_cast<long long>(cands.terms.size()));
    j["bounds"] = {{"kstar", cands.bounds.kstar},
                   {"dsp", cands.bounds.dsp},
                   {"esp", cands.bounds.esp},
                   {"nsp", cands.bounds.nsp}};
    return j;
}

json selection_report(const Network& net, double aic0, const std::vector<TermVerdict>& verdicts,
                      int refits, std::uint64_t seed) {
    json j;
    j["network"] = network_summary(net);
    j["aic0"] = aic0;
    j["refits"] = refits;
    j["seed"] = seed;
    json terms = json::array();
    int n_kept = 0, n_d3 = 0;
    for (const auto& v : verdicts) {
        json tv;
        tv["term"] = format_term(v.term);
        tv["b_samples"] = v.b_samples;
        tv["b_hat"] = v.b_hat;
        tv["category"] = category_name(v.category);
        tv["kept"] = v.kept;
        terms.push_back(std::move(tv));
        n_kept += v.kept;
        n_d3 += v.category == Category::D3;
    }
    j["verdicts"] = std::move(terms);
    j["survivors"] = n_kept;
    j["model_space"] = model_space_size(n_kept);
    j["d3_count"] = n_d3;
    return j;
}

json screening_report_json(const ScreeningReport& report, std::uint64_t seed) {
    json j;
    j["seed"] = seed;
    j["observed"] = {{"edges", report.observed.edges},
                     {"two_stars", report.observed.two_stars_paper},
                     {"triangles", report.observed.triangles_paper},
                     {"isolates", report.observed.isolates}};
    json rules = json::array();
    for (const auto& r : report.rules) rules.push_back(format_rule(r));
    j["rules"] = std::move(rules);

    json models = json::array();
    int n_degenerate = 0, n_survived = 0;
    for (const auto& m : report.models) {
        json mj;
        mj["terms"] = term_list_json(m.model.terms);
        mj["theta"] = m.model.theta;
        mj["mean_edges"] = m.mean_edges;
        mj["mean_two_stars"] = m.mean_two_stars;
        mj["mean_triangles"] = m.mean_triangles;
        mj["mean_isolates"] = m.mean_isolates;
        mj["rule_pass"] = m.rule_pass;
        mj["degenerate"] = m.degenerate;
        mj["survived"] = m.survived;
        mj["distance"] = m.distance;
        models.push_back(std::move(mj));
        n_degenerate += m.degenerate;
        n_survived += m.survived;
    }
    j["models"] = std::move(models);
    j["ranking"] = report.ranking;
    j["n_models"] = report.models.size();
    j["n_degenerate"] = n_degenerate;
    j["n_survivors"] = n_survived;
    return j;
}

json fit_report(const FitResult& fit) {
    json j;
    j["terms"] = term_list_json(fit.terms);
    json theta = json::array();
    for (double v : fit.theta_hat) theta.push_back(finite_or_tag(v));
    j["theta"] = std::move(theta);
    j["loglik"] = finite_or_tag(fit.loglik);
    j["aic"] = finite_or_tag(fit.aic);
    json flags = json::array();
    for (DivFlag f : fit.flags) flags.push_back(flag_name(f));
    j["flags"] = std::move(flags);
    j["method"] = method_name(fit.method);
    j["seed"] = fit.seed;
    j["n_refits_consumed"] = fit.n_refits_consumed;
    return j;
}

ErgmModel model_from_json(const json& j) {
    if (!j.contains("terms") || !j.contains("theta"))
        throw ConfigError("model JSON needs 'terms' and 'theta'");
    ErgmModel m;
    for (const auto& t : j.at("terms")) m.terms.push_back(parse_term(t.get<std::string>()));
    for (const auto& v : j.at("theta")) {
        if (!v.is_number()) throw NonFiniteTheta("model JSON has a non-finite coefficient");
        m.theta.push_back(v.get<double>());
    }
    m.validate();
    return m;
}

std::string dump_report(const json& j) { return j.dump(2) + "\n"; }

void write_report(const json& j, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot open file for writing", path, 0);
    out << dump_report(j);
}

json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open file", path, 0);
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw ParseError(e.what(), path, 0);
    }
    return j;
}

std::string motifs_table(const json& m) {
    std::ostringstream out;
    out << pad("nodes", 8) << pad("edges", 8) << pad("2-stars", 9) << pad("triangles", 11)
        << pad("isolates", 9) << "\n";
    out << pad(std::to_string(m["network"]["nodes"].get<long long>()), 8)
        << pad(std::to_string(m["edges"].get<long long>()), 8)
        << pad(std::to_string(m["two_stars"]["paper"].get<long long>()), 9)
        << pad(std::to_string(m["triangles"]["paper"].get<long long>()), 11)
        << pad(std::to_string(m["isolates"].get<long long>()), 9) << "\n";
    return out.str();
}

std::string bounds_table(const json& b) {
    std::ostringstream out;
    out << pad("kstar", 7) << pad("esp", 5) << pad("nsp", 5) << pad("dsp", 5) << "\n";
    const auto& bounds = b["bounds"];
    out << pad(std::to_string(bounds["kstar"].get<int>()), 7)
        << pad(std::to_string(bounds["esp"].get<int>()), 5)
        << pad(std::to_string(bounds["nsp"].get<int>()), 5)
        << pad(std::to_string(bounds["dsp"].get<int>()), 5) << "\n";
    return out.str();
}

std::string selection_table(const json& s) {
    std::ostringstream out;
    out << "AIC0 " << num(s["aic0"].get<double>()) << ", refits "
        << s["refits"].get<int>() << "\n";
    out << pad("term", 22) << pad("b_hat", 10) << pad("category", 10) << pad("kept", 6)
        << "\n";
    for (const auto& v : s["verdicts"]) {
        out << pad(v["term"].get<std::string>(), 22) << pad(num(v["b_hat"].get<double>(), 4), 10)
            << pad(v["category"].get<std::string>(), 10)
            << pad(v["kept"].get<bool>() ? "yes" : "no", 6) << "\n";
    }
    out << "survivors " << s["survivors"].get<int>() << ", model space "
        << s["model_space"].get<long long>() << ", D3 " << s["d3_count"].get<int>() << "\n";
    return out.str();
}

std::string screening_table(const json& s) {
    std::ostringstream out;
    out << pad("model", 38) << pad("edges", 9) << pad("2-stars", 10) << pad("triangles", 11)
        << pad("degenerate", 12) << pad("distance", 9) << "\n";
    for (const auto& m : s["models"]) {
        std::string terms;
        for (const auto& t : m["terms"]) {
            if (!terms.empty()) terms += "+";
            terms += t.get<std::string>();
        }
        out << pad(terms, 38) << pad(num(m["mean_edges"].get<double>(), 1), 9)
            << pad(num(m["mean_two_stars"].get<double>(), 1), 10)
            << pad(num(m["mean_triangles"].get<double>(), 1), 11)
            << pad(m["degenerate"].get<bool>() ? "yes" : "no", 12)
            << pad(num(m["distance"].get<double>(), 3), 9) << "\n";
    }
    out << "models " << s["n_models"].get<int>() << ", degenerate "
        << s["n_degenerate"].get<int>() << ", survivors " << s["n_survivors"].get<int>()
        << "\n";
    return out.str();
}

} // namespace ergm
