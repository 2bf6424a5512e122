#include "ergm/selection.hpp"

#include <algorithm>
#include <cmath>

#include "ergm/parallel.hpp"
#include "ergm/rng.hpp"

namespace ergm {

Fitter mple_fitter() {
    return [](const Network& net, const std::vector<TermSpec>& terms, std::uint64_t) {
        return fit_mple(net, terms);
    };
}

Fitter mcmle_fitter(EstimationConfig cfg) {
    return [cfg](const Network& net, const std::vector<TermSpec>& terms, std::uint64_t seed) {
        return fit_mcmle(net, terms, cfg, seed);
    };
}

int bound_input(const Network& net, Family family, const Fitter& fitter) {
    if (!family_takes_k(family)) throw MalformedTerm("family takes no k input");
    const int j_min = family == Family::kstar ? 2 : 1;
    const int cap = net.node_count() - 1;

    int run_start = 0, run_len = 0;
    for (int j = j_min; j <= cap + 2; ++j) {
        TermSpec term{family, j, 0.0, {}};
        const FitResult fit =
            fitter(net, {edges_term(), term}, static_cast<std::uint64_t>(j));
        const bool diverged = fit.flags.size() >= 2 && fit.flags[1] == DivFlag::neg_inf;
        if (diverged) {
            if (run_len == 0) run_start = j;
            if (++run_len == 3) return std::min(run_start - 1, cap);
        } else {
            run_len = 0;
        }
    }
    return cap;
}

InputBounds bound_all_inputs(const Network& net, const Fitter& fitter) {
    InputBounds b;
    b.kstar = bound_input(net, Family::kstar, fitter);
    b.dsp = bound_input(net, Family::dsp, fitter);
    b.esp = bound_input(net, Family::esp, fitter);
    b.nsp = bound_input(net, Family::nsp, fitter);
    return b;
}

CandidateSet build_candidate_set(const Network& net, const InputBounds& bounds,
                                 double gw_decay) {
    CandidateSet set;
    set.bounds = bounds;
    for (int k = 2; k <= bounds.kstar; ++k) set.terms.push_back(make_kstar(k));
    for (int k = 1; k <= bounds.dsp; ++k) set.terms.push_back(make_sp(Family::dsp, k));
    for (int k = 1; k <= bounds.esp; ++k) set.terms.push_back(make_sp(Family::esp, k));
    for (int k = 1; k <= bounds.nsp; ++k) set.terms.push_back(make_sp(Family::nsp, k));
    set.terms.push_back(TermSpec{Family::triangle, 0, 0.0, {}});
    set.terms.push_back(TermSpec{Family::isolates, 0, 0.0, {}});
    set.terms.push_back(TermSpec{Family::sociality, 0, 0.0, {}});
    set.terms.push_back(TermSpec{Family::degcrossprod, 0, 0.0, {}});
    set.terms.push_back(TermSpec{Family::degree_popularity, 0, 0.0, {}});
    set.terms.push_back(make_gw(Family::gwesp, gw_decay));
    set.terms.push_back(make_gw(Family::gwnsp, gw_decay));
    set.terms.push_back(make_gw(Family::gwdsp, gw_decay));
    set.terms.push_back(make_gw(Family::gwdegree, gw_decay));
    (void)net;
    return set;
}

long long model_space_size(long long n_terms) {
    return n_terms * (n_terms + 1) / 2;
}

double lower_quantile(std::vector<double> values, double q) {
    if (values.empty()) throw ConfigError("quantile of an empty sample");
    std::sort(values.begin(), values.end());
    const auto m = static_cast<long long>(values.size());
    long long idx = static_cast<long long>(std::ceil(q * static_cast<double>(m))) - 1;
    idx = std::clamp<long long>(idx, 0, m - 1);
    return values[idx];
}

TermVerdict categorize(TermSpec term, std::vector<double> b_samples) {
    TermVerdict v;
    v.term = std::move(term);
    v.b_hat = lower_quantile(b_samples, 0.1);
    const double b_min = *std::min_element(b_samples.begin(), b_samples.end());
    v.b_samples = std::move(b_samples);
    v.kept = v.b_hat > 0.0;
    if (b_min > 0.0)
        v.category = Category::D1;
    else if (v.b_hat <= 0.0)
        v.category = Category::D2;
    else
        v.category = Category::D3;
    return v;
}

std::vector<TermVerdict> stochastic_forward_select(const Network& net,
                                                   const CandidateSet& cands, int refits,
                                                   const Fitter& fitter,
                                                   std::uint64_t master_seed, int threads) {
    if (refits < 10) throw ConfigError("the 10th percentile needs at least 10 refits");
    const FitResult null = fit_null(net);
    const double aic0 = null.aic;
    if (!std::isfinite(aic0) || aic0 <= 0.0)
        throw NonPositiveNullAic("selection requires a finite positive AIC_0");

    const std::size_t n_terms = cands.terms.size();
    std::vector<std::vector<double>> b_samples(n_terms,
                                               std::vector<double>(refits, kSentinelB));
    parallel_for(n_terms * static_cast<std::size_t>(refits), threads, [&](std::size_t job) {
        const std::size_t t = job / refits;
        const std::size_t m = job % refits;
        const std::uint64_t seed = split_seed(master_seed, job);
        FitResult fit;
        try {
            fit = fitter(net, {edges_term(), cands.terms[t]}, seed);
        } catch (const Error&) {
            // failed refits are evidence, not gaps: count them at the sentinel
            b_samples[t][m] = kSentinelB;
            return;
        }
        b_samples[t][m] = relative_aic_change(aic0, fit.aic);
    });

    std::vector<TermVerdict> verdicts;
    verdicts.reserve(n_terms);
    for (std::size_t t = 0; t < n_terms; ++t)
        verdicts.push_back(categorize(cands.terms[t], std::move(b_samples[t])));
    return verdicts;
}

std::vector<TermSpec> surviving_terms(const std::vector<TermVerdict>& verdicts) {
    std::vector<TermSpec> out;
    for (const auto& v : verdicts)
        if (v.kept) out.push_back(v.term);
    return out;
}

} // namespace ergm
