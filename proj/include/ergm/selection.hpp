#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "ergm/estimation.hpp"
#include "ergm/network.hpp"
#include "ergm/terms.hpp"

namespace ergm {

// Upper bounds for the input parameter of the four k-parameterized families.
struct InputBounds {
    int kstar = 1;   // terms run k = 2..kstar
    int dsp = 0;     // terms run k = 1..dsp, and likewise below
    int esp = 0;
    int nsp = 0;
};

struct CandidateSet {
    std::vector<TermSpec> terms;
    InputBounds bounds;
};

enum class Category { D1, D2, D3 };

// kept     <=> b_hat > 0
// D1       <=> every b sample positive
// D2       <=> b_hat <= 0
// D3       <=> b_hat > 0 but at least one sample non-positive
struct TermVerdict {
    TermSpec term;
    std::vector<double> b_samples;
    double b_hat = 0.0;
    Category category = Category::D2;
    bool kept = false;
};

// A fitter maps (network, terms, seed) to a FitResult; selection and
// bounding are parameterized over it so tests can substitute deterministic
// fitters and the production pipeline can choose MPLE or CD/MC-MLE.
using Fitter =
    std::function<FitResult(const Network&, const std::vector<TermSpec>&, std::uint64_t)>;

Fitter mple_fitter();
Fitter mcmle_fitter(EstimationConfig cfg);

// Largest input j for the family such that the univariate fits at j, j+1 and
// j+2 are not all flagged -inf; equivalently, one below the start of the
// first run of three consecutive -inf flags. Capped at N-1.
int bound_input(const Network& net, Family family, const Fitter& fitter);

InputBounds bound_all_inputs(const Network& net, const Fitter& fitter);

// kstar(2..N4) + dsp/esp/nsp(1..N) + the nine fixed endogenous families.
CandidateSet build_candidate_set(const Network& net, const InputBounds& bounds,
                                 double gw_decay = kDefaultGwDecay);

// Univariate plus pairwise models over n terms: n(n+1)/2.
long long model_space_size(long long n_terms);

// empirical lower quantile: sort ascending, take index ceil(q*M)-1
double lower_quantile(std::vector<double> values, double q);

TermVerdict categorize(TermSpec term, std::vector<double> b_samples);

// Algorithm: fix AIC_0 from the closed-form null fit, then for every
// candidate run M independent refits of edges+term, convert each AIC to a
// relative change, and keep the term when the 10th percentile is positive.
// Per-refit seeds derive from the master seed by the fixed splitting rule,
// so the report is reproducible regardless of thread count.
std::vector<TermVerdict> stochastic_forward_select(const Network& net,
                                                   const CandidateSet& cands, int refits,
                                                   const Fitter& fitter,
                                                   std::uint64_t master_seed,
                                                   int threads = 1);

std::vector<TermSpec> surviving_terms(const std::vector<TermVerdict>& verdicts);

} // namespace ergm
