#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "ergm/model.hpp"
#include "ergm/network.hpp"
#include "ergm/sampler.hpp"

namespace ergm {

enum class DivFlag { finite, neg_inf, pos_inf, failed };
enum class FitMethod { mple, cd_mcmle, exact };

// b value substituted for degenerate / failed fits when comparing AICs.
constexpr double kSentinelB = -10.0;

struct FitResult {
    std::vector<TermSpec> terms;
    std::vector<double> theta_hat;
    double loglik = 0.0;
    double aic = 0.0;            // +inf sentinel when any flag is non-finite
    std::vector<DivFlag> flags;
    FitMethod method = FitMethod::mple;
    std::uint64_t seed = 0;
    int n_refits_consumed = 1;

    bool all_finite() const {
        for (DivFlag f : flags)
            if (f != DivFlag::finite) return false;
        return true;
    }
};

struct EstimationConfig {
    // contrastive-divergence seeding
    int cd_steps = 3;            // sweeps per CD gradient evaluation
    int cd_iterations = 20;
    double cd_step_size = 0.05;
    double cd_decay = 0.9;
    // Monte-Carlo MLE
    int mcmle_max_iter = 20;
    double mcmle_tol = 0.1;      // Mahalanobis distance of the statistic gap
    double mcmle_step_cap = 1.5; // sup-norm trust region per Newton step
    int bridge_draws = 500;      // null-model draws for the log-psi ratio
    SamplerConfig sampler{/*burn_in=*/20, /*interval=*/2, /*draws=*/100,
                          /*seed=*/0, InitState::observed, 0.5};
};

// Statistic-boundary divergence detection: observed statistic at 0 maps to
// neg_inf; at the family's maximum attainable value (where one is known in
// closed form) maps to pos_inf.
DivFlag observed_boundary_flag(const Network& net, const TermSpec& term);

// Closed-form Bernoulli-graph fit: theta0 = logit(|E|/D). Degenerate density
// (|E| in {0, D}) is flagged, not fatal.
FitResult fit_null(const Network& net);

// Maximum pseudo-likelihood: logistic regression of the dyad indicators on
// their change scores, solved by iteratively reweighted least squares.
// Separation surfaces as +/-inf flags.
FitResult fit_mple(const Network& net, std::vector<TermSpec> terms);

// CD-seeded Monte-Carlo MLE. The log-likelihood is estimated against the
// exact null model through importance sampling, so AICs are comparable to
// fit_null's noise-free AIC_0.
FitResult fit_mcmle(const Network& net, std::vector<TermSpec> terms,
                    const EstimationConfig& cfg, std::uint64_t seed);

// Exact MLE by full enumeration of the 2^C(n,2) graphs; n <= 7.
FitResult fit_exact(const Network& net, std::vector<TermSpec> terms);

// b_i = (AIC_0 - AIC_i) / AIC_0; a sentinel (non-finite) AIC_i maps to
// kSentinelB. Throws NonPositiveNullAic unless aic0 > 0.
double relative_aic_change(double aic0, double aic_i);

} // namespace ergm
