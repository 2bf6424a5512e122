#include "ergm/estimation.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>

#include "ergm/rng.hpp"

namespace ergm {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kSeparationTheta = 25.0;   // |theta| beyond this is treated as +/-inf
constexpr double kExactThetaLimit = 30.0;

double softplus(double x) { return std::max(x, 0.0) + std::log1p(std::exp(-std::abs(x))); }

double logit(double p) { return std::log(p) - std::log1p(-p); }

// maximum attainable statistic value, where the family is monotone in the
// edge set and the maximum has a closed form (attained on the complete graph,
// or the empty graph for isolates)
std::optional<double> max_attainable(const Network& net, const TermSpec& term) {
    const double n = net.node_count();
    const double dyads = static_cast<double>(net.dyad_count());
    switch (term.family) {
        case Family::edges:
            return dyads;
        case Family::kstar:
            return n * binom(net.node_count() - 1, term.k);
        case Family::triangle:
            return binom(net.node_count(), 3);
        case Family::isolates:
            return n;
        case Family::sociality:
            return (n - 1) * (n - 1);
        case Family::degree_popularity:
            return n * std::pow(n - 1.0, 1.5);
        case Family::gwdegree: {
            const double q = 1.0 - std::exp(-term.decay);
            return n * std::exp(term.decay) * (1.0 - std::pow(q, net.node_count() - 1));
        }
        case Family::gwesp:
        case Family::gwdsp: {
            const double q = 1.0 - std::exp(-term.decay);
            return dyads * std::exp(term.decay) * (1.0 - std::pow(q, net.node_count() - 2));
        }
        case Family::nodematch: {
            const AttributeColumn* col = net.attribute(term.attr);
            if (!col) return std::nullopt;
            double c = 0;
            for (int i = 0; i < net.node_count(); ++i)
                for (int j = i + 1; j < net.node_count(); ++j)
                    if (col->values[i] == col->values[j]) c += 1;
            return c;
        }
        default:
            return std::nullopt;   // non-monotone family, no closed-form bound
    }
}

FitResult flagged_result(std::vector<TermSpec> terms, std::vector<DivFlag> flags,
                         FitMethod method, std::uint64_t seed) {
    FitResult r;
    r.terms = std::move(terms);
    r.flags = std::move(flags);
    r.theta_hat.resize(r.terms.size(), 0.0);
    for (std::size_t t = 0; t < r.flags.size(); ++t) {
        if (r.flags[t] == DivFlag::neg_inf) r.theta_hat[t] = -kInf;
        if (r.flags[t] == DivFlag::pos_inf) r.theta_hat[t] = kInf;
        if (r.flags[t] == DivFlag::failed) r.theta_hat[t] = std::numeric_limits<double>::quiet_NaN();
    }
    r.loglik = -kInf;
    r.aic = kInf;
    r.method = method;
    r.seed = seed;
    return r;
}

// change scores for *adding* each dyad, conditional on the rest of the
// observed network, plus the dyad indicator; the MPLE design matrix
void build_dyad_design(const Network& net, const std::vector<TermSpec>& terms,
                       Eigen::MatrixXd& X, Eigen::VectorXd& y) {
    const int n = net.node_count();
    const long long dyads = net.dyad_count();
    const int p = static_cast<int>(terms.size());
    X.resize(dyads, p);
    y.resize(dyads);
    long long row = 0;
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j, ++row) {
            const bool present = net.has_edge(i, j);
            y(row) = present ? 1.0 : 0.0;
            if (present) {
                const DyadToggle t(i, j, ToggleDir::remove);
                for (int m = 0; m < p; ++m) X(row, m) = -change_stat(net, terms[m], t);
            } else {
                const DyadToggle t(i, j, ToggleDir::add);
                for (int m = 0; m < p; ++m) X(row, m) = change_stat(net, terms[m], t);
            }
        }
    }
}

struct IrlsOutcome {
    Eigen::VectorXd beta;
    double pseudo_loglik = 0.0;
    bool converged = false;
    bool singular = false;
};

IrlsOutcome irls_logistic(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                          double grad_tol, int max_iter) {
    const int p = static_cast<int>(X.cols());
    IrlsOutcome out;
    out.beta = Eigen::VectorXd::Zero(p);
    bool polish = false;
    for (int it = 0; it < max_iter; ++it) {
        const Eigen::VectorXd eta = X * out.beta;
        const Eigen::VectorXd mu = eta.unaryExpr([](double e) {
            return e >= 0 ? 1.0 / (1.0 + std::exp(-e)) : std::exp(e) / (1.0 + std::exp(e));
        });
        const Eigen::VectorXd grad = X.transpose() * (y - mu);
        if (grad.norm() <= grad_tol) {
            if (polish) {
                out.converged = true;
                break;
            }
            polish = true;   // one extra Newton step past the tolerance
        }
        const Eigen::VectorXd w = mu.array() * (1.0 - mu.array());
        Eigen::MatrixXd info = X.transpose() * w.asDiagonal() * X;
        const double ridge = 1e-10 * std::max(1.0, info.trace());
        info.diagonal().array() += ridge;
        const Eigen::VectorXd step = info.ldlt().solve(grad);
        if (!step.allFinite()) {
            out.singular = true;
            break;
        }
        out.beta += step;
        if (polish && grad.norm() <= grad_tol) {
            out.converged = true;
            break;
        }
    }
    const Eigen::VectorXd eta = X * out.beta;
    out.pseudo_loglik = 0.0;
    for (Eigen::Index d = 0; d < eta.size(); ++d)
        out.pseudo_loglik += y(d) * eta(d) - softplus(eta(d));
    if (!out.beta.allFinite()) out.singular = true;
    return out;
}

double log_mean_exp(const std::vector<double>& v) {
    const double m = *std::max_element(v.begin(), v.end());
    if (!std::isfinite(m)) return m;
    double s = 0.0;
    for (double x : v) s += std::exp(x - m);
    return m + std::log(s / static_cast<double>(v.size()));
}

// exact log psi for the Bernoulli model with edge coefficient theta0
double null_log_psi(double theta0, long long dyads) {
    return static_cast<double>(dyads) * softplus(theta0);
}

// log-likelihood at theta estimated against the exact null model: draws are
// iid Bernoulli graphs, the ratio log psi(theta) - log psi(null) is a
// log-mean-exp over them. High variance far from the null is the honest
// source of AIC fluctuation across refits.
double bridge_loglik(const Network& net, const std::vector<TermSpec>& terms,
                     const Eigen::VectorXd& theta, const std::vector<double>& t_obs,
                     int bridge_draws, std::uint64_t seed) {
    const FitResult null = fit_null(net);
    const double theta0 = null.theta_hat[0];
    const double p_hat = 1.0 / (1.0 + std::exp(-theta0));
    const int n = net.node_count();

    Rng rng(seed);
    std::vector<double> log_ratios(bridge_draws);
    for (int b = 0; b < bridge_draws; ++b) {
        Network draw(n);
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                if (rng.bernoulli(p_hat)) draw.apply_toggle(DyadToggle(i, j, ToggleDir::add));
        double lr = 0.0;
        for (std::size_t m = 0; m < terms.size(); ++m) {
            const double t_m = global_stat(draw, terms[m]);
            const double d_m = theta(static_cast<Eigen::Index>(m)) - (m == 0 ? theta0 : 0.0);
            lr += d_m * t_m;
        }
        log_ratios[b] = lr;
    }
    const double log_psi = null_log_psi(theta0, net.dyad_count()) + log_mean_exp(log_ratios);
    double ll = -log_psi;
    for (std::size_t m = 0; m < terms.size(); ++m)
        ll += theta(static_cast<Eigen::Index>(m)) * t_obs[m];
    return ll;
}

} // namespace

DivFlag observed_boundary_flag(const Network& net, const TermSpec& term) {
    const double t_obs = global_stat(net, term);
    const auto t_max = max_attainable(net, term);
    if (t_obs == 0.0) {
        // constant-zero statistics (max attainable 0) are equally unusable
        return DivFlag::neg_inf;
    }
    if (t_max && t_obs >= *t_max) return DivFlag::pos_inf;
    return DivFlag::finite;
}

FitResult fit_null(const Network& net) {
    if (net.node_count() < 2) throw TooLarge("null fit requires at least 2 nodes");
    const auto [edges, nonedges] = net.dyad_census();
    const double d = static_cast<double>(edges + nonedges);

    FitResult r;
    r.terms = {edges_term()};
    r.method = FitMethod::exact;
    r.flags = {DivFlag::finite};
    if (edges == 0 || nonedges == 0) {
        r.flags[0] = edges == 0 ? DivFlag::neg_inf : DivFlag::pos_inf;
        r.theta_hat = {edges == 0 ? -kInf : kInf};
        r.loglik = 0.0;   // limit of the binomial log-likelihood at p in {0,1}
        r.aic = kInf;
        return r;
    }
    const double p_hat = static_cast<double>(edges) / d;
    r.theta_hat = {logit(p_hat)};
    r.loglik = static_cast<double>(edges) * std::log(p_hat) +
               static_cast<double>(nonedges) * std::log1p(-p_hat);
    r.aic = 2.0 - 2.0 * r.loglik;
    return r;
}

FitResult fit_mple(const Network& net, std::vector<TermSpec> terms) {
    terms = with_edges_first(std::move(terms));
    const int p = static_cast<int>(terms.size());

    std::vector<DivFlag> flags(p, DivFlag::finite);
    bool boundary = false;
    for (int m = 0; m < p; ++m) {
        flags[m] = observed_boundary_flag(net, terms[m]);
        boundary |= flags[m] != DivFlag::finite;
    }
    if (boundary) return flagged_result(std::move(terms), std::move(flags), FitMethod::mple, 0);

    Eigen::MatrixXd X;
    Eigen::VectorXd y;
    build_dyad_design(net, terms, X, y);
    const IrlsOutcome irls = irls_logistic(X, y, 1e-8, 100);

    if (irls.singular)
        return flagged_result(std::move(terms),
                              std::vector<DivFlag>(p, DivFlag::failed), FitMethod::mple, 0);

    bool separated = false;
    for (int m = 0; m < p; ++m) {
        if (std::abs(irls.beta(m)) > kSeparationTheta) {
            flags[m] = irls.beta(m) > 0 ? DivFlag::pos_inf : DivFlag::neg_inf;
            separated = true;
        }
    }
    if (separated || (!irls.converged && !irls.beta.allFinite()))
        return flagged_result(std::move(terms), std::move(flags), FitMethod::mple, 0);

    FitResult r;
    r.terms = std::move(terms);
    r.theta_hat.assign(irls.beta.data(), irls.beta.data() + p);
    r.flags = std::move(flags);
    r.loglik = irls.pseudo_loglik;
    r.aic = 2.0 * p - 2.0 * r.loglik;
    r.method = FitMethod::mple;
    return r;
}

FitResult fit_mcmle(const Network& net, std::vector<TermSpec> terms,
                    const EstimationConfig& cfg, std::uint64_t seed) {
    terms = with_edges_first(std::move(terms));
    const int p = static_cast<int>(terms.size());
    const int n = net.node_count();

    // observed-boundary statistics admit no finite MLE at all
    for (int m = 0; m < p; ++m) {
        const DivFlag flag = observed_boundary_flag(net, terms[m]);
        if (flag != DivFlag::finite) {
            std::vector<DivFlag> flags(p, DivFlag::finite);
            flags[m] = flag;
            for (int r = m + 1; r < p; ++r) flags[r] = observed_boundary_flag(net, terms[r]);
            return flagged_result(std::move(terms), std::move(flags), FitMethod::cd_mcmle,
                                  seed);
        }
    }

    const FitResult null = fit_null(net);
    const std::vector<double> t_obs = global_stats(net, terms);

    // Seed from the MPLE; pseudo-likelihood separation does not preclude a
    // finite MLE, so a separated, failed or extreme MPLE falls back to the
    // null seed and MC-MLE judges the term itself.
    FitResult mple = fit_mple(net, terms);
    Eigen::VectorXd theta = Eigen::VectorXd::Zero(p);
    bool usable_seed = mple.all_finite();
    if (usable_seed)
        for (double v : mple.theta_hat) usable_seed &= std::abs(v) < 5.0;
    if (usable_seed)
        theta = Eigen::Map<const Eigen::VectorXd>(mple.theta_hat.data(), p);
    else
        theta(0) = null.theta_hat[0];

    // relative-scale CD gradient; raw statistics differ by orders of magnitude
    Eigen::VectorXd scale(p);
    for (int m = 0; m < p; ++m) scale(m) = std::max(1.0, std::abs(t_obs[m]));

    ErgmModel model{terms, std::vector<double>(theta.data(), theta.data() + p)};
    double step = cfg.cd_step_size;
    for (int it = 0; it < cfg.cd_iterations; ++it) {
        model.theta.assign(theta.data(), theta.data() + p);
        if (!model.theta_finite())
            return flagged_result(std::move(terms),
                                  std::vector<DivFlag>(p, DivFlag::failed),
                                  FitMethod::cd_mcmle, seed);
        DyadChain chain(model, net, split_seed(seed, 1000 + it));
        for (int s = 0; s < cfg.cd_steps; ++s) chain.sweep();
        const std::vector<double> t_cd = global_stats(chain.state(), terms);
        for (int m = 0; m < p; ++m) theta(m) += step * (t_obs[m] - t_cd[m]) / scale(m);
        step *= cfg.cd_decay;
    }

    // MC-MLE: Newton steps on the moment gap with sampled mean/covariance
    double prev_gap = kInf;
    int grow_streak = 0;
    int shrink_count = 0;
    Eigen::VectorXd theta_feasible = Eigen::VectorXd::Zero(p);
    theta_feasible(0) = null.theta_hat[0];   // the null never freezes the chain
    for (int it = 0; it < cfg.mcmle_max_iter; ++it) {
        model.theta.assign(theta.data(), theta.data() + p);
        if (!model.theta_finite())
            return flagged_result(std::move(terms),
                                  std::vector<DivFlag>(p, DivFlag::failed),
                                  FitMethod::cd_mcmle, seed);
        SamplerConfig scfg = cfg.sampler;
        scfg.seed = split_seed(seed, 2000 + it);
        scfg.init = InitState::observed;
        const SampleResult sim = sample(model, n, scfg, &net);

        Eigen::VectorXd mean = Eigen::VectorXd::Zero(p);
        for (const auto& s : sim.stats)
            mean += Eigen::Map<const Eigen::VectorXd>(s.data(), p);
        mean /= static_cast<double>(sim.stats.size());
        Eigen::MatrixXd cov = Eigen::MatrixXd::Zero(p, p);
        for (const auto& s : sim.stats) {
            const Eigen::VectorXd d = Eigen::Map<const Eigen::VectorXd>(s.data(), p) - mean;
            cov += d * d.transpose();
        }
        cov /= std::max<double>(1.0, static_cast<double>(sim.stats.size()) - 1.0);
        if (cov.trace() < 1e-10) {
            // frozen chain: theta entered a degenerate region; pull back
            // toward the last iterate whose sample still moved
            if (++shrink_count > 6)
                return flagged_result(std::move(terms),
                                      std::vector<DivFlag>(p, DivFlag::failed),
                                      FitMethod::cd_mcmle, seed);
            theta = 0.5 * (theta + theta_feasible);
            continue;
        }
        shrink_count = 0;
        cov.diagonal().array() += 1e-8 * cov.trace();

        Eigen::VectorXd gap(p);
        for (int m = 0; m < p; ++m) gap(m) = t_obs[m] - mean(m);
        Eigen::VectorXd dir = cov.ldlt().solve(gap);
        if (!dir.allFinite())
            return flagged_result(std::move(terms),
                                  std::vector<DivFlag>(p, DivFlag::failed),
                                  FitMethod::cd_mcmle, seed);
        const double mahal = std::sqrt(std::max(0.0, gap.dot(dir)));
        if (mahal <= cfg.mcmle_tol) break;
        if (mahal > prev_gap) {
            if (++grow_streak >= 3)
                return flagged_result(std::move(terms),
                                      std::vector<DivFlag>(p, DivFlag::failed),
                                      FitMethod::cd_mcmle, seed);
        } else {
            grow_streak = 0;
        }
        prev_gap = mahal;
        theta_feasible = theta;
        // trust region on the Newton step; sampled covariances make raw
        // steps arbitrarily large near degeneracy
        const double step_inf = dir.cwiseAbs().maxCoeff();
        if (step_inf > cfg.mcmle_step_cap) dir *= cfg.mcmle_step_cap / step_inf;
        theta += dir;
    }

    if (!theta.allFinite())
        return flagged_result(std::move(terms), std::vector<DivFlag>(p, DivFlag::failed),
                              FitMethod::cd_mcmle, seed);

    // polish: one Newton step on a fresh sample, damping the stopping-rule
    // noise of the last accepted iterate
    {
        model.theta.assign(theta.data(), theta.data() + p);
        SamplerConfig scfg = cfg.sampler;
        scfg.seed = split_seed(seed, 2999);
        scfg.init = InitState::observed;
        const SampleResult sim = sample(model, n, scfg, &net);
        Eigen::VectorXd mean = Eigen::VectorXd::Zero(p);
        for (const auto& s : sim.stats)
            mean += Eigen::Map<const Eigen::VectorXd>(s.data(), p);
        mean /= static_cast<double>(sim.stats.size());
        Eigen::MatrixXd cov = Eigen::MatrixXd::Zero(p, p);
        for (const auto& s : sim.stats) {
            const Eigen::VectorXd d = Eigen::Map<const Eigen::VectorXd>(s.data(), p) - mean;
            cov += d * d.transpose();
        }
        cov /= std::max<double>(1.0, static_cast<double>(sim.stats.size()) - 1.0);
        if (cov.trace() >= 1e-10) {
            cov.diagonal().array() += 1e-8 * cov.trace();
            Eigen::VectorXd gap(p);
            for (int m = 0; m < p; ++m) gap(m) = t_obs[m] - mean(m);
            Eigen::VectorXd dir = cov.ldlt().solve(gap);
            const double step_inf = dir.cwiseAbs().maxCoeff();
            if (dir.allFinite() && step_inf <= cfg.mcmle_step_cap) theta += dir;
        }
    }

    FitResult r;
    r.terms = std::move(terms);
    r.theta_hat.assign(theta.data(), theta.data() + p);
    r.flags.assign(p, DivFlag::finite);
    r.loglik = bridge_loglik(net, r.terms, theta, t_obs, cfg.bridge_draws,
                             split_seed(seed, 3000));
    r.aic = 2.0 * p - 2.0 * r.loglik;
    r.method = FitMethod::cd_mcmle;
    r.seed = seed;
    return r;
}

FitResult fit_exact(const Network& net, std::vector<TermSpec> terms) {
    terms = with_edges_first(std::move(terms));
    const int n = net.node_count();
    if (n > 7) throw TooLarge("exact fit enumerates 2^C(n,2) graphs; n must be <= 7");
    const int p = static_cast<int>(terms.size());
    const int dyads = static_cast<int>(net.dyad_count());
    const long long n_graphs = 1LL << dyads;

    std::vector<std::pair<int, int>> pairs;
    pairs.reserve(dyads);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) pairs.emplace_back(i, j);

    Eigen::MatrixXd S(n_graphs, p);
    for (long long mask = 0; mask < n_graphs; ++mask) {
        Network g(n);
        for (int b = 0; b < dyads; ++b)
            if ((mask >> b) & 1)
                g.apply_toggle(DyadToggle(pairs[b].first, pairs[b].second, ToggleDir::add));
        for (int m = 0; m < p; ++m) S(mask, m) = global_stat(g, terms[m]);
    }

    const std::vector<double> t_obs_v = global_stats(net, terms);
    const Eigen::VectorXd t_obs = Eigen::Map<const Eigen::VectorXd>(t_obs_v.data(), p);

    std::vector<DivFlag> flags(p, DivFlag::finite);
    bool boundary = false;
    for (int m = 0; m < p; ++m) {
        const double lo = S.col(m).minCoeff(), hi = S.col(m).maxCoeff();
        if (t_obs(m) <= lo) {
            flags[m] = DivFlag::neg_inf;
            boundary = true;
        } else if (t_obs(m) >= hi) {
            flags[m] = DivFlag::pos_inf;
            boundary = true;
        }
    }
    if (boundary) return flagged_result(std::move(terms), std::move(flags), FitMethod::exact, 0);

    Eigen::VectorXd theta = Eigen::VectorXd::Zero(p);
    auto log_lik = [&](const Eigen::VectorXd& th, Eigen::VectorXd* weights) {
        const Eigen::VectorXd h = S * th;
        const double hmax = h.maxCoeff();
        const Eigen::VectorXd e = (h.array() - hmax).exp();
        const double z = e.sum();
        if (weights) *weights = e / z;
        return th.dot(t_obs) - (hmax + std::log(z));
    };

    Eigen::VectorXd w(n_graphs);
    double ll = log_lik(theta, &w);
    for (int it = 0; it < 200; ++it) {
        const Eigen::VectorXd mean = S.transpose() * w;
        const Eigen::VectorXd grad = t_obs - mean;
        if (grad.norm() <= 1e-10) break;
        Eigen::MatrixXd cov = Eigen::MatrixXd::Zero(p, p);
        for (long long g = 0; g < n_graphs; ++g) {
            const Eigen::VectorXd d = S.row(g).transpose() - mean;
            cov += w(g) * d * d.transpose();
        }
        cov.diagonal().array() += 1e-12 * std::max(1.0, cov.trace());
        Eigen::VectorXd dstep = cov.ldlt().solve(grad);
        // backtracking on the exact log-likelihood
        double t = 1.0;
        for (int h = 0; h < 40; ++h) {
            const Eigen::VectorXd cand = theta + t * dstep;
            Eigen::VectorXd wc(n_graphs);
            const double llc = log_lik(cand, &wc);
            if (llc > ll - 1e-15) {
                theta = cand;
                ll = llc;
                w = wc;
                break;
            }
            t *= 0.5;
        }
        if (theta.cwiseAbs().maxCoeff() > kExactThetaLimit) {
            // MLE escapes to a face of the convex hull not caught by the
            // componentwise min/max screen
            for (int m = 0; m < p; ++m)
                if (std::abs(theta(m)) > kExactThetaLimit)
                    flags[m] = theta(m) > 0 ? DivFlag::pos_inf : DivFlag::neg_inf;
            return flagged_result(std::move(terms), std::move(flags), FitMethod::exact, 0);
        }
    }

    FitResult r;
    r.terms = std::move(terms);
    r.theta_hat.assign(theta.data(), theta.data() + p);
    r.flags = std::move(flags);
    r.loglik = ll;
    r.aic = 2.0 * p - 2.0 * ll;
    r.method = FitMethod::exact;
    return r;
}

double relative_aic_change(double aic0, double aic_i) {
    if (!(aic0 > 0.0) || !std::isfinite(aic0))
        throw NonPositiveNullAic("relative AIC change requires AIC_0 > 0");
    if (!std::isfinite(aic_i)) return kSentinelB;
    return (aic0 - aic_i) / aic0;
}

} // namespace ergm
