#include "ergm/sampler.hpp"

#include <cmath>

namespace ergm {

namespace {

double logistic(double x) {
    if (x >= 0) return 1.0 / (1.0 + std::exp(-x));
    const double e = std::exp(x);
    return e / (1.0 + e);
}

Network initial_state(int n, const SamplerConfig& cfg, const Network* observed, Rng& rng) {
    switch (cfg.init) {
        case InitState::empty:
            return Network(n);
        case InitState::observed:
            if (!observed) throw ConfigError("init=observed requires an observed network");
            if (observed->node_count() != n)
                throw ConfigError("observed network size disagrees with n");
            return *observed;
        case InitState::bernoulli: {
            Network net(n);
            for (int i = 0; i < n; ++i)
                for (int j = i + 1; j < n; ++j)
                    if (rng.bernoulli(cfg.bernoulli_p))
                        net.apply_toggle(DyadToggle(i, j, ToggleDir::add));
            return net;
        }
    }
    throw ConfigError("bad init state");
}

} // namespace

double conditional_tie_probability(const ErgmModel& model, const Network& net, int i, int j) {
    double h = 0.0;
    if (net.has_edge(i, j)) {
        for (std::size_t t = 0; t < model.terms.size(); ++t)
            h -= model.theta[t] *
                 change_stat(net, model.terms[t], DyadToggle(i, j, ToggleDir::remove));
    } else {
        for (std::size_t t = 0; t < model.terms.size(); ++t)
            h += model.theta[t] *
                 change_stat(net, model.terms[t], DyadToggle(i, j, ToggleDir::add));
    }
    return logistic(h);
}

bool gibbs_update(const ErgmModel& model, Network& state, int i, int j, Rng& rng) {
    const double p = conditional_tie_probability(model, state, i, j);
    const bool want = rng.bernoulli(p);
    const bool have = state.has_edge(i, j);
    if (want == have) return false;
    state.apply_toggle(DyadToggle(i, j, want ? ToggleDir::add : ToggleDir::remove));
    return true;
}

DyadChain::DyadChain(ErgmModel model, Network init, std::uint64_t seed)
    : model_(std::move(model)),
      state_(std::move(init)),
      rng_(seed),
      dyads_per_sweep_(state_.dyad_count()),
      evaluator_(state_, model_.terms) {
    model_.validate();
    if (!model_.theta_finite()) throw NonFiniteTheta("sampler requires finite coefficients");
}

void DyadChain::step() {
    const int n = state_.node_count();
    int i = static_cast<int>(rng_.below(n));
    int j = static_cast<int>(rng_.below(n - 1));
    if (j >= i) ++j;   // uniform over ordered pairs -> uniform over dyads

    const bool have = state_.has_edge(i, j);
    const DyadToggle probe(i, j, have ? ToggleDir::remove : ToggleDir::add);
    evaluator_.compute(state_, probe, delta_buf_);
    double h = 0.0;
    for (std::size_t t = 0; t < model_.theta.size(); ++t)
        h += model_.theta[t] * delta_buf_[t];
    if (have) h = -h;   // h is the log-odds of the tie being present

    const bool want = rng_.bernoulli(logistic(h));
    if (want == have) return;
    evaluator_.before_apply(state_, probe);
    state_.apply_toggle(probe);
}

void DyadChain::sweep() {
    for (long long s = 0; s < dyads_per_sweep_; ++s) step();
}

SampleResult sample(const ErgmModel& model, int n, const SamplerConfig& cfg,
                    const Network* observed) {
    model.validate();
    cfg.validate();
    if (!model.theta_finite()) throw NonFiniteTheta("sample() requires finite coefficients");

    // distinct sub-streams for initialization and for the chain itself
    Rng init_rng(split_seed(cfg.seed, 0));
    DyadChain chain(model, initial_state(n, cfg, observed, init_rng),
                    split_seed(cfg.seed, 1));

    for (long long s = 0; s < cfg.burn_in; ++s) chain.sweep();

    SampleResult out;
    out.draws.reserve(cfg.draws);
    out.stats.reserve(cfg.draws);
    for (int d = 0; d < cfg.draws; ++d) {
        for (long long s = 0; s < cfg.interval; ++s) chain.sweep();
        out.draws.push_back(chain.state());
        out.stats.push_back(global_stats(chain.state(), model.terms));
    }
    return out;
}

} // namespace ergm
