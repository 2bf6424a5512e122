#pragma once

#include <cstdint>
#include <vector>

#include "ergm/model.hpp"
#include "ergm/network.hpp"
#include "ergm/rng.hpp"

namespace ergm {

enum class InitState { empty, observed, bernoulli };

struct SamplerConfig {
    long long burn_in = 20;    // sweeps before the first retained draw
    long long interval = 2;    // sweeps between retained draws
    int draws = 100;
    std::uint64_t seed = 0;
    InitState init = InitState::empty;
    double bernoulli_p = 0.5;

    void validate() const {
        if (burn_in < 0) throw ConfigError("burn_in must be >= 0");
        if (interval < 1) throw ConfigError("interval must be >= 1");
        if (draws < 1) throw ConfigError("draws must be >= 1");
    }
};

struct SampleResult {
    std::vector<Network> draws;
    std::vector<std::vector<double>> stats;   // per draw, one value per term
};

// p(tie present | rest of the network) = logistic(sum_i theta_i * delta_i),
// with delta the change scores for adding the dyad.
double conditional_tie_probability(const ErgmModel& model, const Network& net, int i, int j);

// One Gibbs update of the dyad (i,j): resample its state from the
// conditional distribution. Returns true when the dyad flipped.
bool gibbs_update(const ErgmModel& model, Network& state, int i, int j, Rng& rng);

// Random-scan dyad-update chain. One sweep = C(N,2) uniformly random dyad
// visits. The state is a private mutable copy; callers receive snapshots.
class DyadChain {
public:
    DyadChain(ErgmModel model, Network init, std::uint64_t seed);

    void step();    // one dyad visit
    void sweep();

    const Network& state() const { return state_; }
    Rng& rng() { return rng_; }

private:
    ErgmModel model_;
    Network state_;
    Rng rng_;
    long long dyads_per_sweep_;
    ChangeStatEvaluator evaluator_;
    std::vector<double> delta_buf_;
};

// Draw `cfg.draws` networks from the model on n nodes, recording the
// sufficient statistics of each retained draw. `observed` is required when
// cfg.init == InitState::observed. Throws NonFiniteTheta on any non-finite
// coefficient.
SampleResult sample(const ErgmModel& model, int n, const SamplerConfig& cfg,
                    const Network* observed = nullptr);

} // namespace ergm
