#include <doctest.h>

#include <cmath>
#include <map>

#include "ergm/io.hpp"
#include "ergm/selection.hpp"
#include "test_util.hpp"

using namespace ergm;

namespace {

// deterministic fake fitter: AIC per (family,k) from a table, neg_inf flags
// where the table says so
struct FakeFitter {
    std::map<int, double> aic_by_k;        // for the bounded family
    int neg_inf_from = 1 << 30;            // k at and above which fits diverge
    std::vector<int> neg_inf_at;           // extra isolated divergences

    FitResult operator()(const Network&, const std::vector<TermSpec>& terms,
                         std::uint64_t seed) const {
        FitResult r;
        r.terms = terms;
        r.theta_hat.assign(terms.size(), 0.1);
        r.flags.assign(terms.size(), DivFlag::finite);
        r.seed = seed;
        const int k = terms.at(1).k;
        bool diverged = k >= neg_inf_from;
        for (int bad : neg_inf_at) diverged |= k == bad;
        if (diverged) {
            r.flags[1] = DivFlag::neg_inf;
            r.aic = std::numeric_limits<double>::infinity();
            return r;
        }
        auto it = aic_by_k.find(k);
        r.aic = it == aic_by_k.end() ? 100.0 : it->second;
        r.loglik = (2.0 * terms.size() - r.aic) / 2.0;
        return r;
    }
};

} // namespace

TEST_CASE("model space size") {
    CHECK(model_space_size(17) == 153);
    CHECK(model_space_size(18) == 171);
    CHECK(model_space_size(43) == 946);
    CHECK(model_space_size(44) == 990);
    CHECK(model_space_size(62) == 1953);
    CHECK(model_space_size(63) == 2016);
    CHECK(model_space_size(101) == 5151);
    CHECK(model_space_size(136) == 9316);
    CHECK(model_space_size(1) == 1);
    CHECK(model_space_size(0) == 0);
}

TEST_CASE("lower quantile uses ceil(q*M)-1") {
    std::vector<double> v;
    for (int i = 30; i >= 1; --i) v.push_back(i);   // 1..30 reversed
    CHECK(lower_quantile(v, 0.1) == 3.0);           // index ceil(3)-1 = 2
    v.resize(10);                                   // 30..21
    CHECK(lower_quantile(v, 0.1) == 21.0);          // index 0
    std::vector<double> w(90);
    for (int i = 0; i < 90; ++i) w[i] = i + 1;
    CHECK(lower_quantile(w, 0.1) == 9.0);           // index ceil(9)-1 = 8
}

TEST_CASE("category partition is exclusive and exhaustive") {
    const TermSpec t = parse_term("triangle");

    const TermVerdict d1 = categorize(t, {0.5, 0.2, 0.9, 0.1, 0.4, 0.3, 0.2, 0.6, 0.7, 0.8});
    CHECK(d1.category == Category::D1);
    CHECK(d1.kept);

    const TermVerdict d2 = categorize(t, {-0.5, -0.2, 0.9, 0.1, -0.4, 0.3, 0.2, 0.6, -0.7, 0.8});
    CHECK(d2.category == Category::D2);   // 10th percentile at the minimum
    CHECK_FALSE(d2.kept);

    std::vector<double> mixed(30, 0.2);
    mixed[7] = -5.0;                       // one bad refit out of thirty
    const TermVerdict d3 = categorize(t, mixed);
    CHECK(d3.category == Category::D3);
    CHECK(d3.kept);
    CHECK(d3.b_hat > 0.0);

    Rng rng(64);
    for (int rep = 0; rep < 300; ++rep) {
        std::vector<double> b(10 + rng.below(40));
        for (auto& x : b) x = rng.next_unit() * 2.0 - 1.0;
        const TermVerdict v = categorize(t, b);
        const int matches = (v.category == Category::D1) + (v.category == Category::D2) +
                            (v.category == Category::D3);
        CHECK(matches == 1);
        CHECK(v.kept == (v.b_hat > 0.0));
        const double mn = *std::min_element(v.b_samples.begin(), v.b_samples.end());
        if (v.category == Category::D1) CHECK(mn > 0.0);
        if (v.category == Category::D3) {
            CHECK(mn <= 0.0);
            CHECK(v.b_hat > 0.0);
        }
    }
}

TEST_CASE("raising every b sample never drops a kept term") {
    Rng rng(65);
    const TermSpec t = parse_term("triangle");
    for (int rep = 0; rep < 200; ++rep) {
        std::vector<double> b(10 + rng.below(30));
        for (auto& x : b) x = rng.next_unit() * 2.0 - 1.0;
        const TermVerdict before = categorize(t, b);
        std::vector<double> raised = before.b_samples;
        for (auto& x : raised) x += rng.next_unit();
        const TermVerdict after = categorize(t, raised);
        if (before.kept) CHECK(after.kept);
    }
}

TEST_CASE("bound_input stops at the first run of three divergences") {
    const Network net(10);
    FakeFitter fitter;

    SUBCASE("consecutive tail starting at 3") {
        fitter.neg_inf_from = 3;
        const Fitter f = fitter;
        CHECK(bound_input(net, Family::kstar, f) == 2);
        CHECK(bound_input(net, Family::dsp, f) == 2);
    }
    SUBCASE("isolated divergence does not stop the scan") {
        fitter.neg_inf_from = 6;
        fitter.neg_inf_at = {3};
        const Fitter f = fitter;
        CHECK(bound_input(net, Family::esp, f) == 5);
    }
    SUBCASE("immediate divergence gives a bound below the minimum input") {
        fitter.neg_inf_from = 0;
        const Fitter f = fitter;
        CHECK(bound_input(net, Family::kstar, f) == 1);   // no kstar terms survive
        CHECK(bound_input(net, Family::nsp, f) == 0);     // no nsp terms survive
    }
    SUBCASE("never diverging caps at N-1") {
        const Fitter f = fitter;
        CHECK(bound_input(net, Family::kstar, f) == 9);
    }
}

TEST_CASE("bound_input under the zero-statistic rule on an empty graph") {
    // observed dsp(k)=0 for k>=1, so every fit is flagged and nothing survives
    const Network net(5);
    CHECK(bound_input(net, Family::dsp, mple_fitter()) == 0);
}

TEST_CASE("florentine marriage bounds under the MPLE divergence rule") {
    const Network net = read_edge_list(testutil::data_path("florentine_marriage.edges"));
    const InputBounds b = bound_all_inputs(net, mple_fitter());
    // Table-2 centers (5,1,1,1) with the documented +/-2 allowance
    CHECK(std::abs(b.kstar - 5) <= 2);
    CHECK(std::abs(b.esp - 1) <= 2);
    CHECK(std::abs(b.nsp - 1) <= 2);
    CHECK(std::abs(b.dsp - 1) <= 2);
}

TEST_CASE("candidate set follows the constructive definition") {
    const Network net(16);
    InputBounds b{5, 1, 1, 1};
    const CandidateSet set = build_candidate_set(net, b);
    // kstar(2..5) + dsp(1) + esp(1) + nsp(1) + 9 fixed families
    CHECK(set.terms.size() == 16);
    for (std::size_t i = 0; i < set.terms.size(); ++i)
        for (std::size_t j = i + 1; j < set.terms.size(); ++j)
            CHECK_FALSE(set.terms[i] == set.terms[j]);

    const CandidateSet none = build_candidate_set(net, InputBounds{1, 0, 0, 0});
    CHECK(none.terms.size() == 9);   // the fixed families only
}

TEST_CASE("stochastic forward selection with a scripted fitter") {
    const Network net = read_edge_list(testutil::data_path("florentine_marriage.edges"));
    const double aic0 = 110.135;

    // improve AIC for kstar(2), hurt it for everything else
    const Fitter fitter = [&](const Network&, const std::vector<TermSpec>& terms,
                              std::uint64_t seed) {
        FitResult r;
        r.terms = terms;
        r.theta_hat.assign(terms.size(), 0.0);
        r.flags.assign(terms.size(), DivFlag::finite);
        r.seed = seed;
        const TermSpec& t = terms.at(1);
        const double jitter = static_cast<double>(seed % 97) / 97.0 - 0.5;
        if (t.family == Family::kstar && t.k == 2)
            r.aic = aic0 - 12.0 + jitter;
        else if (t.family == Family::triangle)
            r.aic = std::numeric_limits<double>::infinity();   // always degenerate
        else
            r.aic = aic0 + 5.0 + jitter;
        r.loglik = 0.0;
        return r;
    };

    const CandidateSet cands = build_candidate_set(net, InputBounds{3, 1, 1, 1});
    const auto verdicts = stochastic_forward_select(net, cands, 30, fitter, 11, 2);
    REQUIRE(verdicts.size() == cands.terms.size());

    int kept = 0;
    for (const auto& v : verdicts) {
        CHECK(v.b_samples.size() == 30);
        if (v.term.family == Family::kstar && v.term.k == 2) {
            CHECK(v.kept);
            CHECK(v.category == Category::D1);
        } else if (v.term.family == Family::triangle) {
            CHECK_FALSE(v.kept);
            for (double b : v.b_samples) CHECK(b == kSentinelB);
        } else {
            CHECK_FALSE(v.kept);
        }
        kept += v.kept;
    }
    CHECK(kept == 1);
    CHECK(surviving_terms(verdicts).size() == 1);
    CHECK(model_space_size(kept) == 1);

    // determinism: identical master seed reproduces every sample bit for bit
    const auto again = stochastic_forward_select(net, cands, 30, fitter, 11, 1);
    for (std::size_t t = 0; t < verdicts.size(); ++t) {
        CHECK(verdicts[t].b_samples == again[t].b_samples);
        CHECK(verdicts[t].b_hat == again[t].b_hat);
    }

    CHECK_THROWS_AS(stochastic_forward_select(net, cands, 5, fitter, 1, 1), ConfigError);
}

TEST_CASE("fitter exceptions count as sentinel evidence") {
    const Network net = read_edge_list(testutil::data_path("florentine_marriage.edges"));
    const Fitter fitter = [](const Network&, const std::vector<TermSpec>&,
                             std::uint64_t) -> FitResult {
        throw NonFiniteTheta("scripted failure");
    };
    CandidateSet cands;
    cands.terms = {parse_term("triangle")};
    const auto verdicts = stochastic_forward_select(net, cands, 10, fitter, 3, 1);
    REQUIRE(verdicts.size() == 1);
    for (double b : verdicts[0].b_samples) CHECK(b == kSentinelB);
    CHECK(verdicts[0].category == Category::D2);
}
