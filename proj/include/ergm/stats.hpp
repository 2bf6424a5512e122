#pragma once

#include <vector>

#include "ergm/network.hpp"
#include "ergm/terms.hpp"

namespace ergm {

// Motif counts in both conventions: unordered subgraph counts and the
// doubled "paper" convention used by the benchmark tables. The paper fields
// are exactly twice the unordered ones.
struct MotifCensus {
    long long edges = 0;
    long long two_stars_unordered = 0;   // sum_v C(d_v, 2)
    long long two_stars_paper = 0;       // sum_v d_v (d_v - 1)
    long long triangles_unordered = 0;   // 3-clique count
    long long triangles_paper = 0;
    long long isolates = 0;
};

// Binomial coefficient as double, from a cached Pascal table; exact below
// 2^53. Returns 0 for k < 0 or k > n.
double binom(int n, int k);

// Global sufficient statistic T_term(net).
double global_stat(const Network& net, const TermSpec& term);

// T_term(toggle(net, t)) - T_term(net), computed incrementally. Exact for
// integer-valued families; agrees with the recount difference to 1e-9 for
// the real-valued ones.
double change_stat(const Network& net, const TermSpec& term, const DyadToggle& t);

// Change-score evaluator for a fixed term list. degcrossprod change scores
// need the global numerator, so the evaluator carries it incrementally;
// callers must report every applied toggle through before_apply with the
// pre-toggle state. This is the sampler's inner-loop path.
class ChangeStatEvaluator {
public:
    ChangeStatEvaluator(const Network& net, std::vector<TermSpec> terms);

    const std::vector<TermSpec>& terms() const { return terms_; }
    void compute(const Network& net, const DyadToggle& t, std::vector<double>& out) const;
    void before_apply(const Network& net, const DyadToggle& t);

private:
    std::vector<TermSpec> terms_;
    bool track_dcp_ = false;
    double dcp_num_ = 0.0;
};

MotifCensus motif_census(const Network& net);

long long count_triangles(const Network& net);

// Number of dyads/edges/non-edges with exactly k shared partners, for
// k = 0..N-2; the three profiles partition C(N,2), |E| and C(N,2)-|E|.
enum class SpClass { dyad, edge, nonedge };
std::vector<long long> shared_partner_profile(const Network& net, SpClass cls);

enum class Motif { edge, two_star_path, triangle };

// Closed-form homomorphism counts: hom(edge)=2|E|, hom(path)=sum d_v^2,
// hom(triangle)=6*(3-clique count).
double homomorphism_count(Motif motif, const Network& net);

// t(H,G) = hom(H,G) / N^{|V(H)|}, the probability that a uniform vertex map
// is edge preserving.
double homomorphism_density(Motif motif, const Network& net);

} // namespace ergm
