#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "ergm/errors.hpp"

namespace ergm {

// Endogenous statistic families plus the two exogenous forms (nodal
// covariate main effect and homophily). Exogenous terms are fit-time only;
// they never enter the candidate set.
enum class Family {
    edges,
    kstar,              // k >= 2
    dsp,                // dyads with exactly k shared partners, k >= 0
    esp,                // edges with exactly k shared partners
    nsp,                // non-edges with exactly k shared partners
    triangle,
    isolates,
    sociality,          // sum of degrees over nodes 1..N-1 (node 0 anchored)
    degcrossprod,
    degree_popularity,
    gwesp,
    gwnsp,
    gwdsp,
    gwdegree,
    nodecov,            // exogenous: sum of x_i + x_j over edges
    nodematch,          // exogenous: edges whose endpoints share the attribute
};

constexpr double kDefaultGwDecay = 0.5;

struct TermSpec {
    Family family = Family::edges;
    int k = 0;               // meaningful for kstar/dsp/esp/nsp only
    double decay = 0.0;      // meaningful for gw* only
    std::string attr;        // meaningful for nodecov/nodematch only

    bool operator==(const TermSpec&) const = default;

    // Throws MalformedTerm when the field pattern does not match the family.
    void validate() const;
};

bool family_takes_k(Family f);
bool family_takes_decay(Family f);
bool family_takes_attr(Family f);
bool is_exogenous(Family f);

TermSpec edges_term();
TermSpec make_kstar(int k);
TermSpec make_sp(Family f, int k);   // dsp/esp/nsp
TermSpec make_gw(Family f, double decay = kDefaultGwDecay);

// Grammar: family[(k)][,decay=tau][,attr=name], e.g. "kstar(2)",
// "gwesp,decay=0.5", "nodematch,attr=FACTION".
TermSpec parse_term(std::string_view text);
std::string format_term(const TermSpec& term);

// '+'-separated term list; surrounding whitespace is ignored.
std::vector<TermSpec> parse_term_list(std::string_view text);
std::string format_term_list(const std::vector<TermSpec>& terms);

} // namespace ergm
