#pragma once

#include <vector>

#include "ergm/network.hpp"
#include "ergm/stats.hpp"
#include "ergm/terms.hpp"

namespace ergm {

// Linear exponential-family model: first term is always the edge term; one
// coefficient per term; the term list is duplicate-free.
struct ErgmModel {
    std::vector<TermSpec> terms;
    std::vector<double> theta;

    void validate() const;
    std::size_t size() const { return terms.size(); }
    bool theta_finite() const;
};

// Ensures the list starts with the edge term (prepends one if missing) and
// is duplicate-free.
std::vector<TermSpec> with_edges_first(std::vector<TermSpec> terms);

double hamiltonian(const ErgmModel& model, const Network& net);

std::vector<double> global_stats(const Network& net, const std::vector<TermSpec>& terms);

// Per-term change scores for one toggle.
std::vector<double> change_stats(const Network& net, const std::vector<TermSpec>& terms,
                                 const DyadToggle& t);

} // namespace ergm
