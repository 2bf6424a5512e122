#include "ergm/model.hpp"

#include <algorithm>
#include <cmath>

namespace ergm {

void ErgmModel::validate() const {
    if (terms.empty() || terms[0].family != Family::edges)
        throw MalformedTerm("model must start with the edge term");
    if (terms.size() != theta.size())
        throw MalformedTerm("model has " + std::to_string(terms.size()) + " terms but " +
                            std::to_string(theta.size()) + " coefficients");
    for (const auto& t : terms) t.validate();
    for (std::size_t a = 0; a < terms.size(); ++a)
        for (std::size_t b = a + 1; b < terms.size(); ++b)
            if (terms[a] == terms[b])
                throw MalformedTerm("duplicate term " + format_term(terms[a]));
}

bool ErgmModel::theta_finite() const {
    return std::all_of(theta.begin(), theta.end(),
                       [](double v) { return std::isfinite(v); });
}

std::vector<TermSpec> with_edges_first(std::vector<TermSpec> terms) {
    if (terms.empty() || terms[0].family != Family::edges) {
        auto it = std::find_if(terms.begin(), terms.end(),
                               [](const TermSpec& t) { return t.family == Family::edges; });
        if (it != terms.end()) terms.erase(it);
        terms.insert(terms.begin(), edges_term());
    }
    for (std::size_t a = 0; a < terms.size(); ++a)
        for (std::size_t b = a + 1; b < terms.size(); ++b)
            if (terms[a] == terms[b])
                throw MalformedTerm("duplicate term " + format_term(terms[a]));
    return terms;
}

double hamiltonian(const ErgmModel& model, const Network& net) {
    model.validate();
    double h = 0.0;
    for (std::size_t t = 0; t < model.terms.size(); ++t)
        h += model.theta[t] * global_stat(net, model.terms[t]);
    return h;
}

std::vector<double> global_stats(const Network& net, const std::vector<TermSpec>& terms) {
    std::vector<double> out(terms.size());
    for (std::size_t t = 0; t < terms.size(); ++t) out[t] = global_stat(net, terms[t]);
    return out;
}

std::vector<double> change_stats(const Network& net, const std::vector<TermSpec>& terms,
                                 const DyadToggle& t) {
    std::vector<double> out(terms.size());
    for (std::size_t m = 0; m < terms.size(); ++m) out[m] = change_stat(net, terms[m], t);
    return out;
}

} // namespace ergm
