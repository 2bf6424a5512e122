#include "ergm/stats.hpp"

#include <cmath>

namespace ergm {

namespace {

constexpr int kBinomMax = 1024;

// Full Pascal triangle, built once; change scores and recounts share this
// table, so their values cancel exactly wherever the entries are exact.
const std::vector<std::vector<double>>& binom_table() {
    static const std::vector<std::vector<double>> rows = [] {
        std::vector<std::vector<double>> t;
        t.reserve(kBinomMax + 1);
        t.push_back({1.0});
        for (int n = 1; n <= kBinomMax; ++n) {
            std::vector<double> row(n + 1, 1.0);
            for (int j = 1; j < n; ++j) row[j] = t[n - 1][j - 1] + t[n - 1][j];
            t.push_back(std::move(row));
        }
        return t;
    }();
    return rows;
}

// gw weight w_tau(c) = e^tau * (1 - (1 - e^-tau)^c); w(0) = 0. The increment
// w(c+1) - w(c) collapses to (1 - e^-tau)^c.
double gw_weight(double decay, int c) {
    if (c <= 0) return 0.0;
    const double q = 1.0 - std::exp(-decay);
    return std::exp(decay) * (1.0 - std::pow(q, c));
}

double gw_increment(double decay, int c) {
    return std::pow(1.0 - std::exp(-decay), c);
}

double deg_pop_term(int d) { return std::pow(static_cast<double>(d), 1.5); }

const AttributeColumn& require_attr(const Network& net, const TermSpec& term) {
    const AttributeColumn* col = net.attribute(term.attr);
    if (!col) throw MalformedTerm("network has no attribute '" + term.attr + "'");
    if (term.family == Family::nodecov && !col->numeric)
        throw MalformedTerm("nodecov requires a numeric attribute, '" + term.attr +
                            "' is categorical");
    return *col;
}

double degcrossprod_value(double numerator, long long edges) {
    return edges > 0 ? numerator / static_cast<double>(edges) : 0.0;
}

// sum over edges of d_i * d_j
double degcrossprod_numerator(const Network& net) {
    double num = 0.0;
    for (int i = 0; i < net.node_count(); ++i)
        for (int j : net.neighbors(i))
            if (j > i) num += static_cast<double>(net.degree(i)) * net.degree(j);
    return num;
}

double neighbor_degree_sum(const Network& net, int v) {
    double s = 0.0;
    for (int u : net.neighbors(v)) s += net.degree(u);
    return s;
}

// change in the degcrossprod numerator caused by the toggle, evaluated on
// the pre-toggle state
double degcrossprod_numerator_delta(const Network& net, const DyadToggle& t) {
    const int di = net.degree(t.i), dj = net.degree(t.j);
    if (t.direction == ToggleDir::add)
        return static_cast<double>(di + 1) * (dj + 1) + neighbor_degree_sum(net, t.i) +
               neighbor_degree_sum(net, t.j);
    return -(static_cast<double>(di) * dj + (neighbor_degree_sum(net, t.i) - dj) +
             (neighbor_degree_sum(net, t.j) - di));
}

} // namespace

double binom(int n, int k) {
    if (k < 0 || n < 0 || k > n) return 0.0;
    if (n > kBinomMax) {
        // beyond the cached range fall back to lgamma; only reachable for
        // graphs far larger than this artifact targets
        return std::exp(std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0));
    }
    return binom_table()[n][k];
}

long long count_triangles(const Network& net) {
    long long sum = 0;
    for (int i = 0; i < net.node_count(); ++i)
        for (int j : net.neighbors(i))
            if (j > i) sum += net.common_neighbors(i, j);
    return sum / 3;   // each triangle counted once per edge
}

std::vector<long long> shared_partner_profile(const Network& net, SpClass cls) {
    const int n = net.node_count();
    std::vector<long long> counts(n >= 2 ? n - 1 : 1, 0);
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            const bool edge = net.has_edge(i, j);
            if (cls == SpClass::edge && !edge) continue;
            if (cls == SpClass::nonedge && edge) continue;
            ++counts[net.common_neighbors(i, j)];
        }
    }
    return counts;
}

double global_stat(const Network& net, const TermSpec& term) {
    term.validate();
    const int n = net.node_count();
    switch (term.family) {
        case Family::edges:
            return static_cast<double>(net.edge_count());
        case Family::kstar: {
            double s = 0.0;
            for (int v = 0; v < n; ++v) s += binom(net.degree(v), term.k);
            return s;
        }
        case Family::triangle:
            return static_cast<double>(count_triangles(net));
        case Family::dsp:
        case Family::esp:
        case Family::nsp: {
            const SpClass cls = term.family == Family::dsp   ? SpClass::dyad
                                : term.family == Family::esp ? SpClass::edge
                                                             : SpClass::nonedge;
            long long c = 0;
            for (int i = 0; i < n; ++i) {
                for (int j = i + 1; j < n; ++j) {
                    const bool edge = net.has_edge(i, j);
                    if (cls == SpClass::edge && !edge) continue;
                    if (cls == SpClass::nonedge && edge) continue;
                    if (net.common_neighbors(i, j) == term.k) ++c;
                }
            }
            return static_cast<double>(c);
        }
        case Family::isolates: {
            long long c = 0;
            for (int v = 0; v < n; ++v)
                if (net.degree(v) == 0) ++c;
            return static_cast<double>(c);
        }
        case Family::sociality: {
            // degree sum over the non-anchored nodes 1..N-1
            long long s = 0;
            for (int v = 1; v < n; ++v) s += net.degree(v);
            return static_cast<double>(s);
        }
        case Family::degcrossprod:
            return degcrossprod_value(degcrossprod_numerator(net), net.edge_count());
        case Family::degree_popularity: {
            double s = 0.0;
            for (int v = 0; v < n; ++v) s += deg_pop_term(net.degree(v));
            return s;
        }
        case Family::gwesp:
        case Family::gwnsp:
        case Family::gwdsp: {
            const SpClass cls = term.family == Family::gwdsp  ? SpClass::dyad
                                : term.family == Family::gwesp ? SpClass::edge
                                                               : SpClass::nonedge;
            double s = 0.0;
            for (int i = 0; i < n; ++i) {
                for (int j = i + 1; j < n; ++j) {
                    const bool edge = net.has_edge(i, j);
                    if (cls == SpClass::edge && !edge) continue;
                    if (cls == SpClass::nonedge && edge) continue;
                    s += gw_weight(term.decay, net.common_neighbors(i, j));
                }
            }
            return s;
        }
        case Family::gwdegree: {
            double s = 0.0;
            for (int v = 0; v < n; ++v) s += gw_weight(term.decay, net.degree(v));
            return s;
        }
        case Family::nodecov: {
            const auto& col = require_attr(net, term);
            double s = 0.0;
            for (int i = 0; i < n; ++i)
                for (int j : net.neighbors(i))
                    if (j > i) s += col.values[i] + col.values[j];
            return s;
        }
        case Family::nodematch: {
            const auto& col = require_attr(net, term);
            long long s = 0;
            for (int i = 0; i < n; ++i)
                for (int j : net.neighbors(i))
                    if (j > i && col.values[i] == col.values[j]) ++s;
            return static_cast<double>(s);
        }
    }
    throw MalformedTerm("unhandled term family");
}

namespace {

// dcp_num, when given, is the cached degcrossprod numerator for `net`
double change_stat_impl(const Network& net, const TermSpec& term, const DyadToggle& t,
                        const double* dcp_num) {
    const bool present = net.has_edge(t.i, t.j);
    if (t.direction == ToggleDir::add && present)
        throw ToggleConflict("add on present dyad");
    if (t.direction == ToggleDir::remove && !present)
        throw ToggleConflict("remove on absent dyad");

    const bool adding = t.direction == ToggleDir::add;
    const int i = t.i, j = t.j;
    const int di = net.degree(i), dj = net.degree(j);

    switch (term.family) {
        case Family::edges:
            return adding ? 1.0 : -1.0;
        case Family::kstar:
            // Pascal: C(d+1,k) - C(d,k) = C(d,k-1)
            return adding ? binom(di, term.k - 1) + binom(dj, term.k - 1)
                          : -(binom(di - 1, term.k - 1) + binom(dj - 1, term.k - 1));
        case Family::triangle: {
            const double cn = static_cast<double>(net.common_neighbors(i, j));
            return adding ? cn : -cn;
        }
        case Family::isolates: {
            if (adding) return -static_cast<double>((di == 0) + (dj == 0));
            return static_cast<double>((di == 1) + (dj == 1));
        }
        case Family::sociality: {
            const double endpoints = static_cast<double>((i != 0) + (j != 0));
            return adding ? endpoints : -endpoints;
        }
        case Family::degree_popularity: {
            const int s = adding ? 1 : -1;
            return deg_pop_term(di + s) - deg_pop_term(di) +
                   deg_pop_term(dj + s) - deg_pop_term(dj);
        }
        case Family::degcrossprod: {
            const double num = dcp_num ? *dcp_num : degcrossprod_numerator(net);
            const long long e = net.edge_count();
            const double new_num = num + degcrossprod_numerator_delta(net, t);
            const long long new_e = adding ? e + 1 : e - 1;
            return degcrossprod_value(new_num, new_e) - degcrossprod_value(num, e);
        }
        case Family::dsp:
        case Family::esp:
        case Family::nsp: {
            const int k = term.k;
            const int dir = adding ? 1 : -1;
            long long delta = 0;
            auto affected = [&](int a, int b) {
                // pair (a,b) gains/loses one shared partner
                const bool edge = net.has_edge(a, b);
                if (term.family == Family::esp && !edge) return;
                if (term.family == Family::nsp && edge) return;
                const int c = net.common_neighbors(a, b);
                delta += (c + dir == k) - (c == k);
            };
            for (int w : net.neighbors(j))
                if (w != i) affected(i, w);
            for (int w : net.neighbors(i))
                if (w != j) affected(j, w);
            // the toggled dyad itself changes class; its sp count does not move
            const int cn_ij = net.common_neighbors(i, j);
            if (term.family == Family::esp) delta += adding ? (cn_ij == k) : -(cn_ij == k);
            if (term.family == Family::nsp) delta += adding ? -(cn_ij == k) : (cn_ij == k);
            return static_cast<double>(delta);
        }
        case Family::gwesp:
        case Family::gwnsp:
        case Family::gwdsp: {
            const double decay = term.decay;
            double delta = 0.0;
            auto affected = [&](int a, int b) {
                const bool edge = net.has_edge(a, b);
                if (term.family == Family::gwesp && !edge) return;
                if (term.family == Family::gwnsp && edge) return;
                const int c = net.common_neighbors(a, b);
                // c -> c+1 adds q^c; c -> c-1 removes q^(c-1)
                delta += adding ? gw_increment(decay, c) : -gw_increment(decay, c - 1);
            };
            for (int w : net.neighbors(j))
                if (w != i) affected(i, w);
            for (int w : net.neighbors(i))
                if (w != j) affected(j, w);
            const double w_ij = gw_weight(decay, net.common_neighbors(i, j));
            if (term.family == Family::gwesp) delta += adding ? w_ij : -w_ij;
            if (term.family == Family::gwnsp) delta += adding ? -w_ij : w_ij;
            return delta;
        }
        case Family::gwdegree: {
            const int s = adding ? 1 : -1;
            return gw_weight(term.decay, di + s) - gw_weight(term.decay, di) +
                   gw_weight(term.decay, dj + s) - gw_weight(term.decay, dj);
        }
        case Family::nodecov: {
            const auto& col = require_attr(net, term);
            const double v = col.values[i] + col.values[j];
            return adding ? v : -v;
        }
        case Family::nodematch: {
            const auto& col = require_attr(net, term);
            const double v = col.values[i] == col.values[j] ? 1.0 : 0.0;
            return adding ? v : -v;
        }
    }
    throw MalformedTerm("unhandled term family");
}

} // namespace

double change_stat(const Network& net, const TermSpec& term, const DyadToggle& t) {
    term.validate();
    return change_stat_impl(net, term, t, nullptr);
}

ChangeStatEvaluator::ChangeStatEvaluator(const Network& net, std::vector<TermSpec> terms)
    : terms_(std::move(terms)) {
    for (const auto& term : terms_) {
        term.validate();
        if (term.family == Family::degcrossprod) track_dcp_ = true;
    }
    if (track_dcp_) dcp_num_ = degcrossprod_numerator(net);
}

void ChangeStatEvaluator::compute(const Network& net, const DyadToggle& t,
                                  std::vector<double>& out) const {
    out.resize(terms_.size());
    for (std::size_t m = 0; m < terms_.size(); ++m)
        out[m] = change_stat_impl(net, terms_[m], t,
                                  terms_[m].family == Family::degcrossprod && track_dcp_
                                      ? &dcp_num_
                                      : nullptr);
}

void ChangeStatEvaluator::before_apply(const Network& net, const DyadToggle& t) {
    if (track_dcp_) dcp_num_ += degcrossprod_numerator_delta(net, t);
}

MotifCensus motif_census(const Network& net) {
    MotifCensus c;
    c.edges = net.edge_count();
    for (int v = 0; v < net.node_count(); ++v) {
        const long long d = net.degree(v);
        c.two_stars_unordered += d * (d - 1) / 2;
        c.two_stars_paper += d * (d - 1);
        if (d == 0) ++c.isolates;
    }
    c.triangles_unordered = count_triangles(net);
    c.triangles_paper = 2 * c.triangles_unordered;
    return c;
}

double homomorphism_count(Motif motif, const Network& net) {
    switch (motif) {
        case Motif::edge:
            return 2.0 * net.edge_count();
        case Motif::two_star_path: {
            double s = 0.0;
            for (int v = 0; v < net.node_count(); ++v) {
                const double d = net.degree(v);
                s += d * d;
            }
            return s;
        }
        case Motif::triangle:
            return 6.0 * static_cast<double>(count_triangles(net));
    }
    return 0.0;
}

double homomorphism_density(Motif motif, const Network& net) {
    const double n = net.node_count();
    const double denom = motif == Motif::edge ? n * n : n * n * n;
    return homomorphism_count(motif, net) / denom;
}

} // namespace ergm
