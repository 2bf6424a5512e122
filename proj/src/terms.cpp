#include "ergm/terms.hpp"

#include <array>
#include <cmath>
#include <charconv>

namespace ergm {

namespace {

struct FamilyName {
    Family family;
    const char* name;
};

constexpr std::array<FamilyName, 16> kFamilyNames{{
    {Family::edges, "edges"},
    {Family::kstar, "kstar"},
    {Family::dsp, "dsp"},
    {Family::esp, "esp"},
    {Family::nsp, "nsp"},
    {Family::triangle, "triangle"},
    {Family::isolates, "isolates"},
    {Family::sociality, "sociality"},
    {Family::degcrossprod, "degcrossprod"},
    {Family::degree_popularity, "degreepopularity"},
    {Family::gwesp, "gwesp"},
    {Family::gwnsp, "gwnsp"},
    {Family::gwdsp, "gwdsp"},
    {Family::gwdegree, "gwdegree"},
    {Family::nodecov, "nodecov"},
    {Family::nodematch, "nodematch"},
}};

const char* family_name(Family f) {
    for (const auto& e : kFamilyNames)
        if (e.family == f) return e.name;
    return "?";
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return s;
}

} // namespace

bool family_takes_k(Family f) {
    return f == Family::kstar || f == Family::dsp || f == Family::esp || f == Family::nsp;
}

bool family_takes_decay(Family f) {
    return f == Family::gwesp || f == Family::gwnsp || f == Family::gwdsp ||
           f == Family::gwdegree;
}

bool family_takes_attr(Family f) {
    return f == Family::nodecov || f == Family::nodematch;
}

bool is_exogenous(Family f) { return family_takes_attr(f); }

void TermSpec::validate() const {
    if (family_takes_k(family)) {
        const int min_k = family == Family::kstar ? 2 : 0;
        if (k < min_k)
            throw MalformedTerm(std::string(family_name(family)) + " requires k >= " +
                                std::to_string(min_k) + ", got " + std::to_string(k));
    } else if (k != 0) {
        throw MalformedTerm(std::string(family_name(family)) + " takes no k input");
    }
    if (family_takes_decay(family)) {
        if (!(decay >= 0.0) || !std::isfinite(decay))
            throw MalformedTerm(std::string(family_name(family)) +
                                " requires a finite non-negative decay");
    } else if (decay != 0.0) {
        throw MalformedTerm(std::string(family_name(family)) + " takes no decay");
    }
    if (family_takes_attr(family)) {
        if (attr.empty())
            throw MalformedTerm(std::string(family_name(family)) + " requires attr=<name>");
    } else if (!attr.empty()) {
        throw MalformedTerm(std::string(family_name(family)) + " takes no attribute");
    }
}

TermSpec edges_term() { return TermSpec{Family::edges, 0, 0.0, {}}; }

TermSpec make_kstar(int k) {
    TermSpec t{Family::kstar, k, 0.0, {}};
    t.validate();
    return t;
}

TermSpec make_sp(Family f, int k) {
    TermSpec t{f, k, 0.0, {}};
    t.validate();
    return t;
}

TermSpec make_gw(Family f, double decay) {
    TermSpec t{f, 0, decay, {}};
    t.validate();
    return t;
}

TermSpec parse_term(std::string_view text) {
    std::string_view s = trim(text);
    if (s.empty()) throw MalformedTerm("empty term");

    TermSpec term;
    // split off ,key=value suffixes
    std::vector<std::string_view> parts;
    while (true) {
        auto comma = s.find(',');
        if (comma == std::string_view::npos) {
            parts.push_back(trim(s));
            break;
        }
        parts.push_back(trim(s.substr(0, comma)));
        s.remove_prefix(comma + 1);
    }

    std::string_view head = parts[0];
    bool has_k = false;
    int k = 0;
    if (auto open = head.find('('); open != std::string_view::npos) {
        if (head.back() != ')')
            throw MalformedTerm("unbalanced parentheses in '" + std::string(text) + "'");
        std::string_view knum = head.substr(open + 1, head.size() - open - 2);
        auto [ptr, ec] = std::from_chars(knum.data(), knum.data() + knum.size(), k);
        if (ec != std::errc{} || ptr != knum.data() + knum.size())
            throw MalformedTerm("bad k input in '" + std::string(text) + "'");
        has_k = true;
        head = head.substr(0, open);
    }

    bool found = false;
    for (const auto& e : kFamilyNames) {
        if (head == e.name) {
            term.family = e.family;
            found = true;
            break;
        }
    }
    if (!found) throw MalformedTerm("unknown term family '" + std::string(head) + "'");

    if (has_k) {
        if (!family_takes_k(term.family))
            throw MalformedTerm(std::string(family_name(term.family)) + " takes no k input");
        term.k = k;
    } else if (family_takes_k(term.family)) {
        throw MalformedTerm(std::string(family_name(term.family)) + " requires (k)");
    }

    if (family_takes_decay(term.family)) term.decay = kDefaultGwDecay;

    for (std::size_t p = 1; p < parts.size(); ++p) {
        std::string_view kv = parts[p];
        auto eq = kv.find('=');
        if (eq == std::string_view::npos)
            throw MalformedTerm("expected key=value, got '" + std::string(kv) + "'");
        std::string_view key = trim(kv.substr(0, eq));
        std::string_view val = trim(kv.substr(eq + 1));
        if (key == "decay") {
            double d;
            auto [ptr, ec] = std::from_chars(val.data(), val.data() + val.size(), d);
            if (ec != std::errc{} || ptr != val.data() + val.size())
                throw MalformedTerm("bad decay value '" + std::string(val) + "'");
            term.decay = d;
        } else if (key == "attr") {
            term.attr = std::string(val);
        } else {
            throw MalformedTerm("unknown term option '" + std::string(key) + "'");
        }
    }

    term.validate();
    return term;
}

std::string format_term(const TermSpec& term) {
    std::string out = family_name(term.family);
    if (family_takes_k(term.family)) out += "(" + std::to_string(term.k) + ")";
    if (family_takes_decay(term.family)) {
        char buf[48];
        std::snprintf(buf, sizeof buf, "%g", term.decay);
        out += ",decay=";
        out += buf;
    }
    if (family_takes_attr(term.family)) out += ",attr=" + term.attr;
    return out;
}

std::vector<TermSpec> parse_term_list(std::string_view text) {
    std::vector<TermSpec> terms;
    std::string_view s = text;
    while (true) {
        auto plus = s.find('+');
        std::string_view piece = plus == std::string_view::npos ? s : s.substr(0, plus);
        if (!trim(piece).empty()) terms.push_back(parse_term(piece));
        if (plus == std::string_view::npos) break;
        s.remove_prefix(plus + 1);
    }
    return terms;
}

std::string format_term_list(const std::vector<TermSpec>& terms) {
    std::string out;
    for (std::size_t i = 0; i < terms.size(); ++i) {
        if (i) out += "+";
        out += format_term(terms[i]);
    }
    return out;
}

} // namespace ergm
