#include "ergm/io.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

namespace ergm {

namespace {

std::vector<std::string> split_ws(const std::string& line) {
    std::vector<std::string> out;
    std::istringstream ss(line);
    std::string tok;
    while (ss >> tok) out.push_back(tok);
    return out;
}

bool parse_int(const std::string& s, long long& out) {
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc{} && ptr == s.data() + s.size();
}

bool parse_double(const std::string& s, double& out) {
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc{} && ptr == s.data() + s.size();
}

std::string strip_comment(const std::string& line) {
    auto pos = line.find('#');
    return pos == std::string::npos ? line : line.substr(0, pos);
}

std::ifstream open_or_throw(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open file", path, 0);
    return in;
}

} // namespace

Network read_edge_list_stream(std::istream& in, const std::string& name) {
    std::map<std::string, int> index_of;
    std::vector<std::string> labels;
    bool declared = false;
    long long declared_n = -1;

    auto intern = [&](const std::string& label, long line_no) {
        auto it = index_of.find(label);
        if (it != index_of.end()) return it->second;
        if (declared && declared_n >= 0 &&
            static_cast<long long>(labels.size()) >= declared_n)
            throw ParseError("label '" + label + "' exceeds the declared node count",
                             name, line_no);
        if (declared && declared_n < 0)
            throw ParseError("label '" + label + "' not in the declared label list",
                             name, line_no);
        const int idx = static_cast<int>(labels.size());
        labels.push_back(label);
        index_of.emplace(label, idx);
        return idx;
    };

    std::vector<std::pair<int, int>> edges;
    std::string line;
    long line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        line = strip_comment(line);
        auto toks = split_ws(line);
        if (toks.empty()) continue;
        if (toks[0] == "nodes:") {
            if (declared) throw ParseError("duplicate nodes: directive", name, line_no);
            if (!edges.empty() || !labels.empty())
                throw ParseError("nodes: directive must precede edges", name, line_no);
            declared = true;
            long long n;
            if (toks.size() == 2 && parse_int(toks[1], n)) {
                if (n <= 0) throw ParseError("node count must be positive", name, line_no);
                declared_n = n;
            } else {
                declared_n = -1;   // explicit label list
                for (std::size_t t = 1; t < toks.size(); ++t) {
                    if (index_of.count(toks[t]))
                        throw ParseError("duplicate label '" + toks[t] + "' in nodes: list",
                                         name, line_no);
                    index_of.emplace(toks[t], static_cast<int>(labels.size()));
                    labels.push_back(toks[t]);
                }
                if (labels.empty())
                    throw ParseError("empty nodes: label list", name, line_no);
            }
            continue;
        }
        if (toks.size() != 2)
            throw ParseError("expected two node labels, got " + std::to_string(toks.size()) +
                             " tokens", name, line_no);
        const int a = intern(toks[0], line_no);
        const int b = intern(toks[1], line_no);
        if (a == b) throw ParseError("self-loop at '" + toks[0] + "'", name, line_no);
        for (const auto& [x, y] : edges)
            if ((x == a && y == b) || (x == b && y == a))
                throw ParseError("duplicate edge '" + toks[0] + " " + toks[1] + "'",
                                 name, line_no);
        edges.emplace_back(a, b);
    }

    int n;
    if (declared && declared_n >= 0) {
        n = static_cast<int>(declared_n);
        while (static_cast<int>(labels.size()) < n)
            labels.push_back(std::to_string(labels.size()));
    } else {
        n = static_cast<int>(labels.size());
    }
    if (n == 0) throw ParseError("no nodes declared or referenced", name, line_no);

    Network net = Network::from_edge_list(n, edges);
    net.set_labels(std::move(labels));
    return net;
}

Network read_edge_list(const std::string& path) {
    std::ifstream in = open_or_throw(path);
    return read_edge_list_stream(in, path);
}

void write_edge_list_stream(const Network& net, std::ostream& out) {
    const auto* labels = net.labels();
    auto label = [&](int v) {
        return labels ? (*labels)[v] : std::to_string(v);
    };
    if (labels) {
        out << "nodes:";
        for (const auto& l : *labels) out << " " << l;
        out << "\n";
    } else {
        out << "nodes: " << net.node_count() << "\n";
    }
    for (int i = 0; i < net.node_count(); ++i)
        for (int j : net.neighbors(i))
            if (j > i) out << label(i) << " " << label(j) << "\n";
}

void write_edge_list(const Network& net, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot open file for writing", path, 0);
    write_edge_list_stream(net, out);
}

void read_attributes(const std::string& path, Network& net) {
    std::ifstream in = open_or_throw(path);
    std::string line;
    long line_no = 0;

    if (!std::getline(in, line)) throw ParseError("empty attribute file", path, 1);
    ++line_no;
    std::vector<std::string> header;
    {
        std::istringstream ss(line);
        std::string tok;
        while (std::getline(ss, tok, ',')) header.push_back(tok);
    }
    if (header.size() < 2)
        throw ParseError("attribute header needs a label column and at least one attribute",
                         path, 1);

    std::map<std::string, int> index_of;
    if (const auto* labels = net.labels()) {
        for (int v = 0; v < net.node_count(); ++v) index_of.emplace((*labels)[v], v);
    } else {
        for (int v = 0; v < net.node_count(); ++v) index_of.emplace(std::to_string(v), v);
    }

    const std::size_t n_cols = header.size() - 1;
    std::vector<std::vector<std::string>> raw(n_cols,
                                              std::vector<std::string>(net.node_count()));
    std::vector<bool> seen(net.node_count(), false);
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line[0] == '#') continue;
        std::vector<std::string> cells;
        std::istringstream ss(line);
        std::string tok;
        while (std::getline(ss, tok, ',')) cells.push_back(tok);
        if (cells.size() != header.size())
            throw ParseError("expected " + std::to_string(header.size()) + " cells, got " +
                             std::to_string(cells.size()), path, line_no);
        auto it = index_of.find(cells[0]);
        if (it == index_of.end())
            throw ParseError("unknown node label '" + cells[0] + "'", path, line_no);
        if (seen[it->second])
            throw ParseError("duplicate row for node '" + cells[0] + "'", path, line_no);
        seen[it->second] = true;
        for (std::size_t c = 0; c < n_cols; ++c) raw[c][it->second] = cells[c + 1];
    }
    for (int v = 0; v < net.node_count(); ++v)
        if (!seen[v])
            throw ParseError("no attribute row for node index " + std::to_string(v),
                             path, line_no);

    AttributeTable table;
    for (std::size_t c = 0; c < n_cols; ++c) {
        AttributeColumn col;
        col.values.resize(net.node_count());
        col.numeric = true;
        for (const auto& cell : raw[c]) {
            double d;
            if (!parse_double(cell, d)) {
                col.numeric = false;
                break;
            }
        }
        if (col.numeric) {
            for (int v = 0; v < net.node_count(); ++v) parse_double(raw[c][v], col.values[v]);
        } else {
            std::map<std::string, int> codes;
            for (int v = 0; v < net.node_count(); ++v) {
                auto [it, inserted] =
                    codes.emplace(raw[c][v], static_cast<int>(col.levels.size()));
                if (inserted) col.levels.push_back(raw[c][v]);
                col.values[v] = it->second;
            }
        }
        table.emplace(header[c + 1], std::move(col));
    }
    net.set_attributes(std::move(table));
}

ScreeningRule parse_rule(const std::string& line, const std::string& file, long line_no) {
    auto toks = split_ws(line);
    if (toks.size() != 4)
        throw ParseError("expected '<motif> <summary> <mode> <threshold>'", file, line_no);
    ScreeningRule rule;
    if (toks[0] == "edge") rule.motif = MotifKind::edge;
    else if (toks[0] == "two_star") rule.motif = MotifKind::two_star;
    else if (toks[0] == "triangle") rule.motif = MotifKind::triangle;
    else if (toks[0] == "isolates") rule.motif = MotifKind::isolates;
    else throw ParseError("unknown motif '" + toks[0] + "'", file, line_no);
    if (toks[1] == "mean") rule.summary = SummaryKind::mean;
    else if (toks[1] == "min") rule.summary = SummaryKind::min;
    else if (toks[1] == "max") rule.summary = SummaryKind::max;
    else throw ParseError("unknown summary '" + toks[1] + "'", file, line_no);
    if (toks[2] == "absolute") rule.mode = RuleMode::absolute;
    else if (toks[2] == "relative") rule.mode = RuleMode::relative;
    else throw ParseError("unknown mode '" + toks[2] + "'", file, line_no);
    double thr;
    if (!parse_double(toks[3], thr) || thr < 0.0)
        throw ParseError("threshold must be a non-negative number", file, line_no);
    rule.threshold = thr;
    return rule;
}

std::string format_rule(const ScreeningRule& rule) {
    std::string out;
    out += rule.motif == MotifKind::edge       ? "edge"
           : rule.motif == MotifKind::two_star ? "two_star"
           : rule.motif == MotifKind::triangle ? "triangle"
                                               : "isolates";
    out += rule.summary == SummaryKind::mean ? " mean" : rule.summary == SummaryKind::min ? " min" : " max";
    out += rule.mode == RuleMode::absolute ? " absolute " : " relative ";
    char buf[48];
    std::snprintf(buf, sizeof buf, "%g", rule.threshold);
    return out + buf;
}

std::vector<ScreeningRule> read_rules(const std::string& path) {
    std::ifstream in = open_or_throw(path);
    std::vector<ScreeningRule> rules;
    std::string line;
    long line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        line = strip_comment(line);
        if (split_ws(line).empty()) continue;
        rules.push_back(parse_rule(line, path, line_no));
    }
    return rules;
}

std::vector<std::pair<std::string, std::string>> read_key_values(const std::string& path) {
    std::ifstream in = open_or_throw(path);
    std::vector<std::pair<std::string, std::string>> out;
    std::string line;
    long line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        line = strip_comment(line);
        std::string trimmed;
        for (char ch : line)
            if (!isspace(static_cast<unsigned char>(ch)) || !trimmed.empty()) trimmed += ch;
        while (!trimmed.empty() && isspace(static_cast<unsigned char>(trimmed.back())))
            trimmed.pop_back();
        if (trimmed.empty()) continue;
        auto eq = trimmed.find('=');
        if (eq == std::string::npos)
            throw ParseError("expected key=value", path, line_no);
        std::string key = trimmed.substr(0, eq);
        std::string val = trimmed.substr(eq + 1);
        while (!key.empty() && isspace(static_cast<unsigned char>(key.back()))) key.pop_back();
        std::size_t start = 0;
        while (start < val.size() && isspace(static_cast<unsigned char>(val[start]))) ++start;
        out.emplace_back(key, val.substr(start));
    }
    return out;
}

} // namespace ergm
