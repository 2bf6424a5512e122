#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "ergm/network.hpp"
#include "ergm/screening.hpp"

namespace ergm {

// Edge-list text format: one edge per line as two whitespace-separated node
// labels; '#' starts a comment line; an optional directive line
//   nodes: <N>            declares the node count (isolates representable)
//   nodes: <l1> <l2> ...  declares every label, fixing the index order
// Labels are interned to dense indices in first-appearance order (directive
// labels first); the mapping is carried on the Network and emitted in
// reports.
Network read_edge_list(const std::string& path);
Network read_edge_list_stream(std::istream& in, const std::string& name);

void write_edge_list(const Network& net, const std::string& path);
void write_edge_list_stream(const Network& net, std::ostream& out);

// CSV with a header row; first column is the node label, remaining columns
// are attribute names. A column is numeric when every value parses as a
// double, categorical otherwise (levels coded in first-appearance order).
// The attributes are attached to the network in place.
void read_attributes(const std::string& path, Network& net);

// One rule per line: "<motif> <summary> <mode> <threshold>", e.g.
// "isolates min absolute 1"; '#' comments.
std::vector<ScreeningRule> read_rules(const std::string& path);

ScreeningRule parse_rule(const std::string& line, const std::string& file, long line_no);
std::string format_rule(const ScreeningRule& rule);

// Plain-text key=value configuration; '#' comments; unknown keys rejected.
std::vector<std::pair<std::string, std::string>> read_key_values(const std::string& path);

} // namespace ergm
