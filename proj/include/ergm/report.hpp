#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "ergm/estimation.hpp"
#include "ergm/network.hpp"
#include "ergm/screening.hpp"
#include "ergm/selection.hpp"

namespace ergm {

using json = nlohmann::json;

// JSON report builders. Serialization is canonical (sorted keys, fixed
// indent) so identical runs produce identical bytes.

json network_summary(const Network& net);
json motifs_report(const Network& net);
json bounds_report(const Network& net, const InputBounds& bounds);
json candidates_report(const CandidateSet& cands);
json selection_report(const Network& net, double aic0, const std::vector<TermVerdict>& verdicts,
                      int refits, std::uint64_t seed);
json screening_report_json(const ScreeningReport& report, std::uint64_t seed);
json fit_report(const FitResult& fit);

// Inverse of fit_report's model block: {"terms": [...], "theta": [...]}.
ErgmModel model_from_json(const json& j);

std::string dump_report(const json& j);
void write_report(const json& j, const std::string& path);
json load_json(const std::string& path);

// aligned human-readable tables
std::string motifs_table(const json& motifs);
std::string bounds_table(const json& bounds);
std::string selection_table(const json& selection);
std::string screening_table(const json& screening);

const char* category_name(Category c);
const char* flag_name(DivFlag f);
const char* method_name(FitMethod m);

} // namespace ergm
