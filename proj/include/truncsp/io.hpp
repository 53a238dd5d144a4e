#pragma once

// Round-trip-exact decimal formatting and the CSV/JSON emitters.

#include <json.hpp>
#include <ostream>
#include <string>
#include <vector>

#include "truncsp/histogram.hpp"
#include "truncsp/sampler.hpp"

namespace truncsp {

// shortest decimal representation that parses back to the same double
std::string format_double(double v);
double parse_double(const std::string& s);

// header `sample,re,im`, one row per upper-half-plane representative
void write_eigenvalue_csv(std::ostream& os, const std::vector<SpectrumSample>& samples);

nlohmann::json report_to_json(const ComparisonReport& rep);
void write_report_csv(std::ostream& os, const ComparisonReport& rep);

}  // namespace truncsp
