#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "deepleaf/critical.hpp"
#include "deepleaf/sampler.hpp"
#include "deepleaf/series.hpp"

namespace deepleaf {

using json = nlohmann::json;

// One named check with its documented tolerance.
struct CheckResult {
  std::string name;
  double value = 0;
  double threshold = 0;
  bool pass = false;
  std::string detail;
};

// CSV files start with two comment lines: a schema version tag and the full
// resolved config as JSON. JSON files carry the same fields structurally.
// Exact integers serialize as decimal strings in both formats.

std::string count_table_csv(const CountTable& t, const json& config);
json count_table_json(const CountTable& t, const json& config);

std::string distribution_csv(const DistributionTable& t, const json& config);
json distribution_json(const DistributionTable& t, const json& config);

std::string sample_report_csv(const SampleReport& r, const json& config);
json sample_report_json(const SampleReport& r, const json& config);

json verify_report_json(const std::vector<CheckResult>& checks,
                        const json& config);

}  // namespace deepleaf
