#include "deepleaf/report_io.hpp"

#include <sstream>

namespace deepleaf {

namespace {

std::string csv_header(const char* schema, const json& config) {
  std::ostringstream os;
  os << "# " << schema << "\n";
  os << "# config: " << config.dump() << "\n";
  return os.str();
}

}  // namespace

std::string count_table_csv(const CountTable& t, const json& config) {
  std::ostringstream os;
  os << csv_header("deepleaf-counts v1", config);
  os << "n,m,count\n";
  for (const auto& [key, c] : t.counts)
    os << key.first << "," << key.second << "," << c.str() << "\n";
  return os.str();
}

json count_table_json(const CountTable& t, const json& config) {
  json rows = json::array();
  for (const auto& [key, c] : t.counts)
    rows.push_back({{"n", key.first}, {"m", key.second}, {"count", c.str()}});
  return {{"schema", "deepleaf-counts v1"},
          {"config", config},
          {"n_max", t.n_max},
          {"m_max", t.m_max},
          {"rows", rows}};
}

std::string distribution_csv(const DistributionTable& t, const json& config) {
  std::ostringstream os;
  os << csv_header("deepleaf-distribution v1", config);
  os << "two_m,m,K,kappa\n";
  os.precision(9);
  for (unsigned m = 1; m <= t.M; ++m)
    os << 2 * m << "," << m << "," << t.K[m - 1] << "," << t.kappa[m - 1]
       << "\n";
  return os.str();
}

json distribution_json(const DistributionTable& t, const json& config) {
  json rows = json::array();
  for (unsigned m = 1; m <= t.M; ++m)
    rows.push_back({{"m", m},
                    {"K_raw", t.K_raw[m - 1]},
                    {"K_richardson", t.K[m - 1]},
                    {"kappa", t.kappa[m - 1]},
                    {"uncertainty", t.uncertainty[m - 1]},
                    {"underflow", static_cast<bool>(t.underflow[m - 1])},
                    {"N", t.N},
                    {"precision_bits", t.precision_bits}});
  json out = {{"schema", "deepleaf-distribution v1"},
              {"config", config},
              {"rows", rows},
              {"B", t.B},
              {"kappa", t.kappa_single},
              {"mean_L", t.mean_L},
              {"var_L", t.var_L}};
  json ratios = json::array();
  for (double r : tail_ratios(t)) ratios.push_back(r);
  out["tail_ratios"] = ratios;
  return out;
}

std::string sample_report_csv(const SampleReport& r, const json& config) {
  std::ostringstream os;
  os << csv_header("deepleaf-sample v1", config);
  os << "m,count,frequency,stderr\n";
  os.precision(9);
  for (const auto& [m, c] : r.histogram)
    os << m << "," << c << "," << r.frequency(m) << "," << r.standard_error(m)
       << "\n";
  return os.str();
}

json sample_report_json(const SampleReport& r, const json& config) {
  json rows = json::array();
  for (const auto& [m, c] : r.histogram)
    rows.push_back({{"m", m},
                    {"count", c},
                    {"frequency", r.frequency(m)},
                    {"stderr", r.standard_error(m)}});
  return {{"schema", "deepleaf-sample v1"},
          {"config", config},
          {"n", r.n},
          {"samples", r.samples},
          {"seed", r.seed},
          {"threads", r.threads},
          {"mean_width", r.mean_width()},
          {"rows", rows}};
}

json verify_report_json(const std::vector<CheckResult>& checks,
                        const json& config) {
  json rows = json::array();
  bool all = true;
  for (const auto& c : checks) {
    rows.push_back({{"check", c.name},
                    {"value", c.value},
                    {"threshold", c.threshold},
                    {"pass", c.pass},
                    {"detail", c.detail}});
    all = all && c.pass;
  }
  return {{"schema", "deepleaf-verify v1"},
          {"config", config},
          {"checks", rows},
          {"all_pass", all}};
}

}  // namespace deepleaf
