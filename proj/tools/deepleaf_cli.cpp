#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "deepleaf/bivariate_poly.hpp"
#include "deepleaf/critical.hpp"
#include "deepleaf/oracle.hpp"
#include "deepleaf/report_io.hpp"
#include "deepleaf/sampler.hpp"
#include "deepleaf/series.hpp"

namespace dl = deepleaf;
using dl::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;

unsigned default_precision_bits(unsigned fallback) {
  if (const char* env = std::getenv("DEEPLEAF_PRECISION_BITS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end && *end == '\0' && v >= 64 && v <= 1 << 20)
      return static_cast<unsigned>(v);
    std::cerr << "warning: ignoring invalid DEEPLEAF_PRECISION_BITS='" << env
              << "'\n";
  }
  return fallback;
}

int emit(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return kExitOk;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    std::cerr << "error: cannot open output file '" << path << "'\n";
    return kExitUsage;
  }
  out << text;
  return kExitOk;
}

void print_checks(const std::vector<dl::CheckResult>& checks) {
  for (const auto& c : checks)
    std::cout << (c.pass ? "PASS" : "FAIL") << "  " << c.name
              << "  value=" << c.value << " threshold=" << c.threshold
              << (c.detail.empty() ? "" : "  (" + c.detail + ")") << "\n";
}

bool all_pass(const std::vector<dl::CheckResult>& checks) {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

// ---- verify suites ------------------------------------------------------

std::vector<dl::CheckResult> verify_identities() {
  std::vector<dl::CheckResult> out;

  {  // row sums of the full count table are exactly Catalan, n <= 200
    const unsigned n_max = 200;
    const dl::CountTable t = dl::count_table(n_max, dl::full_m_range(n_max));
    int bad = 0;
    for (unsigned n = 1; n <= n_max; ++n)
      if (t.row_sum(n) != dl::catalan(n)) ++bad;
    out.push_back({"row_sums_catalan_n200", double(bad), 0, bad == 0, ""});
  }
  {  // Q_{k+1} = z * Qhat_k for k <= 50
    int bad = 0;
    const std::size_t d = 60;
    for (unsigned k = 0; k <= 50; ++k) {
      const dl::TruncatedPoly Q = dl::deepest_pair_poly(k + 1, d);
      const dl::TruncatedPoly Qh = dl::marked_leaf_poly(k, d - 1);
      dl::TruncatedPoly shifted(d);
      for (std::size_t n = 0; n + 1 <= d; ++n) shifted[n + 1] = Qh[n];
      if (!(Q == shifted)) ++bad;
    }
    out.push_back({"shift_identity_k50", double(bad), 0, bad == 0, ""});
  }
  {  // bivariate path equals the cascade path, k <= 15, m <= 5
    int bad = 0;
    const std::size_t dz = 20, dy = 5;
    for (unsigned k = 1; k <= 15; ++k) {
      const dl::BivariateTruncatedPoly A = dl::bivariate_height_poly(k, dz, dy);
      if (!(A.y_slice(0) == dl::height_bounded_poly(k - 1, dz))) ++bad;
      for (unsigned m = 1; m <= 5; ++m)
        if (!(A.y_slice(m) == dl::deepest_m_poly(k, m, dz))) ++bad;
    }
    out.push_back({"bivariate_path_equivalence", double(bad), 0, bad == 0, ""});
  }
  {  // exhaustive enumeration agrees with the series table, n <= 12
    int bad = 0;
    const dl::CountTable t = dl::count_table(12, dl::full_m_range(12));
    for (unsigned n = 1; n <= 12; ++n) {
      const dl::WidthHistogram h = dl::width_histogram(n);
      for (unsigned m = 1; m <= dl::full_m_range(n); ++m) {
        auto it = h.buckets.find(m);
        const dl::BigInt hv = it == h.buckets.end() ? dl::BigInt(0) : it->second;
        if (hv != t.at(n, m)) ++bad;
      }
      if (h.total != dl::catalan(n)) ++bad;
    }
    out.push_back({"oracle_equivalence_n12", double(bad), 0, bad == 0, ""});
  }
  {  // Q_k^[m] has no terms below degree k + m - 1
    int bad = 0;
    for (unsigned k = 1; k <= 20; ++k)
      for (unsigned m = 1; m <= 5; ++m) {
        const dl::TruncatedPoly p = dl::deepest_m_poly(k, m, 40);
        if (!p.is_zero() && p.min_deg() < k + m - 1) ++bad;
      }
    out.push_back({"monotone_support", double(bad), 0, bad == 0, ""});
  }
  {  // e_k(rho) > 0 and strictly decreasing (exact rationals, k <= 26)
    int bad = 0;
    dl::BigRat prev = dl::truncation_error_at(0, dl::BigRat(1, 4));
    if (prev != 1) ++bad;
    dl::BigRat e = prev;
    for (unsigned k = 1; k <= 26; ++k) {
      e = e - e * e / 4;  // r(rho) = 1
      if (!(e > 0 && e < prev)) ++bad;
      prev = e;
    }
    if (dl::truncation_error_at(2, dl::BigRat(1, 4)) != dl::BigRat(39, 64))
      ++bad;
    out.push_back({"positivity_exact_k26", double(bad), 0, bad == 0, ""});
  }
  {  // same law in 256-bit floats out to k = 10^4
    int bad = 0;
    const unsigned bits = 256;
    dl::Real e(1L, bits), quarter(dl::BigRat(1, 4), bits);
    for (unsigned k = 1; k <= 10000; ++k) {
      const dl::Real next = e - e * e * quarter;
      if (!(next.sign() > 0 && next < e)) ++bad;
      e = next;
    }
    out.push_back({"positivity_real_k1e4", double(bad), 0, bad == 0, ""});
  }
  return out;
}

std::vector<dl::CheckResult> verify_functional(long N, unsigned bits) {
  std::vector<dl::CheckResult> out;
  const double K1tot = dl::K_of_y(1.0, N, bits).richardson;
  out.push_back({"K_total_probability", std::abs(K1tot - 4), 1e-4,
                 std::abs(K1tot - 4) < 1e-4, "K(1) vs 4"});
  std::vector<double> grid;
  for (int i = 0; i < 9; ++i) grid.push_back(-1.0 + 0.25 * i);
  const double res = dl::functional_equation_residual(grid, N, bits);
  out.push_back({"functional_equation_residual", res, 1e-3, res < 1e-3,
                 "max over 9-point y-grid in [-1,1]"});
  return out;
}

std::vector<dl::CheckResult> verify_scaling(double tau, long N, unsigned bits) {
  std::vector<dl::CheckResult> out;
  const std::vector<double> u_grid{0.5, 1.0, 2.0, 3.0};
  const double tau_coarse = tau * 10;

  const dl::DistributionTable table = dl::distribution(N, 2, bits);
  std::vector<double> Ks{table.K[0], table.K[1]};

  const double e_fine = dl::error_profile_check(tau, u_grid, bits);
  const double e_coarse = dl::error_profile_check(tau_coarse, u_grid, bits);
  out.push_back({"e_profile_sup", e_fine, 0.01, e_fine <= 0.01,
                 "tau=" + std::to_string(tau)});
  const double q_fine = dl::q_profile_check(tau, u_grid, bits, Ks[0]);
  const double q_coarse = dl::q_profile_check(tau_coarse, u_grid, bits, Ks[0]);
  out.push_back({"q_profile_sup", q_fine, 0.05, q_fine <= 0.05,
                 "tau=" + std::to_string(tau)});
  const bool trend = e_coarse > e_fine && q_coarse > q_fine;
  out.push_back({"profile_deviation_trend", trend ? 1.0 : 0.0, 1.0, trend,
                 "coarser tau must deviate more"});
  const double p2 = dl::psi_m_profile_check(2, tau, {1.0}, bits, Ks);
  out.push_back({"psi2_profile", p2, 0.1, p2 <= 0.1,
                 "tau=" + std::to_string(tau) + ", u=1"});
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "deepleaf: distribution of the number of leaves at the deepest level "
      "of uniform plane binary trees"};
  app.require_subcommand(1);
  std::string output;
  std::string format = "csv";

  // counts
  auto* counts = app.add_subcommand(
      "counts", "exact table: trees of size n with 2m deepest leaves");
  unsigned n_max = 10, m_max = 0;
  bool counts_verify = false;
  counts->add_option("--n-max", n_max, "largest tree size")
      ->required()
      ->check(CLI::Range(1u, 5000u));
  counts->add_option("--m-max", m_max,
                     "largest pair count (default: all possible)");
  counts->add_flag("--verify", counts_verify,
                   "cross-check rows n <= 12 against exhaustive enumeration");
  counts->add_option("-o,--output", output, "output file (default stdout)");
  counts->add_option("--format", format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));

  // distribution
  auto* dist = app.add_subcommand(
      "distribution", "limiting distribution kappa^[m] via the cascade at rho");
  long iterations = 10000000;
  unsigned width = 5;
  unsigned bits_dist = 0;
  bool tail_avg = false;
  dist->add_option("-N,--iterations", iterations, "cascade iterations")
      ->check(CLI::Range(static_cast<long>(2), static_cast<long>(1) << 40));
  dist->add_option("-M,--width", width, "cascade width (number of m values)")
      ->check(CLI::Range(1u, 64u));
  dist->add_option("--precision-bits", bits_dist,
                   "working mantissa bits (default 192, or "
                   "DEEPLEAF_PRECISION_BITS)")
      ->check(CLI::Range(64u, 1u << 20));
  dist->add_flag("--tail-average", tail_avg,
                 "average Richardson estimates over the last dyadic pairs");
  dist->add_option("-o,--output", output, "output file (default stdout)");
  dist->add_option("--format", format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));

  // verify
  auto* verify = app.add_subcommand("verify", "run a named invariant suite");
  std::string suite;
  double tau = 1e-3;
  long verify_N = 1000000;
  unsigned bits_verify = 0;
  verify->add_option("suite", suite, "identities | functional | scaling | all")
      ->required()
      ->check(CLI::IsMember({"identities", "functional", "scaling", "all"}));
  verify->add_option("--tau", tau, "scaling-regime tau (default 1e-3)")
      ->check(CLI::Range(1e-6, 0.01));
  verify->add_option("-N,--iterations", verify_N,
                     "iterations for numerical suites (default 1e6)")
      ->check(CLI::Range(static_cast<long>(4), static_cast<long>(1) << 40));
  verify->add_option("--precision-bits", bits_verify,
                     "working mantissa bits (default 192, or "
                     "DEEPLEAF_PRECISION_BITS)")
      ->check(CLI::Range(64u, 1u << 20));
  verify->add_option("-o,--output", output, "JSON report file");

  // sample
  auto* sample = app.add_subcommand(
      "sample", "Monte-Carlo deepest-width distribution via uniform sampling");
  long sample_n = 0, samples = 100000;
  std::uint64_t seed = 1;
  unsigned threads = 1;
  sample->add_option("-n,--size", sample_n, "tree size")
      ->required()
      ->check(CLI::Range(static_cast<long>(1), static_cast<long>(1) << 30));
  sample->add_option("-s,--samples", samples, "number of samples")
      ->check(CLI::Range(static_cast<long>(1), static_cast<long>(1) << 40));
  sample->add_option("--seed", seed, "RNG seed");
  sample->add_option("--threads", threads, "worker threads")
      ->check(CLI::Range(1u, 256u));
  sample->add_option("-o,--output", output, "output file (default stdout)");
  sample->add_option("--format", format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (counts->parsed()) {
      if (m_max == 0) m_max = dl::full_m_range(n_max);
      const dl::CountTable t = dl::count_table(n_max, m_max);
      if (counts_verify) {
        for (unsigned n = 1; n <= std::min(n_max, 12u); ++n) {
          const dl::WidthHistogram h = dl::width_histogram(n);
          for (unsigned m = 1; m <= std::min(m_max, dl::full_m_range(n)); ++m) {
            auto it = h.buckets.find(m);
            const dl::BigInt hv =
                it == h.buckets.end() ? dl::BigInt(0) : it->second;
            if (hv != t.at(n, m)) {
              std::cerr << "verify: mismatch at n=" << n << " m=" << m
                        << ": enumeration " << hv << " vs table " << t.at(n, m)
                        << "\n";
              return kExitCheckFailed;
            }
          }
        }
        std::cerr << "verify: enumeration agrees for n <= "
                  << std::min(n_max, 12u) << "\n";
      }
      const json cfg = {{"subcommand", "counts"}, {"n_max", n_max},
                        {"m_max", m_max},         {"verify", counts_verify},
                        {"format", format}};
      return emit(format == "json" ? dl::count_table_json(t, cfg).dump(2) + "\n"
                                   : dl::count_table_csv(t, cfg),
                  output);
    }

    if (dist->parsed()) {
      const unsigned bits =
          bits_dist ? bits_dist : default_precision_bits(192);
      const dl::DistributionTable t =
          dl::distribution(iterations, width, bits, tail_avg);
      for (unsigned m = 1; m <= t.M; ++m)
        if (t.underflow[m - 1])
          std::cerr << "warning: q[" << m << "] underflowed working precision; "
                    << "K^[" << m << "] is unreliable\n";
      const json cfg = {{"subcommand", "distribution"},
                        {"iterations", iterations},
                        {"width", width},
                        {"precision_bits", bits},
                        {"tail_average", tail_avg},
                        {"format", format}};
      return emit(format == "json"
                      ? dl::distribution_json(t, cfg).dump(2) + "\n"
                      : dl::distribution_csv(t, cfg),
                  output);
    }

    if (verify->parsed()) {
      const unsigned bits =
          bits_verify ? bits_verify : default_precision_bits(192);
      std::vector<dl::CheckResult> checks;
      auto append = [&checks](std::vector<dl::CheckResult> more) {
        for (auto& c : more) checks.push_back(std::move(c));
      };
      if (suite == "identities" || suite == "all") append(verify_identities());
      if (suite == "functional" || suite == "all")
        append(verify_functional(verify_N, bits));
      if (suite == "scaling" || suite == "all")
        append(verify_scaling(tau, verify_N, bits));
      print_checks(checks);
      if (!output.empty()) {
        const json cfg = {{"subcommand", "verify"},
                          {"suite", suite},
                          {"tau", tau},
                          {"iterations", verify_N},
                          {"precision_bits", bits}};
        emit(dl::verify_report_json(checks, cfg).dump(2) + "\n", output);
      }
      return all_pass(checks) ? kExitOk : kExitCheckFailed;
    }

    if (sample->parsed()) {
      const dl::SampleReport r =
          dl::empirical_distribution(sample_n, samples, seed, threads);
      const json cfg = {{"subcommand", "sample"}, {"n", sample_n},
                        {"samples", samples},     {"seed", seed},
                        {"threads", threads},     {"format", format}};
      return emit(format == "json"
                      ? dl::sample_report_json(r, cfg).dump(2) + "\n"
                      : dl::sample_report_csv(r, cfg),
                  output);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitOk;
}
