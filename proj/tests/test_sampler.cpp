#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <map>
#include <string>

#include "deepleaf/oracle.hpp"
#include "deepleaf/sampler.hpp"
#include "deepleaf/series.hpp"

using namespace deepleaf;

TEST_CASE("sample_tree produces well-formed uniform trees") {
  std::mt19937_64 rng(7);
  for (long n : {1L, 2L, 17L, 400L}) {
    const TreeShape t = sample_tree(n, rng);
    CHECK(t.node_count() == 2 * static_cast<std::size_t>(n) + 1);
    CHECK(t.size() == static_cast<std::size_t>(n));
    CHECK(deepest_width(t) % 2 == 0);
  }
  CHECK_THROWS_AS(sample_tree(0, rng), std::invalid_argument);
}

TEST_CASE("shape uniformity at n=3 and n=6") {
  // collect canonical codes of the enumerated shapes
  for (unsigned n : {3u, 6u}) {
    std::map<std::string, long> counts;
    enumerate_trees(n, [&](const TreeShape& t) { counts[preorder_code(t)] = 0; });
    const long total_shapes = static_cast<long>(counts.size());
    const long samples = n == 3 ? 500000 : 300000;
    std::mt19937_64 rng(12345);
    for (long s = 0; s < samples; ++s) {
      const std::string code = preorder_code(sample_tree(n, rng));
      auto it = counts.find(code);
      REQUIRE(it != counts.end());
      ++it->second;
    }
    const double p = 1.0 / static_cast<double>(total_shapes);
    const double sigma = std::sqrt(p * (1 - p) / samples);
    for (const auto& [code, c] : counts) {
      const double freq = static_cast<double>(c) / samples;
      CHECK(std::abs(freq - p) < 4 * sigma);
    }
  }
}

TEST_CASE("empirical widths match the exact small-n ratios") {
  {
    const SampleReport r = empirical_distribution(5, 500000, 42);
    const double exact = 10.0 / 42.0;
    CHECK(std::abs(r.frequency(2) - exact) < 4 * r.standard_error(2));
  }
  {
    const SampleReport r = empirical_distribution(10, 200000, 99);
    const double exact = 12544.0 / 16796.0;
    CHECK(std::abs(r.frequency(1) - exact) < 4 * r.standard_error(1));
  }
  {
    // full-row agreement with the enumeration oracle at n = 12
    const SampleReport r = empirical_distribution(12, 100000, 7);
    const WidthHistogram h = width_histogram(12);
    const double total = 208012.0;
    for (const auto& [m, cnt] : h.buckets) {
      const double exact = cnt.convert_to<double>() / total;
      const double tol = 4 * std::sqrt(exact * (1 - exact) / 100000.0) + 1e-9;
      CHECK(std::abs(r.frequency(m) - exact) < tol);
    }
  }
}

TEST_CASE("reports are deterministic and additive") {
  const SampleReport a = empirical_distribution(20, 20000, 31337, 1);
  const SampleReport b = empirical_distribution(20, 20000, 31337, 1);
  CHECK(a.histogram == b.histogram);
  const SampleReport c = empirical_distribution(20, 20000, 31337, 4);
  const SampleReport d = empirical_distribution(20, 20000, 31337, 4);
  CHECK(c.histogram == d.histogram);
  long long total = 0;
  for (const auto& [m, cnt] : c.histogram) total += cnt;
  CHECK(total == 20000);
}

TEST_CASE("large-n statistics approach the limiting distribution") {
  const SampleReport r = empirical_distribution(2000, 20000, 5, 4);
  CHECK(std::abs(r.frequency(1) - 0.7009) < 0.03);
  CHECK(std::abs(r.mean_width() - 2.8037) < 0.1);
}
