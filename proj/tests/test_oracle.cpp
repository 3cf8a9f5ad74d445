#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <string>
#include <vector>

#include "deepleaf/oracle.hpp"
#include "deepleaf/series.hpp"

using namespace deepleaf;

TEST_CASE("enumeration counts are Catalan") {
  for (unsigned n : {1u, 2u, 3u, 5u, 8u}) {
    long cnt = 0;
    enumerate_trees(n, [&](const TreeShape&) { ++cnt; });
    CHECK(cnt == catalan(n).convert_to<long>());
  }
  CHECK_THROWS_AS(enumerate_trees(15, [](const TreeShape&) {}),
                  std::length_error);
}

TEST_CASE("enumeration is deterministic and shapes are distinct") {
  std::vector<std::string> first, second;
  enumerate_trees(6, [&](const TreeShape& t) {
    first.push_back(preorder_code(t));
  });
  enumerate_trees(6, [&](const TreeShape& t) {
    second.push_back(preorder_code(t));
  });
  CHECK(first == second);
  std::vector<std::string> sorted = first;
  std::sort(sorted.begin(), sorted.end());
  CHECK(std::unique(sorted.begin(), sorted.end()) == sorted.end());
  CHECK(first.size() == 132);
}

TEST_CASE("deepest width of hand-built trees") {
  // path-like tree: one deepest sibling pair
  {
    TreeShape comb;
    // size 3 left comb built explicitly: internal 0,1,2; leaves 3..6
    comb.left = {1, 2, 3, -1, -1, -1, -1};
    comb.right = {4, 5, 6, -1, -1, -1, -1};
    comb.root = 0;
    CHECK(deepest_width(comb) == 2);
    CHECK(height(comb) == 3);
  }
  // perfect tree of size 3: all four leaves at depth 2
  {
    TreeShape perfect;
    perfect.left = {1, 3, 5, -1, -1, -1, -1};
    perfect.right = {2, 4, 6, -1, -1, -1, -1};
    perfect.root = 0;
    CHECK(deepest_width(perfect) == 4);
    CHECK(height(perfect) == 2);
  }
  // the degenerate single-leaf tree is rejected
  {
    TreeShape leaf;
    leaf.left = {-1};
    leaf.right = {-1};
    leaf.root = 0;
    CHECK_THROWS_AS(deepest_width(leaf), std::invalid_argument);
  }
}

TEST_CASE("width histograms for small sizes") {
  {
    const WidthHistogram h = width_histogram(5);
    CHECK(h.buckets.at(1) == 32);
    CHECK(h.buckets.at(2) == 10);
    CHECK(h.buckets.size() == 2);
    CHECK(h.total == 42);
  }
  {
    const WidthHistogram h = width_histogram(6);
    CHECK(h.buckets.at(1) == 104);
    CHECK(h.buckets.at(2) == 24);
    CHECK(h.buckets.at(3) == 4);
  }
  {
    const WidthHistogram h = width_histogram(8);
    CHECK(h.buckets.at(1) == 1080);
    CHECK(h.buckets.at(2) == 308);
    CHECK(h.buckets.at(3) == 40);
    CHECK(h.buckets.at(4) == 2);
  }
}

TEST_CASE("width parity and bounds") {
  enumerate_trees(7, [](const TreeShape& t) {
    const unsigned w = deepest_width(t);
    CHECK(w % 2 == 0);
    CHECK(w >= 2);
    CHECK(w <= t.size() + 1);
  });
}

TEST_CASE("histogram rows n=11,12 match the frozen golden rows") {
  const WidthHistogram h11 = width_histogram(11);
  CHECK(h11.buckets.at(1) == 43600);
  CHECK(h11.buckets.at(2) == 12736);
  CHECK(h11.buckets.at(3) == 2144);
  CHECK(h11.buckets.at(4) == 282);
  CHECK(h11.buckets.at(5) == 24);
  CHECK(h11.total == 58786);

  const WidthHistogram h12 = width_histogram(12);
  CHECK(h12.buckets.at(1) == 153504);
  CHECK(h12.buckets.at(6) == 4);
  CHECK(h12.total == 208012);
}

TEST_CASE("oracle equals the series count table for n <= 12") {
  const CountTable t = count_table(12, full_m_range(12));
  for (unsigned n = 1; n <= 12; ++n) {
    const WidthHistogram h = width_histogram(n);
    CHECK(h.total == t.row_sum(n));
    for (unsigned m = 1; m <= full_m_range(n); ++m) {
      auto it = h.buckets.find(m);
      const BigInt hv = it == h.buckets.end() ? BigInt(0) : it->second;
      CHECK(hv == t.at(n, m));
    }
  }
}
