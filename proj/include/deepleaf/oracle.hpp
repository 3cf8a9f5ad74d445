#pragma once

#include <functional>
#include <map>

#include "deepleaf/tree.hpp"
#include "deepleaf/types.hpp"

namespace deepleaf {

// Exhaustive enumeration is capped: Catalan(14) = 2674440 shapes.
inline constexpr unsigned kEnumerationCap = 14;

// Visits each of the Catalan(n) shapes exactly once, in canonical order
// (by left-subtree size, then recursively). The TreeShape passed to the
// callback is reused between calls; copy it to keep it.
void enumerate_trees(unsigned n, const std::function<void(const TreeShape&)>& visit);

struct WidthHistogram {
  unsigned n = 0;
  // m -> number of trees of size n whose deepest level holds 2m leaves
  std::map<unsigned, BigInt> buckets;
  BigInt total;
};

// Full histogram by exhaustive enumeration; measures widths geometrically,
// never via the recurrences it is used to validate.
WidthHistogram width_histogram(unsigned n);

}  // namespace deepleaf
