#include "deepleaf/tree.hpp"

#include <stdexcept>
#include <utility>

namespace deepleaf {

namespace {

// Depth-first pass returning (max leaf depth, number of leaves at it).
std::pair<unsigned, unsigned> deepest_leaves(const TreeShape& t) {
  unsigned maxd = 0, cnt = 0;
  std::vector<std::pair<int32_t, unsigned>> stack;
  stack.reserve(64);
  stack.emplace_back(t.root, 0);
  while (!stack.empty()) {
    auto [v, d] = stack.back();
    stack.pop_back();
    if (t.left[v] < 0) {
      if (d > maxd) {
        maxd = d;
        cnt = 1;
      } else if (d == maxd) {
        ++cnt;
      }
    } else {
      stack.emplace_back(t.left[v], d + 1);
      stack.emplace_back(t.right[v], d + 1);
    }
  }
  return {maxd, cnt};
}

}  // namespace

unsigned deepest_width(const TreeShape& t) {
  if (t.size() == 0)
    throw std::invalid_argument("deepest_width: degenerate size-0 tree");
  return deepest_leaves(t).second;
}

unsigned height(const TreeShape& t) { return deepest_leaves(t).first; }

std::string preorder_code(const TreeShape& t) {
  std::string s;
  s.reserve(t.node_count());
  std::vector<int32_t> stack{t.root};
  while (!stack.empty()) {
    int32_t v = stack.back();
    stack.pop_back();
    if (t.left[v] < 0) {
      s.push_back('0');
    } else {
      s.push_back('1');
      stack.push_back(t.right[v]);
      stack.push_back(t.left[v]);
    }
  }
  return s;
}

}  // namespace deepleaf
