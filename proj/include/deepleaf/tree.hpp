#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace deepleaf {

// Plane binary tree stored as parallel child arrays; left[v] == -1 marks v as
// a leaf. A tree of size n (= number of internal nodes) has 2n+1 stored nodes.
struct TreeShape {
  std::vector<int32_t> left;
  std::vector<int32_t> right;
  int32_t root = 0;

  std::size_t node_count() const { return left.size(); }
  // number of internal nodes
  std::size_t size() const { return left.size() / 2; }
};

// Number of leaves at the deepest level. Always even for size >= 1 (deepest
// leaves come in sibling pairs). Rejects the degenerate single-leaf tree.
unsigned deepest_width(const TreeShape& t);

// Depth of the deepest leaf.
unsigned height(const TreeShape& t);

// Canonical preorder encoding ('1' internal, '0' leaf); unique per shape.
std::string preorder_code(const TreeShape& t);

}  // namespace deepleaf
