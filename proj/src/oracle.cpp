#include "deepleaf/oracle.hpp"

#include <stdexcept>

namespace deepleaf {

namespace {

int32_t alloc_node(TreeShape& t, int32_t l, int32_t r) {
  t.left.push_back(l);
  t.right.push_back(r);
  return static_cast<int32_t>(t.left.size() - 1);
}

void pop_node(TreeShape& t) {
  t.left.pop_back();
  t.right.pop_back();
}

// Enumerates all subtree shapes with `sz` internal nodes into the shared node
// pool, invoking cont(root) for each; nodes are released on unwind, so the
// pool acts as a stack.
void gen(unsigned sz, TreeShape& t, const std::function<void(int32_t)>& cont) {
  if (sz == 0) {
    int32_t v = alloc_node(t, -1, -1);
    cont(v);
    pop_node(t);
    return;
  }
  for (unsigned i = 0; i < sz; ++i) {
    gen(i, t, [&](int32_t l) {
      gen(sz - 1 - i, t, [&](int32_t r) {
        int32_t v = alloc_node(t, l, r);
        cont(v);
        pop_node(t);
      });
    });
  }
}

}  // namespace

void enumerate_trees(unsigned n,
                     const std::function<void(const TreeShape&)>& visit) {
  if (n > kEnumerationCap)
    throw std::length_error("enumerate_trees: size cap exceeded");
  TreeShape t;
  t.left.reserve(2 * n + 1);
  t.right.reserve(2 * n + 1);
  gen(n, t, [&](int32_t root) {
    t.root = root;
    visit(t);
  });
}

WidthHistogram width_histogram(unsigned n) {
  WidthHistogram h;
  h.n = n;
  h.total = 0;
  enumerate_trees(n, [&](const TreeShape& t) {
    ++h.buckets[deepest_width(t) / 2];
    ++h.total;
  });
  return h;
}

}  // namespace deepleaf
