#include "deepleaf/sampler.hpp"

#include <cmath>
#include <stdexcept>
#include <thread>
#include <vector>

namespace deepleaf {

namespace {

// Unbiased bounded draw by rejection; keeps the sampling sequence independent
// of the platform's std::uniform_int_distribution implementation.
std::uint64_t bounded(std::mt19937_64& rng, std::uint64_t n) {
  const std::uint64_t lim = (-n) % n;  // 2^64 mod n
  for (;;) {
    const std::uint64_t r = rng();
    if (r >= lim) return r % n;
  }
}

}  // namespace

double SampleReport::frequency(unsigned m) const {
  auto it = histogram.find(m);
  if (it == histogram.end() || samples == 0) return 0.0;
  return static_cast<double>(it->second) / static_cast<double>(samples);
}

double SampleReport::standard_error(unsigned m) const {
  const double p = frequency(m);
  return std::sqrt(p * (1 - p) / static_cast<double>(samples));
}

double SampleReport::mean_width() const {
  double s = 0;
  for (const auto& [m, c] : histogram)
    s += 2.0 * m * static_cast<double>(c);
  return s / static_cast<double>(samples);
}

TreeShape sample_tree(long n, std::mt19937_64& rng) {
  if (n < 1) throw std::invalid_argument("sample_tree: n must be >= 1");
  // Remy growth: insert an internal node on a uniformly chosen edge (the edge
  // above a uniform node, counting the virtual edge above the root), hanging
  // a fresh leaf on a uniform side. After j insertions the tree is uniform
  // over shapes with j internal nodes.
  TreeShape t;
  const std::size_t total = 2 * static_cast<std::size_t>(n) + 1;
  t.left.assign(total, -1);
  t.right.assign(total, -1);
  std::vector<int32_t> parent(total, -1);
  t.root = 0;  // single leaf
  std::size_t cnt = 1;
  for (long j = 1; j <= n; ++j) {
    const std::uint64_t e = bounded(rng, 2 * cnt);
    const int32_t v = static_cast<int32_t>(e >> 1);
    const bool side = e & 1;
    const int32_t a = static_cast<int32_t>(cnt);      // new internal node
    const int32_t b = static_cast<int32_t>(cnt + 1);  // new leaf
    cnt += 2;
    const int32_t p = parent[v];
    if (side) {
      t.left[a] = b;
      t.right[a] = v;
    } else {
      t.left[a] = v;
      t.right[a] = b;
    }
    parent[a] = p;
    parent[v] = a;
    parent[b] = a;
    if (p < 0)
      t.root = a;
    else if (t.left[p] == v)
      t.left[p] = a;
    else
      t.right[p] = a;
  }
  return t;
}

SampleReport empirical_distribution(long n, long samples, std::uint64_t seed,
                                    unsigned threads) {
  if (n < 1 || samples < 1)
    throw std::invalid_argument("empirical_distribution: n, samples >= 1");
  if (threads < 1) threads = 1;
  if (static_cast<long>(threads) > samples)
    threads = static_cast<unsigned>(samples);

  std::vector<std::map<unsigned, long long>> partial(threads);
  auto work = [&](unsigned w) {
    // fixed partition: worker w draws base + (w < remainder) samples
    const long base = samples / threads;
    const long mine = base + (w < samples % threads ? 1 : 0);
    std::seed_seq sq{static_cast<std::uint32_t>(seed),
                     static_cast<std::uint32_t>(seed >> 32), w};
    std::mt19937_64 rng(sq);
    for (long s = 0; s < mine; ++s) {
      const TreeShape t = sample_tree(n, rng);
      ++partial[w][deepest_width(t) / 2];
    }
  };
  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < threads; ++w) pool.emplace_back(work, w);
    for (auto& th : pool) th.join();
  }

  SampleReport rep;
  rep.n = n;
  rep.samples = samples;
  rep.seed = seed;
  rep.threads = threads;
  for (const auto& h : partial)
    for (const auto& [m, c] : h) rep.histogram[m] += c;
  return rep;
}

}  // namespace deepleaf
