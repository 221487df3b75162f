// Independent reference implementations used only by the tests.
#ifndef CYCLEWALK_TESTS_ORACLES_H_
#define CYCLEWALK_TESTS_ORACLES_H_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <numeric>
#include <vector>

namespace oracle {

// Plain array permutation, 1-based, right multiplication by transpositions.
struct NaivePermutation {
  std::vector<std::uint32_t> img;

  explicit NaivePermutation(std::uint32_t n) : img(n + 1) { std::iota(img.begin(), img.end(), 0u); }

  void transpose(std::uint32_t i, std::uint32_t j) { std::swap(img[i], img[j]); }

  std::vector<std::vector<std::uint32_t>> cycles() const {
    const std::size_t n = img.size() - 1;
    std::vector<bool> seen(n + 1, false);
    std::vector<std::vector<std::uint32_t>> out;
    for (std::uint32_t s = 1; s <= n; ++s) {
      if (seen[s]) continue;
      std::vector<std::uint32_t> cyc;
      for (std::uint32_t v = s; !seen[v]; v = img[v]) {
        seen[v] = true;
        cyc.push_back(v);
      }
      out.push_back(std::move(cyc));
    }
    return out;
  }

  // spectrum[k] = number of cycles of size k.
  std::vector<std::uint32_t> spectrum() const {
    std::vector<std::uint32_t> s(img.size(), 0);
    for (const auto& c : cycles()) ++s[c.size()];
    return s;
  }

  std::uint32_t cycle_size_of(std::uint32_t v) const {
    std::uint32_t k = 1;
    for (std::uint32_t w = img[v]; w != v; w = img[w]) ++k;
    return k;
  }

  std::vector<std::uint32_t> cycle_label() const {
    std::vector<std::uint32_t> label(img.size(), 0);
    std::uint32_t id = 0;
    for (const auto& c : cycles()) {
      ++id;
      for (std::uint32_t v : c) label[v] = id;
    }
    return label;
  }
};

// Union-find over vertices with a per-component "has fragmented" flag.
struct FlaggedComponents {
  std::vector<std::uint32_t> parent;
  std::vector<bool> fragmented;

  explicit FlaggedComponents(std::uint32_t n) : parent(n + 1), fragmented(n + 1, false) {
    std::iota(parent.begin(), parent.end(), 0u);
  }
  std::uint32_t find(std::uint32_t v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  }
  void unite(std::uint32_t a, std::uint32_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    parent[b] = a;
    fragmented[a] = fragmented[a] || fragmented[b];
  }
};

// E[T_k] on 3 vertices by enumerating all 8 simple graphs.
inline double enumerate_tree_count_3(int k, double p) {
  const int edges[3][2] = {{0, 1}, {0, 2}, {1, 2}};
  double expected = 0.0;
  for (int mask = 0; mask < 8; ++mask) {
    int e = __builtin_popcount(mask);
    double prob = std::pow(p, e) * std::pow(1.0 - p, 3 - e);
    int parent[3] = {0, 1, 2};
    auto find = [&](int v) {
      while (parent[v] != v) v = parent[v];
      return v;
    };
    int comp_edges[3] = {0, 0, 0};
    for (int b = 0; b < 3; ++b) {
      if (mask >> b & 1) {
        int a = find(edges[b][0]), c = find(edges[b][1]);
        if (a != c) parent[c] = a;
      }
    }
    int size[3] = {0, 0, 0};
    for (int v = 0; v < 3; ++v) ++size[find(v)];
    for (int b = 0; b < 3; ++b) {
      if (mask >> b & 1) ++comp_edges[find(edges[b][0])];
    }
    int trees = 0;
    for (int r = 0; r < 3; ++r) {
      if (size[r] == k && comp_edges[r] == k - 1) ++trees;
    }
    expected += prob * trees;
  }
  return expected;
}

// Survival probability by fixed-point iteration from 1 (monotone for c > 1).
inline double theta_fixed_point(double c) {
  if (c <= 1.0) return 0.0;
  long double t = 1.0L;
  for (int it = 0; it < 100000; ++it) {
    const long double next = 1.0L - std::exp(-static_cast<long double>(c) * t);
    if (std::fabs(static_cast<double>(next - t)) < 1e-16) return static_cast<double>(next);
    t = next;
  }
  return static_cast<double>(t);
}

// Embedded excursion chain: from m go to m-1 w.p. m/(m+1), to m+1 w.p. 1/(m+1).
// Returns P(reach x+1 before 0 | start 1) by Gaussian elimination on states
// 0..top, with 0 and every state >= x+1 absorbing.
inline double excursion_tail_linear_solve(unsigned x, unsigned top = 30) {
  const unsigned n = top + 1;
  std::vector<std::vector<long double>> a(n, std::vector<long double>(n + 1, 0.0L));
  for (unsigned m = 0; m < n; ++m) {
    a[m][m] = 1.0L;
    if (m == 0) continue;
    if (m >= x + 1) {
      a[m][n] = 1.0L;
      continue;
    }
    const long double down = static_cast<long double>(m) / (m + 1);
    a[m][m - 1] -= down;
    if (m + 1 < n) a[m][m + 1] -= 1.0L - down;
  }
  for (unsigned col = 0; col < n; ++col) {
    unsigned pivot = col;
    for (unsigned r = col + 1; r < n; ++r) {
      if (std::fabs(static_cast<double>(a[r][col])) > std::fabs(static_cast<double>(a[pivot][col]))) pivot = r;
    }
    std::swap(a[col], a[pivot]);
    for (unsigned r = 0; r < n; ++r) {
      if (r == col || a[r][col] == 0.0L) continue;
      const long double f = a[r][col] / a[col][col];
      for (unsigned k = col; k <= n; ++k) a[r][k] -= f * a[col][k];
    }
  }
  return static_cast<double>(a[1][n] / a[1][1]);
}

// Breakpoint component count from scratch on a signed marker list.
inline unsigned breakpoint_cycles(const std::vector<int>& g) {
  const int m = static_cast<int>(g.size());
  std::vector<int> d{0};
  for (int x : g) {
    if (x > 0) {
      d.push_back(2 * x - 1);
      d.push_back(2 * x);
    } else {
      d.push_back(-2 * x);
      d.push_back(-2 * x - 1);
    }
  }
  d.push_back(2 * m + 1);
  std::vector<int> pos(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) pos[d[i]] = static_cast<int>(i);
  std::vector<bool> seen(d.size(), false);
  unsigned count = 0;
  for (int s = 0; s < static_cast<int>(d.size()); ++s) {
    if (seen[s]) continue;
    ++count;
    int v = s;
    while (!seen[v]) {
      seen[v] = true;
      const int black = d[pos[v] ^ 1];  // partner across a black edge
      seen[black] = true;
      v = black ^ 1;  // gray edge joins 2i and 2i+1
    }
  }
  return count;
}

inline std::vector<int> reverse_segment(std::vector<int> g, int lo, int hi) {
  std::reverse(g.begin() + lo, g.begin() + hi + 1);
  for (int i = lo; i <= hi; ++i) g[i] = -g[i];
  return g;
}

// Depth-first search for a sorting sequence that raises the cycle count by
// one at every move, with backtracking.
inline bool sort_by_cycle_increasing_reversals(const std::vector<int>& g, int moves_left,
                                               std::vector<std::pair<int, int>>& path) {
  const unsigned m = static_cast<unsigned>(g.size());
  const unsigned c = breakpoint_cycles(g);
  if (c == m + 1) return true;
  if (moves_left == 0) return false;
  for (int lo = 0; lo < static_cast<int>(m); ++lo) {
    for (int hi = lo; hi < static_cast<int>(m); ++hi) {
      auto next = reverse_segment(g, lo, hi);
      if (breakpoint_cycles(next) != c + 1) continue;
      path.emplace_back(lo + 1, hi + 1);
      if (sort_by_cycle_increasing_reversals(next, moves_left - 1, path)) return true;
      path.pop_back();
    }
  }
  return false;
}

}  // namespace oracle

#endif  // CYCLEWALK_TESTS_ORACLES_H_
