#include "cyclewalk/multigraph.h"

#include <cmath>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>

namespace cyclewalk {

const char* to_string(ComponentClass c) {
  switch (c) {
    case ComponentClass::kTree:
      return "tree";
    case ComponentClass::kUnicyclic:
      return "unicyclic";
    case ComponentClass::kComplex:
      return "complex";
  }
  return "?";
}

EvolvingMultigraph::EvolvingMultigraph(std::uint32_t n)
    : n_(n),
      parent_(n + 1),
      size_(n + 1, 1),
      component_edges_(n + 1, 0),
      component_count_(n),
      giant_(n > 0 ? 1 : 0) {
  if (n == 0) throw std::invalid_argument("EvolvingMultigraph: n must be >= 1");
  for (std::uint32_t v = 0; v <= n; ++v) parent_[v] = v;
}

void EvolvingMultigraph::check_vertex(std::uint32_t v) const {
  if (v < 1 || v > n_) {
    throw std::out_of_range("vertex " + std::to_string(v) + " outside [1, " +
                            std::to_string(n_) + "]");
  }
}

std::uint32_t EvolvingMultigraph::find(std::uint32_t v) const {
  check_vertex(v);
  std::uint32_t root = v;
  while (parent_[root] != root) root = parent_[root];
  while (parent_[v] != root) v = std::exchange(parent_[v], root);
  return root;
}

bool EvolvingMultigraph::add_edge(std::uint32_t i, std::uint32_t j) {
  std::uint32_t a = find(i);
  std::uint32_t b = find(j);
  ++edges_;
  if (a == b) {
    ++component_edges_[a];
    return false;
  }
  if (size_[a] < size_[b]) std::swap(a, b);
  parent_[b] = a;
  size_[a] += size_[b];
  component_edges_[a] += component_edges_[b] + 1;
  --component_count_;
  if (size_[a] > giant_) giant_ = size_[a];
  return true;
}

std::uint32_t EvolvingMultigraph::component_size(std::uint32_t v) const {
  return size_[find(v)];
}

std::uint64_t EvolvingMultigraph::component_edges(std::uint32_t v) const {
  return component_edges_[find(v)];
}

ComponentClass EvolvingMultigraph::class_of(std::uint32_t v) const {
  const std::uint32_t r = find(v);
  const std::uint64_t vertices = size_[r];
  const std::uint64_t edges = component_edges_[r];
  if (edges + 1 == vertices) return ComponentClass::kTree;
  if (edges == vertices) return ComponentClass::kUnicyclic;
  return ComponentClass::kComplex;
}

ComponentCounts EvolvingMultigraph::component_counts() const {
  ComponentCounts counts;
  counts.component_count = component_count_;
  counts.giant_size = giant_;
  counts.tree_count_by_size.assign(n_ + 1, 0);
  for (std::uint32_t v = 1; v <= n_; ++v) {
    if (parent_[v] != v) continue;
    if (component_edges_[v] + 1 == size_[v]) ++counts.tree_count_by_size[size_[v]];
  }
  return counts;
}

std::vector<std::uint32_t> EvolvingMultigraph::roots() const {
  std::vector<std::uint32_t> out;
  out.reserve(component_count_);
  for (std::uint32_t v = 1; v <= n_; ++v) {
    if (parent_[v] == v) out.push_back(v);
  }
  return out;
}

double snapshot_edge_probability(std::uint32_t n, double t) {
  if (t < 0.0) throw std::invalid_argument("snapshot time must be >= 0");
  const double nd = static_cast<double>(n);
  return -std::expm1(-2.0 * t / (nd * nd));
}

EvolvingMultigraph bernoulli_snapshot(std::uint32_t n, double t, Rng& rng) {
  return bernoulli_graph(n, snapshot_edge_probability(n, t), rng);
}

EvolvingMultigraph bernoulli_graph(std::uint32_t n, double p, Rng& rng) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("edge probability outside [0, 1]");
  EvolvingMultigraph g(n);
  if (p == 0.0 || n < 2) return g;
  if (p == 1.0) {
    for (std::uint32_t u = 2; u <= n; ++u) {
      for (std::uint32_t v = 1; v < u; ++v) g.add_edge(u, v);
    }
    return g;
  }
  // Pairs (v, w) with w < v in lexicographic order; the gap to the next
  // present pair is geometric.
  std::geometric_distribution<std::uint64_t> gap(p);
  std::uint64_t v = 2;
  std::uint64_t w = 0;  // 0-based column, w < v - 1
  for (;;) {
    w += gap(rng);
    while (v <= n && w >= v - 1) {
      w -= v - 1;
      ++v;
    }
    if (v > n) break;
    g.add_edge(static_cast<std::uint32_t>(v), static_cast<std::uint32_t>(w + 1));
    ++w;
  }
  return g;
}

}  // namespace cyclewalk
