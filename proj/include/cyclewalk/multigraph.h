#ifndef CYCLEWALK_MULTIGRAPH_H_
#define CYCLEWALK_MULTIGRAPH_H_

#include <cstdint>
#include <vector>

#include "cyclewalk/rng.h"

namespace cyclewalk {

enum class ComponentClass { kTree, kUnicyclic, kComplex };

const char* to_string(ComponentClass c);

struct ComponentCounts {
  std::uint32_t component_count = 0;
  std::uint32_t giant_size = 0;
  // tree_count_by_size[k] = T_k, number of tree components with k vertices.
  std::vector<std::uint32_t> tree_count_by_size;
};

// Multigraph on vertices 1..n that only ever gains edges. Components are held
// in a union-find (union by size, path compression) with vertex and edge
// tallies at each root; adjacency is not stored.
class EvolvingMultigraph {
 public:
  explicit EvolvingMultigraph(std::uint32_t n);

  std::uint32_t vertex_count() const { return n_; }

  // Adds edge {i, j}; parallel edges and self-loops count toward the edge
  // tally. Returns true when the edge joined two components.
  bool add_edge(std::uint32_t i, std::uint32_t j);

  std::uint32_t find(std::uint32_t v) const;
  bool connected(std::uint32_t u, std::uint32_t v) const { return find(u) == find(v); }

  std::uint32_t component_size(std::uint32_t v) const;
  std::uint64_t component_edges(std::uint32_t v) const;
  ComponentClass class_of(std::uint32_t v) const;

  std::uint32_t component_count() const { return component_count_; }
  std::uint32_t giant_size() const { return giant_; }
  std::uint64_t edge_count() const { return edges_; }

  // O(n) sweep over roots.
  ComponentCounts component_counts() const;

  // Roots of all current components.
  std::vector<std::uint32_t> roots() const;

 private:
  void check_vertex(std::uint32_t v) const;

  std::uint32_t n_;
  mutable std::vector<std::uint32_t> parent_;
  std::vector<std::uint32_t> size_;
  std::vector<std::uint64_t> component_edges_;
  std::uint32_t component_count_;
  std::uint32_t giant_;
  std::uint64_t edges_ = 0;
};

// Edge probability of the walk-driven graph at time t: 1 - exp(-2t/n^2).
double snapshot_edge_probability(std::uint32_t n, double t);

// Independent G(n, p) sample with p = snapshot_edge_probability(n, t), drawn
// by geometric skipping over vertex pairs in O(n + edges).
EvolvingMultigraph bernoulli_snapshot(std::uint32_t n, double t, Rng& rng);

// Same, parameterized directly by p.
EvolvingMultigraph bernoulli_graph(std::uint32_t n, double p, Rng& rng);

}  // namespace cyclewalk

#endif  // CYCLEWALK_MULTIGRAPH_H_
