#include <doctest.h>

#include <cmath>
#include <vector>

#include "cyclewalk/multigraph.h"
#include "cyclewalk/rng.h"
#include "cyclewalk/stats.h"
#include "cyclewalk/theory.h"

using namespace cyclewalk;

TEST_SUITE("graphcouple") {

TEST_CASE("edge tallies and classification") {
  EvolvingMultigraph g(5);
  CHECK(g.component_count() == 5);
  CHECK(g.add_edge(1, 2));
  CHECK(g.component_count() == 4);
  CHECK(g.class_of(1) == ComponentClass::kTree);
  CHECK_FALSE(g.add_edge(1, 2));
  CHECK(g.component_size(2) == 2);
  CHECK(g.component_edges(2) == 2);
  CHECK(g.class_of(1) == ComponentClass::kUnicyclic);

  EvolvingMultigraph h(5);
  h.add_edge(1, 2);
  h.add_edge(2, 3);
  CHECK(h.class_of(3) == ComponentClass::kTree);
  h.add_edge(1, 3);
  CHECK(h.class_of(3) == ComponentClass::kUnicyclic);
  h.add_edge(2, 3);
  CHECK(h.class_of(3) == ComponentClass::kComplex);
  CHECK(std::string(to_string(ComponentClass::kComplex)) == "complex");

  EvolvingMultigraph loop(3);
  CHECK_FALSE(loop.add_edge(2, 2));
  CHECK(loop.edge_count() == 1);
  CHECK(loop.class_of(2) == ComponentClass::kUnicyclic);
  CHECK_THROWS(loop.add_edge(0, 1));
}

TEST_CASE("component counts") {
  EvolvingMultigraph g(7);
  auto counts = g.component_counts();
  CHECK(counts.component_count == 7);
  CHECK(counts.tree_count_by_size[1] == 7);
  CHECK(counts.giant_size == 1);
  g.add_edge(1, 2);
  g.add_edge(3, 4);
  g.add_edge(4, 5);
  g.add_edge(3, 5);
  counts = g.component_counts();
  CHECK(counts.component_count == 4);
  CHECK(counts.giant_size == 3);
  CHECK(counts.tree_count_by_size[1] == 2);
  CHECK(counts.tree_count_by_size[2] == 1);
  CHECK(counts.tree_count_by_size[3] == 0);
  std::uint64_t vertices = 0, edges = 0;
  for (std::uint32_t r : g.roots()) {
    vertices += g.component_size(r);
    edges += g.component_edges(r);
  }
  CHECK(vertices == 7);
  CHECK(edges == g.edge_count());
}

TEST_CASE("bernoulli snapshots") {
  Rng rng = make_stream(3, 0);
  CHECK(bernoulli_snapshot(50, 0.0, rng).edge_count() == 0);
  CHECK(snapshot_edge_probability(100, 50.0) == doctest::Approx(-std::expm1(-0.01)));

  const std::uint32_t n = 200;
  const double p = 0.03;
  std::vector<double> edges;
  for (int r = 0; r < 400; ++r) edges.push_back(static_cast<double>(bernoulli_graph(n, p, rng).edge_count()));
  const double expected = n * (n - 1) / 2.0 * p;
  CHECK(std::abs(stats::mean(edges) - expected) <= 3 * stats::standard_error(edges));

  // Component of vertex 1 at c = 0.5 against Borel.
  const std::uint32_t big = 2000;
  const double t = 0.5 * big / 2.0;
  std::vector<std::uint64_t> hist;
  for (int r = 0; r < 20000; ++r) {
    const auto g = bernoulli_snapshot(big, t, rng);
    const auto size = g.component_size(1);
    if (size >= hist.size()) hist.resize(size + 1, 0);
    ++hist[size];
  }
  CHECK(stats::tv_distance(hist, [](std::uint64_t k) {
          return k == 0 ? 0.0 : theory::borel_pmf(0.5, static_cast<std::int64_t>(k));
        }) < 0.02);
}

TEST_CASE("giant component at c = 2") {
  Rng rng = make_stream(4, 0);
  const std::uint32_t n = 10000;
  std::vector<double> fractions;
  for (int r = 0; r < 20; ++r) {
    fractions.push_back(static_cast<double>(bernoulli_graph(n, 2.0 / n, rng).giant_size()) / n);
  }
  CHECK(std::abs(stats::mean(fractions) - theory::theta(2.0)) <= 0.01);
}

TEST_CASE("tree counts against expected_tree_count") {
  Rng rng = make_stream(5, 0);
  const std::uint32_t n = 500;
  const double p = 1.0 / n;
  const int reps = 10000;
  std::vector<std::vector<double>> t(11);
  for (int r = 0; r < reps; ++r) {
    const auto counts = bernoulli_graph(n, p, rng).component_counts();
    for (int k = 1; k <= 10; ++k) t[k].push_back(counts.tree_count_by_size[k]);
  }
  for (int k = 1; k <= 10; ++k) {
    const double expected = theory::expected_tree_count(n, k, p);
    CHECK(std::abs(stats::mean(t[k]) - expected) <= 3 * stats::standard_error(t[k]));
  }
}

}  // TEST_SUITE
