#ifndef CYCLEWALK_DYNAMIC_PERMUTATION_H_
#define CYCLEWALK_DYNAMIC_PERMUTATION_H_

#include <array>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace cyclewalk {

enum class TranspositionKind { kNoOp, kCoagulation, kFragmentation };

// What one transposition did to the cycle structure.
//
// Coagulation: parts = {size of the cycle of i, size of the cycle of j} before
// the move, whole = their sum afterwards.
// Fragmentation: whole = size of the split cycle, parts = {new cycle holding
// j, new cycle holding i}.
struct TranspositionEffect {
  TranspositionKind kind = TranspositionKind::kNoOp;
  std::uint32_t whole = 0;
  std::array<std::uint32_t, 2> parts{0, 0};
};

struct CycleStats {
  std::uint32_t cycle_count = 0;
  std::uint32_t largest_cycle = 0;      // L1
  std::uint32_t cycle_size_of_one = 0;  // K1
  std::uint64_t mass_above = 0;         // sum of k X_k over k > n^a
};

// A permutation of {1..n} under right multiplication by transpositions,
// sigma <- sigma o (i j), with the cycle structure maintained incrementally.
//
// In kTreap mode every cycle is stored as an implicit treap over its orbit
// order, so membership, rank and split/join are O(log n) expected. kTraversal
// walks orbits directly; it is O(cycle length) per query and exists as an
// independent reference implementation.
class DynamicPermutation {
 public:
  enum class CycleIndex { kTreap, kTraversal };

  static DynamicPermutation identity(std::uint32_t n,
                                     CycleIndex mode = CycleIndex::kTreap);

  // Builds sigma from disjoint cycles written in orbit order, e.g.
  // {{1,7,4},{3,12}} means 1->7->4->1 and 3->12->3. Elements not mentioned
  // are fixed points.
  static DynamicPermutation from_cycles(
      std::uint32_t n, const std::vector<std::vector<std::uint32_t>>& cycles,
      CycleIndex mode = CycleIndex::kTreap);

  std::uint32_t size() const { return n_; }
  CycleIndex mode() const { return mode_; }

  // sigma(i), 1-based.
  std::uint32_t image(std::uint32_t i) const;

  TranspositionEffect apply_transposition(std::uint32_t i, std::uint32_t j);

  bool same_cycle(std::uint32_t i, std::uint32_t j) const;
  std::uint32_t cycle_size_of(std::uint32_t i) const;

  std::uint32_t cycle_count() const { return cycle_count_; }
  std::uint64_t distance() const { return n_ - cycle_count_; }

  // X_k, the number of cycles of size k, indexed by k in [0, n].
  std::span<const std::uint32_t> spectrum() const { return spectrum_; }

  // Cycle statistics; N-up counts cycles strictly larger than n^a.
  CycleStats cycle_stats(double mass_exponent) const;

  // Full O(n) orbit decomposition, each cycle starting at its smallest
  // element, cycles ordered by that element.
  std::vector<std::vector<std::uint32_t>> cycles() const;

 private:
  struct Node {
    std::uint32_t left = 0;
    std::uint32_t right = 0;
    std::uint32_t parent = 0;
    std::uint32_t size = 1;
    std::uint32_t priority = 0;
  };

  DynamicPermutation(std::uint32_t n, CycleIndex mode);

  void check_position(std::uint32_t i) const;
  void count_cycle(std::uint32_t size, int delta);

  // Treap primitives over nodes 1..n; 0 is the null node.
  std::uint32_t subtree_size(std::uint32_t t) const { return t ? nodes_[t].size : 0; }
  void pull(std::uint32_t t);
  std::uint32_t root_of(std::uint32_t x) const;
  std::uint32_t rank_of(std::uint32_t x) const;
  std::pair<std::uint32_t, std::uint32_t> split(std::uint32_t t, std::uint32_t k);
  std::uint32_t merge(std::uint32_t a, std::uint32_t b);
  std::pair<std::uint32_t, std::uint32_t> split_root(std::uint32_t t, std::uint32_t k);
  std::uint32_t merge_root(std::uint32_t a, std::uint32_t b);
  std::uint32_t rotate_to_end(std::uint32_t x);

  // Number of successor steps from `from` to reach `to` (traversal mode).
  std::uint32_t orbit_steps(std::uint32_t from, std::uint32_t to) const;

  std::uint32_t n_;
  CycleIndex mode_;
  std::vector<std::uint32_t> succ_;  // 1-based, succ_[0] unused
  std::vector<Node> nodes_;          // empty in traversal mode
  std::vector<std::uint32_t> spectrum_;
  std::uint32_t cycle_count_;
  // Upper bound on the largest cycle size; tightened by cycle_stats.
  mutable std::uint32_t largest_hint_ = 1;
};

}  // namespace cyclewalk

#endif  // CYCLEWALK_DYNAMIC_PERMUTATION_H_
