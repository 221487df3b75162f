#include "cyclewalk/dynamic_permutation.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "cyclewalk/rng.h"

namespace cyclewalk {
namespace {

constexpr std::uint64_t kPrioritySalt = 0x5eed'c1c1'e5a1'7000ULL;

}  // namespace

DynamicPermutation::DynamicPermutation(std::uint32_t n, CycleIndex mode)
    : n_(n), mode_(mode), succ_(n + 1), spectrum_(n + 1, 0), cycle_count_(n) {
  if (n == 0) throw std::invalid_argument("DynamicPermutation: n must be >= 1");
  for (std::uint32_t i = 0; i <= n; ++i) succ_[i] = i;
  spectrum_[1] = n;
  if (mode_ == CycleIndex::kTreap) {
    nodes_.resize(n + 1);
    nodes_[0].size = 0;
    for (std::uint32_t i = 1; i <= n; ++i) {
      nodes_[i].priority = static_cast<std::uint32_t>(mix64(kPrioritySalt ^ i) >> 32);
    }
  }
}

DynamicPermutation DynamicPermutation::identity(std::uint32_t n, CycleIndex mode) {
  return DynamicPermutation(n, mode);
}

DynamicPermutation DynamicPermutation::from_cycles(
    std::uint32_t n, const std::vector<std::vector<std::uint32_t>>& cycles,
    CycleIndex mode) {
  DynamicPermutation p(n, mode);
  std::vector<bool> seen(n + 1, false);
  for (const auto& cycle : cycles) {
    if (cycle.empty()) throw std::invalid_argument("from_cycles: empty cycle");
    for (std::uint32_t x : cycle) {
      p.check_position(x);
      if (seen[x]) {
        throw std::invalid_argument("from_cycles: element " + std::to_string(x) +
                                    " repeated");
      }
      seen[x] = true;
    }
    const std::size_t len = cycle.size();
    if (len == 1) continue;
    for (std::size_t k = 0; k < len; ++k) p.succ_[cycle[k]] = cycle[(k + 1) % len];
    p.count_cycle(1, -static_cast<int>(len));
    p.count_cycle(static_cast<std::uint32_t>(len), 1);
    p.cycle_count_ -= static_cast<std::uint32_t>(len - 1);
    p.largest_hint_ = std::max<std::uint32_t>(p.largest_hint_, static_cast<std::uint32_t>(len));
    if (mode == CycleIndex::kTreap) {
      std::uint32_t root = 0;
      for (std::uint32_t x : cycle) root = p.merge_root(root, x);
    }
  }
  return p;
}

void DynamicPermutation::check_position(std::uint32_t i) const {
  if (i < 1 || i > n_) {
    throw std::out_of_range("position " + std::to_string(i) + " outside [1, " +
                            std::to_string(n_) + "]");
  }
}

void DynamicPermutation::count_cycle(std::uint32_t size, int delta) {
  spectrum_[size] = static_cast<std::uint32_t>(static_cast<int>(spectrum_[size]) + delta);
}

std::uint32_t DynamicPermutation::image(std::uint32_t i) const {
  check_position(i);
  return succ_[i];
}

// ---- treap -----------------------------------------------------------------

void DynamicPermutation::pull(std::uint32_t t) {
  Node& node = nodes_[t];
  node.size = 1 + subtree_size(node.left) + subtree_size(node.right);
}

std::uint32_t DynamicPermutation::root_of(std::uint32_t x) const {
  while (nodes_[x].parent) x = nodes_[x].parent;
  return x;
}

std::uint32_t DynamicPermutation::rank_of(std::uint32_t x) const {
  std::uint32_t rank = subtree_size(nodes_[x].left);
  while (const std::uint32_t p = nodes_[x].parent) {
    if (nodes_[p].right == x) rank += subtree_size(nodes_[p].left) + 1;
    x = p;
  }
  return rank;
}

std::pair<std::uint32_t, std::uint32_t> DynamicPermutation::split(std::uint32_t t,
                                                                  std::uint32_t k) {
  if (!t) return {0, 0};
  Node& node = nodes_[t];
  if (subtree_size(node.left) >= k) {
    auto [a, b] = split(node.left, k);
    node.left = b;
    if (b) nodes_[b].parent = t;
    pull(t);
    return {a, t};
  }
  auto [a, b] = split(node.right, k - subtree_size(node.left) - 1);
  node.right = a;
  if (a) nodes_[a].parent = t;
  pull(t);
  return {t, b};
}

std::uint32_t DynamicPermutation::merge(std::uint32_t a, std::uint32_t b) {
  if (!a) return b;
  if (!b) return a;
  if (nodes_[a].priority > nodes_[b].priority) {
    const std::uint32_t r = merge(nodes_[a].right, b);
    nodes_[a].right = r;
    nodes_[r].parent = a;
    pull(a);
    return a;
  }
  const std::uint32_t l = merge(a, nodes_[b].left);
  nodes_[b].left = l;
  nodes_[l].parent = b;
  pull(b);
  return b;
}

std::pair<std::uint32_t, std::uint32_t> DynamicPermutation::split_root(std::uint32_t t,
                                                                       std::uint32_t k) {
  auto parts = split(t, k);
  if (parts.first) nodes_[parts.first].parent = 0;
  if (parts.second) nodes_[parts.second].parent = 0;
  return parts;
}

std::uint32_t DynamicPermutation::merge_root(std::uint32_t a, std::uint32_t b) {
  const std::uint32_t r = merge(a, b);
  if (r) nodes_[r].parent = 0;
  return r;
}

// Rotates the cyclic sequence holding x so that x comes last; the sequence
// then reads sigma(x), sigma^2(x), ..., x.
std::uint32_t DynamicPermutation::rotate_to_end(std::uint32_t x) {
  const std::uint32_t root = root_of(x);
  const std::uint32_t cut = rank_of(x) + 1;
  if (cut == nodes_[root].size) return root;
  auto [head, tail] = split_root(root, cut);
  return merge_root(tail, head);
}

// ---- traversal -------------------------------------------------------------

std::uint32_t DynamicPermutation::orbit_steps(std::uint32_t from, std::uint32_t to) const {
  std::uint32_t steps = 1;
  for (std::uint32_t x = succ_[from]; x != to; x = succ_[x]) {
    if (x == from) return 0;
    ++steps;
  }
  return steps;
}

// ---- public operations -----------------------------------------------------

TranspositionEffect DynamicPermutation::apply_transposition(std::uint32_t i,
                                                            std::uint32_t j) {
  check_position(i);
  check_position(j);
  TranspositionEffect effect;
  if (i == j) return effect;

  if (mode_ == CycleIndex::kTreap) {
    const std::uint32_t root_i = root_of(i);
    const std::uint32_t root_j = root_of(j);
    if (root_i != root_j) {
      effect.kind = TranspositionKind::kCoagulation;
      effect.parts = {nodes_[root_i].size, nodes_[root_j].size};
      // [sigma(i) .. i] followed by [sigma(j) .. j] is the merged orbit.
      merge_root(rotate_to_end(i), rotate_to_end(j));
    } else {
      effect.kind = TranspositionKind::kFragmentation;
      effect.whole = nodes_[root_i].size;
      const std::uint32_t seq = rotate_to_end(i);
      // [sigma(i) .. j] becomes one cycle, [sigma(j) .. i] the other.
      const std::uint32_t piece_j = rank_of(j) + 1;
      split_root(seq, piece_j);
      effect.parts = {piece_j, effect.whole - piece_j};
    }
  } else {
    const std::uint32_t steps = orbit_steps(i, j);
    if (steps == 0) {
      effect.kind = TranspositionKind::kCoagulation;
      effect.parts = {orbit_steps(i, i), orbit_steps(j, j)};
    } else {
      effect.kind = TranspositionKind::kFragmentation;
      effect.whole = orbit_steps(i, i);
      effect.parts = {steps, effect.whole - steps};
    }
  }

  std::swap(succ_[i], succ_[j]);
  if (effect.kind == TranspositionKind::kCoagulation) {
    effect.whole = effect.parts[0] + effect.parts[1];
    count_cycle(effect.parts[0], -1);
    count_cycle(effect.parts[1], -1);
    count_cycle(effect.whole, 1);
    --cycle_count_;
    largest_hint_ = std::max(largest_hint_, effect.whole);
  } else {
    count_cycle(effect.whole, -1);
    count_cycle(effect.parts[0], 1);
    count_cycle(effect.parts[1], 1);
    ++cycle_count_;
  }
  return effect;
}

bool DynamicPermutation::same_cycle(std::uint32_t i, std::uint32_t j) const {
  check_position(i);
  check_position(j);
  if (i == j) return true;
  if (mode_ == CycleIndex::kTreap) return root_of(i) == root_of(j);
  return orbit_steps(i, j) != 0;
}

std::uint32_t DynamicPermutation::cycle_size_of(std::uint32_t i) const {
  check_position(i);
  if (mode_ == CycleIndex::kTreap) return nodes_[root_of(i)].size;
  return orbit_steps(i, i);
}

CycleStats DynamicPermutation::cycle_stats(double mass_exponent) const {
  if (!(mass_exponent > 0.0 && mass_exponent < 1.0)) {
    throw std::invalid_argument("cycle_stats: mass exponent must lie in (0, 1)");
  }
  CycleStats stats;
  stats.cycle_count = cycle_count_;
  stats.cycle_size_of_one = cycle_size_of(1);
  const double threshold = std::pow(static_cast<double>(n_), mass_exponent);
  for (std::uint32_t k = largest_hint_; k >= 1; --k) {
    if (spectrum_[k] == 0) continue;
    if (stats.largest_cycle == 0) {
      stats.largest_cycle = k;
      largest_hint_ = k;
    }
    if (static_cast<double>(k) > threshold) {
      stats.mass_above += static_cast<std::uint64_t>(k) * spectrum_[k];
    } else {
      break;
    }
  }
  return stats;
}

std::vector<std::vector<std::uint32_t>> DynamicPermutation::cycles() const {
  std::vector<std::vector<std::uint32_t>> out;
  std::vector<bool> seen(n_ + 1, false);
  for (std::uint32_t start = 1; start <= n_; ++start) {
    if (seen[start]) continue;
    auto& cycle = out.emplace_back();
    for (std::uint32_t x = start; !seen[x]; x = succ_[x]) {
      seen[x] = true;
      cycle.push_back(x);
    }
  }
  return out;
}

}  // namespace cyclewalk
