#ifndef CYCLEWALK_BREAKPOINT_H_
#define CYCLEWALK_BREAKPOINT_H_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cyclewalk/rng.h"

namespace cyclewalk {

// Signed permutation of markers 1..m, e.g. 1 -7 6 -10 ...
class SignedGenome {
 public:
  SignedGenome() = default;
  // Throws std::invalid_argument unless |markers| is a permutation of 1..m.
  explicit SignedGenome(std::vector<std::int32_t> markers);

  static SignedGenome identity(std::uint32_t m);
  // Whitespace-separated signed integers.
  static SignedGenome parse(std::string_view line);

  std::size_t size() const { return markers_.size(); }
  std::span<const std::int32_t> markers() const { return markers_; }
  bool is_identity() const;

  // Reverses markers lo..hi (1-based, inclusive) and flips their signs.
  void reverse(std::size_t lo, std::size_t hi);

  std::string to_string() const;

  friend bool operator==(const SignedGenome&, const SignedGenome&) = default;

 private:
  std::vector<std::int32_t> markers_;
};

// +i -> (2i-1, 2i), -i -> (2i, 2i-1), framed by 0 and 2m+1.
std::vector<std::uint32_t> double_markers(const SignedGenome& genome);

// "0, 1 2, 14 13, ..., 23": commas between markers, spaces inside a doubled
// marker.
std::string format_doubled(std::span<const std::uint32_t> doubled);
std::vector<std::uint32_t> parse_doubled(std::string_view text);

struct BreakpointGraph {
  std::vector<std::uint32_t> doubled;
  // Each component lists its vertices in traversal order, alternating black
  // and gray edges.
  std::vector<std::vector<std::uint32_t>> components;

  std::size_t component_count() const { return components.size(); }
};

BreakpointGraph breakpoint_components(const SignedGenome& genome);

// c(pi) without materializing the component lists.
std::uint32_t breakpoint_component_count(const SignedGenome& genome);

// d0 = m + 1 - c(pi). A lower bound on the reversal distance: hurdle and
// fortress corrections are not computed.
std::uint32_t d0_lower_bound(const SignedGenome& genome);

SignedGenome apply_reversal(const SignedGenome& genome, std::size_t lo, std::size_t hi);

// One genome per line; '#' lines and blank lines are skipped.
std::vector<SignedGenome> read_genomes(std::istream& in);
std::vector<SignedGenome> read_genome_file(const std::string& path);

// ---- reversal walk coupled to the transposition walk ------------------------

struct ReversalStep {
  std::uint64_t k = 0;  // nontrivial steps so far, including this one
  int delta_c = 0;      // change in c(pi): -1, 0 or +1
  std::uint32_t d0 = 0;
  std::uint64_t transposition_distance = 0;  // D_k of the coupled walk
};

struct ReversalWalkTrace {
  std::uint32_t n_markers = 0;
  std::uint64_t raw_draws = 0;
  std::vector<ReversalStep> steps;  // one per nontrivial draw
  std::uint64_t merges = 0;         // delta_c = -1
  std::uint64_t no_change = 0;      // delta_c = 0
  std::uint64_t splits = 0;         // delta_c = +1
};

// Runs floor(c n / 2) uniform draws (i, j) on n = n_markers + 1 labels. Label
// l names the gap l - 1 between markers (gap 0 precedes marker 1, gap
// n_markers follows the last). A draw with i != j transposes i and j in the
// permutation walk and reverses the markers between the two gaps,
// min_gap + 1 .. max_gap, in the genome.
ReversalWalkTrace coupled_reversal_walk(std::uint32_t n_markers, double horizon_c, Rng& rng);

// Same coupling, run until exactly `steps` nontrivial draws have been made.
ReversalWalkTrace coupled_reversal_steps(std::uint32_t n_markers, std::uint64_t steps, Rng& rng);

// ---- sign assignment for unsigned data --------------------------------------

struct AnnealSchedule {
  std::uint64_t moves = 100'000;  // per restart
  double cooling = 0.99995;       // geometric, per move
  // <= 0 selects the temperature at which half of the uphill moves of a pilot
  // walk would be accepted.
  double initial_temperature = 0.0;
  std::uint32_t pilot_moves = 1000;
};

struct SignAssignment {
  std::vector<std::int8_t> signs;  // +1 / -1 per position
  std::uint32_t d0 = 0;
};

struct AnnealResult {
  SignAssignment best;
  std::vector<std::uint32_t> restart_best;  // best d0 of each restart
  std::vector<std::uint32_t> best_so_far;   // running minimum across restarts
};

SignedGenome apply_signs(std::span<const std::uint32_t> unsigned_order,
                         std::span<const std::int8_t> signs);

// Simulated annealing over sign vectors minimizing d0; a move flips one sign.
// Restart r uses stream r of `seed`.
AnnealResult anneal_signs(std::span<const std::uint32_t> unsigned_order,
                          const AnnealSchedule& schedule, std::uint32_t restarts,
                          std::uint64_t seed, unsigned threads = 0);

}  // namespace cyclewalk

#endif  // CYCLEWALK_BREAKPOINT_H_
