#ifndef CYCLEWALK_WALK_H_
#define CYCLEWALK_WALK_H_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <utility>
#include <vector>

#include "cyclewalk/dynamic_permutation.h"
#include "cyclewalk/multigraph.h"
#include "cyclewalk/rng.h"

namespace cyclewalk {

enum class TimeMode {
  kDiscrete,           // floor(c n / 2) draws
  kContinuousPoisson,  // Poisson(c n / 2) draws
};

inline constexpr double kDefaultMassExponent = 0.55;

struct WalkConfig {
  std::uint32_t n = 0;
  double horizon_c = 0.0;  // run to time c n / 2
  TimeMode time_mode = TimeMode::kContinuousPoisson;
  // Snapshot times in c units, within [0, horizon_c]. The horizon itself is
  // always recorded last.
  std::vector<double> snapshots;
  double mass_exponent = kDefaultMassExponent;
  std::uint64_t seed = 0;
  DynamicPermutation::CycleIndex cycle_index = DynamicPermutation::CycleIndex::kTreap;
  bool record_events = false;

  void validate() const;
};

struct SnapshotRecord {
  double label = 0.0;  // c, or r for critical-window traces
  std::uint64_t raw_events = 0;         // N, including i == j draws
  std::uint64_t nontrivial_events = 0;  // draws with i != j
  std::uint64_t distance = 0;           // D = n - cycles
  std::uint64_t fragmentations = 0;     // Z
  std::uint32_t cycle_of_one = 0;       // K1
  std::uint32_t largest_cycle = 0;      // L1
  std::uint64_t mass_upstairs = 0;      // N-up
  std::uint32_t components = 0;
  std::uint32_t giant = 0;
};

struct WalkEvent {
  std::uint32_t i = 0;
  std::uint32_t j = 0;
  TranspositionEffect effect;
  bool merged_components = false;
};

struct WalkTrace {
  std::vector<SnapshotRecord> snapshots;
  std::vector<WalkEvent> events;  // only with record_events
};

// The transposition walk and its edge-for-edge coupled multigraph. Every draw
// (i, j) transposes i and j and, when i != j, adds the edge {i, j}.
class CoupledWalk {
 public:
  explicit CoupledWalk(std::uint32_t n, DynamicPermutation::CycleIndex mode =
                                            DynamicPermutation::CycleIndex::kTreap);

  TranspositionEffect step(std::uint32_t i, std::uint32_t j);

  // Draws (i, j) uniformly with replacement and applies it.
  TranspositionEffect step(Rng& rng);

  SnapshotRecord snapshot(double label, double mass_exponent = kDefaultMassExponent) const;

  const DynamicPermutation& permutation() const { return perm_; }
  const EvolvingMultigraph& graph() const { return graph_; }
  std::uint64_t raw_events() const { return raw_; }
  std::uint64_t nontrivial_events() const { return nontrivial_; }
  std::uint64_t fragmentations() const { return fragmentations_; }
  bool last_step_merged() const { return last_merged_; }
  std::pair<std::uint32_t, std::uint32_t> last_draw() const { return last_draw_; }

 private:
  DynamicPermutation perm_;
  EvolvingMultigraph graph_;
  std::uniform_int_distribution<std::uint32_t> pick_;
  std::uint64_t raw_ = 0;
  std::uint64_t nontrivial_ = 0;
  std::uint64_t fragmentations_ = 0;
  bool last_merged_ = false;
  std::pair<std::uint32_t, std::uint32_t> last_draw_{0, 0};
};

// Number of draws by each snapshot time for a walk on n elements. Snapshot c
// values must be sorted; the result is cumulative.
std::vector<std::uint64_t> event_schedule(std::uint32_t n, std::span<const double> c_values,
                                          TimeMode mode, Rng& rng);

WalkTrace run(const WalkConfig& config, Rng& rng);

// Applies a fixed list of draws to identity(n) and snapshots at the end.
WalkTrace run_script(std::uint32_t n,
                     std::span<const std::pair<std::uint32_t, std::uint32_t>> draws,
                     bool record_events = true);

// c_n(r) = 1 - n^(-r/3).
double critical_time(std::uint32_t n, double r);

// W_n(r) = sqrt(6 / log n) (Z - (r/6) log n).
double critical_statistic(std::uint32_t n, double r, std::uint64_t fragmentations);

struct CriticalWindowSamples {
  std::vector<double> r_grid;
  std::vector<std::vector<double>> w;  // w[rep][index into r_grid]
};

// W_n(r) along each run for every r in r_grid (sorted, within [0, 1]).
CriticalWindowSamples critical_window_trace(std::uint32_t n, std::span<const double> r_grid,
                                            std::size_t reps, std::uint64_t seed,
                                            unsigned threads = 0);

struct FragmentationCensus {
  std::vector<std::uint64_t> histogram;  // histogram[z] = runs with Z_c = z
  std::size_t reps = 0;
  double mean = 0.0;
  double variance = 0.0;  // unbiased
};

// Z_c at time c n / 2 over independent runs.
FragmentationCensus fragmentation_census(std::uint32_t n, double c, std::size_t reps,
                                         std::uint64_t seed, TimeMode mode,
                                         unsigned threads = 0);

// CSV columns: rep,c_or_r,N_raw,N_nontrivial,D,Z,K1,L1,N_up,components,giant
void write_trace_header(std::ostream& out);
void write_trace_rows(std::ostream& out, std::size_t rep, const WalkTrace& trace);

}  // namespace cyclewalk

#endif  // CYCLEWALK_WALK_H_
