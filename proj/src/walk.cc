#include "cyclewalk/walk.h"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <random>
#include <stdexcept>

#include "cyclewalk/replicate.h"

namespace cyclewalk {

void WalkConfig::validate() const {
  if (n == 0) throw std::invalid_argument("walk: n must be >= 1");
  if (!(horizon_c > 0.0)) throw std::invalid_argument("walk: horizon_c must be > 0");
  if (!(mass_exponent > 0.0 && mass_exponent < 1.0)) {
    throw std::invalid_argument("walk: mass exponent must lie in (0, 1)");
  }
  for (double c : snapshots) {
    if (!(c >= 0.0 && c <= horizon_c)) {
      throw std::invalid_argument("walk: snapshot outside [0, horizon_c]");
    }
  }
  if (!std::is_sorted(snapshots.begin(), snapshots.end())) {
    throw std::invalid_argument("walk: snapshots must be sorted");
  }
}

CoupledWalk::CoupledWalk(std::uint32_t n, DynamicPermutation::CycleIndex mode)
    : perm_(DynamicPermutation::identity(n, mode)), graph_(n), pick_(1, n) {}

TranspositionEffect CoupledWalk::step(std::uint32_t i, std::uint32_t j) {
  const TranspositionEffect effect = perm_.apply_transposition(i, j);
  ++raw_;
  last_merged_ = false;
  last_draw_ = {i, j};
  if (effect.kind == TranspositionKind::kNoOp) return effect;
  ++nontrivial_;
  if (effect.kind == TranspositionKind::kFragmentation) ++fragmentations_;
  last_merged_ = graph_.add_edge(i, j);
  return effect;
}

TranspositionEffect CoupledWalk::step(Rng& rng) {
  const std::uint32_t i = pick_(rng);
  const std::uint32_t j = pick_(rng);
  return step(i, j);
}

SnapshotRecord CoupledWalk::snapshot(double label, double mass_exponent) const {
  const CycleStats stats = perm_.cycle_stats(mass_exponent);
  SnapshotRecord rec;
  rec.label = label;
  rec.raw_events = raw_;
  rec.nontrivial_events = nontrivial_;
  rec.distance = perm_.distance();
  rec.fragmentations = fragmentations_;
  rec.cycle_of_one = stats.cycle_size_of_one;
  rec.largest_cycle = stats.largest_cycle;
  rec.mass_upstairs = stats.mass_above;
  rec.components = graph_.component_count();
  rec.giant = graph_.giant_size();
  return rec;
}

std::vector<std::uint64_t> event_schedule(std::uint32_t n, std::span<const double> c_values,
                                          TimeMode mode, Rng& rng) {
  std::vector<std::uint64_t> counts;
  counts.reserve(c_values.size());
  const double half_n = static_cast<double>(n) / 2.0;
  double previous_c = 0.0;
  std::uint64_t total = 0;
  for (double c : c_values) {
    if (mode == TimeMode::kDiscrete) {
      total = std::max(total, static_cast<std::uint64_t>(std::floor(c * half_n)));
    } else {
      const double mean = (c - previous_c) * half_n;
      if (mean > 0.0) {
        std::poisson_distribution<std::uint64_t> increment(mean);
        total += increment(rng);
      }
      previous_c = std::max(previous_c, c);
    }
    counts.push_back(total);
  }
  return counts;
}

WalkTrace run(const WalkConfig& config, Rng& rng) {
  config.validate();
  std::vector<double> times = config.snapshots;
  if (times.empty() || times.back() < config.horizon_c) times.push_back(config.horizon_c);
  const auto targets = event_schedule(config.n, times, config.time_mode, rng);

  CoupledWalk walk(config.n, config.cycle_index);
  WalkTrace trace;
  trace.snapshots.reserve(times.size());
  for (std::size_t s = 0; s < times.size(); ++s) {
    while (walk.raw_events() < targets[s]) {
      const TranspositionEffect effect = walk.step(rng);
      if (config.record_events) {
        const auto [i, j] = walk.last_draw();
        trace.events.push_back({i, j, effect, walk.last_step_merged()});
      }
    }
    trace.snapshots.push_back(walk.snapshot(times[s], config.mass_exponent));
  }
  return trace;
}

WalkTrace run_script(std::uint32_t n,
                     std::span<const std::pair<std::uint32_t, std::uint32_t>> draws,
                     bool record_events) {
  CoupledWalk walk(n);
  WalkTrace trace;
  for (const auto& [i, j] : draws) {
    const TranspositionEffect effect = walk.step(i, j);
    if (record_events) trace.events.push_back({i, j, effect, walk.last_step_merged()});
  }
  const double c = 2.0 * static_cast<double>(walk.raw_events()) / n;
  trace.snapshots.push_back(walk.snapshot(c));
  return trace;
}

double critical_time(std::uint32_t n, double r) {
  if (!(r >= 0.0 && r <= 1.0)) throw std::invalid_argument("critical window r must lie in [0, 1]");
  return 1.0 - std::pow(static_cast<double>(n), -r / 3.0);
}

double critical_statistic(std::uint32_t n, double r, std::uint64_t fragmentations) {
  const double log_n = std::log(static_cast<double>(n));
  return std::sqrt(6.0 / log_n) * (static_cast<double>(fragmentations) - r / 6.0 * log_n);
}

CriticalWindowSamples critical_window_trace(std::uint32_t n, std::span<const double> r_grid,
                                            std::size_t reps, std::uint64_t seed,
                                            unsigned threads) {
  if (n < 2) throw std::invalid_argument("critical window needs n >= 2");
  if (!std::is_sorted(r_grid.begin(), r_grid.end())) {
    throw std::invalid_argument("critical window r grid must be sorted");
  }
  std::vector<double> times;
  times.reserve(r_grid.size());
  for (double r : r_grid) times.push_back(critical_time(n, r));

  CriticalWindowSamples out;
  out.r_grid.assign(r_grid.begin(), r_grid.end());
  out.w = replicate(reps, seed, threads, [&](std::size_t, Rng& rng) {
    const auto targets = event_schedule(n, times, TimeMode::kContinuousPoisson, rng);
    CoupledWalk walk(n);
    std::vector<double> w;
    w.reserve(times.size());
    for (std::size_t s = 0; s < times.size(); ++s) {
      while (walk.raw_events() < targets[s]) walk.step(rng);
      w.push_back(critical_statistic(n, out.r_grid[s], walk.fragmentations()));
    }
    return w;
  });
  return out;
}

FragmentationCensus fragmentation_census(std::uint32_t n, double c, std::size_t reps,
                                         std::uint64_t seed, TimeMode mode,
                                         unsigned threads) {
  if (n == 0) throw std::invalid_argument("census: n must be >= 1");
  if (!(c > 0.0)) throw std::invalid_argument("census: c must be > 0");
  const std::vector<double> horizon{c};
  const auto counts = replicate(reps, seed, threads, [&](std::size_t, Rng& rng) {
    const std::uint64_t target = event_schedule(n, horizon, mode, rng).front();
    CoupledWalk walk(n);
    while (walk.raw_events() < target) walk.step(rng);
    return walk.fragmentations();
  });

  FragmentationCensus census;
  census.reps = reps;
  double sum = 0.0;
  for (std::uint64_t z : counts) {
    if (z >= census.histogram.size()) census.histogram.resize(z + 1, 0);
    ++census.histogram[z];
    sum += static_cast<double>(z);
  }
  if (reps > 0) census.mean = sum / static_cast<double>(reps);
  if (reps > 1) {
    double ss = 0.0;
    for (std::uint64_t z : counts) {
      const double d = static_cast<double>(z) - census.mean;
      ss += d * d;
    }
    census.variance = ss / static_cast<double>(reps - 1);
  }
  return census;
}

void write_trace_header(std::ostream& out) {
  out << "rep,c_or_r,N_raw,N_nontrivial,D,Z,K1,L1,N_up,components,giant\n";
}

void write_trace_rows(std::ostream& out, std::size_t rep, const WalkTrace& trace) {
  for (const SnapshotRecord& s : trace.snapshots) {
    out << rep << ',' << std::setprecision(12) << s.label << ',' << s.raw_events << ',' << s.nontrivial_events << ','
        << s.distance << ',' << s.fragmentations << ',' << s.cycle_of_one << ','
        << s.largest_cycle << ',' << s.mass_upstairs << ',' << s.components << ','
        << s.giant << '\n';
  }
}

}  // namespace cyclewalk
