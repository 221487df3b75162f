// Acceptance suite: one PASS/FAIL line per criterion.
// Usage: acceptance [criterion numbers...]   (no arguments runs all)
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "cyclewalk/breakpoint.h"
#include "cyclewalk/cqs.h"
#include "cyclewalk/dynamic_permutation.h"
#include "cyclewalk/experiment.h"
#include "cyclewalk/rng.h"
#include "cyclewalk/walk.h"
#include "oracles.h"

using namespace cyclewalk;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  int id;
  std::string title;
  double limit_seconds;  // 0: no runtime requirement
  std::function<Outcome()> run;
};

std::string num(double v) { return format_number(v); }

ExperimentResult experiment(const std::string& name) {
  ExperimentSpec spec;
  spec.name = name;
  spec.seed = 1;
  return run_experiment(spec);
}

Outcome from_checks(const ExperimentResult& r, const std::vector<std::string>& keys) {
  Outcome out{r.all_pass(), ""};
  std::ostringstream ss;
  for (const auto& key : keys) ss << key << '=' << num(r.metric(key)) << ' ';
  for (const Check& c : r.checks) ss << '[' << (c.pass ? "ok " : "FAIL ") << c.name << ": " << c.criterion << "] ";
  out.detail = ss.str();
  return out;
}

Outcome identity_battery() {
  Rng rng = make_stream(1, 0);
  std::uint64_t snapshots = 0, violations = 0;
  for (int r = 0; r < 1000; ++r) {
    WalkConfig config;
    config.n = 2 + static_cast<std::uint32_t>(rng() % 2000);
    config.horizon_c = 0.1 + static_cast<double>(rng() % 600) / 100.0;
    config.time_mode = r % 2 ? TimeMode::kDiscrete : TimeMode::kContinuousPoisson;
    for (int s = 1; s < 20; ++s) config.snapshots.push_back(config.horizon_c * s / 20.0);
    for (const auto& s : run(config, rng).snapshots) {
      ++snapshots;
      violations += s.distance != s.nontrivial_events - 2 * s.fragmentations;
    }
  }
  // Every step of scripted walks.
  for (int r = 0; r < 200; ++r) {
    const std::uint32_t n = 2 + static_cast<std::uint32_t>(rng() % 300);
    CoupledWalk walk(n);
    for (std::uint32_t s = 0; s < 3 * n; ++s) {
      walk.step(rng);
      ++snapshots;
      violations += walk.permutation().distance() != walk.nontrivial_events() - 2 * walk.fragmentations();
    }
  }
  return {violations == 0, "snapshots=" + std::to_string(snapshots) + " violations=" + std::to_string(violations)};
}

Outcome breakpoint_exact() {
  const auto mouse = SignedGenome::parse("1 -7 6 -10 9 -8 2 -11 -3 5 4");
  const std::string line = "0, 1 2, 14 13, 11 12, 20 19, 17 18, 16 15, 3 4, 22 21, 6 5, 9 10, 7 8, 23";
  const auto c = breakpoint_component_count(mouse);
  const auto d0 = d0_lower_bound(mouse);
  bool identity_ok = true;
  for (std::uint32_t m = 1; m <= 200; ++m) identity_ok = identity_ok && d0_lower_bound(SignedGenome::identity(m)) == 0;
  const bool round_trip = format_doubled(double_markers(mouse)) == line &&
                          parse_doubled(line) == double_markers(mouse) &&
                          format_doubled(parse_doubled(line)) == line;
  return {c == 5 && d0 == 7 && identity_ok && round_trip,
          "c=" + std::to_string(c) + " d0=" + std::to_string(d0) + " identity_d0_zero=" +
              (identity_ok ? "yes" : "no") + " round_trip=" + (round_trip ? "exact" : "mismatch")};
}

Outcome table_one() {
  const auto genomes = read_genome_file(CYCLEWALK_DATA_DIR "/repleta.txt");
  std::vector<std::uint32_t> order;
  for (auto m : genomes.at(0).markers()) order.push_back(static_cast<std::uint32_t>(std::abs(m)));
  const auto r = anneal_signs(order, AnnealSchedule{}, 20, 1, 0);
  const auto hits = std::count(r.restart_best.begin(), r.restart_best.end(), 54u);
  std::ostringstream ss;
  ss << "restarts_at_54=" << hits << "/20 best_d0=" << r.best.d0 << " restart_best=";
  for (std::size_t i = 0; i < r.restart_best.size(); ++i) ss << (i ? ";" : "") << r.restart_best[i];
  return {hits >= 1, ss.str()};
}

Outcome cqs_law() {
  const auto r = experiment("cqs-bounds");
  double worst = 0.0;
  for (unsigned x = 0; x <= 10; ++x) {
    worst = std::max(worst, std::abs(oracle::excursion_tail_linear_solve(x) - excursion_tail_exact(x)));
  }
  Outcome out = from_checks(r, {"max_tail_error_x_le_4", "reps_within_total_bound"});
  out.pass = out.pass && worst <= 1e-9;
  out.detail += "linear_solve_max_error=" + num(worst);
  return out;
}

Outcome oracle_equivalence() {
  Rng rng = make_stream(1, 14);
  std::uint64_t steps = 0, mismatches = 0;
  for (int walk_id = 0; walk_id < 1000; ++walk_id) {
    const std::uint32_t n = 1 + static_cast<std::uint32_t>(rng() % 200);
    CoupledWalk walk(n);
    oracle::NaivePermutation ref(n);
    oracle::FlaggedComponents flags(n);
    for (std::uint32_t s = 0; s < 2 * n; ++s) {
      const auto effect = walk.step(rng);
      const auto [i, j] = walk.last_draw();
      ref.transpose(i, j);
      if (i != j) {
        flags.unite(i, j);
        if (effect.kind == TranspositionKind::kFragmentation) flags.fragmented[flags.find(i)] = true;
      }
      ++steps;
      const auto& p = walk.permutation();
      bool ok = true;
      const auto spectrum = ref.spectrum();
      ok = ok && std::equal(spectrum.begin(), spectrum.end(), p.spectrum().begin());
      const auto stats = p.cycle_stats(kDefaultMassExponent);
      ok = ok && stats.cycle_count == ref.cycles().size();
      ok = ok && stats.cycle_size_of_one == ref.cycle_size_of(1);
      std::uint32_t largest = 0;
      for (std::size_t k = 1; k < spectrum.size(); ++k) {
        if (spectrum[k]) largest = static_cast<std::uint32_t>(k);
      }
      ok = ok && stats.largest_cycle == largest;
      for (std::uint32_t v = 1; v <= n && ok; ++v) {
        ok = ok && p.image(v) == ref.img[v];
        ok = ok && walk.graph().connected(v, ref.img[v]);
        const bool tree = walk.graph().class_of(v) == ComponentClass::kTree;
        ok = ok && tree == !flags.fragmented[flags.find(v)];
      }
      mismatches += !ok;
    }
  }
  return {mismatches == 0, "steps=" + std::to_string(steps) + " mismatches=" + std::to_string(mismatches)};
}

std::vector<Criterion> criteria() {
  return {
      {1, "D = N_nontrivial - 2Z at every snapshot", 0, identity_battery},
      {2, "subcritical fragmentation count is Poisson(kappa) at n=2000, c=0.8", 60,
       [] { return from_checks(experiment("thm1"), {"mean", "se", "kappa", "variance_over_mean", "tv_to_poisson_kappa"}); }},
      {3, "fragmentation mean and Poisson fit at n=100, c=1", 30,
       [] { return from_checks(experiment("fig3"), {"mean", "tv_to_poisson_same_mean"}); }},
      {4, "critical window statistic W(1) at n=1e5", 600,
       [] {
         return from_checks(experiment("thm2"), {"mean_w1", "se_w1", "var_w1", "increment_correlation",
                                                 "predicted_mean_w1", "predicted_var_w1",
                                                 "mean_standardized_by_kappa", "var_standardized_by_kappa"});
       }},
      {5, "distance law of large numbers", 120,
       [] { return from_checks(experiment("thm3"), {"abs_error_c1.5", "abs_error_c2", "abs_error_c3"}); }},
      {6, "distance CLT at c=2", 600,
       [] { return from_checks(experiment("thm4"), {"sd", "sigma", "variance", "ks_fitted_normal", "ks_limit_normal"}); }},
      {7, "mass on large cycles", 60,
       [] { return from_checks(experiment("thm5"), {"mean_mass_upstairs_over_n", "theta"}); }},
      {8, "K1/n against theta^2/2", 300,
       [] { return from_checks(experiment("fig4"), {"max_abs_error_c_ge_1.5", "max_mean_c_le_1"}); }},
      {9, "P(K1 <= 4) against Borel mass at n=100, c=2", 120,
       [] {
         return from_checks(experiment("fig5"), {"p_k1_le_4", "borel_mass_le_4", "p_k1_le_4_tree_component",
                                                 "p_k1_le_4_other_component"});
       }},
      {10, "breakpoint graph exact values", 0, breakpoint_exact},
      {11, "sign annealing on the 79-gene order reaches d0 = 54", 120, table_one},
      {12, "reversal coupling no-change fraction", 120,
       [] {
         return from_checks(experiment("fig2"), {"no_change_fraction_c1", "no_change_share_of_noncoagulating_c1",
                                                 "reversal_gap_shortfall_c1"});
       }},
      {13, "excursion maximum law and queue occupancy bound", 60, cqs_law},
      {14, "incremental structures equal naive oracles", 0, oracle_equivalence},
      {15, "cluster tail bound", 60,
       [] { return from_checks(experiment("lemma3-tail"), {"max_excess_over_bound_plus_3se"}); }},
  };
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<int> selected;
  for (int i = 1; i < argc; ++i) selected.push_back(std::atoi(argv[i]));
  int failures = 0;
  for (const Criterion& c : criteria()) {
    if (!selected.empty() && std::find(selected.begin(), selected.end(), c.id) == selected.end()) continue;
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = c.run();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    bool pass = out.pass;
    std::string timing = "time=" + num(std::round(seconds * 10) / 10) + "s";
    if (c.limit_seconds > 0) {
      timing += " limit=" + num(c.limit_seconds) + "s";
      if (seconds >= c.limit_seconds) {
        pass = false;
        timing += " (over limit)";
      }
    }
    failures += !pass;
    std::printf("CRITERION %2d %s: %s | %s| %s\n", c.id, pass ? "PASS" : "FAIL", c.title.c_str(), out.detail.c_str(),
                timing.c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
