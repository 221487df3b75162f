#include "cyclewalk/experiment.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "cyclewalk/breakpoint.h"
#include "cyclewalk/cqs.h"
#include "cyclewalk/multigraph.h"
#include "cyclewalk/replicate.h"
#include "cyclewalk/stats.h"
#include "cyclewalk/theory.h"
#include "cyclewalk/walk.h"

namespace cyclewalk {
namespace {

std::string fmt(double v) { return format_number(v); }
std::string fmt(std::uint64_t v) { return std::to_string(v); }

std::vector<double> grid(double from, double to, double step) {
  std::vector<double> out;
  const auto count = static_cast<int>(std::floor((to - from) / step + 1e-9));
  for (int i = 0; i <= count; ++i) out.push_back(from + i * step);
  return out;
}

void add_check(ExperimentResult& result, std::string name, double value, std::string criterion,
               bool pass) {
  result.checks.push_back({std::move(name), value, std::move(criterion), pass});
}

std::string grid_string(const std::vector<double>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ';';
    out += fmt(values[i]);
  }
  return out;
}

std::vector<double> parse_grid(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ';')) {
    if (!item.empty()) out.push_back(std::stod(item));
  }
  return out;
}

struct Defaults {
  std::uint32_t n;
  double c;
  std::vector<double> c_grid;
  std::uint64_t reps;
  double a;
};

const std::map<std::string, Defaults>& defaults() {
  static const std::map<std::string, Defaults> table = {
      {"fig2", {100, 2.0, {}, 10'000, kDefaultMassExponent}},
      {"fig3", {100, 1.0, {}, 10'000, kDefaultMassExponent}},
      {"fig4", {1000, 3.0, grid(0.0, 3.0, 0.25), 10'000, kDefaultMassExponent}},
      {"fig5", {100, 2.0, {}, 100'000, kDefaultMassExponent}},
      {"thm1", {2000, 0.8, grid(0.2, 0.9, 0.1), 5000, kDefaultMassExponent}},
      {"thm2", {100'000, 1.0, grid(0.0, 1.0, 0.1), 2000, kDefaultMassExponent}},
      {"thm3", {10'000, 3.0, {1.5, 2.0, 3.0}, 200, kDefaultMassExponent}},
      {"thm4", {10'000, 2.0, {}, 2000, kDefaultMassExponent}},
      {"thm5", {10'000, 2.0, {}, 100, kDefaultMassExponent}},
      {"cqs-bounds", {10'000, 2.0, {}, 100, kDefaultMassExponent}},
      {"lemma3-tail", {10'000, 0.8, {0.5, 0.8}, 10'000, kDefaultMassExponent}},
      {"eq4-trees", {500, 1.0, {}, 10'000, kDefaultMassExponent}},
  };
  return table;
}

void require(bool ok, const ExperimentSpec& spec, const std::string& what) {
  if (!ok) throw std::invalid_argument(spec.name + ": " + what);
}

// ---- experiments --------------------------------------------------------------

ExperimentResult run_fig2(const ExperimentSpec& spec) {
  ExperimentResult result;
  const std::uint32_t markers = *spec.params.n;
  const double n = markers + 1.0;
  const auto k_max = static_cast<std::uint64_t>(std::floor(*spec.params.c * n / 2.0));
  const auto runs = replicate(*spec.params.reps, spec.seed, spec.threads,
                              [&](std::size_t, Rng& rng) {
                                return coupled_reversal_steps(markers, k_max, rng).steps;
                              });
  std::vector<double> transposition(k_max + 1, 0.0), reversal(k_max + 1, 0.0);
  for (const auto& steps : runs) {
    for (const ReversalStep& s : steps) {
      transposition[s.k] += static_cast<double>(s.k - s.transposition_distance);
      reversal[s.k] += static_cast<double>(s.k - s.d0);
    }
  }
  const double reps = static_cast<double>(*spec.params.reps);
  Table curve{"curve", {"c", "k", "transposition_deficit", "reversal_deficit", "theory"}, {}};
  for (std::uint64_t k = 1; k <= k_max; ++k) {
    const double c = 2.0 * static_cast<double>(k) / n;
    curve.add_row({fmt(c), fmt(k), fmt(transposition[k] / reps / n), fmt(reversal[k] / reps / n),
                   fmt(c / 2.0 - theory::u_distance(c))});
  }
  result.tables.push_back(std::move(curve));

  // Breakpoint-graph move classes up to c = 1, on an independent set of runs.
  const auto census = replicate(*spec.params.reps, stream_seed(spec.seed, 0xf16'2), spec.threads,
                                [&](std::size_t, Rng& rng) {
                                  return coupled_reversal_walk(markers, 1.0, rng);
                                });
  std::uint64_t steps = 0, no_change = 0, merges = 0, splits = 0;
  double transposition_gap = 0.0, reversal_gap = 0.0;
  for (const ReversalWalkTrace& t : census) {
    steps += t.steps.size();
    no_change += t.no_change;
    merges += t.merges;
    splits += t.splits;
    if (!t.steps.empty()) {
      const ReversalStep& last = t.steps.back();
      transposition_gap += static_cast<double>(last.k - last.transposition_distance);
      reversal_gap += static_cast<double>(last.k - last.d0);
    }
  }
  const double no_change_fraction = steps ? static_cast<double>(no_change) / steps : 0.0;
  result.summary["steps_to_c1"] = static_cast<double>(steps);
  result.summary["merge_steps"] = static_cast<double>(merges);
  result.summary["no_change_steps"] = static_cast<double>(no_change);
  result.summary["split_steps"] = static_cast<double>(splits);
  result.summary["no_change_fraction_c1"] = no_change_fraction;
  result.summary["no_change_share_of_noncoagulating_c1"] =
      (no_change + splits) ? static_cast<double>(no_change) / (no_change + splits) : 0.0;
  result.summary["mean_transposition_gap_c1"] = transposition_gap / reps;
  result.summary["mean_reversal_gap_c1"] = reversal_gap / reps;
  result.summary["reversal_gap_shortfall_c1"] =
      transposition_gap > 0 ? 1.0 - reversal_gap / transposition_gap : 0.0;
  add_check(result, "no_change_fraction_c1", no_change_fraction, "|x - 0.23| <= 0.03",
            std::abs(no_change_fraction - 0.23) <= 0.03);
  return result;
}

ExperimentResult run_fig3(const ExperimentSpec& spec) {
  ExperimentResult result;
  const auto census = fragmentation_census(*spec.params.n, *spec.params.c, *spec.params.reps,
                                           spec.seed, TimeMode::kDiscrete, spec.threads);
  const double m = census.mean;
  Table hist{"histogram", {"z", "count", "empirical", "poisson_same_mean"}, {}};
  const auto p = stats::normalize(census.histogram);
  for (std::size_t z = 0; z < census.histogram.size(); ++z) {
    hist.add_row({fmt(std::uint64_t{z}), fmt(census.histogram[z]), fmt(p[z]),
                  fmt(stats::poisson_pmf(m, z))});
  }
  result.tables.push_back(std::move(hist));
  const double tv =
      stats::tv_distance(census.histogram, [m](std::uint64_t k) { return stats::poisson_pmf(m, k); });
  result.summary["mean"] = m;
  result.summary["variance"] = census.variance;
  result.summary["tv_to_poisson_same_mean"] = tv;
  result.summary["log_n_over_6"] = std::log(static_cast<double>(*spec.params.n)) / 6.0;
  add_check(result, "mean", m, "0.632 <= mean <= 0.692", m >= 0.632 && m <= 0.692);
  add_check(result, "tv_to_poisson_same_mean", tv, "< 0.05", tv < 0.05);
  return result;
}

ExperimentResult run_fig4(const ExperimentSpec& spec) {
  ExperimentResult result;
  WalkConfig config;
  config.n = *spec.params.n;
  config.snapshots = spec.params.c_grid;
  config.horizon_c = std::max(spec.params.c_grid.back(), 1e-9);
  config.time_mode = TimeMode::kDiscrete;
  const auto traces = replicate(*spec.params.reps, spec.seed, spec.threads,
                                [&](std::size_t, Rng& rng) { return run(config, rng).snapshots; });
  Table curve{"curve", {"c", "mean_k1_over_n", "se", "theta_sq_over_2"}, {}};
  const double n = config.n;
  bool pass_super = true;
  bool pass_sub = true;
  double worst = 0.0, worst_sub = 0.0;
  for (std::size_t s = 0; s < config.snapshots.size(); ++s) {
    std::vector<double> xs;
    xs.reserve(traces.size());
    for (const auto& t : traces) xs.push_back(t[s].cycle_of_one / n);
    const double c = config.snapshots[s];
    const double th = c > 0.0 ? theory::theta(c) : 0.0;
    const double target = th * th / 2.0;
    const double m = stats::mean(xs);
    curve.add_row({fmt(c), fmt(m), fmt(stats::standard_error(xs)), fmt(target)});
    if (c >= 1.5) {
      worst = std::max(worst, std::abs(m - target));
      pass_super = pass_super && std::abs(m - target) <= 0.02;
    }
    if (c <= 1.0) {
      worst_sub = std::max(worst_sub, m);
      pass_sub = pass_sub && m <= 0.01;
    }
  }
  result.tables.push_back(std::move(curve));
  result.summary["max_abs_error_c_ge_1.5"] = worst;
  result.summary["max_mean_c_le_1"] = worst_sub;
  add_check(result, "k1_supercritical", worst, "within 0.02 of theta^2/2 for c >= 1.5", pass_super);
  add_check(result, "k1_subcritical", worst_sub, "<= 0.01 for c <= 1", pass_sub);
  return result;
}

ExperimentResult run_fig5(const ExperimentSpec& spec) {
  ExperimentResult result;
  const std::uint32_t n = *spec.params.n;
  const double c = *spec.params.c;
  const auto draws = static_cast<std::uint64_t>(std::floor(c * n / 2.0));
  struct Sample {
    std::uint32_t k1;
    bool tree;  // component of 1 is a tree
  };
  const auto samples = replicate(*spec.params.reps, spec.seed, spec.threads,
                                 [&](std::size_t, Rng& rng) {
                                   CoupledWalk walk(n);
                                   for (std::uint64_t s = 0; s < draws; ++s) walk.step(rng);
                                   return Sample{walk.permutation().cycle_size_of(1),
                                                 walk.graph().class_of(1) == ComponentClass::kTree};
                                 });
  std::vector<std::uint64_t> hist(n + 1, 0), tree_hist(n + 1, 0);
  for (const Sample& s : samples) {
    ++hist[s.k1];
    if (s.tree) ++tree_hist[s.k1];
  }
  const auto p = stats::normalize(hist);
  const double reps = static_cast<double>(samples.size());
  Table table{"histogram", {"k", "count", "empirical", "tree_component", "borel_overlay"}, {}};
  for (std::uint32_t k = 1; k <= n; ++k) {
    table.add_row({fmt(std::uint64_t{k}), fmt(hist[k]), fmt(p[k]), fmt(tree_hist[k] / reps),
                   fmt(theory::borel_pmf(c, k))});
  }
  result.tables.push_back(std::move(table));
  double small = 0.0, small_tree = 0.0, small_theory = 0.0;
  for (std::uint32_t k = 1; k <= std::min<std::uint32_t>(4, n); ++k) {
    small += p[k];
    small_tree += tree_hist[k] / reps;
    small_theory += theory::borel_pmf(c, k);
  }
  result.summary["p_k1_le_4"] = small;
  result.summary["p_k1_le_4_tree_component"] = small_tree;
  result.summary["p_k1_le_4_other_component"] = small - small_tree;
  result.summary["borel_mass_le_4"] = small_theory;
  add_check(result, "p_k1_le_4", small, "within 0.02 of sum_{k<=4} beta_k(c)",
            std::abs(small - small_theory) <= 0.02);
  return result;
}

ExperimentResult run_thm1(const ExperimentSpec& spec) {
  ExperimentResult result;
  WalkConfig config;
  config.n = *spec.params.n;
  config.snapshots = spec.params.c_grid;
  const double c = *spec.params.c;
  if (std::find(config.snapshots.begin(), config.snapshots.end(), c) == config.snapshots.end()) {
    config.snapshots.push_back(c);
    std::sort(config.snapshots.begin(), config.snapshots.end());
  }
  config.horizon_c = config.snapshots.back();
  const auto traces = replicate(*spec.params.reps, spec.seed, spec.threads,
                                [&](std::size_t, Rng& rng) { return run(config, rng).snapshots; });

  Table curve{"compensator", {"c", "mean_z", "se", "kappa", "z_score"}, {}};
  bool within = true;
  std::vector<std::uint64_t> hist;
  for (std::size_t s = 0; s < config.snapshots.size(); ++s) {
    std::vector<double> zs;
    for (const auto& t : traces) zs.push_back(static_cast<double>(t[s].fragmentations));
    const double cs = config.snapshots[s];
    const double m = stats::mean(zs);
    const double se = stats::standard_error(zs);
    const double k = theory::kappa(cs);
    const double z = se > 0 ? (m - k) / se : 0.0;
    curve.add_row({fmt(cs), fmt(m), fmt(se), fmt(k), fmt(z)});
    within = within && std::abs(m - k) <= 3.0 * se;
    if (cs == c) {
      for (const auto& t : traces) {
        const auto zv = t[s].fragmentations;
        if (zv >= hist.size()) hist.resize(zv + 1, 0);
        ++hist[zv];
      }
      result.summary["mean"] = m;
      result.summary["se"] = se;
      result.summary["kappa"] = k;
      result.summary["variance_over_mean"] = m > 0 ? stats::variance(zs) / m : 0.0;
    }
  }
  const double k = theory::kappa(c);
  const double tv =
      stats::tv_distance(hist, [k](std::uint64_t z) { return stats::poisson_pmf(k, z); });
  result.summary["tv_to_poisson_kappa"] = tv;
  Table table{"histogram", {"z", "count", "empirical", "poisson_kappa"}, {}};
  const auto p = stats::normalize(hist);
  for (std::size_t z = 0; z < hist.size(); ++z) {
    table.add_row({fmt(std::uint64_t{z}), fmt(hist[z]), fmt(p[z]), fmt(stats::poisson_pmf(k, z))});
  }
  result.tables.insert(result.tables.begin(), std::move(table));
  result.tables.push_back(std::move(curve));
  const double m = result.summary["mean"];
  const double se = result.summary["se"];
  const double ratio = result.summary["variance_over_mean"];
  add_check(result, "mean_within_3se", m, "|mean - kappa(c)| <= 3 se", std::abs(m - k) <= 3 * se);
  add_check(result, "variance_over_mean", ratio, "in [0.9, 1.1]", ratio >= 0.9 && ratio <= 1.1);
  add_check(result, "tv_to_poisson_kappa", tv, "< 0.03", tv < 0.03);
  add_check(result, "compensator_grid", within ? 1.0 : 0.0, "every grid mean within 3 se", within);
  return result;
}

ExperimentResult run_thm2(const ExperimentSpec& spec) {
  ExperimentResult result;
  const auto samples = critical_window_trace(*spec.params.n, spec.params.c_grid,
                                             *spec.params.reps, spec.seed, spec.threads);
  Table table{"critical_window", {"r", "mean_w", "se", "var_w"}, {}};
  const std::size_t cols = samples.r_grid.size();
  auto column = [&](std::size_t s) {
    std::vector<double> xs;
    xs.reserve(samples.w.size());
    for (const auto& row : samples.w) xs.push_back(row[s]);
    return xs;
  };
  for (std::size_t s = 0; s < cols; ++s) {
    const auto xs = column(s);
    table.add_row({fmt(samples.r_grid[s]), fmt(stats::mean(xs)), fmt(stats::standard_error(xs)),
                   fmt(stats::variance(xs))});
  }
  result.tables.push_back(std::move(table));

  auto index_of = [&](double r) -> std::optional<std::size_t> {
    for (std::size_t s = 0; s < cols; ++s) {
      if (std::abs(samples.r_grid[s] - r) < 1e-9) return s;
    }
    return std::nullopt;
  };
  if (const auto last = index_of(1.0)) {
    const auto w1 = column(*last);
    const double m = stats::mean(w1), se = stats::standard_error(w1), v = stats::variance(w1);
    result.summary["mean_w1"] = m;
    result.summary["se_w1"] = se;
    result.summary["var_w1"] = v;
    // Same samples centred and scaled by the exact Poisson compensator kappa(c_n(1)).
    const double log_n = std::log(static_cast<double>(*spec.params.n));
    const double scale = std::sqrt(6.0 / log_n);
    const double k1 = theory::kappa(critical_time(*spec.params.n, 1.0));
    std::vector<double> standardized;
    for (double w : w1) {
      const double z = w / scale + log_n / 6.0;
      standardized.push_back((z - k1) / std::sqrt(k1));
    }
    result.summary["kappa_c_n_1"] = k1;
    result.summary["predicted_mean_w1"] = scale * (k1 - log_n / 6.0);
    result.summary["predicted_var_w1"] = scale * scale * k1;
    result.summary["mean_standardized_by_kappa"] = stats::mean(standardized);
    result.summary["var_standardized_by_kappa"] = stats::variance(standardized);
    add_check(result, "mean_w1", m, "|mean| <= 3 se", std::abs(m) <= 3 * se);
    add_check(result, "var_w1", v, "in [0.85, 1.15]", v >= 0.85 && v <= 1.15);
  }
  const auto early = index_of(0.4);
  const auto late = index_of(0.9);
  if (early && late) {
    const auto a = column(*early);
    auto b = column(*late);
    for (std::size_t i = 0; i < b.size(); ++i) b[i] -= a[i];
    const double corr = stats::correlation(a, b);
    result.summary["increment_correlation"] = corr;
    add_check(result, "increment_correlation", corr, "|corr| < 0.1", std::abs(corr) < 0.1);
  }
  return result;
}

ExperimentResult run_thm3(const ExperimentSpec& spec) {
  ExperimentResult result;
  WalkConfig config;
  config.n = *spec.params.n;
  config.snapshots = spec.params.c_grid;
  config.horizon_c = config.snapshots.back();
  const auto traces = replicate(*spec.params.reps, spec.seed, spec.threads,
                                [&](std::size_t, Rng& rng) { return run(config, rng).snapshots; });
  Table table{"distance", {"c", "mean_d_over_n", "se", "u_closed", "u_series", "abs_error"}, {}};
  bool pass = true;
  for (std::size_t s = 0; s < config.snapshots.size(); ++s) {
    std::vector<double> xs;
    for (const auto& t : traces) xs.push_back(static_cast<double>(t[s].distance) / config.n);
    const double c = config.snapshots[s];
    const double u = theory::u_distance(c);
    const double u_series = 1.0 - theory::g_components_series(c);
    const double m = stats::mean(xs);
    table.add_row({fmt(c), fmt(m), fmt(stats::standard_error(xs)), fmt(u), fmt(u_series),
                   fmt(std::abs(m - u))});
    pass = pass && std::abs(m - u) < 0.005 && std::abs(u - u_series) <= 1e-6;
    result.summary["abs_error_c" + fmt(c)] = std::abs(m - u);
  }
  result.tables.push_back(std::move(table));
  add_check(result, "distance_lln", pass ? 1.0 : 0.0,
            "|mean D/n - u(c)| < 0.005 and closed form = series to 1e-6", pass);
  return result;
}

ExperimentResult run_thm4(const ExperimentSpec& spec) {
  ExperimentResult result;
  WalkConfig config;
  config.n = *spec.params.n;
  config.horizon_c = *spec.params.c;
  const double u = theory::u_distance(config.horizon_c);
  const double root_n = std::sqrt(static_cast<double>(config.n));
  const auto xs = replicate(*spec.params.reps, spec.seed, spec.threads, [&](std::size_t, Rng& rng) {
    const auto d = static_cast<double>(run(config, rng).snapshots.back().distance);
    return (d - u * config.n) / root_n;
  });
  const double sigma = theory::sigma_clt(config.horizon_c);
  const double sd = std::sqrt(stats::variance(xs));
  const double m = stats::mean(xs);
  const double ks_fitted = stats::ks_normal(xs, m, sd);
  const double ks_limit = stats::ks_normal(xs, 0.0, sigma);
  result.summary["mean"] = m;
  result.summary["sd"] = sd;
  result.summary["sigma"] = sigma;
  result.summary["relative_sd_error"] = std::abs(sd - sigma) / sigma;
  result.summary["variance"] = sd * sd;
  result.summary["relative_variance_error"] = std::abs(sd * sd - sigma) / sigma;
  result.summary["ks_fitted_normal"] = ks_fitted;
  result.summary["ks_limit_normal"] = ks_limit;
  Table table{"samples", {"rep", "scaled_deviation"}, {}};
  for (std::size_t r = 0; r < xs.size(); ++r) table.add_row({fmt(std::uint64_t{r}), fmt(xs[r])});
  result.tables.push_back(std::move(table));
  add_check(result, "sd", sd, "within 10% of sigma", std::abs(sd - sigma) <= 0.1 * sigma);
  add_check(result, "ks_fitted_normal", ks_fitted, "< 0.05", ks_fitted < 0.05);
  return result;
}

ExperimentResult run_thm5(const ExperimentSpec& spec) {
  ExperimentResult result;
  WalkConfig config;
  config.n = *spec.params.n;
  config.horizon_c = *spec.params.c;
  config.mass_exponent = *spec.params.a;
  const auto xs = replicate(*spec.params.reps, spec.seed, spec.threads, [&](std::size_t, Rng& rng) {
    const auto s = run(config, rng).snapshots.back();
    return static_cast<double>(s.mass_upstairs) / config.n;
  });
  const double th = theory::theta(config.horizon_c);
  const double m = stats::mean(xs);
  result.summary["mean_mass_upstairs_over_n"] = m;
  result.summary["theta"] = th;
  Table table{"mass_upstairs", {"rep", "n_up_over_n"}, {}};
  for (std::size_t r = 0; r < xs.size(); ++r) table.add_row({fmt(std::uint64_t{r}), fmt(xs[r])});
  result.tables.push_back(std::move(table));
  add_check(result, "mass_upstairs", m, ">= theta(c) - 0.03", m >= th - 0.03);
  return result;
}

ExperimentResult run_cqs_bounds(const ExperimentSpec& spec) {
  ExperimentResult result;
  constexpr std::uint32_t kMaxLevel = 10;
  constexpr std::uint64_t kExcursions = 10'000;
  Rng excursion_rng = make_stream(spec.seed, 0xe17c);
  const auto tail = excursion_max_distribution(kMaxLevel, kExcursions, excursion_rng);
  Table excursions{"excursions", {"x", "empirical_tail", "exact_tail"}, {}};
  double worst = 0.0;
  for (std::uint32_t x = 0; x <= kMaxLevel; ++x) {
    const double exact = excursion_tail_exact(x);
    excursions.add_row({fmt(std::uint64_t{x}), fmt(tail[x]), fmt(exact)});
    if (x >= 1 && x <= 4) worst = std::max(worst, std::abs(tail[x] - exact));
  }

  const std::uint32_t n = *spec.params.n;
  const double a = *spec.params.a;
  const auto runs = replicate(*spec.params.reps, spec.seed, spec.threads,
                              [&](std::size_t, Rng& rng) { return simulate_cqs(n, a, *spec.params.c, rng); });
  const double log_sq = std::pow(std::log(static_cast<double>(n)), 2.0);
  const double weighted_bound = std::pow(static_cast<double>(n), a) * log_sq;
  Table bounds{"occupancy_bounds", {"rep", "sup_total", "total_bound", "sup_weighted", "weighted_bound"}, {}};
  std::uint64_t ok_total = 0, ok_weighted = 0;
  for (std::size_t r = 0; r < runs.size(); ++r) {
    bounds.add_row({fmt(std::uint64_t{r}), fmt(runs[r].sup_total), fmt(log_sq),
                    fmt(runs[r].sup_weighted), fmt(weighted_bound)});
    ok_total += runs[r].sup_total <= log_sq;
    ok_weighted += runs[r].sup_weighted <= weighted_bound;
  }
  result.tables.push_back(std::move(excursions));
  result.tables.push_back(std::move(bounds));
  result.summary["max_tail_error_x_le_4"] = worst;
  result.summary["reps_within_total_bound"] = static_cast<double>(ok_total);
  result.summary["reps_within_weighted_bound"] = static_cast<double>(ok_weighted);
  add_check(result, "excursion_tail", worst, "|P(M>x) - 1/phi(x+1)| <= 0.02 for x <= 4",
            worst <= 0.02);
  add_check(result, "occupancy_total", static_cast<double>(ok_total), "every rep", ok_total == runs.size());
  add_check(result, "occupancy_weighted", static_cast<double>(ok_weighted), "every rep",
            ok_weighted == runs.size());
  return result;
}

ExperimentResult run_lemma3_tail(const ExperimentSpec& spec) {
  ExperimentResult result;
  const std::uint32_t n = *spec.params.n;
  Table table{"tail", {"c", "y", "empirical", "se", "bound"}, {}};
  double worst = -1.0;
  for (std::size_t ci = 0; ci < spec.params.c_grid.size(); ++ci) {
    const double c = spec.params.c_grid[ci];
    constexpr std::uint32_t kMaxY = 80;
    // Fraction of vertices whose component has >= y vertices, per graph.
    const auto per_rep = replicate(*spec.params.reps, stream_seed(spec.seed, ci), spec.threads,
                                   [&](std::size_t, Rng& rng) {
                                     const auto g = bernoulli_graph(n, c / n, rng);
                                     std::vector<double> frac(kMaxY + 1, 0.0);
                                     for (std::uint32_t root : g.roots()) {
                                       const std::uint32_t size = g.component_size(root);
                                       for (std::uint32_t y = 1; y <= std::min(size, kMaxY); ++y) {
                                         frac[y] += size;
                                       }
                                     }
                                     for (double& f : frac) f /= n;
                                     return frac;
                                   });
    for (std::uint32_t y = 1; y <= kMaxY; ++y) {
      std::vector<double> xs;
      xs.reserve(per_rep.size());
      for (const auto& f : per_rep) xs.push_back(f[y]);
      const double m = stats::mean(xs);
      const double se = stats::standard_error(xs);
      const double bound = theory::cluster_tail_bound(c, y);
      table.add_row({fmt(c), fmt(std::uint64_t{y}), fmt(m), fmt(se), fmt(bound)});
      worst = std::max(worst, m - bound - 3.0 * se);
    }
  }
  result.tables.push_back(std::move(table));
  result.summary["max_excess_over_bound_plus_3se"] = worst;
  add_check(result, "tail_bound", worst, "P(|C1| >= y) <= bound + 3 se for all y", worst <= 0.0);
  return result;
}

ExperimentResult run_eq4_trees(const ExperimentSpec& spec) {
  ExperimentResult result;
  const std::uint32_t n = *spec.params.n;
  const double p = *spec.params.c / n;
  constexpr std::uint32_t kMaxK = 10;
  const auto per_rep = replicate(*spec.params.reps, spec.seed, spec.threads, [&](std::size_t, Rng& rng) {
    const auto counts = bernoulli_graph(n, p, rng).component_counts();
    std::vector<double> t(kMaxK + 1, 0.0);
    for (std::uint32_t k = 1; k <= std::min(kMaxK, n); ++k) t[k] = counts.tree_count_by_size[k];
    return t;
  });
  Table table{"trees", {"k", "mean_tk", "se", "expected", "z_score"}, {}};
  double worst = 0.0;
  for (std::uint32_t k = 1; k <= std::min(kMaxK, n); ++k) {
    std::vector<double> xs;
    for (const auto& t : per_rep) xs.push_back(t[k]);
    const double m = stats::mean(xs), se = stats::standard_error(xs);
    const double expected = theory::expected_tree_count(n, k, p);
    const double z = se > 0 ? (m - expected) / se : 0.0;
    worst = std::max(worst, std::abs(z));
    table.add_row({fmt(std::uint64_t{k}), fmt(m), fmt(se), fmt(expected), fmt(z)});
  }
  result.tables.push_back(std::move(table));
  result.summary["max_abs_z"] = worst;
  add_check(result, "tree_counts", worst, "every |z| <= 3", worst <= 3.0);
  return result;
}

}  // namespace

void Table::add_row(std::vector<std::string> row) {
  if (row.size() != columns.size()) throw std::logic_error("table row width mismatch");
  rows.push_back(std::move(row));
}

bool ExperimentResult::all_pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

double ExperimentResult::metric(const std::string& key) const {
  const auto it = summary.find(key);
  if (it == summary.end()) throw std::out_of_range("no summary metric " + key);
  return it->second;
}

std::string format_number(double v) {
  if (v == 0.0) return "0";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

const std::vector<std::string>& experiment_names() {
  static const std::vector<std::string> names = {
      "fig2", "fig3", "fig4", "fig5", "thm1", "thm2", "thm3", "thm4", "thm5",
      "cqs-bounds", "lemma3-tail", "eq4-trees"};
  return names;
}

ExperimentSpec resolve(const ExperimentSpec& spec) {
  const auto it = defaults().find(spec.name);
  if (it == defaults().end()) throw std::invalid_argument("unknown experiment '" + spec.name + "'");
  const Defaults& d = it->second;
  ExperimentSpec out = spec;
  ExperimentParams& p = out.params;
  if (!p.n) p.n = d.n;
  if (!p.c) p.c = d.c;
  if (p.c_grid.empty()) p.c_grid = d.c_grid;
  if (!p.reps) p.reps = d.reps;
  if (!p.a) p.a = d.a;

  require(*p.n >= 2 && *p.n <= 10'000'000, out, "n must lie in [2, 1e7]");
  require(*p.reps >= 1, out, "reps must be >= 1");
  require(*p.a > 0.0 && *p.a < 1.0, out, "a must lie in (0, 1)");
  require(*p.c > 0.0 && *p.c <= 50.0, out, "c must lie in (0, 50]");
  require(std::is_sorted(p.c_grid.begin(), p.c_grid.end()), out, "c grid must be sorted");
  for (double c : p.c_grid) require(c >= 0.0 && c <= 50.0, out, "c grid values must lie in [0, 50]");

  const std::string& name = out.name;
  if (name == "thm1") {
    require(*p.c < 1.0, out, "Poisson census needs c < 1");
    for (double c : p.c_grid) require(c > 0.0 && c < 1.0, out, "c grid must lie in (0, 1)");
  } else if (name == "thm2") {
    for (double r : p.c_grid) require(r >= 0.0 && r <= 1.0, out, "r grid must lie in [0, 1]");
  } else if (name == "thm4" || name == "thm5") {
    require(*p.c > 1.0, out, "supercritical check needs c > 1");
  } else if (name == "fig4" || name == "thm3" || name == "lemma3-tail") {
    require(!p.c_grid.empty(), out, "c grid must be non-empty");
    if (name == "lemma3-tail") {
      for (double c : p.c_grid) require(c > 0.0, out, "c grid values must be > 0");
    }
    if (name == "thm3") {
      for (double c : p.c_grid) require(c > 0.0, out, "c grid values must be > 0");
    }
  } else if (name == "eq4-trees") {
    require(*p.c <= *p.n, out, "edge probability c/n must be <= 1");
  }
  return out;
}

ExperimentResult run_experiment(const ExperimentSpec& raw) {
  const ExperimentSpec spec = resolve(raw);
  ExperimentResult result;
  const std::string& name = spec.name;
  if (name == "fig2") result = run_fig2(spec);
  else if (name == "fig3") result = run_fig3(spec);
  else if (name == "fig4") result = run_fig4(spec);
  else if (name == "fig5") result = run_fig5(spec);
  else if (name == "thm1") result = run_thm1(spec);
  else if (name == "thm2") result = run_thm2(spec);
  else if (name == "thm3") result = run_thm3(spec);
  else if (name == "thm4") result = run_thm4(spec);
  else if (name == "thm5") result = run_thm5(spec);
  else if (name == "cqs-bounds") result = run_cqs_bounds(spec);
  else if (name == "lemma3-tail") result = run_lemma3_tail(spec);
  else result = run_eq4_trees(spec);
  result.name = name;
  result.spec = spec;
  return result;
}

void write_table_csv(std::ostream& out, const Table& table) {
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    out << (i ? "," : "") << table.columns[i];
  }
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << row[i];
    out << '\n';
  }
}

void write_manifest(std::ostream& out, const ExperimentSpec& spec, double wall_seconds) {
  const ExperimentParams& p = spec.params;
  out << "experiment=" << spec.name << '\n';
  if (p.n) out << "n=" << *p.n << '\n';
  if (p.c) out << "c=" << format_number(*p.c) << '\n';
  out << "c_grid=" << grid_string(p.c_grid) << '\n';
  if (p.reps) out << "reps=" << *p.reps << '\n';
  if (p.a) out << "a=" << format_number(*p.a) << '\n';
  out << "seed=" << spec.seed << '\n';
  out << "streams=stream_seed(seed, r) for replicate r in [0, reps)\n";
  out << "format=" << (spec.format == OutputFormat::kCsvSvg ? "csv+svg" : "csv") << '\n';
  out << "threads=" << spec.threads << '\n';
  out << "wall_clock_seconds=" << format_number(wall_seconds) << '\n';
  out << "version=" << kToolkitVersion << '\n';
}

ExperimentSpec parse_manifest(std::istream& in) {
  ExperimentSpec spec;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("manifest line without '=': " + line);
    const std::string key = line.substr(0, eq);
    const std::string value = line.substr(eq + 1);
    if (key == "experiment") spec.name = value;
    else if (key == "n") spec.params.n = static_cast<std::uint32_t>(std::stoul(value));
    else if (key == "c") spec.params.c = std::stod(value);
    else if (key == "c_grid") spec.params.c_grid = parse_grid(value);
    else if (key == "reps") spec.params.reps = std::stoull(value);
    else if (key == "a") spec.params.a = std::stod(value);
    else if (key == "seed") spec.seed = std::stoull(value);
    else if (key == "format") {
      if (value == "csv+svg") spec.format = OutputFormat::kCsvSvg;
      else if (value == "csv") spec.format = OutputFormat::kCsv;
      else throw std::invalid_argument("manifest: unknown format " + value);
    }
    // streams, threads, wall_clock_seconds and version are informational.
  }
  if (spec.name.empty()) throw std::invalid_argument("manifest has no experiment= line");
  return spec;
}

void write_table_svg(std::ostream& out, const Table& table) {
  constexpr double kWidth = 640, kHeight = 400, kMargin = 50;
  std::vector<std::vector<double>> cols(table.columns.size());
  std::vector<bool> numeric(table.columns.size(), true);
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      try {
        std::size_t used = 0;
        cols[i].push_back(std::stod(row[i], &used));
        if (used != row[i].size()) numeric[i] = false;
      } catch (const std::exception&) {
        numeric[i] = false;
      }
    }
  }
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
      << kHeight << "\">\n";
  if (table.rows.empty() || !numeric[0]) {
    out << "</svg>\n";
    return;
  }
  const auto [xmin_it, xmax_it] = std::minmax_element(cols[0].begin(), cols[0].end());
  double ymin = 0.0, ymax = 0.0;
  bool first = true;
  for (std::size_t i = 1; i < cols.size(); ++i) {
    if (!numeric[i]) continue;
    for (double v : cols[i]) {
      ymin = first ? v : std::min(ymin, v);
      ymax = first ? v : std::max(ymax, v);
      first = false;
    }
  }
  const double xmin = *xmin_it, xmax = *xmax_it;
  const double xspan = xmax > xmin ? xmax - xmin : 1.0;
  const double yspan = ymax > ymin ? ymax - ymin : 1.0;
  auto px = [&](double x) { return kMargin + (x - xmin) / xspan * (kWidth - 2 * kMargin); };
  auto py = [&](double y) { return kHeight - kMargin - (y - ymin) / yspan * (kHeight - 2 * kMargin); };
  out << "<line x1=\"" << kMargin << "\" y1=\"" << kHeight - kMargin << "\" x2=\""
      << kWidth - kMargin << "\" y2=\"" << kHeight - kMargin << "\" stroke=\"black\"/>\n";
  out << "<line x1=\"" << kMargin << "\" y1=\"" << kMargin << "\" x2=\"" << kMargin
      << "\" y2=\"" << kHeight - kMargin << "\" stroke=\"black\"/>\n";
  for (int t = 0; t <= 4; ++t) {
    const double x = xmin + xspan * t / 4.0;
    const double y = ymin + yspan * t / 4.0;
    out << "<text x=\"" << px(x) << "\" y=\"" << kHeight - kMargin + 16
        << "\" font-size=\"10\" text-anchor=\"middle\">" << format_number(x) << "</text>\n";
    out << "<text x=\"" << kMargin - 4 << "\" y=\"" << py(y)
        << "\" font-size=\"10\" text-anchor=\"end\">" << format_number(y) << "</text>\n";
  }
  static const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e"};
  std::size_t series = 0;
  for (std::size_t i = 1; i < cols.size(); ++i) {
    if (!numeric[i]) continue;
    out << "<polyline fill=\"none\" stroke=\"" << kColors[series % 5] << "\" points=\"";
    for (std::size_t r = 0; r < cols[i].size(); ++r) {
      out << (r ? " " : "") << px(cols[0][r]) << ',' << py(cols[i][r]);
    }
    out << "\"/>\n";
    out << "<text x=\"" << kWidth - kMargin << "\" y=\"" << kMargin + 14 * series
        << "\" font-size=\"10\" text-anchor=\"end\" fill=\"" << kColors[series % 5] << "\">"
        << table.columns[i] << "</text>\n";
    ++series;
  }
  out << "</svg>\n";
}

std::vector<std::string> write_result(const ExperimentResult& result, double wall_seconds) {
  namespace fs = std::filesystem;
  const fs::path dir(result.spec.out_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw std::runtime_error("cannot create output directory " + dir.string());
  std::vector<std::string> written;
  auto open = [&](const fs::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    written.push_back(path.string());
    return out;
  };
  for (std::size_t t = 0; t < result.tables.size(); ++t) {
    const std::string stem =
        t == 0 ? result.name : result.name + "_" + result.tables[t].name;
    auto out = open(dir / (stem + ".csv"));
    write_table_csv(out, result.tables[t]);
  }
  {
    Table summary{"summary", {"metric", "value"}, {}};
    for (const auto& [key, value] : result.summary) summary.add_row({key, format_number(value)});
    for (const Check& c : result.checks) {
      summary.add_row({"check:" + c.name, c.pass ? "pass" : "fail"});
    }
    auto out = open(dir / (result.name + "_summary.csv"));
    write_table_csv(out, summary);
  }
  {
    auto out = open(dir / (result.name + ".manifest"));
    write_manifest(out, result.spec, wall_seconds);
  }
  if (result.spec.format == OutputFormat::kCsvSvg && !result.tables.empty()) {
    auto out = open(dir / (result.name + ".svg"));
    write_table_svg(out, result.tables.front());
  }
  return written;
}

}  // namespace cyclewalk
