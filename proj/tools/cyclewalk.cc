// cyclewalk command-line driver.
#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "cyclewalk/breakpoint.h"
#include "cyclewalk/cqs.h"
#include "cyclewalk/experiment.h"
#include "cyclewalk/replicate.h"
#include "cyclewalk/rng.h"
#include "cyclewalk/theory.h"
#include "cyclewalk/walk.h"

namespace {

using namespace cyclewalk;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitRuntime = 2;
constexpr int kExitCheck = 3;

struct Globals {
  std::uint64_t seed = 1;
  std::string out;
  unsigned threads = 0;
  std::string format = "csv";
};

// Writes to <out>/<file> when --out is given, stdout otherwise.
class Sink {
 public:
  Sink(const std::string& out_dir, const std::string& file) {
    if (out_dir.empty()) return;
    std::filesystem::create_directories(out_dir);
    const auto path = std::filesystem::path(out_dir) / file;
    file_.open(path, std::ios::binary);
    if (!file_) throw std::runtime_error("cannot write " + path.string());
  }
  std::ostream& stream() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }

 private:
  std::ofstream file_;
};

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::string item;
  std::stringstream ss(text);
  const char sep = text.find(';') != std::string::npos ? ';' : ',';
  while (std::getline(ss, item, sep)) {
    if (item.empty()) continue;
    const auto colon = item.find(':');
    if (colon == std::string::npos) {
      out.push_back(std::stod(item));
      continue;
    }
    // from:step:to
    std::stringstream range(item);
    std::string a, b, c;
    std::getline(range, a, ':');
    std::getline(range, b, ':');
    std::getline(range, c, ':');
    const double from = std::stod(a), step = std::stod(b), to = std::stod(c);
    if (step <= 0) throw std::invalid_argument("range step must be positive");
    const auto count = static_cast<int>(std::floor((to - from) / step + 1e-9));
    for (int i = 0; i <= count; ++i) out.push_back(from + i * step);
  }
  return out;
}

// Malformed input data is a runtime failure, not a usage error.
std::vector<SignedGenome> load_genomes(const std::string& path) {
  try {
    return read_genome_file(path);
  } catch (const std::invalid_argument& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
}

std::vector<std::uint32_t> unsigned_order(const SignedGenome& g) {
  std::vector<std::uint32_t> out;
  for (std::int32_t m : g.markers()) out.push_back(static_cast<std::uint32_t>(std::abs(m)));
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Random transposition walks, breakpoint graphs and cluster queues"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kToolkitVersion));
  Globals g;
  app.add_option("--seed", g.seed, "Master seed")->capture_default_str();
  app.add_option("--out", g.out, "Output directory");
  app.add_option("--threads", g.threads, "Worker threads (0 = all cores)");
  app.add_option("--format", g.format, "csv or csv+svg")
      ->check(CLI::IsMember({"csv", "csv+svg"}));
  // Globals are also accepted after the subcommand.
  app.fallthrough();

  std::function<int()> action;

  // experiment
  auto* exp = app.add_subcommand("experiment", "Run a registered experiment");
  std::string exp_name;
  std::optional<std::uint32_t> exp_n;
  std::optional<double> exp_c, exp_a;
  std::optional<std::uint64_t> exp_reps;
  std::string exp_grid, manifest_path;
  bool check = false;
  exp->add_option("name", exp_name, "Experiment name")->check(CLI::IsMember(experiment_names()));
  exp->add_option("--n", exp_n, "Population size (markers for fig2)");
  exp->add_option("--c", exp_c, "Time parameter");
  exp->add_option("--c-grid", exp_grid, "Comma list or from:step:to");
  exp->add_option("--reps", exp_reps, "Replicates");
  exp->add_option("--a", exp_a, "Mass exponent");
  exp->add_option("--manifest", manifest_path, "Rerun from a manifest file");
  exp->add_flag("--check", check, "Exit 3 if any acceptance check fails");
  exp->callback([&] {
    action = [&]() -> int {
      ExperimentSpec spec;
      if (!manifest_path.empty()) {
        std::ifstream in(manifest_path);
        if (!in) throw std::runtime_error("cannot read " + manifest_path);
        spec = parse_manifest(in);
      } else {
        if (exp_name.empty()) throw CLI::RequiredError("name");
        spec.name = exp_name;
        spec.seed = g.seed;
        spec.format = g.format == "csv+svg" ? OutputFormat::kCsvSvg : OutputFormat::kCsv;
      }
      if (exp_n) spec.params.n = exp_n;
      if (exp_c) spec.params.c = exp_c;
      if (exp_a) spec.params.a = exp_a;
      if (exp_reps) spec.params.reps = exp_reps;
      if (!exp_grid.empty()) spec.params.c_grid = parse_list(exp_grid);
      spec.out_dir = g.out.empty() ? "." : g.out;
      spec.threads = g.threads;
      const auto start = std::chrono::steady_clock::now();
      const ExperimentResult result = run_experiment(spec);
      const double wall =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      for (const auto& path : write_result(result, wall)) std::cerr << "wrote " << path << '\n';
      for (const auto& [key, value] : result.summary) {
        std::cout << key << '=' << format_number(value) << '\n';
      }
      for (const Check& c : result.checks) {
        std::cout << (c.pass ? "PASS " : "FAIL ") << c.name << " value=" << format_number(c.value)
                  << " criterion: " << c.criterion << '\n';
      }
      return check && !result.all_pass() ? kExitCheck : kExitOk;
    };
  });

  // theory
  auto* th = app.add_subcommand("theory", "Evaluate a closed-form quantity");
  std::string fn;
  std::vector<double> cs;
  std::optional<double> k_opt, n_opt, p_opt, y_opt;
  const std::vector<std::string> fns = {"kappa", "borel",   "borel-inf", "theta",  "rho",
                                        "g",     "g-series", "u",        "alpha",  "sigma",
                                        "trees", "lambda",  "tail-bound", "phi"};
  th->add_option("fn", fn, "Function name")->required()->check(CLI::IsMember(fns));
  th->add_option("--c", cs, "Parameter c (repeatable)");
  th->add_option("--k", k_opt, "Size k");
  th->add_option("--n", n_opt, "Population n");
  th->add_option("--p", p_opt, "Edge probability");
  th->add_option("--y", y_opt, "Tail threshold");
  th->callback([&] {
    action = [&]() -> int {
      auto need = [](const std::optional<double>& v, const char* flag) {
        if (!v) throw CLI::RequiredError(flag);
        return *v;
      };
      auto as_int = [](double v) { return static_cast<std::int64_t>(std::llround(v)); };
      if (fn == "phi") {
        std::cout << theory::phi_factorial(static_cast<unsigned>(need(k_opt, "--k"))) << '\n';
        return kExitOk;
      }
      if (fn == "trees") {
        std::cout << format_number(theory::expected_tree_count(
                         as_int(need(n_opt, "--n")), as_int(need(k_opt, "--k")), need(p_opt, "--p")))
                  << '\n';
        return kExitOk;
      }
      if (cs.empty()) throw CLI::RequiredError("--c");
      for (double c : cs) {
        double v = 0.0;
        if (fn == "kappa") v = theory::kappa(c);
        else if (fn == "borel") v = theory::borel_pmf(c, as_int(need(k_opt, "--k")));
        else if (fn == "borel-inf") v = theory::borel_inf(c);
        else if (fn == "theta") v = theory::theta(c);
        else if (fn == "rho") v = theory::rho(c);
        else if (fn == "g") v = theory::g_components(c);
        else if (fn == "g-series") v = theory::g_components_series(c);
        else if (fn == "u") v = theory::u_distance(c);
        else if (fn == "alpha") v = theory::alpha(c);
        else if (fn == "sigma") v = theory::sigma_clt(c);
        else if (fn == "lambda")
          v = theory::lambda_asymptotic(as_int(need(n_opt, "--n")), as_int(need(k_opt, "--k")), c);
        else v = theory::cluster_tail_bound(c, need(y_opt, "--y"));
        std::cout << format_number(v) << '\n';
      }
      return kExitOk;
    };
  });

  // walk
  auto* wk = app.add_subcommand("walk", "Simulate the coupled walk and print a trace");
  std::uint32_t walk_n = 100;
  double walk_c = 1.0, walk_a = kDefaultMassExponent;
  std::string walk_mode = "discrete", walk_snapshots;
  std::uint64_t walk_reps = 1;
  wk->add_option("--n", walk_n, "Population size")->check(CLI::Range(2u, 100'000'000u));
  wk->add_option("--c", walk_c, "Horizon c")->check(CLI::PositiveNumber);
  wk->add_option("--mode", walk_mode, "discrete or continuous")
      ->check(CLI::IsMember({"discrete", "continuous"}));
  wk->add_option("--snapshots", walk_snapshots, "Comma list or from:step:to of c values");
  wk->add_option("--reps", walk_reps, "Replicates")->check(CLI::PositiveNumber);
  wk->add_option("--a", walk_a, "Mass exponent")->check(CLI::Range(0.0, 1.0));
  wk->callback([&] {
    action = [&]() -> int {
      WalkConfig config;
      config.n = walk_n;
      config.horizon_c = walk_c;
      config.time_mode =
          walk_mode == "discrete" ? TimeMode::kDiscrete : TimeMode::kContinuousPoisson;
      if (!walk_snapshots.empty()) config.snapshots = parse_list(walk_snapshots);
      config.mass_exponent = walk_a;
      config.validate();
      const auto traces = replicate(walk_reps, g.seed, g.threads,
                                    [&](std::size_t, Rng& rng) { return run(config, rng); });
      Sink sink(g.out, "walk.csv");
      write_trace_header(sink.stream());
      for (std::size_t r = 0; r < traces.size(); ++r) write_trace_rows(sink.stream(), r, traces[r]);
      return kExitOk;
    };
  });

  // breakpoint
  auto* bp = app.add_subcommand("breakpoint", "Signed genome tools");
  bp->require_subcommand(1);
  auto* bp_d0 = bp->add_subcommand("d0", "Breakpoint components and d0 per genome");
  std::string genome_file;
  bp_d0->add_option("file", genome_file, "Genome file")->required()->check(CLI::ExistingFile);
  bp_d0->callback([&] {
    action = [&]() -> int {
      Sink sink(g.out, "d0.csv");
      sink.stream() << "genome,markers,components,d0,d0_is_lower_bound\n";
      const auto genomes = load_genomes(genome_file);
      for (std::size_t i = 0; i < genomes.size(); ++i) {
        sink.stream() << i << ',' << genomes[i].size() << ','
                      << breakpoint_component_count(genomes[i]) << ','
                      << d0_lower_bound(genomes[i]) << ",true\n";
      }
      return kExitOk;
    };
  });
  auto* bp_anneal = bp->add_subcommand("anneal", "Choose signs minimizing d0");
  std::string anneal_file;
  std::uint32_t restarts = 20;
  AnnealSchedule schedule;
  bp_anneal->add_option("file", anneal_file, "Genome file (signs ignored)")
      ->required()
      ->check(CLI::ExistingFile);
  bp_anneal->add_option("--restarts", restarts, "Independent restarts")->check(CLI::PositiveNumber);
  bp_anneal->add_option("--moves", schedule.moves, "Moves per restart")->check(CLI::PositiveNumber);
  bp_anneal->add_option("--cooling", schedule.cooling, "Geometric cooling factor")
      ->check(CLI::Range(0.0, 1.0));
  bp_anneal->callback([&] {
    action = [&]() -> int {
      Sink sink(g.out, "anneal.csv");
      sink.stream() << "genome,restart,restart_best_d0,best_so_far_d0\n";
      const auto genomes = load_genomes(anneal_file);
      for (std::size_t i = 0; i < genomes.size(); ++i) {
        const auto order = unsigned_order(genomes[i]);
        const AnnealResult r = anneal_signs(order, schedule, restarts, g.seed, g.threads);
        for (std::size_t k = 0; k < r.restart_best.size(); ++k) {
          sink.stream() << i << ',' << k << ',' << r.restart_best[k] << ',' << r.best_so_far[k]
                        << '\n';
        }
        std::cerr << "genome " << i << ": best d0 = " << r.best.d0 << "\n  "
                  << apply_signs(order, r.best.signs).to_string() << '\n';
      }
      return kExitOk;
    };
  });
  auto* bp_walk = bp->add_subcommand("walk", "Coupled transposition and reversal walk");
  std::uint32_t markers = 100;
  double bp_c = 1.0;
  std::uint64_t bp_reps = 1;
  bp_walk->add_option("--markers", markers, "Number of markers")->check(CLI::Range(1u, 1'000'000u));
  bp_walk->add_option("--c", bp_c, "Horizon c")->check(CLI::PositiveNumber);
  bp_walk->add_option("--reps", bp_reps, "Replicates")->check(CLI::PositiveNumber);
  bp_walk->callback([&] {
    action = [&]() -> int {
      const auto traces = replicate(bp_reps, g.seed, g.threads, [&](std::size_t, Rng& rng) {
        return coupled_reversal_walk(markers, bp_c, rng);
      });
      Sink sink(g.out, "reversal_walk.csv");
      sink.stream() << "rep,k,delta_c,d0,D\n";
      for (std::size_t r = 0; r < traces.size(); ++r) {
        for (const ReversalStep& s : traces[r].steps) {
          sink.stream() << r << ',' << s.k << ',' << s.delta_c << ',' << s.d0 << ','
                        << s.transposition_distance << '\n';
        }
      }
      return kExitOk;
    };
  });

  // cqs
  auto* cq = app.add_subcommand("cqs", "Cluster queuing system");
  cq->require_subcommand(1);
  auto* cq_run = cq->add_subcommand("run", "Simulate and report running suprema");
  std::uint32_t cq_n = 10'000;
  double cq_a = kDefaultMassExponent, cq_c = 2.0;
  std::uint64_t cq_reps = 100;
  cq_run->add_option("--n", cq_n, "Population size")->check(CLI::Range(2u, 1'000'000'000u));
  cq_run->add_option("--a", cq_a, "Level cutoff exponent")->check(CLI::Range(0.0, 1.0));
  cq_run->add_option("--c", cq_c, "Horizon")->check(CLI::NonNegativeNumber);
  cq_run->add_option("--reps", cq_reps, "Replicates")->check(CLI::PositiveNumber);
  cq_run->callback([&] {
    action = [&]() -> int {
      const auto runs = replicate(cq_reps, g.seed, g.threads,
                                  [&](std::size_t, Rng& rng) { return simulate_cqs(cq_n, cq_a, cq_c, rng); });
      const double log_sq = std::pow(std::log(static_cast<double>(cq_n)), 2.0);
      Sink sink(g.out, "cqs.csv");
      sink.stream() << "rep,levels,events,sup_total,total_bound,sup_weighted,weighted_bound\n";
      for (std::size_t r = 0; r < runs.size(); ++r) {
        sink.stream() << r << ',' << runs[r].levels << ',' << runs[r].events << ','
                      << runs[r].sup_total << ',' << format_number(log_sq) << ','
                      << runs[r].sup_weighted << ','
                      << format_number(std::pow(static_cast<double>(cq_n), cq_a) * log_sq) << '\n';
      }
      return kExitOk;
    };
  });
  auto* cq_exc = cq->add_subcommand("excursions", "Excursion maximum tail");
  std::uint32_t x_max = 10;
  std::uint64_t count = 10'000;
  cq_exc->add_option("--x-max", x_max, "Largest x")->check(CLI::Range(0u, 170u));
  cq_exc->add_option("--count", count, "Excursions")->check(CLI::PositiveNumber);
  cq_exc->callback([&] {
    action = [&]() -> int {
      Rng rng = make_stream(g.seed, 0);
      const auto tail = excursion_max_distribution(x_max, count, rng);
      Sink sink(g.out, "excursions.csv");
      sink.stream() << "x,empirical_tail,exact_tail\n";
      for (std::uint32_t x = 0; x <= x_max; ++x) {
        sink.stream() << x << ',' << format_number(tail[x]) << ','
                      << format_number(excursion_tail_exact(x)) << '\n';
      }
      return kExitOk;
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }
  try {
    return action ? action() : kExitUsage;
  } catch (const CLI::Error& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::domain_error& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
}
