#include "cyclewalk/breakpoint.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <random>
#include <sstream>
#include <stdexcept>

#include "cyclewalk/dynamic_permutation.h"
#include "cyclewalk/replicate.h"

namespace cyclewalk {
namespace {

std::vector<std::int64_t> parse_integers(std::string_view text) {
  std::vector<std::int64_t> out;
  std::size_t i = 0;
  while (i < text.size()) {
    const char ch = text[i];
    if (ch == ' ' || ch == '\t' || ch == ',' || ch == '\r' || ch == '\n') {
      ++i;
      continue;
    }
    std::size_t start = i;
    if (ch == '+') ++start;
    std::int64_t value = 0;
    const auto [end, ec] = std::from_chars(text.data() + start, text.data() + text.size(), value);
    if (ec != std::errc() || end == text.data() + start) {
      throw std::invalid_argument("not an integer near '" + std::string(text.substr(i, 12)) + "'");
    }
    out.push_back(value);
    i = static_cast<std::size_t>(end - text.data());
  }
  return out;
}

std::vector<std::uint32_t> positions_of(std::span<const std::uint32_t> doubled) {
  std::vector<std::uint32_t> pos(doubled.size());
  for (std::uint32_t p = 0; p < doubled.size(); ++p) pos[doubled[p]] = p;
  return pos;
}

// Black edges join doubled[2t] and doubled[2t+1]; gray edges join 2t and 2t+1.
std::uint32_t black_partner(std::span<const std::uint32_t> doubled,
                            std::span<const std::uint32_t> pos, std::uint32_t v) {
  return doubled[pos[v] ^ 1u];
}

}  // namespace

SignedGenome::SignedGenome(std::vector<std::int32_t> markers) : markers_(std::move(markers)) {
  const std::size_t m = markers_.size();
  std::vector<bool> seen(m + 1, false);
  for (std::int32_t x : markers_) {
    const std::int64_t magnitude = std::abs(static_cast<std::int64_t>(x));
    if (magnitude < 1 || magnitude > static_cast<std::int64_t>(m)) {
      throw std::invalid_argument("genome marker " + std::to_string(x) + " outside +-[1, " +
                                  std::to_string(m) + "]");
    }
    if (seen[magnitude]) {
      throw std::invalid_argument("genome marker " + std::to_string(magnitude) + " repeated");
    }
    seen[magnitude] = true;
  }
}

SignedGenome SignedGenome::identity(std::uint32_t m) {
  std::vector<std::int32_t> markers(m);
  for (std::uint32_t i = 0; i < m; ++i) markers[i] = static_cast<std::int32_t>(i + 1);
  return SignedGenome(std::move(markers));
}

SignedGenome SignedGenome::parse(std::string_view line) {
  std::vector<std::int32_t> markers;
  for (std::int64_t v : parse_integers(line)) {
    if (v < std::numeric_limits<std::int32_t>::min() ||
        v > std::numeric_limits<std::int32_t>::max()) {
      throw std::invalid_argument("genome marker out of range");
    }
    markers.push_back(static_cast<std::int32_t>(v));
  }
  return SignedGenome(std::move(markers));
}

bool SignedGenome::is_identity() const {
  for (std::size_t i = 0; i < markers_.size(); ++i) {
    if (markers_[i] != static_cast<std::int32_t>(i + 1)) return false;
  }
  return true;
}

void SignedGenome::reverse(std::size_t lo, std::size_t hi) {
  if (lo < 1 || lo > hi || hi > markers_.size()) {
    throw std::out_of_range("reversal [" + std::to_string(lo) + ", " + std::to_string(hi) +
                            "] outside [1, " + std::to_string(markers_.size()) + "]");
  }
  auto first = markers_.begin() + static_cast<std::ptrdiff_t>(lo - 1);
  auto last = markers_.begin() + static_cast<std::ptrdiff_t>(hi);
  std::reverse(first, last);
  for (auto it = first; it != last; ++it) *it = -*it;
}

std::string SignedGenome::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < markers_.size(); ++i) {
    if (i) out += ' ';
    out += std::to_string(markers_[i]);
  }
  return out;
}

std::vector<std::uint32_t> double_markers(const SignedGenome& genome) {
  const auto m = static_cast<std::uint32_t>(genome.size());
  std::vector<std::uint32_t> doubled;
  doubled.reserve(2 * m + 2);
  doubled.push_back(0);
  for (std::int32_t x : genome.markers()) {
    const auto i = static_cast<std::uint32_t>(std::abs(x));
    if (x > 0) {
      doubled.push_back(2 * i - 1);
      doubled.push_back(2 * i);
    } else {
      doubled.push_back(2 * i);
      doubled.push_back(2 * i - 1);
    }
  }
  doubled.push_back(2 * m + 1);
  return doubled;
}

std::string format_doubled(std::span<const std::uint32_t> doubled) {
  std::string out;
  for (std::size_t p = 0; p < doubled.size(); ++p) {
    if (p) out += (p % 2 == 1) ? ", " : " ";
    out += std::to_string(doubled[p]);
  }
  return out;
}

std::vector<std::uint32_t> parse_doubled(std::string_view text) {
  std::vector<std::uint32_t> out;
  for (std::int64_t v : parse_integers(text)) {
    if (v < 0 || v > std::numeric_limits<std::uint32_t>::max()) {
      throw std::invalid_argument("doubled marker out of range");
    }
    out.push_back(static_cast<std::uint32_t>(v));
  }
  if (out.size() < 2 || out.size() % 2 != 0) {
    throw std::invalid_argument("doubled sequence must have even length >= 2");
  }
  std::vector<bool> seen(out.size(), false);
  for (std::uint32_t v : out) {
    if (v >= out.size() || seen[v]) {
      throw std::invalid_argument("doubled sequence is not a permutation of 0.." +
                                  std::to_string(out.size() - 1));
    }
    seen[v] = true;
  }
  return out;
}

BreakpointGraph breakpoint_components(const SignedGenome& genome) {
  BreakpointGraph graph;
  graph.doubled = double_markers(genome);
  const auto pos = positions_of(graph.doubled);
  std::vector<bool> visited(graph.doubled.size(), false);
  for (std::uint32_t start : graph.doubled) {
    if (visited[start]) continue;
    auto& component = graph.components.emplace_back();
    std::uint32_t v = start;
    do {
      const std::uint32_t w = black_partner(graph.doubled, pos, v);
      visited[v] = visited[w] = true;
      component.push_back(v);
      component.push_back(w);
      v = w ^ 1u;
    } while (v != start);
  }
  return graph;
}

std::uint32_t breakpoint_component_count(const SignedGenome& genome) {
  const auto doubled = double_markers(genome);
  const auto pos = positions_of(doubled);
  std::vector<bool> visited(doubled.size(), false);
  std::uint32_t count = 0;
  for (std::uint32_t start = 0; start < doubled.size(); ++start) {
    if (visited[start]) continue;
    ++count;
    std::uint32_t v = start;
    do {
      const std::uint32_t w = black_partner(doubled, pos, v);
      visited[v] = visited[w] = true;
      v = w ^ 1u;
    } while (v != start);
  }
  return count;
}

std::uint32_t d0_lower_bound(const SignedGenome& genome) {
  return static_cast<std::uint32_t>(genome.size()) + 1 - breakpoint_component_count(genome);
}

SignedGenome apply_reversal(const SignedGenome& genome, std::size_t lo, std::size_t hi) {
  SignedGenome out = genome;
  out.reverse(lo, hi);
  return out;
}

std::vector<SignedGenome> read_genomes(std::istream& in) {
  std::vector<SignedGenome> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    try {
      out.push_back(SignedGenome::parse(line));
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument("line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return out;
}

std::vector<SignedGenome> read_genome_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open genome file " + path);
  return read_genomes(in);
}

namespace {

// Draws until `stop(raw_draws, nontrivial_steps)` holds.
template <typename Stop>
ReversalWalkTrace reversal_walk(std::uint32_t n_markers, Rng& rng, Stop stop) {
  if (n_markers == 0) throw std::invalid_argument("reversal walk needs at least one marker");
  const std::uint32_t n = n_markers + 1;
  ReversalWalkTrace trace;
  trace.n_markers = n_markers;
  SignedGenome genome = SignedGenome::identity(n_markers);
  DynamicPermutation perm = DynamicPermutation::identity(n);
  std::uniform_int_distribution<std::uint32_t> pick(1, n);
  std::uint32_t components = n_markers + 1;
  while (!stop(trace.raw_draws, trace.steps.size())) {
    const std::uint32_t i = pick(rng);
    const std::uint32_t j = pick(rng);
    ++trace.raw_draws;
    if (i == j) continue;
    perm.apply_transposition(i, j);
    const std::uint32_t lo_gap = std::min(i, j) - 1;
    const std::uint32_t hi_gap = std::max(i, j) - 1;
    genome.reverse(lo_gap + 1, hi_gap);
    const std::uint32_t after = breakpoint_component_count(genome);
    ReversalStep step;
    step.k = trace.steps.size() + 1;
    step.delta_c = static_cast<int>(after) - static_cast<int>(components);
    step.d0 = n_markers + 1 - after;
    step.transposition_distance = perm.distance();
    components = after;
    if (step.delta_c < 0) {
      ++trace.merges;
    } else if (step.delta_c == 0) {
      ++trace.no_change;
    } else {
      ++trace.splits;
    }
    trace.steps.push_back(step);
  }
  return trace;
}

}  // namespace

ReversalWalkTrace coupled_reversal_walk(std::uint32_t n_markers, double horizon_c, Rng& rng) {
  if (!(horizon_c > 0.0)) throw std::invalid_argument("reversal walk horizon must be > 0");
  const double n = static_cast<double>(n_markers) + 1.0;
  const auto draws = static_cast<std::uint64_t>(std::floor(horizon_c * n / 2.0));
  return reversal_walk(n_markers, rng,
                       [draws](std::uint64_t raw, std::size_t) { return raw >= draws; });
}

ReversalWalkTrace coupled_reversal_steps(std::uint32_t n_markers, std::uint64_t steps, Rng& rng) {
  return reversal_walk(n_markers, rng,
                       [steps](std::uint64_t, std::size_t k) { return k >= steps; });
}

SignedGenome apply_signs(std::span<const std::uint32_t> unsigned_order,
                         std::span<const std::int8_t> signs) {
  if (signs.size() != unsigned_order.size()) {
    throw std::invalid_argument("sign vector length does not match the permutation");
  }
  std::vector<std::int32_t> markers(unsigned_order.size());
  for (std::size_t p = 0; p < markers.size(); ++p) {
    markers[p] = static_cast<std::int32_t>(unsigned_order[p]) * (signs[p] < 0 ? -1 : 1);
  }
  return SignedGenome(std::move(markers));
}

namespace {

SignAssignment anneal_once(std::span<const std::uint32_t> order, const AnnealSchedule& schedule,
                           Rng& rng) {
  const std::size_t m = order.size();
  std::vector<std::int8_t> signs(m);
  std::bernoulli_distribution coin(0.5);
  for (auto& s : signs) s = coin(rng) ? 1 : -1;
  SignedGenome genome = apply_signs(order, signs);
  std::uniform_int_distribution<std::size_t> pick(1, m);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  double temperature = schedule.initial_temperature;
  if (temperature <= 0.0) {
    // Pilot walk: accept every flip, average the uphill steps, and pick the
    // temperature where exp(-mean / T) = 1/2.
    SignedGenome pilot = genome;
    std::uint32_t cost = d0_lower_bound(pilot);
    double uphill = 0.0;
    std::uint32_t uphill_moves = 0;
    for (std::uint32_t t = 0; t < schedule.pilot_moves; ++t) {
      const std::size_t p = pick(rng);
      pilot.reverse(p, p);
      const std::uint32_t next = d0_lower_bound(pilot);
      if (next > cost) {
        uphill += next - cost;
        ++uphill_moves;
      }
      cost = next;
    }
    const double mean_uphill = uphill_moves ? uphill / uphill_moves : 1.0;
    temperature = mean_uphill / std::log(2.0);
  }

  std::uint32_t cost = d0_lower_bound(genome);
  SignAssignment best{signs, cost};
  for (std::uint64_t move = 0; move < schedule.moves && best.d0 > 0; ++move) {
    const std::size_t p = pick(rng);
    genome.reverse(p, p);
    const std::uint32_t next = d0_lower_bound(genome);
    const double delta = static_cast<double>(next) - static_cast<double>(cost);
    if (delta <= 0.0 || unit(rng) < std::exp(-delta / temperature)) {
      cost = next;
      signs[p - 1] = static_cast<std::int8_t>(-signs[p - 1]);
      if (cost < best.d0) best = SignAssignment{signs, cost};
    } else {
      genome.reverse(p, p);
    }
    temperature *= schedule.cooling;
  }
  return best;
}

}  // namespace

AnnealResult anneal_signs(std::span<const std::uint32_t> unsigned_order,
                          const AnnealSchedule& schedule, std::uint32_t restarts,
                          std::uint64_t seed, unsigned threads) {
  if (restarts == 0) throw std::invalid_argument("anneal_signs needs at least one restart");
  if (!(schedule.cooling > 0.0 && schedule.cooling <= 1.0)) {
    throw std::invalid_argument("cooling factor must lie in (0, 1]");
  }
  std::vector<std::int32_t> as_markers(unsigned_order.begin(), unsigned_order.end());
  (void)SignedGenome(as_markers);  // validates the permutation
  if (unsigned_order.empty()) return AnnealResult{{{}, 0}, {0}, {0}};

  const auto runs = replicate(restarts, seed, threads, [&](std::size_t, Rng& rng) {
    return anneal_once(unsigned_order, schedule, rng);
  });
  AnnealResult result;
  result.best = runs.front();
  for (const SignAssignment& run : runs) {
    result.restart_best.push_back(run.d0);
    if (run.d0 < result.best.d0) result.best = run;
    result.best_so_far.push_back(result.best.d0);
  }
  return result;
}

}  // namespace cyclewalk
