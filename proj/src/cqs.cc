#include "cyclewalk/cqs.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "cyclewalk/theory.h"

namespace cyclewalk {

CqsState::CqsState(std::uint32_t n, double a) {
  if (n < 2) throw std::invalid_argument("cqs: n must be >= 2");
  if (!(a > 0.0 && a < 1.0)) throw std::invalid_argument("cqs: a must lie in (0, 1)");
  const auto levels = static_cast<std::uint32_t>(std::floor(std::pow(static_cast<double>(n), a)));
  occupancy_.assign(std::max<std::uint32_t>(levels, 1) + 1, 0);
  integral_.assign(occupancy_.size(), 0.0);
}

void CqsState::accumulate(double dt) {
  for (std::uint32_t k : occupied_) integral_[k] += dt * occupancy_[k];
  clock_ += dt;
}

bool CqsState::advance(double horizon, Rng& rng) {
  if (clock_ >= horizon) return false;
  const double birth_rate = static_cast<double>(levels());
  const double rate = birth_rate + static_cast<double>(weighted_);
  std::exponential_distribution<double> holding(rate);
  const double dt = holding(rng);
  if (clock_ + dt >= horizon) {
    accumulate(horizon - clock_);
    clock_ = horizon;
    return false;
  }
  accumulate(dt);

  std::uniform_real_distribution<double> unit(0.0, rate);
  double u = unit(rng);
  if (u < birth_rate) {
    const auto k = std::min(levels(), static_cast<std::uint32_t>(u) + 1);
    if (occupancy_[k]++ == 0) occupied_.push_back(k);
    ++total_;
    weighted_ += k;
    return true;
  }
  u -= birth_rate;
  // Death at level k with weight k xi^k.
  std::size_t pick = occupied_.size() - 1;
  for (std::size_t s = 0; s < occupied_.size(); ++s) {
    const std::uint32_t k = occupied_[s];
    const double w = static_cast<double>(k) * occupancy_[k];
    if (u < w) {
      pick = s;
      break;
    }
    u -= w;
  }
  const std::uint32_t k = occupied_[pick];
  if (--occupancy_[k] == 0) {
    occupied_[pick] = occupied_.back();
    occupied_.pop_back();
  }
  --total_;
  weighted_ -= k;
  return true;
}

CqsRun simulate_cqs(std::uint32_t n, double a, double horizon_c, Rng& rng) {
  if (!(horizon_c >= 0.0)) throw std::invalid_argument("cqs: horizon must be >= 0");
  CqsState state(n, a);
  CqsRun run;
  run.levels = state.levels();
  while (state.advance(horizon_c, rng)) {
    ++run.events;
    run.sup_total = std::max(run.sup_total, state.total());
    run.sup_weighted = std::max(run.sup_weighted, state.weighted());
  }
  run.mean_occupancy.assign(run.levels + 1, 0.0);
  if (horizon_c > 0.0) {
    for (std::uint32_t k = 1; k <= run.levels; ++k) {
      run.mean_occupancy[k] = state.occupancy_integral(k) / horizon_c;
    }
  }
  return run;
}

ExcursionRecord sample_excursion(Rng& rng) {
  ExcursionRecord rec;
  std::uint64_t level = 1;
  rec.max_level = 1;
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  while (level > 0) {
    ++rec.duration;
    if (unit(rng) * static_cast<double>(level + 1) < 1.0) {
      ++level;
      rec.max_level = std::max<std::uint32_t>(rec.max_level, static_cast<std::uint32_t>(level));
    } else {
      --level;
    }
  }
  return rec;
}

std::vector<double> excursion_max_distribution(std::uint32_t x_max, std::uint64_t count,
                                               Rng& rng) {
  if (count == 0) throw std::invalid_argument("excursion count must be > 0");
  std::vector<std::uint64_t> exceed(x_max + 1, 0);
  for (std::uint64_t e = 0; e < count; ++e) {
    const std::uint32_t m = sample_excursion(rng).max_level;
    for (std::uint32_t x = 0; x <= x_max && x < m; ++x) ++exceed[x];
  }
  std::vector<double> tail(x_max + 1);
  for (std::uint32_t x = 0; x <= x_max; ++x) {
    tail[x] = static_cast<double>(exceed[x]) / static_cast<double>(count);
  }
  return tail;
}

double excursion_tail_exact(std::uint32_t x) {
  return 1.0 / theory::phi_factorial(x + 1).convert_to<double>();
}

}  // namespace cyclewalk
