#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <span>
#include <stdexcept>
#include <vector>

#include "royale/core.hpp"
#include "royale/problems.hpp"

namespace royale {

/// First shrink milestone: max_iter / log10(max_iter), rounded half away
/// from zero. Undefined below 2 (log10 would be zero or negative).
inline int initial_delta(int max_iter) {
  if (max_iter < 2) throw std::invalid_argument("initial_delta: max_iter must be at least 2");
  return static_cast<int>(
      std::round(static_cast<double>(max_iter) / std::log10(static_cast<double>(max_iter))));
}

/// Milestones grow by half of themselves: delta + round(delta / 2).
inline int next_delta(int delta) {
  if (delta < 1) throw std::invalid_argument("next_delta: delta must be at least 1");
  return delta + static_cast<int>(std::round(static_cast<double>(delta) / 2.0));
}

/// Loser movement: step toward the best-ever position by an independent
/// uniform[0,1] fraction per dimension. The caller clamps the result.
template <UniformSource R>
std::vector<double> bro_move(std::span<const double> loser_pos, std::span<const double> best_pos,
                             R& rng) {
  if (loser_pos.size() != best_pos.size())
    throw std::invalid_argument("bro_move: vectors differ in length");
  std::vector<double> out(loser_pos.size());
  for (std::size_t d = 0; d < out.size(); ++d) {
    const double r = rng.uniform01();
    out[d] = loser_pos[d] + r * (best_pos[d] - loser_pos[d]);
  }
  return out;
}

/// Contract the box around the best-ever position. The half-width per
/// coordinate is the standard deviation of the coordinate mean (population
/// standard deviation over sqrt(N)), so larger populations concentrate
/// faster. The result is intersected with the original box so containment
/// is preserved.
inline SearchSpace shrink_space(const std::vector<Individual>& population, const Individual& best,
                                const SearchSpace& space) {
  if (population.empty()) throw std::invalid_argument("shrink_space: empty population");
  SearchSpace out = space;
  const double n = static_cast<double>(population.size());
  for (std::size_t d = 0; d < space.dimension(); ++d) {
    double mean = 0.0;
    for (const Individual& ind : population) mean += ind.position[d];
    mean /= n;
    double var = 0.0;
    for (const Individual& ind : population) {
      const double diff = ind.position[d] - mean;
      var += diff * diff;
    }
    const double sd = std::sqrt(var / n) / std::sqrt(n);
    out.lower[d] = std::max(space.original_lower[d], best.position[d] - sd);
    out.upper[d] = std::min(space.original_upper[d], best.position[d] + sd);
  }
  return out;
}

struct BroState {
  std::vector<Individual> population;
  SearchSpace space;
  Individual best;        // best ever observed; never re-evaluated
  int iteration = 0;      // completed iterations
  int delta = 0;          // next shrink milestone
  int shrink_count = 0;
};

namespace detail {

/// Replace a defeated individual with a fresh one. A single fraction r is
/// drawn for the whole respawn and reused across coordinates, so newcomers
/// land on the main diagonal of the active box — the one line that sweeps
/// every coordinate's range simultaneously. Lambda (when carried) restarts
/// at a uniform fraction of each coordinate's current range, giving revived
/// individuals step sizes on the scale of the box they wake up in.
template <UniformSource R>
void respawn(Individual& ind, const SearchSpace& space, const BenchmarkProblem& problem,
             bool with_lambda, R& rng) {
  const double r = rng.uniform01();
  ind.position.resize(space.dimension());
  if (with_lambda) ind.lambda.resize(space.dimension());
  for (std::size_t d = 0; d < space.dimension(); ++d) {
    ind.position[d] = r * (space.upper[d] - space.lower[d]) + space.lower[d];
    if (with_lambda)
      ind.lambda[d] = rng.uniform01() * (space.upper[d] - space.lower[d]);
  }
  ind.damage = 0;
  ind.fitness = evaluate(problem, ind.position, rng);
}

/// One duel sweep. Each index i in order fights its nearest neighbor j; the
/// strictly fitter of the two wins (ties go to the smaller index). The
/// winner's damage resets to zero; the loser — whichever of the pair it is —
/// takes one damage and then acts: respawn once damage reaches the
/// threshold, otherwise move via the supplied policy. Movers update
/// position/fitness themselves; best-ever updates immediately after every
/// action.
template <UniformSource R, class MoveFn>
void battle_sweep(BroState& st, const BenchmarkProblem& problem, const OptimizerConfig& config,
                  R& rng, MoveFn&& move_loser) {
  const bool with_lambda = config.algorithm == Algorithm::MBRO;
  for (std::size_t i = 0; i < st.population.size(); ++i) {
    const std::size_t j = nearest_neighbor(st.population, i);
    const double fi = st.population[i].fitness;
    const double fj = st.population[j].fitness;
    const bool i_wins = fi < fj || (fi == fj && i < j);
    st.population[i_wins ? i : j].damage = 0;
    Individual& loser = st.population[i_wins ? j : i];
    loser.damage += 1;
    if (loser.damage >= config.damage_threshold) {
      respawn(loser, st.space, problem, with_lambda, rng);
    } else {
      move_loser(loser, st, problem, rng);
    }
    if (loser.fitness < st.best.fitness) st.best = loser;
  }
}

/// Post-sweep shrink check. Crossing the milestone contracts the box and
/// pulls every individual back inside it (stragglers are re-evaluated).
template <UniformSource R>
void shrink_if_due(BroState& st, const BenchmarkProblem& problem, R& rng) {
  if (st.iteration + 1 >= st.delta) {
    st.space = shrink_space(st.population, st.best, st.space);
    for (Individual& ind : st.population) {
      bool moved = false;
      for (std::size_t d = 0; d < ind.position.size(); ++d) {
        const double c = std::clamp(ind.position[d], st.space.lower[d], st.space.upper[d]);
        if (c != ind.position[d]) {
          ind.position[d] = c;
          moved = true;
        }
      }
      if (moved) {
        ind.fitness = evaluate(problem, ind.position, rng);
        if (ind.fitness < st.best.fitness) st.best = ind;
      }
    }
    st.delta = next_delta(st.delta);
    st.shrink_count += 1;
  }
  st.iteration += 1;
}

template <UniformSource R>
BroState battle_init(const BenchmarkProblem& problem, const OptimizerConfig& config, R& rng) {
  validate_config(config);
  BroState st;
  st.space = search_space_of(problem);
  auto objective = [&](std::span<const double> x) { return evaluate(problem, x, rng); };
  st.population = initialize_population(config, st.space, objective, rng);
  st.best = *std::min_element(
      st.population.begin(), st.population.end(),
      [](const Individual& a, const Individual& b) { return a.fitness < b.fitness; });
  // A single-iteration run never shrinks; initial_delta needs max_iter >= 2.
  st.delta = config.max_iter >= 2 ? initial_delta(config.max_iter) : config.max_iter + 1;
  return st;
}

template <UniformSource R, class MoveFn>
RunResult battle_run(const BenchmarkProblem& problem, const OptimizerConfig& config, R& rng,
                     MoveFn&& move_loser) {
  const auto t0 = std::chrono::steady_clock::now();
  BroState st = battle_init(problem, config, rng);
  RunResult result;
  result.convergence_trace.reserve(static_cast<std::size_t>(config.max_iter));
  for (int it = 0; it < config.max_iter; ++it) {
    battle_sweep(st, problem, config, rng, move_loser);
    shrink_if_due(st, problem, rng);
    result.convergence_trace.push_back(st.best.fitness);
  }
  result.best_fitness = st.best.fitness;
  result.best_position = st.best.position;
  result.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  result.seed = config.seed;
  return result;
}

/// Unconditional step toward the best-ever position.
struct BroMover {
  template <UniformSource R>
  void operator()(Individual& loser, const BroState& st, const BenchmarkProblem& problem,
                  R& rng) const {
    loser.position = bro_move(loser.position, st.best.position, rng);
    clamp_in_place(loser.position, st.space);
    loser.fitness = evaluate(problem, loser.position, rng);
  }
};

}  // namespace detail

template <UniformSource R>
BroState bro_init(const BenchmarkProblem& problem, const OptimizerConfig& config, R& rng) {
  return detail::battle_init(problem, config, rng);
}

/// One full iteration: duel sweep, then the scheduled shrink check.
template <UniformSource R>
void bro_step(BroState& st, const BenchmarkProblem& problem, const OptimizerConfig& config,
              R& rng) {
  detail::battle_sweep(st, problem, config, rng, detail::BroMover{});
  detail::shrink_if_due(st, problem, rng);
}

template <UniformSource R>
RunResult bro_run(const BenchmarkProblem& problem, const OptimizerConfig& config, R& rng) {
  return detail::battle_run(problem, config, rng, detail::BroMover{});
}

}  // namespace royale
