#pragma once

#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "royale/bro.hpp"
#include "royale/core.hpp"

namespace royale {

/// Loser movement with a persistent per-dimension step state — a velocity of
/// sorts. Per dimension, with fresh r1 and r2 uniform in [0,1]:
///
///   lambda'[d] = r1 * (best[d] - loser[d]) + r2 * lambda[d]
///   new[d]     = loser[d] + lambda'[d]
///
/// The new step blends attraction toward the best-ever position with the
/// remembered step, and the position advances by the blend. Returns the
/// moved position and the updated lambda; the caller clamps the position and
/// decides whether to keep the pair. Lambda itself is never clamped, so the
/// step size can grow and shrink freely.
template <UniformSource R>
std::pair<std::vector<double>, std::vector<double>> mbro_move(std::span<const double> loser_pos,
                                                              std::span<const double> best_pos,
                                                              std::span<const double> lambda,
                                                              R& rng) {
  if (loser_pos.size() != best_pos.size() || loser_pos.size() != lambda.size())
    throw std::invalid_argument("mbro_move: vectors differ in length");
  std::vector<double> position(loser_pos.size());
  std::vector<double> new_lambda(loser_pos.size());
  for (std::size_t d = 0; d < position.size(); ++d) {
    const double r1 = rng.uniform01();
    const double r2 = rng.uniform01();
    new_lambda[d] = r1 * (best_pos[d] - loser_pos[d]) + r2 * lambda[d];
    position[d] = loser_pos[d] + new_lambda[d];
  }
  return {std::move(position), std::move(new_lambda)};
}

namespace detail {

/// Greedy movement: the mbro_move candidate replaces the loser only when it
/// improves the loser's own fitness, so an individual never moves to a worse
/// position of its own accord. A rejected move instead bleeds momentum out
/// of lambda: while the space is still at full size each component keeps a
/// uniform fraction of itself (exploration stays alive), and once the first
/// shrink has fired lambda drops straight to zero (pure contraction toward
/// the best from then on).
struct MbroMover {
  template <UniformSource R>
  void operator()(Individual& loser, const BroState& st, const BenchmarkProblem& problem,
                  R& rng) const {
    auto [position, lambda] = mbro_move(loser.position, st.best.position, loser.lambda, rng);
    clamp_in_place(position, st.space);
    const double fitness = evaluate(problem, position, rng);
    if (fitness < loser.fitness) {
      loser.position = std::move(position);
      loser.lambda = std::move(lambda);
      loser.fitness = fitness;
    } else if (st.shrink_count == 0) {
      for (double& l : loser.lambda) l *= rng.uniform01();
    } else {
      for (double& l : loser.lambda) l = 0.0;
    }
  }
};

}  // namespace detail

template <UniformSource R>
BroState mbro_init(const BenchmarkProblem& problem, const OptimizerConfig& config, R& rng) {
  if (config.algorithm != Algorithm::MBRO)
    throw std::invalid_argument("mbro_init: config.algorithm must be MBRO");
  return detail::battle_init(problem, config, rng);
}

/// One full M-BRO iteration: same engine as bro_step, losers move by
/// mbro_move instead.
template <UniformSource R>
void mbro_step(BroState& st, const BenchmarkProblem& problem, const OptimizerConfig& config,
               R& rng) {
  detail::battle_sweep(st, problem, config, rng, detail::MbroMover{});
  detail::shrink_if_due(st, problem, rng);
}

template <UniformSource R>
RunResult mbro_run(const BenchmarkProblem& problem, const OptimizerConfig& config, R& rng) {
  if (config.algorithm != Algorithm::MBRO)
    throw std::invalid_argument("mbro_run: config.algorithm must be MBRO");
  return detail::battle_run(problem, config, rng, detail::MbroMover{});
}

}  // namespace royale
