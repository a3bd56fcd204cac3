#pragma once

#include <algorithm>
#include <chrono>
#include <vector>

#include "royale/core.hpp"
#include "royale/problems.hpp"

namespace royale {

/// Uniform sampling in the original box: pop_size samples per iteration,
/// best-so-far recorded after each. The evaluation budget matches the
/// population algorithms exactly.
template <UniformSource R>
RunResult random_search_run(const BenchmarkProblem& problem, const OptimizerConfig& config,
                            R& rng) {
  validate_config(config);
  const auto t0 = std::chrono::steady_clock::now();
  const SearchSpace space = search_space_of(problem);
  RunResult result;
  result.convergence_trace.reserve(static_cast<std::size_t>(config.max_iter));
  for (int it = 0; it < config.max_iter; ++it) {
    for (int s = 0; s < config.pop_size; ++s) {
      std::vector<double> x = sample_uniform(space, rng);
      const double f = evaluate(problem, x, rng);
      if (f < result.best_fitness) {
        result.best_fitness = f;
        result.best_position = std::move(x);
      }
    }
    result.convergence_trace.push_back(result.best_fitness);
  }
  result.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  result.seed = config.seed;
  return result;
}

/// Canonical global-best PSO: w = 0.729, c1 = c2 = 1.49445, velocities start
/// at zero and are clamped to +/-(upper - lower) per dimension, positions
/// clamped to the box. r draws are per dimension (r1 then r2), particles in
/// index order, so runs are reproducible.
template <UniformSource R>
RunResult pso_run(const BenchmarkProblem& problem, const OptimizerConfig& config, R& rng) {
  constexpr double kInertia = 0.729;
  constexpr double kCognitive = 1.49445;
  constexpr double kSocial = 1.49445;

  validate_config(config);
  const auto t0 = std::chrono::steady_clock::now();
  const SearchSpace space = search_space_of(problem);
  const std::size_t dim = space.dimension();
  auto objective = [&](std::span<const double> x) { return evaluate(problem, x, rng); };
  std::vector<Individual> swarm = initialize_population(config, space, objective, rng);
  std::vector<std::vector<double>> velocity(swarm.size(), std::vector<double>(dim, 0.0));
  std::vector<std::vector<double>> pbest_pos;
  std::vector<double> pbest_fit;
  pbest_pos.reserve(swarm.size());
  for (const Individual& p : swarm) {
    pbest_pos.push_back(p.position);
    pbest_fit.push_back(p.fitness);
  }
  std::size_t g = 0;
  for (std::size_t i = 1; i < swarm.size(); ++i)
    if (pbest_fit[i] < pbest_fit[g]) g = i;
  std::vector<double> gbest_pos = pbest_pos[g];
  double gbest_fit = pbest_fit[g];

  RunResult result;
  result.convergence_trace.reserve(static_cast<std::size_t>(config.max_iter));
  for (int it = 0; it < config.max_iter; ++it) {
    for (std::size_t i = 0; i < swarm.size(); ++i) {
      Individual& p = swarm[i];
      for (std::size_t d = 0; d < dim; ++d) {
        const double r1 = rng.uniform01();
        const double r2 = rng.uniform01();
        const double span = space.upper[d] - space.lower[d];
        double v = kInertia * velocity[i][d] + kCognitive * r1 * (pbest_pos[i][d] - p.position[d]) +
                   kSocial * r2 * (gbest_pos[d] - p.position[d]);
        v = std::clamp(v, -span, span);
        velocity[i][d] = v;
        p.position[d] = std::clamp(p.position[d] + v, space.lower[d], space.upper[d]);
      }
      p.fitness = evaluate(problem, p.position, rng);
      if (p.fitness < pbest_fit[i]) {
        pbest_fit[i] = p.fitness;
        pbest_pos[i] = p.position;
        if (p.fitness < gbest_fit) {
          gbest_fit = p.fitness;
          gbest_pos = p.position;
        }
      }
    }
    result.convergence_trace.push_back(gbest_fit);
  }
  result.best_fitness = gbest_fit;
  result.best_position = std::move(gbest_pos);
  result.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  result.seed = config.seed;
  return result;
}

}  // namespace royale
