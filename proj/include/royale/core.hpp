#pragma once

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "royale/rng.hpp"

namespace royale {

enum class Algorithm { BRO, MBRO, PSO, RANDOM };

inline std::string to_string(Algorithm a) {
  switch (a) {
    case Algorithm::BRO: return "BRO";
    case Algorithm::MBRO: return "MBRO";
    case Algorithm::PSO: return "PSO";
    case Algorithm::RANDOM: return "RANDOM";
  }
  throw std::invalid_argument("to_string: bad Algorithm value");
}

inline Algorithm algorithm_from_string(std::string_view s) {
  std::string up(s);
  for (char& c : up) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  if (up == "BRO") return Algorithm::BRO;
  if (up == "MBRO" || up == "M-BRO") return Algorithm::MBRO;
  if (up == "PSO") return Algorithm::PSO;
  if (up == "RANDOM" || up == "RS") return Algorithm::RANDOM;
  throw std::invalid_argument("unknown algorithm '" + std::string(s) + "'");
}

/// Box bounds. `lower`/`upper` are the active box, which shrinks as a run
/// progresses; `original_lower`/`original_upper` keep the box the problem was
/// posed on. The active box always stays inside the original one.
struct SearchSpace {
  std::vector<double> lower;
  std::vector<double> upper;
  std::vector<double> original_lower;
  std::vector<double> original_upper;

  std::size_t dimension() const { return lower.size(); }

  void validate() const {
    if (lower.empty()) throw std::invalid_argument("SearchSpace: dimension must be at least 1");
    if (upper.size() != lower.size() || original_lower.size() != lower.size() ||
        original_upper.size() != lower.size())
      throw std::invalid_argument("SearchSpace: bound vectors differ in length");
    for (std::size_t d = 0; d < lower.size(); ++d) {
      if (!(lower[d] <= upper[d]))
        throw std::invalid_argument("SearchSpace: lower bound exceeds upper bound");
      if (lower[d] < original_lower[d] || upper[d] > original_upper[d])
        throw std::invalid_argument("SearchSpace: active box outside original box");
    }
  }

  static SearchSpace from_bounds(std::vector<double> lo, std::vector<double> hi) {
    SearchSpace s{lo, hi, std::move(lo), std::move(hi)};
    s.validate();
    return s;
  }

  static SearchSpace uniform(std::size_t dim, double lo, double hi) {
    return from_bounds(std::vector<double>(dim, lo), std::vector<double>(dim, hi));
  }
};

struct Individual {
  std::vector<double> position;
  double fitness = std::numeric_limits<double>::infinity();
  int damage = 0;
  std::vector<double> lambda;  // persistent move state; empty unless owned by M-BRO
};

struct OptimizerConfig {
  int pop_size = 100;
  int max_iter = 500;
  int damage_threshold = 3;
  std::uint64_t seed = 0;
  Algorithm algorithm = Algorithm::BRO;
};

inline void validate_config(const OptimizerConfig& config) {
  if (config.pop_size < 2) throw std::invalid_argument("pop_size: must be at least 2");
  if (config.max_iter < 1) throw std::invalid_argument("max_iter: must be at least 1");
  if (config.damage_threshold < 1)
    throw std::invalid_argument("damage_threshold: must be at least 1");
}

struct RunResult {
  double best_fitness = std::numeric_limits<double>::infinity();
  std::vector<double> best_position;
  std::vector<double> convergence_trace;  // best-so-far after each iteration
  double elapsed_seconds = 0.0;
  std::uint64_t seed = 0;
};

inline double euclidean_distance(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size())
    throw std::invalid_argument("euclidean_distance: vectors differ in length");
  double s = 0.0;
  for (std::size_t d = 0; d < a.size(); ++d) {
    const double diff = a[d] - b[d];
    s += diff * diff;
  }
  return std::sqrt(s);
}

/// Index of the individual closest to `i` (Euclidean, excluding `i` itself).
/// Ties go to the smallest index. Squared distances order the same way as
/// the distances themselves, so the square root is skipped.
inline std::size_t nearest_neighbor(const std::vector<Individual>& population, std::size_t i) {
  if (population.size() < 2)
    throw std::invalid_argument("nearest_neighbor: population must hold at least two individuals");
  if (i >= population.size()) throw std::invalid_argument("nearest_neighbor: index out of range");
  const std::vector<double>& self = population[i].position;
  std::size_t nearest = population.size();
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < population.size(); ++j) {
    if (j == i) continue;
    const std::vector<double>& other = population[j].position;
    if (other.size() != self.size())
      throw std::invalid_argument("nearest_neighbor: positions differ in length");
    double s = 0.0;
    for (std::size_t d = 0; d < self.size(); ++d) {
      const double diff = self[d] - other[d];
      s += diff * diff;
    }
    if (s < best) {
      best = s;
      nearest = j;
    }
  }
  return nearest;
}

inline void clamp_in_place(std::vector<double>& position, const SearchSpace& space) {
  if (position.size() != space.dimension())
    throw std::invalid_argument("clamp: position length does not match space dimension");
  for (std::size_t d = 0; d < position.size(); ++d)
    position[d] = std::clamp(position[d], space.lower[d], space.upper[d]);
}

/// Saturate each coordinate to the active box.
inline std::vector<double> clamp(std::vector<double> position, const SearchSpace& space) {
  clamp_in_place(position, space);
  return position;
}

/// One uniform point in the active box: r * (upper - lower) + lower per
/// dimension, one draw each.
template <UniformSource R>
std::vector<double> sample_uniform(const SearchSpace& space, R& rng) {
  std::vector<double> x(space.dimension());
  for (std::size_t d = 0; d < x.size(); ++d)
    x[d] = rng.uniform01() * (space.upper[d] - space.lower[d]) + space.lower[d];
  return x;
}

/// Fresh population: uniform positions, damage 0, fitness evaluated once.
/// M-BRO individuals also draw a uniform[0,1) lambda per dimension. Draw
/// order per individual is fixed (position dims, then lambda dims, then the
/// evaluation) so runs are reproducible.
template <class F, UniformSource R>
std::vector<Individual> initialize_population(const OptimizerConfig& config,
                                              const SearchSpace& space, F&& objective, R& rng) {
  validate_config(config);
  space.validate();
  const bool with_lambda = config.algorithm == Algorithm::MBRO;
  std::vector<Individual> population(static_cast<std::size_t>(config.pop_size));
  for (Individual& ind : population) {
    ind.position = sample_uniform(space, rng);
    if (with_lambda) {
      ind.lambda.resize(space.dimension());
      for (double& l : ind.lambda) l = rng.uniform01();
    }
    ind.fitness = objective(std::span<const double>(ind.position));
    ind.damage = 0;
  }
  return population;
}

}  // namespace royale
