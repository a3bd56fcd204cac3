#include <catch2/catch_amalgamated.hpp>

#include <vector>

#include <royale/mbro.hpp>
#include <royale/rng.hpp>

#include "test_support.hpp"

using namespace royale;

TEST_CASE("movement with both fractions forced to zero leaves the loser in place", "[mbro]") {
  const std::vector<double> loser = {3.0, -2.0};
  const std::vector<double> best = {1.0, 1.0};
  const std::vector<double> lambda = {0.7, 0.2};
  ScriptedStream stream{{0.0, 0.0, 0.0, 0.0}};
  const auto [position, new_lambda] = mbro_move(loser, best, lambda, stream);
  REQUIRE(new_lambda == std::vector<double>{0.0, 0.0});
  REQUIRE(position == loser);
}

TEST_CASE("movement with r1=1, r2=0 from the origin lands on the best", "[mbro]") {
  const std::vector<double> loser = {0.0, 0.0, 0.0};
  const std::vector<double> best = {2.0, -1.0, 5.0};
  const std::vector<double> lambda = {0.3, 0.6, 0.9};
  ScriptedStream stream{{1.0, 0.0, 1.0, 0.0, 1.0, 0.0}};  // r1, r2 per dimension
  const auto [position, new_lambda] = mbro_move(loser, best, lambda, stream);
  REQUIRE(new_lambda == best);
  REQUIRE(position == best);
}

TEST_CASE("one-dimensional move by hand", "[mbro]") {
  // loser 2, best 10, lambda 0.5, r1 = r2 = 0.5:
  // step = 0.5*(10-2) + 0.5*0.5 = 4.25, position = 2 + 4.25 = 6.25
  const std::vector<double> loser = {2.0};
  const std::vector<double> best = {10.0};
  const std::vector<double> lambda = {0.5};
  ScriptedStream stream{{0.5, 0.5}};
  const auto [position, new_lambda] = mbro_move(loser, best, lambda, stream);
  REQUIRE(new_lambda == std::vector<double>{4.25});
  REQUIRE(position == std::vector<double>{6.25});
}

TEST_CASE("movement validates vector lengths", "[mbro]") {
  ScriptedStream stream{{0.5, 0.5}};
  const std::vector<double> a = {1.0, 2.0}, b = {1.0}, l = {0.0, 0.0};
  REQUIRE_THROWS_AS(mbro_move(a, b, l, stream), std::invalid_argument);
  REQUIRE_THROWS_AS(mbro_move(a, a, b, stream), std::invalid_argument);
}

namespace {

Individual individual_at(std::vector<double> pos, double fitness, std::vector<double> lambda) {
  Individual ind;
  ind.position = std::move(pos);
  ind.fitness = fitness;
  ind.lambda = std::move(lambda);
  return ind;
}

BroState state_of_two(const BenchmarkProblem& problem, Individual a, Individual b) {
  BroState st;
  st.space = search_space_of(problem);
  st.best = a.fitness <= b.fitness ? a : b;
  st.population.push_back(std::move(a));
  st.population.push_back(std::move(b));
  st.delta = 1000;
  return st;
}

}  // namespace

TEST_CASE("winners keep their lambda untouched", "[mbro]") {
  const BenchmarkProblem problem = make_problem(FunctionId::f1, 2);
  OptimizerConfig config;
  config.pop_size = 2;
  config.max_iter = 100;
  config.damage_threshold = 50;
  config.algorithm = Algorithm::MBRO;

  BroState st = state_of_two(problem,
                             individual_at({-30.0, -30.0}, 0.0, {0.4, 0.6}),
                             individual_at({5.0, 5.0}, 2450.0, {0.1, 0.9}));
  RandomStream rng(21);
  mbro_step(st, problem, config, rng);

  REQUIRE(st.population[0].lambda == std::vector<double>{0.4, 0.6});  // never lost
  REQUIRE(st.population[1].lambda != std::vector<double>{0.1, 0.9});  // moved or braked
}

TEST_CASE("improving candidates are kept, worsening ones are not", "[mbro]") {
  const BenchmarkProblem problem = make_problem(FunctionId::f1, 1);
  OptimizerConfig config;
  config.pop_size = 2;
  config.max_iter = 100;
  config.damage_threshold = 50;
  config.algorithm = Algorithm::MBRO;

  SECTION("a candidate closer to the optimum replaces the loser") {
    BroState st = state_of_two(problem, individual_at({-30.0}, 0.0, {0.0}),
                               individual_at({-20.0}, 100.0, {0.0}));
    // duel 1: r1=0.6 steps -6 to -26, improves (16 < 100), kept with its step;
    // duel 2: r1=r2=0 reproduces the position, the rejection decays the kept
    // step by the soft-brake draw 0.5.
    ScriptedStream stream{{0.6, 0.0, 0.0, 0.0, 0.5}};
    mbro_step(st, problem, config, stream);
    REQUIRE(st.population[1].position == std::vector<double>{-26.0});
    REQUIRE(st.population[1].fitness == 16.0);
    REQUIRE(st.population[1].lambda == std::vector<double>{-3.0});
  }

  SECTION("a rejected candidate leaves position and fitness alone") {
    BroState st = state_of_two(problem, individual_at({-30.0}, 0.0, {0.0}),
                               individual_at({-20.0}, 100.0, {0.0}));
    // Both duels: r1=0, r2 anything, lambda 0 -> candidate equals the loser,
    // 100 < 100 is false, so the move is rejected and lambda decays softly.
    ScriptedStream stream{{0.0, 0.9, 0.5, 0.0, 0.9, 0.5}};
    mbro_step(st, problem, config, stream);
    REQUIRE(st.population[1].position == std::vector<double>{-20.0});
    REQUIRE(st.population[1].fitness == 100.0);
  }
}

TEST_CASE("with the stream stubbed to zero the whole engine freezes", "[mbro]") {
  const BenchmarkProblem problem = make_problem(FunctionId::f9, 4);
  OptimizerConfig config;
  config.pop_size = 6;
  config.max_iter = 30;
  config.damage_threshold = 3;
  config.algorithm = Algorithm::MBRO;

  ConstantStream zeros{0.0};
  BroState st = mbro_init(problem, config, zeros);
  // all-zero draws put the whole population at the lower corner
  const std::vector<double> corner(4, problem.lower);
  const double corner_fitness = st.population[0].fitness;
  const double best_before = st.best.fitness;

  for (int it = 0; it < 30; ++it) mbro_step(st, problem, config, zeros);

  for (const Individual& ind : st.population) {
    REQUIRE(ind.position == corner);  // moves are identities, respawns re-hit the corner
    REQUIRE(ind.fitness == corner_fitness);
  }
  REQUIRE(st.best.fitness == best_before);
}

TEST_CASE("same seed, same trace", "[mbro]") {
  const BenchmarkProblem problem = make_problem(FunctionId::f11, 8);
  OptimizerConfig config;
  config.pop_size = 14;
  config.max_iter = 80;
  config.algorithm = Algorithm::MBRO;
  config.seed = 31337;
  RandomStream a(config.seed), b(config.seed);
  const RunResult ra = mbro_run(problem, config, a);
  const RunResult rb = mbro_run(problem, config, b);
  REQUIRE(ra.convergence_trace == rb.convergence_trace);
  REQUIRE(ra.best_position == rb.best_position);
  REQUIRE(ra.best_fitness == rb.best_fitness);
}

TEST_CASE("the M-BRO entry points insist on the right algorithm tag", "[mbro]") {
  const BenchmarkProblem problem = make_problem(FunctionId::f16);
  OptimizerConfig config;
  config.algorithm = Algorithm::BRO;
  RandomStream rng(1);
  REQUIRE_THROWS_AS(mbro_init(problem, config, rng), std::invalid_argument);
  REQUIRE_THROWS_AS(mbro_run(problem, config, rng), std::invalid_argument);
}
