#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include <royale/problems.hpp>
#include <royale/rng.hpp>

#include "test_support.hpp"

using namespace royale;

namespace {

struct ExpectedRow {
  FunctionId id;
  const char* name;
  int dimension;
  double lower, upper;
  std::optional<double> shift;
  bool has_known_best;
};

const std::vector<ExpectedRow>& expected_catalog() {
  static const std::vector<ExpectedRow> rows = {
      {FunctionId::f1, "Sphere", 30, -100.0, 100.0, -30.0, true},
      {FunctionId::f2, "Schwefel 2.20", 30, -10.0, 10.0, -3.0, true},
      {FunctionId::f3, "Rotated hyper-ellipsoid", 30, -100.0, 100.0, -30.0, true},
      {FunctionId::f4, "Schwefel 2.21", 30, -100.0, 100.0, -30.0, true},
      {FunctionId::f5, "Rosenbrock", 30, -30.0, 30.0, -15.0, true},
      {FunctionId::f6, "Step", 30, -100.0, 100.0, std::nullopt, true},
      {FunctionId::f7, "Quartic", 30, -128.0, 128.0, -25.0, false},
      {FunctionId::f8, "Schwefel", 30, -500.0, 500.0, -300.0, false},
      {FunctionId::f9, "Rastrigin", 30, -5.12, 5.12, -2.0, true},
      {FunctionId::f10, "Ackley", 30, -32.0, 32.0, std::nullopt, true},
      {FunctionId::f11, "Griewank", 30, -600.0, 600.0, -400.0, true},
      {FunctionId::f12, "Penalized", 30, -50.0, 50.0, -30.0, true},
      {FunctionId::f13, "Levi", 30, -50.0, 50.0, std::nullopt, true},
      {FunctionId::f14, "Shekel foxholes", 2, -65.0, 65.0, std::nullopt, true},
      {FunctionId::f15, "Kowalik", 4, -5.0, 5.0, std::nullopt, true},
      {FunctionId::f16, "Six-hump camel", 2, -5.0, 5.0, std::nullopt, true},
      {FunctionId::f17, "Branin", 2, -5.0, 5.0, std::nullopt, true},
      {FunctionId::f18, "Goldstein-Price", 2, -2.0, 2.0, std::nullopt, true},
      {FunctionId::f19, "Hartmann 3", 3, 0.0, 1.0, std::nullopt, true},
  };
  return rows;
}

double spot_tolerance(FunctionId id) {
  // Fixed-dimension optima are published at limited precision, so the spot
  // check tolerance follows the precision of the stored position.
  switch (id) {
    case FunctionId::f14: return 1e-9;
    case FunctionId::f15: return 1e-7;
    case FunctionId::f16: return 1e-9;
    case FunctionId::f19: return 1e-4;
    default: return 1e-12;
  }
}

}  // namespace

TEST_CASE("the catalog lists all nineteen functions as published", "[problems]") {
  const std::vector<BenchmarkProblem> cat = catalog();
  REQUIRE(cat.size() == 19);
  const auto& rows = expected_catalog();
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const BenchmarkProblem& p = cat[i];
    const ExpectedRow& e = rows[i];
    INFO("function " << to_string(e.id));
    REQUIRE(p.id == e.id);
    REQUIRE(p.name == e.name);
    REQUIRE(p.dimension == e.dimension);
    REQUIRE(p.lower == e.lower);
    REQUIRE(p.upper == e.upper);
    if (e.shift) {
      REQUIRE(p.shift.size() == static_cast<std::size_t>(e.dimension));
      for (double s : p.shift) REQUIRE(s == *e.shift);
    } else {
      REQUIRE(p.shift.empty());
    }
    REQUIRE(p.known_best.has_value() == e.has_known_best);
  }
}

TEST_CASE("every stored optimum evaluates to its stored value", "[problems]") {
  RandomStream rng(1);
  for (const BenchmarkProblem& p : catalog()) {
    if (!p.known_best) continue;
    INFO("function " << to_string(p.id));
    REQUIRE(p.known_best_position.size() == static_cast<std::size_t>(p.dimension));
    const double f = evaluate(p, p.known_best_position, rng);
    REQUIRE(std::abs(f - *p.known_best) <= spot_tolerance(p.id));
  }
}

TEST_CASE("spot values pinned by hand", "[problems]") {
  RandomStream rng(1);

  // Sphere at the centre of its box: every shifted coordinate is 30.
  auto f1 = make_problem(FunctionId::f1);
  REQUIRE(evaluate(f1, std::vector<double>(30, 0.0), rng) == 30.0 * 900.0);

  // Rastrigin at its optimum is exactly zero: 10n cancels the cosine sum.
  auto f9 = make_problem(FunctionId::f9);
  REQUIRE(evaluate(f9, std::vector<double>(30, -2.0), rng) == 0.0);

  // Ackley at the origin.
  auto f10 = make_problem(FunctionId::f10);
  REQUIRE(std::abs(evaluate(f10, std::vector<double>(30, 0.0), rng)) < 1e-12);

  // As printed (no leading minus), Schwefel's deepest well of the full
  // landscape sits at z = -420.9687 with depth -418.9829 per dimension.
  auto f8 = make_problem(FunctionId::f8);
  const double z_star = -420.9687462275036;
  const double f8_val = evaluate(f8, std::vector<double>(30, z_star - 300.0), rng);
  REQUIRE(std::abs(f8_val - (-12569.486618173014)) < 1e-6);

  // Step flattens everything within half a unit of the rounded grid.
  auto f6 = make_problem(FunctionId::f6);
  std::vector<double> x6(30, 0.4);
  REQUIRE(evaluate(f6, x6, rng) == 0.0);
  x6.assign(30, 0.6);
  REQUIRE(evaluate(f6, x6, rng) == 30.0);

  // Goldstein-Price at (0,-1) is exactly 3.
  auto f18 = make_problem(FunctionId::f18);
  REQUIRE(evaluate(f18, std::vector<double>{0.0, -1.0}, rng) == 3.0);
}

TEST_CASE("quartic noise is one extra uniform draw per evaluation", "[problems]") {
  auto f7 = make_problem(FunctionId::f7);
  const std::vector<double> at_shift(30, -25.0);

  ScriptedStream zero{{0.0}};
  REQUIRE(evaluate(f7, at_shift, zero) == 0.0);

  ScriptedStream big{{0.75}};
  REQUIRE(evaluate(f7, at_shift, big) == 0.75);

  // deterministic part: sum of (i+1) * z^4
  ScriptedStream again{{0.0}};
  std::vector<double> x(30, -25.0);
  x[0] += 2.0;  // z_0 = 2
  REQUIRE(evaluate(f7, x, again) == 16.0);
}

TEST_CASE("shifting translates the landscape without changing it", "[problems]") {
  RandomStream rng(2718);
  for (FunctionId id : all_functions()) {
    BenchmarkProblem shifted = make_problem(id);
    if (shifted.shift.empty()) continue;
    BenchmarkProblem plain = shifted;
    plain.shift.clear();
    INFO("function " << to_string(id));
    for (int trial = 0; trial < 20; ++trial) {
      std::vector<double> x(static_cast<std::size_t>(shifted.dimension));
      for (double& v : x) v = rng.uniform(shifted.lower, shifted.upper);
      std::vector<double> y(x.size());
      for (std::size_t d = 0; d < x.size(); ++d) y[d] = x[d] - shifted.shift[d];
      if (id == FunctionId::f7) {
        ScriptedStream a{{0.25}}, b{{0.25}};
        REQUIRE(evaluate(shifted, x, a) == evaluate(plain, y, b));
      } else {
        REQUIRE(evaluate(shifted, x, rng) == evaluate(plain, y, rng));
      }
    }
  }
}

TEST_CASE("out-of-range shift constants are opt-in", "[problems]") {
  CatalogOptions opts;
  opts.out_of_range_shifts = true;

  auto f6 = make_problem(FunctionId::f6, {}, opts);
  REQUIRE(f6.shift == std::vector<double>(30, -750.0));

  auto f13 = make_problem(FunctionId::f13, {}, opts);
  REQUIRE(f13.shift.size() == 30);
  REQUIRE(f13.shift[0] == -100.0);
  REQUIRE(f13.shift[1] == 100.0);
  REQUIRE(f13.shift[28] == -100.0);

  // default build leaves both unshifted
  REQUIRE(make_problem(FunctionId::f6).shift.empty());
  REQUIRE(make_problem(FunctionId::f13).shift.empty());
}

TEST_CASE("dimension override rescales the scalable families only", "[problems]") {
  auto p = make_problem(FunctionId::f1, 5);
  REQUIRE(p.dimension == 5);
  REQUIRE(p.shift.size() == 5);
  REQUIRE(p.known_best_position.size() == 5);

  REQUIRE_THROWS_WITH(make_problem(FunctionId::f16, 5),
                      Catch::Matchers::ContainsSubstring("fixed dimension"));
  REQUIRE_THROWS_AS(make_problem(FunctionId::f1, 0), std::invalid_argument);
  REQUIRE_THROWS_WITH(make_problem(FunctionId::f5, 1),
                      Catch::Matchers::ContainsSubstring("at least 2"));
  REQUIRE_THROWS_AS(make_problem(FunctionId::f12, 1), std::invalid_argument);
}

TEST_CASE("evaluate validates its input", "[problems]") {
  RandomStream rng(3);
  auto p = make_problem(FunctionId::f1);
  std::vector<double> short_x(3, 0.0);
  REQUIRE_THROWS_AS(evaluate(p, short_x, rng), std::invalid_argument);
  std::vector<double> with_nan(30, 0.0);
  with_nan[7] = std::nan("");
  REQUIRE_THROWS_AS(evaluate(p, with_nan, rng), std::invalid_argument);
}

TEST_CASE("function names parse and print", "[problems]") {
  REQUIRE(function_from_string("f1") == FunctionId::f1);
  REQUIRE(function_from_string("F19") == FunctionId::f19);
  REQUIRE(to_string(FunctionId::f11) == "f11");
  REQUIRE_THROWS_AS(function_from_string("f0"), std::invalid_argument);
  REQUIRE_THROWS_AS(function_from_string("f20"), std::invalid_argument);
  REQUIRE_THROWS_AS(function_from_string("sphere"), std::invalid_argument);
}
