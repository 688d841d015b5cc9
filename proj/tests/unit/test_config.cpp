#include <doctest.h>

#include "gridlab/config.hpp"
#include "gridlab/errors.hpp"

using namespace gridlab;

TEST_CASE("defaults per problem") {
  const auto osc = default_experiment(ProblemKind::oscillator);
  CHECK(osc.epochs == 100000);
  CHECK(osc.grid_sizes == std::vector<int>{100, 200, 400});
  CHECK(osc.strategies.size() == 5);
  CHECK(osc.run_count() == 30);
  const auto poi = default_experiment(ProblemKind::poisson);
  CHECK(poi.epochs == 50000);
  CHECK(poi.grid_sizes == std::vector<int>{20, 40, 80});
  CHECK(poi.boundary_per_edge == 30);
  CHECK(poi.architectures[1].widths_string() == "50x50");
  CHECK(poi.architectures[1].input_dim == 2);
}

TEST_CASE("seed lists") {
  CHECK(parse_seeds("42") == std::vector<std::uint64_t>{42});
  CHECK(parse_seeds(" 1, 11 ,21") == std::vector<std::uint64_t>{1, 11, 21});
  const auto r = parse_seeds("0..199");
  CHECK(r.size() == 200);
  CHECK(r.back() == 199);
  CHECK(parse_seeds("5..5").size() == 1);
  CHECK_THROWS_AS(parse_seeds("9..2"), ConfigError);
  CHECK_THROWS_AS(parse_seeds("x"), ConfigError);
  CHECK_THROWS_AS(parse_seeds(""), ConfigError);
}

TEST_CASE("full config text") {
  const auto cfg = parse_config(R"(
[problem]
kind = decay
lambda = 0.5
[sampling]
strategies = sine_based, chebyshev
grid_sizes = 50, 60
[network]
architectures = 8, 4x4
[training]
epochs = 10
seeds = 0..3
log_every = 5
[output]
dir = results/x
)");
  CHECK(cfg.problem.kind == ProblemKind::decay);
  CHECK(cfg.problem.lambda == 0.5);
  CHECK(cfg.problem.x0 == 100.0);
  CHECK(cfg.strategies == std::vector<Strategy>{Strategy::sine_based, Strategy::chebyshev});
  CHECK(cfg.grid_sizes == std::vector<int>{50, 60});
  REQUIRE(cfg.architectures.size() == 2);
  CHECK(cfg.architectures[1].hidden_widths == std::vector<int>{4, 4});
  CHECK(cfg.epochs == 10);
  CHECK(cfg.seeds.size() == 4);
  CHECK(cfg.log_every == 5);
  CHECK(cfg.output_dir == "results/x");
  CHECK(cfg.run_count() == 32);
}

TEST_CASE("an empty config yields the oscillator defaults") {
  const auto cfg = parse_config("");
  CHECK(cfg.problem.kind == ProblemKind::oscillator);
  CHECK(cfg.epochs == 100000);
  CHECK(cfg.seeds == std::vector<std::uint64_t>{42});
}

TEST_CASE("invalid configs are rejected") {
  CHECK_THROWS_AS(parse_config("[problem]\nkind = heat\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("[problem]\nspeed = 3\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("[extras]\na = 1\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("stray = 1\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("[sampling]\nstrategies = spiral\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("[sampling]\ngrid_sizes = 1\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("[training]\nepochs = 0\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("[training]\nepochs = ten\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("[problem]\nkind = decay\nlambda = -1\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("[network]\narchitectures = 0\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("[problem\n"), ConfigError);
  CHECK_THROWS_AS(load_config("/nonexistent/gridlab.ini"), IoError);
}
