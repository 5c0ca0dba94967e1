#include <doctest.h>

#include <cstdlib>
#include <fstream>

#include "app/config.hpp"
#include "app/figures.hpp"

using namespace qfim;
using namespace qfim::app;

namespace {

std::string write_temp(const std::string& name, const std::string& body) {
  const std::string path = "/tmp/qfim_test_" + name + ".json";
  std::ofstream out(path, std::ios::binary);
  out << body;
  return path;
}

}  // namespace

TEST_CASE("config file loading is strict") {
  SUBCASE("well-formed file") {
    const auto path = write_temp(
        "ok", R"({"mu": 0.2, "r": "pi/4", "scenario": "qubit", "samples": 50,
                  "heatmap": true})");
    const RunConfig cfg = load_config_file(path);
    CHECK(cfg.mu == 0.2);
    CHECK(parse_r_value(*cfg.r) == kRindlerMax);
    CHECK(*cfg.scenario == "qubit");
    CHECK(*cfg.samples == 50);
    CHECK(*cfg.heatmap == true);
  }
  SUBCASE("unknown key is a hard error") {
    const auto path = write_temp("unknown", R"({"mu": 0.2, "bogus": 1})");
    CHECK_THROWS_AS(load_config_file(path), ConfigError);
  }
  SUBCASE("wrong type is a hard error") {
    const auto path = write_temp("type", R"({"mu": "big"})");
    CHECK_THROWS_AS(load_config_file(path), ConfigError);
  }
  SUBCASE("malformed JSON is a hard error") {
    const auto path = write_temp("broken", "{mu: }");
    CHECK_THROWS_AS(load_config_file(path), ConfigError);
  }
  SUBCASE("missing file is a hard error") {
    CHECK_THROWS_AS(load_config_file("/nonexistent/qfim.json"), ConfigError);
  }
}

TEST_CASE("flags override file values") {
  RunConfig file;
  file.mu = 0.4;
  file.scenario = "both";
  RunConfig flags;
  flags.mu = 0.1;
  const RunConfig merged = merge(file, flags);
  CHECK(*merged.mu == 0.1);
  CHECK(*merged.scenario == "both");
}

TEST_CASE("r value parsing") {
  CHECK(parse_r_value("pi/4") == kRindlerMax);
  CHECK(parse_r_value("0.25") == 0.25);
  CHECK_THROWS_AS(parse_r_value("quarter"), ConfigError);
  CHECK_THROWS_AS(parse_r_value("0.2x"), ConfigError);
}

TEST_CASE("numeric r in a config file keeps full precision") {
  const auto path =
      write_temp("rprec", R"({"r": 0.78539816339744828})");
  const RunConfig cfg = load_config_file(path);
  CHECK(parse_r_value(*cfg.r) == 0.78539816339744828);
}

TEST_CASE("axis parsing") {
  const AxisSpec axis = parse_axis("r:0:pi/4:201");
  CHECK(axis.name == "r");
  CHECK(axis.min == 0.0);
  CHECK(axis.max == kRindlerMax);
  CHECK(axis.count == 201);
  CHECK_THROWS_AS(parse_axis("r:0:1"), ConfigError);
  CHECK_THROWS_AS(parse_axis("r:0:1:many"), ConfigError);
}

TEST_CASE("point parameter assembly") {
  SUBCASE("defaults") {
    const ModelParams p = make_params(RunConfig{});
    CHECK(p.mu == kDefaultMu);
    CHECK(p.r == kDefaultR);
    CHECK(p.gamma_a == 0.0);
    CHECK(p.scenario == ChannelScenario::None);
  }
  SUBCASE("coupled gamma") {
    RunConfig cfg;
    cfg.gamma = 0.7;
    const ModelParams p = make_params(cfg);
    CHECK(p.gamma_a == 0.7);
    CHECK(p.gamma_b == 0.7);
    CHECK(p.coupled_gamma);
  }
  SUBCASE("coupled gamma conflicts with per-particle strengths") {
    RunConfig cfg;
    cfg.gamma = 0.7;
    cfg.gamma_a = 0.2;
    CHECK_THROWS_AS(make_params(cfg), ConfigError);
  }
  SUBCASE("grids need axis1") {
    CHECK_THROWS_AS(make_grid(RunConfig{}), ConfigError);
  }
}

TEST_CASE("figure preset table") {
  const char* ids[] = {"2a", "2b", "3", "4a", "4b", "5a", "5b",
                       "6", "7a", "7b", "8a", "8b", "9a", "9b"};
  for (const char* id : ids) {
    const FigurePreset* preset = find_figure_preset(id);
    REQUIRE(preset != nullptr);
    CHECK(preset->id == id);
  }
  CHECK(find_figure_preset("99") == nullptr);

  const FigurePreset* fig3 = find_figure_preset("3");
  CHECK(fig3->curve_family);
  CHECK(fig3->mu_values == std::vector<Real>{0.01, 0.1, 0.2, 0.3});
  CHECK(fig3->grid.base.gamma_a == 0.99);
  CHECK(fig3->grid.base.scenario == ChannelScenario::QubitOnly);

  const FigurePreset* fig6 = find_figure_preset("6");
  CHECK(fig6->mu_values == std::vector<Real>{0.1, 0.2, 0.3, 0.4});
  CHECK(fig6->grid.base.scenario == ChannelScenario::QutritOnly);

  // The published r = 0.8 exceeds pi/4; the preset clamps into the domain.
  const FigurePreset* fig7b = find_figure_preset("7b");
  CHECK(fig7b->grid.base.r == kRindlerMax);
  CHECK_FALSE(fig7b->curve_family);

  for (const auto& preset : figure_presets()) {
    if (!preset.curve_family) {
      CHECK(preset.grid.axis1.count == 201);
      CHECK(preset.grid.axis2->count == 201);
      validate_grid(preset.grid);
    }
  }
}

TEST_CASE("QFI_THREADS parsing") {
  unsetenv("QFI_THREADS");
  CHECK(threads_from_env() == 0);
  setenv("QFI_THREADS", "3", 1);
  CHECK(threads_from_env() == 3);
  setenv("QFI_THREADS", "0", 1);
  CHECK_THROWS_AS(threads_from_env(), ConfigError);
  setenv("QFI_THREADS", "soup", 1);
  CHECK_THROWS_AS(threads_from_env(), ConfigError);
  unsetenv("QFI_THREADS");
}
