#include <cstdlib>
#include <string>

#include "doctest.h"
#include "json.hpp"
#include "rhotica/config_io.hpp"
#include "rhotica/errors.hpp"
#include "support/fixtures.hpp"

using namespace rhotica;

TEST_CASE("defaults validate and serialize") {
  const ToolConfig cfg;
  CHECK_NOTHROW(cfg.validate());
  const auto j = config_to_json(cfg);
  CHECK(j.at("alpha").get<double>() == 0.05);
  CHECK(j.at("cost").at("indel_cost").get<double>() == 0.7);
  CHECK(j.at("dsp").at("frame_ms").get<double>() == 25.0);

  // Serialized config parses back to the same values.
  const ToolConfig again = parse_config(j.dump());
  CHECK(config_to_json(again) == j);
}

TEST_CASE("partial overlays touch only the named keys") {
  const ToolConfig cfg = parse_config(R"({"dsp": {"preemphasis": 0.5}, "alpha": 0.01})");
  CHECK(cfg.dsp.preemphasis == 0.5);
  CHECK(cfg.alpha == 0.01);
  CHECK(cfg.dsp.frame_ms == 25.0);           // untouched
  CHECK(cfg.cost.indel_cost == 0.7);         // untouched
  CHECK(cfg.cost.consonant_place == 0.35);   // untouched
}

TEST_CASE("cost overlays must keep the weight groups consistent") {
  // Shifting one consonant weight alone breaks the sums-to-one rule.
  CHECK_THROWS_AS(parse_config(R"({"cost": {"consonant_place": 0.5}})"), ValidationError);
  // Shifting the group together is fine.
  const ToolConfig cfg = parse_config(
      R"({"cost": {"consonant_place": 0.5, "consonant_manner": 0.25, "consonant_voiced": 0.25}})");
  CHECK(cfg.cost.consonant_place == 0.5);
}

TEST_CASE("unknown keys are rejected, not ignored") {
  CHECK_THROWS_AS(parse_config(R"({"dsp": {"preemph": 0.5}})"), ParseError);
  CHECK_THROWS_AS(parse_config(R"({"dps": {}})"), ParseError);
  CHECK_THROWS_AS(parse_config(R"({"alpha": "high"})"), ParseError);
  CHECK_THROWS_AS(parse_config("[1,2]"), ParseError);
  CHECK_THROWS_AS(parse_config("{broken"), ParseError);
}

TEST_CASE("value validation happens after the merge") {
  CHECK_THROWS_AS(parse_config(R"({"alpha": 1.5})"), ValidationError);
  CHECK_THROWS_AS(parse_config(R"({"dsp": {"preemphasis": 1.0}})"), ValidationError);
  CHECK_THROWS_AS(parse_config(R"({"dsp": {"lpc_order": -2}})"), ValidationError);
  CHECK_THROWS_AS(parse_config(R"({"dsp": {"lpc_order": 2.5}})"), ParseError);  // not an integer
}

TEST_CASE("RHOTICA_CONFIG points load_default_config at a file") {
  fixtures::TempDir tmp;
  const auto path = tmp.file("conf.json");
  fixtures::write_file(path, R"({"alpha": 0.10})");

  setenv("RHOTICA_CONFIG", path.c_str(), 1);
  const ToolConfig cfg = load_default_config();
  CHECK(cfg.alpha == 0.10);

  setenv("RHOTICA_CONFIG", "", 1);
  CHECK(load_default_config().alpha == 0.05);

  setenv("RHOTICA_CONFIG", tmp.file("absent.json").c_str(), 1);
  CHECK_THROWS(load_default_config());
  unsetenv("RHOTICA_CONFIG");
}
