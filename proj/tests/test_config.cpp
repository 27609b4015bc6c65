#include "doctest.h"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "wucb/config.hpp"
#include "wucb/io.hpp"
#include "wucb/sim.hpp"

using namespace wucb;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::filesystem::path temp_dir() {
  const auto dir = std::filesystem::temp_directory_path() / "wucb_config_test";
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("minimal config gets the documented defaults") {
  const ExperimentConfig cfg = parse_config(
      R"({"instance":{"kind":"synthetic","k_total":5},"run":{"horizon":100000}})");
  REQUIRE(cfg.is_synthetic());
  const SyntheticSpec& s = std::get<SyntheticSpec>(cfg.instance);
  CHECK(s.gamma == 1.0);
  CHECK(s.active_preferences == std::vector<int>{1, 2, 3, 4, 5});
  CHECK(s.mix_seed == 0);
  CHECK(cfg.paths == 20);
  CHECK(cfg.checkpoint_stride == 100);
  CHECK(cfg.policies == std::vector<std::string>{"wucb"});
  CHECK(cfg.curves_path == "curves.csv");
  CHECK(cfg.summary_path == "summary.json");
  CHECK(cfg.counters);
}

TEST_CASE("invariant violations name the offending field") {
  const char* bad_gamma =
      R"({"instance":{"kind":"synthetic","k_total":5,"gamma":1.5},"run":{"horizon":100000}})";
  try {
    (void)parse_config(bad_gamma);
    FAIL("expected ValidationError");
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()).find("gamma") != std::string::npos);
  }

  CHECK_THROWS_AS(
      (void)parse_config(R"({"instance":{"kind":"synthetic","k_total":5},"run":{"horizon":3}})"),
      ValidationError);
  CHECK_THROWS_AS((void)parse_config(
                      R"({"instance":{"kind":"synthetic","k_total":5},"run":{"horizon":100,"paths":0}})"),
                  ValidationError);
  CHECK_THROWS_AS((void)parse_config(
                      R"({"instance":{"kind":"synthetic","k_total":5},"run":{"horizon":100},"policies":["bogus"]})"),
                  ValidationError);
  CHECK_THROWS_AS((void)parse_config(
                      R"({"instance":{"kind":"synthetic","k_total":5},"run":{"horizon":100},"policies":["wucb","wucb"]})"),
                  ValidationError);
}

TEST_CASE("schema violations carry the field path") {
  try {
    (void)parse_config(R"({"instance":{"kind":"synthetic"},"run":{"horizon":100}})");
    FAIL("expected SchemaError");
  } catch (const SchemaError& e) {
    CHECK(std::string(e.what()).find("instance.k_total") != std::string::npos);
  }
  CHECK_THROWS_AS((void)parse_config("not json"), SchemaError);
  CHECK_THROWS_AS((void)parse_config(R"({"run":{"horizon":100}})"), SchemaError);
  CHECK_THROWS_AS((void)parse_config(
                      R"({"instance":{"kind":"mystery"},"run":{"horizon":100}})"),
                  SchemaError);
  CHECK_THROWS_AS((void)parse_config(
                      R"({"instance":{"kind":"synthetic","k_total":"five"},"run":{"horizon":100}})"),
                  SchemaError);
}

TEST_CASE("configs round-trip through serialization") {
  const char* synthetic =
      R"({"instance":{"kind":"synthetic","k_total":10,"gamma":0.7,"active_preferences":[1,3],"mix_seed":9},
          "run":{"horizon":5000,"paths":4,"base_seed":11,"checkpoint_stride":50},
          "policies":["wucb","oracle"],
          "output":{"curves_path":"a.csv","summary_path":"b.json","counters":false}})";
  const char* explicit_cfg =
      R"({"instance":{"kind":"explicit",
                      "arms":[{"kind":"shifted_uniform","d":2,"base_index":1},
                              {"kind":"mixed","weights":[0.25,0.75]},
                              {"kind":"scaled","gamma":0.9,"inner":{"kind":"shifted_uniform","d":2,"base_index":2}},
                              {"kind":"product_categorical","values":[[0.1,0.9],[0.2,0.8]],
                               "probabilities":[[0.5,0.5],[0.25,0.75]]}],
                      "preferences":{"support":[[0.5,0.5],[0.9,0.1]],"probabilities":[0.5,0.5]}},
          "run":{"horizon":1000}})";
  for (const char* text : {synthetic, explicit_cfg}) {
    const ExperimentConfig once = parse_config(text);
    const std::string dumped = serialize_config(once);
    const ExperimentConfig twice = parse_config(dumped);
    CHECK(serialize_config(twice) == dumped);
    (void)once.build();
  }
}

TEST_CASE("explicit instances build and validate") {
  const ExperimentConfig cfg = parse_config(
      R"({"instance":{"kind":"explicit",
                      "arms":[{"kind":"shifted_uniform","d":2,"base_index":1},
                              {"kind":"shifted_uniform","d":2,"base_index":2}],
                      "preferences":{"support":[[0.8,0.2]],"probabilities":[1.0]}},
          "run":{"horizon":100}})");
  const ProblemInstance inst = cfg.build();
  CHECK(inst.num_arms() == 2);
  CHECK(optimal_arm(inst, {0.8, 0.2}) == 0);

  // dimension clash is caught when the instance is built
  const ExperimentConfig clash = parse_config(
      R"({"instance":{"kind":"explicit",
                      "arms":[{"kind":"shifted_uniform","d":2,"base_index":1},
                              {"kind":"shifted_uniform","d":3,"base_index":1}],
                      "preferences":{"support":[[0.8,0.2]],"probabilities":[1.0]}},
          "run":{"horizon":100}})");
  CHECK_THROWS_AS((void)clash.build(), DimensionMismatch);
}

TEST_CASE("curve files have the documented shape") {
  const ProblemInstance inst = build_synthetic(5, 1.0, {1, 2, 3, 4, 5}, 1);
  const ExperimentResult result = run_experiment(inst, {"wucb"}, 300, 2, 5, 100);
  const CurveMeta meta{5, 1.0, 5};
  const std::string csv = curves_csv(result, meta);

  std::istringstream lines(csv);
  std::string line;
  REQUIRE(std::getline(lines, line));
  CHECK(line ==
        "policy,K,gamma,s1_size,t,mean_pseudo_regret,std_pseudo_regret,"
        "mean_realized_regret,std_realized_regret");
  int rows = 0;
  while (std::getline(lines, line)) {
    CHECK(line.rfind("wucb,5,1,5,", 0) == 0);
    ++rows;
  }
  CHECK(rows == 3);  // checkpoints at 100, 200, 300
}

TEST_CASE("identical runs emit byte-identical files") {
  const auto dir = temp_dir();
  const ProblemInstance inst = build_synthetic(5, 1.0, {1, 2, 3, 4, 5}, 1);
  const CurveMeta meta{5, 1.0, 5};
  const std::string a = (dir / "a.csv").string();
  const std::string b = (dir / "b.csv").string();
  emit_curves(run_experiment(inst, {"wucb"}, 2000, 4, 3, 100, true), meta, a);
  emit_curves(run_experiment(inst, {"wucb"}, 2000, 4, 3, 100, false), meta, b);
  CHECK(slurp(a) == slurp(b));
}

TEST_CASE("summary records the instance facts") {
  const ProblemInstance inst = build_synthetic(5, 1.0, {1, 2, 3, 4, 5}, 1);
  const InstanceSummary summary = summarize(inst);
  const ExperimentResult result = run_experiment(inst, {"wucb"}, 500, 2, 3, 100);
  const CurveMeta meta{5, 1.0, 5};
  const nlohmann::json j =
      summary_json(inst, summary, result, meta, 500, 2, 3, 100, std::uint64_t{1}, true);
  CHECK(j["s2"].empty());
  CHECK(j["bounds"]["regret_upper_leading"].get<double>() == 0.0);
  CHECK(j["policies"]["wucb"]["counter_identities_ok"].get<bool>());
  CHECK(j["path_seeds"].size() == 2);
  CHECK(j["l"].get<double>() == doctest::Approx(0.075).epsilon(1e-12));
}

TEST_CASE("unwritable output paths raise an io error") {
  const ProblemInstance inst = build_synthetic(5, 1.0, {1, 2, 3, 4, 5}, 1);
  const ExperimentResult result = run_experiment(inst, {"wucb"}, 300, 1, 3, 100);
  const CurveMeta meta{5, 1.0, 5};
  CHECK_THROWS_AS(emit_curves(result, meta, "/nonexistent_dir_zz/x.csv"), IoError);
}
