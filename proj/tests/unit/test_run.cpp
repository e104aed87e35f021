#include <doctest.h>

#include <filesystem>
#include <json.hpp>

#include "helpers.hpp"
#include "mtloss/errors.hpp"
#include "mtloss/report.hpp"
#include "mtloss/run.hpp"

using namespace mtloss;

TEST_CASE("tree JSON") {
  const MaxTree t = build_maxtree(testing_helpers::two_peak_signal());
  const std::string js = tree_to_json(t);
  CHECK(js ==
        "{\"width\":6,\"height\":1,\"connectivity\":\"chain2\",\"root\":0,\"parent\":[0,0,1,1],"
        "\"altitude\":[0.0,1.0,2.0,3.0],\"proper_node\":[0,0,2,2,1,3],\"area\":[6,4,2,1]}\n");
  const MaxTree back = tree_from_json(js);
  CHECK(std::vector<double>(back.altitudes().begin(), back.altitudes().end()) ==
        std::vector<double>(t.altitudes().begin(), t.altitudes().end()));
  CHECK(back.grid() == t.grid());
  std::string bad = js;
  bad.replace(bad.find("[6,4,2,1]"), 9, "[6,4,2,2]");
  CHECK_THROWS(tree_from_json(bad));
}

TEST_CASE("tree JSON round trip on random images") {
  std::mt19937_64 rng(71);
  for (int i = 0; i < 30; ++i) {
    const MaxTree t = build_maxtree(testing_helpers::random_real_image(rng, 6, 5, Connectivity::conn8));
    const MaxTree back = tree_from_json(tree_to_json(t));
    CHECK(tree_to_json(back) == tree_to_json(t));
    CHECK(reconstruct(back) == reconstruct(t));
  }
}

TEST_CASE("measures CSV") {
  const MaxTree t = build_maxtree(testing_helpers::two_peak_signal());
  CHECK(measures_csv(t) == "leaf_node,alt,dyn,vol,saddle_alt_dyn,saddle_vol\n2,2,1,8,1,0\n3,3,3,2,0,1\n");
  const MaxTree flat = build_maxtree(Image(Grid(2, 1, Connectivity::chain2), {0.5, 0.5}));
  CHECK(measures_csv(flat) == "leaf_node,alt,dyn,vol,saddle_alt_dyn,saddle_vol\n0,0.5,0,0,0,0\n");
}

TEST_CASE("loss CSV") {
  const std::vector<LossBreakdown> log{{1.5, 1.0, 0.5, 0.0}, {0.25, 0.125, 0.125, 0.0}};
  CHECK(loss_csv(log) == "iter,total,l2,jr,smooth\n0,1.5,1,0.5,0\n1,0.25,0.125,0.125,0\n");
}

TEST_CASE("run configuration defaults and fields") {
  const RunConfig c = parse_run_config(R"({"input": "img.csv"})");
  CHECK(*c.input_path == "img.csv");
  CHECK(c.connectivity == Connectivity::conn8);
  CHECK(c.loss.target_count == 1);
  CHECK(c.optim.max_iters == 2000);

  const RunConfig d = parse_run_config(R"({
    "input": {"generator": "two_ridges", "noise": 0.01, "seed": 4, "gap_position": 20},
    "connectivity": "conn4",
    "loss": {"ell": 2, "margin": 0.2, "saliency": "vol", "importance": "alt", "lambda1": 3, "lambda2": 0.5},
    "optim": {"step_size": 0.005, "max_iters": 10, "seed": 8},
    "outputs": {"result_image": "out.pgm", "snapshot_every": 5}
  })");
  REQUIRE(d.input_synth.has_value());
  CHECK(d.input_synth->generator == "two_ridges");
  CHECK(d.input_synth->two_ridges.gap_position == 20.0);
  CHECK(d.connectivity == Connectivity::conn4);
  CHECK(d.loss.target_count == 2);
  CHECK(d.loss.saliency == MeasureKind::vol);
  CHECK(d.loss.importance == MeasureKind::alt);
  CHECK(d.optim.step_size == 0.005);
  CHECK(d.optim.seed == 8);
  CHECK(d.outputs.snapshot_every == 5);
}

TEST_CASE("every configuration problem is reported") {
  try {
    parse_run_config(R"({"loss": {"margin": -1, "bogus": 1, "saliency": "area"}, "optim": {"step_size": 0}, "extra": 1})");
    FAIL("no throw");
  } catch (const ConfigError& e) {
    const auto& p = e.problems();
    auto mentions = [&](const std::string& s) {
      return std::any_of(p.begin(), p.end(), [&](const std::string& x) { return x.find(s) != std::string::npos; });
    };
    CHECK(mentions("config.input"));
    CHECK(mentions("config.extra"));
    CHECK(mentions("config.loss.bogus"));
    CHECK(mentions("config.loss.saliency"));
    CHECK(mentions("margin"));
    CHECK(mentions("step_size"));
  }
  CHECK_THROWS_AS(parse_run_config("{not json"), ConfigError);
  CHECK_THROWS_AS(parse_run_config(R"({"input": {"generator": "nope"}})"), ConfigError);
  CHECK_THROWS_AS(parse_run_config(R"({"input": 3})"), ConfigError);
  CHECK_THROWS_AS(parse_run_config(R"({"input": "a.csv", "loss": {"ell": -1}})"), ConfigError);
}

TEST_CASE("execute_run writes consistent artifacts") {
  const auto dir = std::filesystem::temp_directory_path() / "mtloss_run_test";
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  nlohmann::json cfg = {
      {"input", {{"generator", "four_bumps"}, {"width", 24}, {"height", 24}, {"noise", 0.02}, {"seed", 1},
                 {"bumps", {{{"x", 6}, {"y", 6}, {"sigma", 2}, {"amplitude", 1}},
                            {{"x", 17}, {"y", 17}, {"sigma", 3}, {"amplitude", 0.6}}}}}},
      {"loss", {{"ell", 1}, {"margin", 0.3}, {"lambda1", 1.0}}},
      {"optim", {{"max_iters", 30}}},
      {"outputs", {{"result_image", (dir / "out.csv").string()},
                   {"loss_csv", (dir / "loss.csv").string()},
                   {"maxima_csv", (dir / "maxima.csv").string()},
                   {"snapshot_every", 10}}}};
  const RunConfig c = parse_run_config(cfg.dump());
  const RunResult r = execute_run(c);
  CHECK(r.trajectory.iterations_run == 30);
  CHECK(std::filesystem::exists(dir / "out.iter000000.csv"));
  CHECK(std::filesystem::exists(dir / "out.iter000020.csv"));
  CHECK_FALSE(std::filesystem::exists(dir / "out.iter000030.csv"));

  const Image written = read_image(dir / "out.csv");
  CHECK(written.values == r.trajectory.final_image.values);
  const std::string loss_text = read_file(dir / "loss.csv");
  const auto last_line = loss_text.substr(loss_text.rfind('\n', loss_text.size() - 2) + 1);
  const double logged_total = std::stod(last_line.substr(last_line.find(',') + 1));
  const Image y = load_input(c);
  CHECK(std::abs(composite_loss(written, y, c.loss).loss.total - logged_total) <= 1e-9);
  CHECK(read_file(dir / "maxima.csv") == measures_csv(build_maxtree(written)));
  std::filesystem::remove_all(dir);
}

TEST_CASE("count_salient") {
  MeasureVector m;
  m.values = {0.01, 0.2, 0.05, 0.3};
  CHECK(count_salient(m, 0.05) == 2);
}
