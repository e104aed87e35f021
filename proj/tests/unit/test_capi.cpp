#include <doctest.h>

#include <cmath>
#include <cstring>
#include <string>
#include <vector>

#include "mtloss/mtloss.h"

TEST_CASE("C API: two-peak signal tree and measures") {
  const double f[] = {0, 0, 2, 2, 1, 3};
  mtl_image* img = nullptr;
  REQUIRE(mtl_image_create(6, 1, MTL_CHAIN2, f, &img) == MTL_OK);
  mtl_tree* tree = nullptr;
  REQUIRE(mtl_tree_build(img, &tree) == MTL_OK);
  CHECK(mtl_tree_node_count(tree) == 4);
  CHECK(mtl_tree_pixel_count(tree) == 6);
  CHECK(mtl_tree_leaf_count(tree) == 2);

  std::vector<double> alt(4);
  REQUIRE(mtl_tree_altitudes(tree, alt.data(), alt.size()) == MTL_OK);
  CHECK(alt == std::vector<double>{0, 1, 2, 3});
  std::vector<size_t> parents(4), proper(6);
  REQUIRE(mtl_tree_parents(tree, parents.data(), 4) == MTL_OK);
  REQUIRE(mtl_tree_proper_nodes(tree, proper.data(), 6) == MTL_OK);
  CHECK(parents == std::vector<size_t>{0, 0, 1, 1});
  CHECK(proper == std::vector<size_t>{0, 0, 2, 2, 1, 3});

  double values[2];
  size_t saddles[2];
  REQUIRE(mtl_tree_measure(tree, MTL_MEASURE_DYN, values, saddles, 2) == MTL_OK);
  CHECK(values[0] == 1.0);
  CHECK(values[1] == 3.0);
  CHECK(saddles[0] == 1);
  CHECK(saddles[1] == 0);
  REQUIRE(mtl_tree_measure(tree, MTL_MEASURE_VOL, values, nullptr, 2) == MTL_OK);
  CHECK(values[0] == 8.0);
  CHECK(values[1] == 2.0);

  CHECK(mtl_tree_altitudes(tree, alt.data(), 3) == MTL_ERR_INVALID_ARGUMENT);
  CHECK(std::strlen(mtl_last_error()) > 0);

  char* json = nullptr;
  REQUIRE(mtl_tree_to_json(tree, &json) == MTL_OK);
  CHECK(std::string(json).find("\"altitude\":[0.0,1.0,2.0,3.0]") != std::string::npos);
  mtl_string_free(json);
  char* csv = nullptr;
  REQUIRE(mtl_tree_measures_csv(tree, &csv) == MTL_OK);
  CHECK(std::string(csv).rfind("leaf_node,", 0) == 0);
  mtl_string_free(csv);

  mtl_tree_destroy(tree);
  mtl_image_destroy(img);
}

TEST_CASE("C API: errors map to status codes") {
  mtl_image* img = nullptr;
  const double nan_value[] = {std::nan("")};
  CHECK(mtl_image_create(1, 1, MTL_CONN4, nan_value, &img) == MTL_ERR_INVALID_ARGUMENT);
  CHECK(img == nullptr);
  CHECK(mtl_image_create(1, 1, MTL_CONN4, nullptr, &img) == MTL_ERR_INVALID_ARGUMENT);
  CHECK(mtl_image_read("/nonexistent/x.csv", MTL_CONN8, &img) == MTL_ERR_IO);
  CHECK(mtl_image_synthesize("{\"generator\": \"nope\"}", MTL_CONN8, &img) == MTL_ERR_CONFIG);
  mtl_run* run = nullptr;
  CHECK(mtl_run_execute("{\"loss\": {\"margin\": 0}}", 0, &run) == MTL_ERR_CONFIG);
  const std::string msg = mtl_last_error();
  CHECK(msg.find("config.input") != std::string::npos);
  CHECK(msg.find("margin") != std::string::npos);
  CHECK(std::string(mtl_status_name(MTL_ERR_NUMERIC)) == "numerical error");
  CHECK(std::string(mtl_version()) == "1.0.0");
  mtl_image_destroy(nullptr);
  mtl_tree_destroy(nullptr);
  mtl_run_destroy(nullptr);
}

TEST_CASE("C API: synthesis and a short run") {
  mtl_image* img = nullptr;
  REQUIRE(mtl_image_synthesize("{\"generator\": \"two_ridges\", \"seed\": 2}", MTL_CONN8, &img) == MTL_OK);
  CHECK(mtl_image_width(img) == 48);
  CHECK(mtl_image_height(img) == 24);
  CHECK(mtl_image_data(img) != nullptr);
  mtl_image_destroy(img);

  mtl_run* run = nullptr;
  REQUIRE(mtl_run_execute(
              "{\"input\": {\"generator\": \"two_ridges\", \"width\": 20, \"height\": 9, \"row\": 4, \"ridge_start\": 2,"
              " \"ridge_end\": 17, \"gap_position\": 10, \"gap_width\": 3}, \"optim\": {\"max_iters\": 5}}",
              0, &run) == MTL_OK);
  CHECK(mtl_run_iterations(run) == 5);
  CHECK(mtl_run_stop_reason(run) == MTL_STOP_MAX_ITERS);
  CHECK(mtl_run_final_loss(run) >= 0.0);
  CHECK(mtl_image_width(mtl_run_result_image(run)) == 20);
  mtl_run_destroy(run);
}
