// Command-line front end. Talks to the library exclusively through the C API.

#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <memory>
#include <optional>
#include <sstream>
#include <string>

#include "mtloss/mtloss.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitConfig = 2;
constexpr int kExitNumeric = 3;

struct ImageDeleter {
  void operator()(mtl_image* p) const { mtl_image_destroy(p); }
};
struct TreeDeleter {
  void operator()(mtl_tree* p) const { mtl_tree_destroy(p); }
};
struct RunDeleter {
  void operator()(mtl_run* p) const { mtl_run_destroy(p); }
};
struct StringDeleter {
  void operator()(char* p) const { mtl_string_free(p); }
};
using ImagePtr = std::unique_ptr<mtl_image, ImageDeleter>;
using TreePtr = std::unique_ptr<mtl_tree, TreeDeleter>;
using RunPtr = std::unique_ptr<mtl_run, RunDeleter>;
using StringPtr = std::unique_ptr<char, StringDeleter>;

struct Failure {
  int exit_code;
};

int exit_code_for(mtl_status status) {
  switch (status) {
    case MTL_OK: return kExitOk;
    case MTL_ERR_CONFIG: return kExitConfig;
    case MTL_ERR_NUMERIC: return kExitNumeric;
    default: return kExitFailure;
  }
}

void check(mtl_status status, const std::string& context) {
  if (status == MTL_OK) return;
  std::cerr << "mtloss: " << context << ": " << mtl_status_name(status) << "\n" << mtl_last_error();
  const std::string msg = mtl_last_error();
  if (msg.empty() || msg.back() != '\n') std::cerr << '\n';
  throw Failure{exit_code_for(status)};
}

mtl_connectivity parse_connectivity(const std::string& name) {
  if (name == "chain2") return MTL_CHAIN2;
  if (name == "conn4") return MTL_CONN4;
  return MTL_CONN8;
}

ImagePtr load(const std::string& path, const std::string& connectivity) {
  mtl_image* raw = nullptr;
  check(mtl_image_read(path.c_str(), parse_connectivity(connectivity), &raw), "reading " + path);
  return ImagePtr(raw);
}

TreePtr build(const mtl_image* image) {
  mtl_tree* raw = nullptr;
  check(mtl_tree_build(image, &raw), "building max-tree");
  return TreePtr(raw);
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty() || out_path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::binary | std::ios::trunc);
  out << text;
  if (!out) {
    std::cerr << "mtloss: cannot write '" << out_path << "'\n";
    throw Failure{kExitFailure};
  }
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    std::cerr << "mtloss: cannot open '" << path << "'\n";
    throw Failure{kExitFailure};
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Differentiable max-tree toolkit: tree inspection, maxima measures, synthetic data and loss-driven image optimization"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(mtl_version()));

  std::string connectivity = "conn8";
  const auto connectivity_check = CLI::IsMember({"chain2", "conn4", "conn8"});

  // tree
  std::string tree_input, tree_out;
  auto* tree_cmd = app.add_subcommand("tree", "Dump the max-tree of an image as JSON");
  tree_cmd->add_option("input", tree_input, "Image (.pgm or CSV matrix)")->required();
  tree_cmd->add_option("-c,--connectivity", connectivity, "chain2, conn4 or conn8")->check(connectivity_check);
  tree_cmd->add_option("-o,--out", tree_out, "Output file (default stdout)");

  // measures
  std::string measures_input, measures_out;
  auto* measures_cmd = app.add_subcommand("measures", "Per-maximum alt/dyn/vol measures as CSV");
  measures_cmd->add_option("input", measures_input, "Image (.pgm or CSV matrix)")->required();
  measures_cmd->add_option("-c,--connectivity", connectivity, "chain2, conn4 or conn8")->check(connectivity_check);
  measures_cmd->add_option("-o,--out", measures_out, "Output file (default stdout)");

  // synth
  std::string generator = "four_bumps", synth_out, synth_spec_path;
  std::uint64_t seed = 0;
  std::optional<double> noise, gap_position;
  std::optional<std::size_t> width, height;
  auto* synth_cmd = app.add_subcommand("synth", "Generate a synthetic test image");
  synth_cmd->add_option("generator", generator, "four_bumps or two_ridges")
      ->check(CLI::IsMember({"four_bumps", "two_ridges"}));
  synth_cmd->add_option("-o,--out", synth_out, "Output image (.csv or .pgm)")->required();
  synth_cmd->add_option("--seed", seed, "Noise seed");
  synth_cmd->add_option("--noise", noise, "Uniform noise amplitude (default 0.02)");
  synth_cmd->add_option("--width", width, "Image width");
  synth_cmd->add_option("--height", height, "Image height");
  synth_cmd->add_option("--gap-position", gap_position, "two_ridges: column of the gap centre");
  synth_cmd->add_option("--spec", synth_spec_path, "JSON generator description (overrides the other flags)");

  // optimize
  std::string config_path;
  std::size_t snapshot_every = 0;
  auto* opt_cmd = app.add_subcommand("optimize", "Run an optimization described by a JSON config");
  opt_cmd->add_option("config", config_path, "Run configuration (JSON)")->required();
  opt_cmd->add_option("--snapshot-every", snapshot_every, "Write the iterate every N iterations");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (*tree_cmd) {
      const ImagePtr image = load(tree_input, connectivity);
      const TreePtr tree = build(image.get());
      char* json = nullptr;
      check(mtl_tree_to_json(tree.get(), &json), "serializing tree");
      emit(StringPtr(json).get(), tree_out);
    } else if (*measures_cmd) {
      const ImagePtr image = load(measures_input, connectivity);
      const TreePtr tree = build(image.get());
      char* csv = nullptr;
      check(mtl_tree_measures_csv(tree.get(), &csv), "computing measures");
      emit(StringPtr(csv).get(), measures_out);
    } else if (*synth_cmd) {
      std::string spec;
      if (!synth_spec_path.empty()) {
        spec = slurp(synth_spec_path);
      } else {
        nlohmann::ordered_json j;
        j["generator"] = generator;
        j["seed"] = seed;
        if (noise) j["noise"] = *noise;
        if (width) j["width"] = *width;
        if (height) j["height"] = *height;
        if (gap_position) {
          if (generator != "two_ridges") {
            std::cerr << "mtloss: --gap-position only applies to two_ridges\n";
            return kExitConfig;
          }
          j["gap_position"] = *gap_position;
        }
        spec = j.dump();
      }
      mtl_image* raw = nullptr;
      check(mtl_image_synthesize(spec.c_str(), MTL_CONN8, &raw), "synthesizing image");
      const ImagePtr image(raw);
      check(mtl_image_write(image.get(), synth_out.c_str()), "writing " + synth_out);
    } else if (*opt_cmd) {
      const std::string config = slurp(config_path);
      mtl_run* raw = nullptr;
      check(mtl_run_execute(config.c_str(), snapshot_every, &raw), "optimizing");
      const RunPtr run(raw);
      std::printf("iterations: %zu\n", mtl_run_iterations(run.get()));
      std::printf("stop_reason: %s\n", mtl_run_stop_reason(run.get()) == MTL_STOP_PLATEAU ? "plateau" : "max_iters");
      std::printf("final_loss: %.17g\n", mtl_run_final_loss(run.get()));
      std::printf("salient_maxima: %zu\n", mtl_run_salient_maxima(run.get()));
    }
  } catch (const Failure& f) {
    return f.exit_code;
  }
  return kExitOk;
}
