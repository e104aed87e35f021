#include <algorithm>
#include <cstdlib>
#include <cstring>
#include <memory>
#include <string>

#include "mtloss/errors.hpp"
#include "mtloss/maxtree.hpp"
#include "mtloss/measures.hpp"
#include "mtloss/mtloss.h"
#include "mtloss/report.hpp"
#include "mtloss/run.hpp"
#include "mtloss/synth.hpp"

struct mtl_image {
  mtloss::Image image;
};

struct mtl_tree {
  mtloss::MaxTree tree;
};

struct mtl_run {
  mtloss::RunResult result;
  mtl_image final_image;
};

namespace {

thread_local std::string g_last_error;

mtl_status fail(mtl_status status, std::string message) {
  g_last_error = std::move(message);
  return status;
}

// Runs fn, translating library exceptions into status codes.
template <class Fn>
mtl_status guarded(Fn&& fn) {
  try {
    fn();
    return MTL_OK;
  } catch (const mtloss::ConfigError& e) {
    std::string msg;
    for (const auto& p : e.problems()) msg += p + "\n";
    return fail(MTL_ERR_CONFIG, msg);
  } catch (const mtloss::ParseError& e) {
    return fail(MTL_ERR_PARSE, e.what());
  } catch (const mtloss::IoError& e) {
    return fail(MTL_ERR_IO, e.what());
  } catch (const mtloss::NumericError& e) {
    return fail(MTL_ERR_NUMERIC, e.what());
  } catch (const mtloss::InvalidArgument& e) {
    return fail(MTL_ERR_INVALID_ARGUMENT, e.what());
  } catch (const std::exception& e) {
    return fail(MTL_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(MTL_ERR_INTERNAL, "unknown error");
  }
}

mtloss::Connectivity to_cpp(mtl_connectivity c) {
  switch (c) {
    case MTL_CHAIN2: return mtloss::Connectivity::chain2;
    case MTL_CONN4: return mtloss::Connectivity::conn4;
    case MTL_CONN8: return mtloss::Connectivity::conn8;
  }
  throw mtloss::InvalidArgument("unknown connectivity code " + std::to_string(static_cast<int>(c)));
}

mtloss::MeasureKind to_cpp(mtl_measure_kind k) {
  switch (k) {
    case MTL_MEASURE_ALT: return mtloss::MeasureKind::alt;
    case MTL_MEASURE_DYN: return mtloss::MeasureKind::dyn;
    case MTL_MEASURE_VOL: return mtloss::MeasureKind::vol;
  }
  throw mtloss::InvalidArgument("unknown measure code " + std::to_string(static_cast<int>(k)));
}

char* copy_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void require(bool ok, const char* what) {
  if (!ok) throw mtloss::InvalidArgument(what);
}

}  // namespace

extern "C" {

const char* mtl_version(void) { return "1.0.0"; }

const char* mtl_last_error(void) { return g_last_error.c_str(); }

const char* mtl_status_name(mtl_status status) {
  switch (status) {
    case MTL_OK: return "ok";
    case MTL_ERR_INVALID_ARGUMENT: return "invalid argument";
    case MTL_ERR_PARSE: return "parse error";
    case MTL_ERR_IO: return "i/o error";
    case MTL_ERR_CONFIG: return "configuration error";
    case MTL_ERR_NUMERIC: return "numerical error";
    case MTL_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

void mtl_string_free(char* s) { std::free(s); }

mtl_status mtl_image_create(size_t width, size_t height, mtl_connectivity connectivity, const double* values,
                            mtl_image** out) {
  return guarded([&] {
    require(out != nullptr && values != nullptr, "null argument");
    mtloss::Grid grid(width, height, to_cpp(connectivity));
    *out = new mtl_image{mtloss::Image(grid, std::vector<double>(values, values + grid.size()))};
  });
}

mtl_status mtl_image_read(const char* path, mtl_connectivity connectivity, mtl_image** out) {
  return guarded([&] {
    require(out != nullptr && path != nullptr, "null argument");
    *out = new mtl_image{mtloss::read_image(path, to_cpp(connectivity))};
  });
}

mtl_status mtl_image_write(const mtl_image* image, const char* path) {
  return guarded([&] {
    require(image != nullptr && path != nullptr, "null argument");
    mtloss::write_image(image->image, path);
  });
}

mtl_status mtl_image_synthesize(const char* spec_json, mtl_connectivity connectivity, mtl_image** out) {
  return guarded([&] {
    require(out != nullptr && spec_json != nullptr, "null argument");
    *out = new mtl_image{mtloss::synthesize(mtloss::parse_synth_spec(spec_json), to_cpp(connectivity))};
  });
}

size_t mtl_image_width(const mtl_image* image) { return image ? image->image.grid.width() : 0; }
size_t mtl_image_height(const mtl_image* image) { return image ? image->image.grid.height() : 0; }
const double* mtl_image_data(const mtl_image* image) { return image ? image->image.values.data() : nullptr; }
void mtl_image_destroy(mtl_image* image) { delete image; }

mtl_status mtl_tree_build(const mtl_image* image, mtl_tree** out) {
  return guarded([&] {
    require(out != nullptr && image != nullptr, "null argument");
    *out = new mtl_tree{mtloss::build_maxtree(image->image)};
  });
}

size_t mtl_tree_node_count(const mtl_tree* tree) { return tree ? tree->tree.node_count() : 0; }
size_t mtl_tree_pixel_count(const mtl_tree* tree) { return tree ? tree->tree.pixel_count() : 0; }
size_t mtl_tree_leaf_count(const mtl_tree* tree) { return tree ? mtloss::leaves(tree->tree).size() : 0; }

mtl_status mtl_tree_parents(const mtl_tree* tree, size_t* out, size_t len) {
  return guarded([&] {
    require(tree != nullptr && out != nullptr, "null argument");
    require(len == tree->tree.node_count(), "buffer length must equal the node count");
    std::copy(tree->tree.parents().begin(), tree->tree.parents().end(), out);
  });
}

mtl_status mtl_tree_altitudes(const mtl_tree* tree, double* out, size_t len) {
  return guarded([&] {
    require(tree != nullptr && out != nullptr, "null argument");
    require(len == tree->tree.node_count(), "buffer length must equal the node count");
    std::copy(tree->tree.altitudes().begin(), tree->tree.altitudes().end(), out);
  });
}

mtl_status mtl_tree_proper_nodes(const mtl_tree* tree, size_t* out, size_t len) {
  return guarded([&] {
    require(tree != nullptr && out != nullptr, "null argument");
    require(len == tree->tree.pixel_count(), "buffer length must equal the pixel count");
    std::copy(tree->tree.proper_nodes().begin(), tree->tree.proper_nodes().end(), out);
  });
}

mtl_status mtl_tree_measure(const mtl_tree* tree, mtl_measure_kind kind, double* values, size_t* saddles, size_t len) {
  return guarded([&] {
    require(tree != nullptr && values != nullptr, "null argument");
    const mtloss::MeasureVector mv = mtloss::compute_measure(tree->tree, to_cpp(kind));
    require(len == mv.size(), "buffer length must equal the leaf count");
    std::copy(mv.values.begin(), mv.values.end(), values);
    if (saddles) std::copy(mv.saddle.begin(), mv.saddle.end(), saddles);
  });
}

mtl_status mtl_tree_to_json(const mtl_tree* tree, char** out) {
  return guarded([&] {
    require(tree != nullptr && out != nullptr, "null argument");
    *out = copy_string(mtloss::tree_to_json(tree->tree));
  });
}

mtl_status mtl_tree_measures_csv(const mtl_tree* tree, char** out) {
  return guarded([&] {
    require(tree != nullptr && out != nullptr, "null argument");
    *out = copy_string(mtloss::measures_csv(tree->tree));
  });
}

void mtl_tree_destroy(mtl_tree* tree) { delete tree; }

mtl_status mtl_run_execute(const char* config_json, size_t snapshot_every_override, mtl_run** out) {
  return guarded([&] {
    require(out != nullptr && config_json != nullptr, "null argument");
    mtloss::RunConfig config = mtloss::parse_run_config(config_json);
    if (snapshot_every_override > 0) config.outputs.snapshot_every = snapshot_every_override;
    mtloss::RunResult result = mtloss::execute_run(config);
    mtloss::Image final_image = result.trajectory.final_image;
    *out = new mtl_run{std::move(result), mtl_image{std::move(final_image)}};
  });
}

size_t mtl_run_iterations(const mtl_run* run) { return run ? run->result.trajectory.iterations_run : 0; }

mtl_stop_reason mtl_run_stop_reason(const mtl_run* run) {
  return run && run->result.trajectory.stop_reason == mtloss::StopReason::plateau ? MTL_STOP_PLATEAU
                                                                                   : MTL_STOP_MAX_ITERS;
}

size_t mtl_run_salient_maxima(const mtl_run* run) { return run ? run->result.salient_maxima : 0; }

double mtl_run_final_loss(const mtl_run* run) {
  return run && !run->result.trajectory.loss_log.empty() ? run->result.trajectory.loss_log.back().total : 0.0;
}

const mtl_image* mtl_run_result_image(const mtl_run* run) { return run ? &run->final_image : nullptr; }

void mtl_run_destroy(mtl_run* run) { delete run; }

}  // extern "C"
