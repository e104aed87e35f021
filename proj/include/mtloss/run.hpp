#pragma once

#include <cstddef>
#include <optional>
#include <string>

#include "mtloss/losses.hpp"
#include "mtloss/measures.hpp"
#include "mtloss/optimizer.hpp"
#include "mtloss/synth.hpp"

namespace mtloss {

struct RunOutputs {
  std::string result_image;  ///< ".pgm" or CSV; empty to skip
  std::string loss_csv;
  std::string maxima_csv;
  std::size_t snapshot_every = 0;  ///< 0 disables snapshots
  /// Snapshot i is written to <prefix><i, 6 digits>.csv. Defaults to the
  /// result image path without extension followed by ".iter".
  std::string snapshot_prefix;
};

/// A full optimization experiment. `input` is either a file path or a
/// synthetic image description.
struct RunConfig {
  std::optional<std::string> input_path;
  std::optional<SynthSpec> input_synth;
  Connectivity connectivity = Connectivity::conn8;
  LossConfig loss;
  OptimConfig optim;
  RunOutputs outputs;
};

/// Parses a JSON run configuration. Unknown keys are rejected; every problem
/// found is reported in one ConfigError.
RunConfig parse_run_config(const std::string& json_text);
/// Parses the synthetic-image object accepted as "input" (also used by the
/// synth command). Throws ConfigError.
SynthSpec parse_synth_spec(const std::string& json_text);

Image load_input(const RunConfig& config);

struct RunResult {
  Trajectory trajectory;
  MeasureVector final_saliency;
  std::size_t salient_maxima = 0;  ///< maxima with saliency > margin / 2
};

/// Maxima whose value exceeds `threshold`.
std::size_t count_salient(const MeasureVector& measure, double threshold);

/// Loads the input, optimizes and writes every requested artifact.
RunResult execute_run(const RunConfig& config);

}  // namespace mtloss
