#include "mtloss/run.hpp"

#include <cstdio>
#include <filesystem>
#include <json.hpp>
#include <set>

#include "mtloss/errors.hpp"
#include "mtloss/report.hpp"

namespace mtloss {

namespace {

using nlohmann::json;

// Collects validation problems instead of stopping at the first one.
class ConfigReader {
 public:
  std::vector<std::string> problems;

  void problem(const std::string& where, const std::string& what) { problems.push_back(where + ": " + what); }

  bool expect_object(const json& j, const std::string& where) {
    if (j.is_object()) return true;
    problem(where, "expected an object");
    return false;
  }

  void reject_unknown(const json& j, const std::string& where, const std::set<std::string>& allowed) {
    for (const auto& [key, value] : j.items())
      if (!allowed.count(key)) problem(where + "." + key, "unknown key");
  }

  template <class T>
  void number(const json& j, const std::string& key, const std::string& where, T& out) {
    if (!j.contains(key)) return;
    const json& v = j.at(key);
    if constexpr (std::is_integral_v<T>) {
      if (!v.is_number_integer() || v.get<long long>() < 0) {
        problem(where + "." + key, "expected a non-negative integer");
        return;
      }
      out = v.get<T>();
    } else {
      if (!v.is_number()) {
        problem(where + "." + key, "expected a number");
        return;
      }
      out = v.get<T>();
    }
  }

  void string(const json& j, const std::string& key, const std::string& where, std::string& out) {
    if (!j.contains(key)) return;
    if (!j.at(key).is_string()) {
      problem(where + "." + key, "expected a string");
      return;
    }
    out = j.at(key).get<std::string>();
  }

  template <class Enum, class Parse>
  void enumeration(const json& j, const std::string& key, const std::string& where, Enum& out, Parse&& parse) {
    std::string name;
    if (!j.contains(key)) return;
    string(j, key, where, name);
    if (name.empty()) return;
    try {
      out = parse(name);
    } catch (const InvalidArgument& e) {
      problem(where + "." + key, e.what());
    }
  }

  template <class Validate>
  void validate(const std::string& where, Validate&& fn) {
    try {
      fn();
    } catch (const InvalidArgument& e) {
      problem(where, e.what());
    }
  }
};

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError({std::string("invalid JSON: ") + e.what()});
  }
}

SynthSpec read_synth(ConfigReader& r, const json& j, const std::string& where) {
  SynthSpec s;
  if (!r.expect_object(j, where)) return s;
  r.string(j, "generator", where, s.generator);
  std::set<std::string> allowed{"generator", "noise", "seed", "width", "height"};
  r.number(j, "noise", where, s.noise);
  r.number(j, "seed", where, s.seed);
  if (s.generator == "four_bumps") {
    allowed.insert("bumps");
    auto& fb = s.four_bumps;
    r.number(j, "width", where, fb.width);
    r.number(j, "height", where, fb.height);
    if (j.contains("bumps")) {
      const json& bumps = j.at("bumps");
      if (!bumps.is_array()) {
        r.problem(where + ".bumps", "expected an array");
      } else {
        fb.bumps.clear();
        for (std::size_t i = 0; i < bumps.size(); ++i) {
          const std::string w = where + ".bumps[" + std::to_string(i) + "]";
          Bump b;
          if (!r.expect_object(bumps[i], w)) continue;
          r.reject_unknown(bumps[i], w, {"x", "y", "sigma", "amplitude"});
          r.number(bumps[i], "x", w, b.x);
          r.number(bumps[i], "y", w, b.y);
          r.number(bumps[i], "sigma", w, b.sigma);
          r.number(bumps[i], "amplitude", w, b.amplitude);
          if (!(b.sigma > 0.0)) r.problem(w + ".sigma", "must be positive");
          fb.bumps.push_back(b);
        }
      }
    }
  } else if (s.generator == "two_ridges") {
    allowed.insert({"row", "ridge_start", "ridge_end", "gap_position", "gap_width", "sigma", "left_amplitude",
                    "right_amplitude"});
    auto& tr = s.two_ridges;
    r.number(j, "width", where, tr.width);
    r.number(j, "height", where, tr.height);
    r.number(j, "row", where, tr.row);
    r.number(j, "ridge_start", where, tr.ridge_start);
    r.number(j, "ridge_end", where, tr.ridge_end);
    r.number(j, "gap_position", where, tr.gap_position);
    r.number(j, "gap_width", where, tr.gap_width);
    r.number(j, "sigma", where, tr.sigma);
    r.number(j, "left_amplitude", where, tr.left_amplitude);
    r.number(j, "right_amplitude", where, tr.right_amplitude);
  } else {
    r.problem(where + ".generator", "unknown generator '" + s.generator + "' (expected four_bumps or two_ridges)");
  }
  r.reject_unknown(j, where, allowed);
  if (!(s.noise >= 0.0)) r.problem(where + ".noise", "must be non-negative");
  return s;
}

}  // namespace

SynthSpec parse_synth_spec(const std::string& json_text) {
  ConfigReader r;
  SynthSpec s = read_synth(r, parse_json(json_text), "synth");
  if (r.problems.empty()) r.validate("synth", [&] { synthesize(s); });
  if (!r.problems.empty()) throw ConfigError(r.problems);
  return s;
}

RunConfig parse_run_config(const std::string& json_text) {
  const json root = parse_json(json_text);
  ConfigReader r;
  RunConfig c;
  if (!r.expect_object(root, "config")) throw ConfigError(r.problems);
  r.reject_unknown(root, "config", {"input", "connectivity", "loss", "optim", "outputs"});

  if (!root.contains("input")) {
    r.problem("config.input", "required");
  } else if (root.at("input").is_string()) {
    c.input_path = root.at("input").get<std::string>();
  } else if (root.at("input").is_object()) {
    c.input_synth = read_synth(r, root.at("input"), "config.input");
  } else {
    r.problem("config.input", "expected a path or a synthetic image object");
  }

  r.enumeration(root, "connectivity", "config", c.connectivity, connectivity_from_string);

  if (root.contains("loss") && r.expect_object(root.at("loss"), "config.loss")) {
    const json& j = root.at("loss");
    r.reject_unknown(j, "config.loss", {"ell", "margin", "saliency", "importance", "lambda1", "lambda2", "data_weight"});
    r.number(j, "ell", "config.loss", c.loss.target_count);
    r.number(j, "margin", "config.loss", c.loss.margin);
    r.enumeration(j, "saliency", "config.loss", c.loss.saliency, measure_kind_from_string);
    r.enumeration(j, "importance", "config.loss", c.loss.importance, measure_kind_from_string);
    r.number(j, "lambda1", "config.loss", c.loss.lambda1);
    r.number(j, "lambda2", "config.loss", c.loss.lambda2);
    r.number(j, "data_weight", "config.loss", c.loss.data_weight);
  }
  r.validate("config.loss", [&] { c.loss.validate(); });

  if (root.contains("optim") && r.expect_object(root.at("optim"), "config.optim")) {
    const json& j = root.at("optim");
    r.reject_unknown(j, "config.optim",
                     {"step_size", "beta1", "beta2", "eps_hat", "max_iters", "plateau_patience", "plateau_tol", "seed"});
    r.number(j, "step_size", "config.optim", c.optim.step_size);
    r.number(j, "beta1", "config.optim", c.optim.beta1);
    r.number(j, "beta2", "config.optim", c.optim.beta2);
    r.number(j, "eps_hat", "config.optim", c.optim.eps_hat);
    r.number(j, "max_iters", "config.optim", c.optim.max_iters);
    r.number(j, "plateau_patience", "config.optim", c.optim.plateau_patience);
    r.number(j, "plateau_tol", "config.optim", c.optim.plateau_tol);
    r.number(j, "seed", "config.optim", c.optim.seed);
  }
  r.validate("config.optim", [&] { c.optim.validate(); });

  if (root.contains("outputs") && r.expect_object(root.at("outputs"), "config.outputs")) {
    const json& j = root.at("outputs");
    r.reject_unknown(j, "config.outputs",
                     {"result_image", "loss_csv", "maxima_csv", "snapshot_every", "snapshot_prefix"});
    r.string(j, "result_image", "config.outputs", c.outputs.result_image);
    r.string(j, "loss_csv", "config.outputs", c.outputs.loss_csv);
    r.string(j, "maxima_csv", "config.outputs", c.outputs.maxima_csv);
    r.number(j, "snapshot_every", "config.outputs", c.outputs.snapshot_every);
    r.string(j, "snapshot_prefix", "config.outputs", c.outputs.snapshot_prefix);
  }

  if (c.input_synth && r.problems.empty())
    r.validate("config.input", [&] { synthesize(*c.input_synth, c.connectivity); });
  if (!r.problems.empty()) throw ConfigError(r.problems);
  return c;
}

Image load_input(const RunConfig& config) {
  if (config.input_synth) return synthesize(*config.input_synth, config.connectivity);
  if (config.input_path) return read_image(*config.input_path, config.connectivity);
  throw InvalidArgument("run configuration has no input");
}

std::size_t count_salient(const MeasureVector& measure, double threshold) {
  std::size_t n = 0;
  for (double v : measure.values)
    if (v > threshold) ++n;
  return n;
}

namespace {

std::string snapshot_path(const RunOutputs& out, std::size_t iteration) {
  std::string prefix = out.snapshot_prefix;
  if (prefix.empty()) {
    std::filesystem::path base = out.result_image.empty() ? std::filesystem::path("result") : std::filesystem::path(out.result_image);
    prefix = base.replace_extension().string() + ".iter";
  }
  char digits[32];
  std::snprintf(digits, sizeof digits, "%06zu", iteration);
  return prefix + digits + ".csv";
}

}  // namespace

RunResult execute_run(const RunConfig& config) {
  const Image y = load_input(config);
  IterationObserver observer;
  if (config.outputs.snapshot_every > 0) {
    observer = [&](std::size_t it, const Image& f, const LossBreakdown&) {
      if (it % config.outputs.snapshot_every == 0) write_csv_matrix(f, snapshot_path(config.outputs, it));
    };
  }
  RunResult result{optimize(y, config.loss, config.optim, observer), {}, 0};
  const Image& f = result.trajectory.final_image;
  const MaxTree tree = build_maxtree(f);
  result.final_saliency = compute_measure(tree, config.loss.saliency);
  result.salient_maxima = count_salient(result.final_saliency, config.loss.margin / 2.0);

  if (!config.outputs.result_image.empty()) write_image(f, config.outputs.result_image);
  if (!config.outputs.loss_csv.empty()) write_file(config.outputs.loss_csv, loss_csv(result.trajectory.loss_log));
  if (!config.outputs.maxima_csv.empty()) write_file(config.outputs.maxima_csv, measures_csv(tree));
  return result;
}

}  // namespace mtloss
