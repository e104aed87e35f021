#include "mtloss/report.hpp"

#include <json.hpp>

#include "mtloss/errors.hpp"
#include "mtloss/measures.hpp"

namespace mtloss {

std::string tree_to_json(const MaxTree& tree) {
  const NodeAttributes attr = compute_attributes(tree);
  nlohmann::ordered_json j;
  j["width"] = tree.grid().width();
  j["height"] = tree.grid().height();
  j["connectivity"] = std::string(to_string(tree.grid().connectivity()));
  j["root"] = tree.root();
  j["parent"] = std::vector<std::size_t>(tree.parents().begin(), tree.parents().end());
  j["altitude"] = std::vector<double>(tree.altitudes().begin(), tree.altitudes().end());
  j["proper_node"] = std::vector<std::size_t>(tree.proper_nodes().begin(), tree.proper_nodes().end());
  j["area"] = attr.area;
  return j.dump() + "\n";
}

MaxTree tree_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("invalid tree JSON: ") + e.what(), e.byte);
  }
  try {
    Grid grid(j.at("width").get<std::size_t>(), j.at("height").get<std::size_t>(),
              connectivity_from_string(j.at("connectivity").get<std::string>()));
    MaxTree tree = MaxTree::from_arrays(grid, j.at("parent").get<std::vector<std::size_t>>(),
                                        j.at("altitude").get<std::vector<double>>(),
                                        j.at("proper_node").get<std::vector<std::size_t>>());
    if (j.contains("area") && j.at("area").get<std::vector<std::size_t>>() != compute_attributes(tree).area)
      throw InvalidArgument("tree JSON area array is inconsistent with its structure");
    return tree;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("malformed tree JSON: ") + e.what());
  }
}

std::string measures_csv(const MaxTree& tree) {
  const MeasureVector alt = alt_measure(tree);
  const MeasureVector dyn = dyn_measure(tree);
  const MeasureVector vol = vol_measure(tree);
  std::string out = "leaf_node,alt,dyn,vol,saddle_alt_dyn,saddle_vol\n";
  for (std::size_t i = 0; i < alt.size(); ++i) {
    out += std::to_string(alt.leaves[i]) + ',' + format_real(alt.values[i]) + ',' + format_real(dyn.values[i]) + ',' +
           format_real(vol.values[i]) + ',' + std::to_string(dyn.saddle[i]) + ',' + std::to_string(vol.saddle[i]) + '\n';
  }
  return out;
}

std::string loss_csv(const std::vector<LossBreakdown>& log) {
  std::string out = "iter,total,l2,jr,smooth\n";
  for (std::size_t t = 0; t < log.size(); ++t) {
    const auto& r = log[t];
    out += std::to_string(t) + ',' + format_real(r.total) + ',' + format_real(r.l2) + ',' + format_real(r.jr) + ',' +
           format_real(r.smooth) + '\n';
  }
  return out;
}

}  // namespace mtloss
