#pragma once

#include <string>
#include <vector>

#include "mtloss/losses.hpp"
#include "mtloss/maxtree.hpp"

namespace mtloss {

/// JSON dump of a tree. Fields, in order: width, height, connectivity, root,
/// parent, altitude, proper_node, area.
std::string tree_to_json(const MaxTree& tree);
/// Inverse of tree_to_json (the "area" array is checked, not trusted).
MaxTree tree_from_json(const std::string& json);

/// One row per maximum: leaf_node,alt,dyn,vol,saddle_alt_dyn,saddle_vol.
/// The saddle columns hold node indices.
std::string measures_csv(const MaxTree& tree);

/// Header iter,total,l2,jr,smooth then one row per logged iteration.
std::string loss_csv(const std::vector<LossBreakdown>& log);

}  // namespace mtloss
