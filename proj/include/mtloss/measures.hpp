#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "mtloss/maxtree.hpp"

namespace mtloss {

enum class MeasureKind { alt, dyn, vol };

std::string_view to_string(MeasureKind kind);
/// Throws InvalidArgument on an unknown name.
MeasureKind measure_kind_from_string(std::string_view name);

/// One value per maximum of the tree, in `leaves(tree)` order.
///
/// `saddle[i]` is the closest ancestor of leaf i containing a higher-ranked
/// maximum (the root for the top-ranked one). `branch_top[i]` is the child of
/// the saddle on the path to the leaf. `dominant` is the position of the
/// top-ranked maximum, whose branch is the whole tree.
struct MeasureVector {
  MeasureKind kind = MeasureKind::alt;
  std::vector<std::size_t> leaves;
  std::vector<double> values;
  std::vector<std::size_t> saddle;
  std::vector<std::size_t> branch_top;
  std::size_t dominant = 0;

  std::size_t size() const noexcept { return values.size(); }
};

struct SaddleAssignment {
  std::vector<std::size_t> saddle;
  std::vector<std::size_t> branch_top;
  std::size_t dominant = 0;  ///< position of the top-ranked leaf
};

/// Saddles for a fixed per-leaf ranking (length = number of leaves). Ties go
/// to the smaller leaf index.
SaddleAssignment saddle_nodes(const MaxTree& tree, std::span<const double> ranking);

MeasureVector alt_measure(const MaxTree& tree);
MeasureVector dyn_measure(const MaxTree& tree);
MeasureVector vol_measure(const MaxTree& tree);
MeasureVector vol_measure(const MaxTree& tree, const NodeAttributes& attributes);

MeasureVector compute_measure(const MaxTree& tree, MeasureKind kind);

}  // namespace mtloss
