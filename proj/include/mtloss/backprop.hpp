#pragma once

#include <span>
#include <vector>

#include "mtloss/measures.hpp"

namespace mtloss {

/// de/da, one entry per tree node.
struct AltitudeGrad {
  std::vector<double> values;
};

/// de/df, one entry per pixel.
struct PixelGrad {
  std::vector<double> values;
};

/// Transpose of the altitude Jacobian: (de/df)_v = (de/da)_{proper_node(v)}.
PixelGrad backprop_altitudes(const MaxTree& tree, const AltitudeGrad& grad_a);

/// Gradient of sum_i grad_m[i] * measure.values[i] with respect to node
/// altitudes, tree structure and rankings held fixed:
///   alt: +g on the leaf
///   dyn: +g on the leaf, -g on the saddle
///   vol: +g * proper_count on every node of the branch, -g * area(branch) on the saddle
PixelGrad backprop_measure_to_pixels(const MaxTree& tree, const MeasureVector& measure, std::span<const double> grad_m);
AltitudeGrad backprop_measure(const MaxTree& tree, const MeasureVector& measure, std::span<const double> grad_m);

}  // namespace mtloss
