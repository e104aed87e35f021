#include "mtloss/backprop.hpp"

#include <string>

#include "mtloss/errors.hpp"

namespace mtloss {

PixelGrad backprop_altitudes(const MaxTree& tree, const AltitudeGrad& grad_a) {
  if (grad_a.values.size() != tree.node_count())
    throw InvalidArgument("altitude gradient has " + std::to_string(grad_a.values.size()) + " entries for " +
                          std::to_string(tree.node_count()) + " nodes");
  PixelGrad out;
  out.values.resize(tree.pixel_count());
  for (std::size_t v = 0; v < out.values.size(); ++v) out.values[v] = grad_a.values[tree.proper_node(v)];
  return out;
}

AltitudeGrad backprop_measure(const MaxTree& tree, const MeasureVector& measure, std::span<const double> grad_m) {
  if (grad_m.size() != measure.size())
    throw InvalidArgument("measure gradient has " + std::to_string(grad_m.size()) + " entries for " +
                          std::to_string(measure.size()) + " maxima");
  const std::size_t m = tree.node_count();
  AltitudeGrad out;
  out.values.assign(m, 0.0);
  auto& ga = out.values;

  switch (measure.kind) {
    case MeasureKind::alt:
      for (std::size_t i = 0; i < measure.size(); ++i) ga[measure.leaves[i]] += grad_m[i];
      break;
    case MeasureKind::dyn:
      for (std::size_t i = 0; i < measure.size(); ++i) {
        ga[measure.leaves[i]] += grad_m[i];
        ga[measure.saddle[i]] -= grad_m[i];
      }
      break;
    case MeasureKind::vol: {
      const NodeAttributes attr = compute_attributes(tree);
      // Weight seeded at each branch root, then pushed down the subtree.
      std::vector<double> weight(m, 0.0);
      for (std::size_t i = 0; i < measure.size(); ++i) {
        const std::size_t top = i == measure.dominant ? tree.root() : measure.branch_top[i];
        weight[top] += grad_m[i];
        ga[measure.saddle[i]] -= grad_m[i] * static_cast<double>(attr.area[top]);
      }
      for (std::size_t c = 1; c < m; ++c) weight[c] += weight[tree.parent(c)];
      for (std::size_t c = 0; c < m; ++c) ga[c] += weight[c] * static_cast<double>(attr.proper_count[c]);
      break;
    }
  }
  return out;
}

PixelGrad backprop_measure_to_pixels(const MaxTree& tree, const MeasureVector& measure, std::span<const double> grad_m) {
  return backprop_altitudes(tree, backprop_measure(tree, measure, grad_m));
}

}  // namespace mtloss
