#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "mtloss/image.hpp"
#include "mtloss/maxtree.hpp"
#include "mtloss/measures.hpp"

namespace mtloss {

struct LossConfig {
  std::size_t target_count = 1;  ///< number of maxima to keep
  double margin = 0.1;           ///< saliency a kept maximum should reach
  MeasureKind saliency = MeasureKind::dyn;
  MeasureKind importance = MeasureKind::dyn;
  double lambda1 = 1.0;      ///< weight of the ranked selection term
  double lambda2 = 0.0;      ///< weight of the smoothness term
  double data_weight = 1.0;  ///< weight of the L2 data term (0 for a pure selection loss)

  /// Throws InvalidArgument if margin <= 0 or a weight is negative/non-finite.
  void validate() const;
};

struct ScalarAndGrad {
  double value = 0.0;
  std::vector<double> grad;
};

/// Decreasing-order permutation of `importance`, ties to the smaller index.
std::vector<std::size_t> rank_decreasing(std::span<const double> importance);

/// Keeps the `target_count` most important maxima above `margin` and pushes
/// the saliency of the others to zero:
///   sum_{i <= count} max(margin - s[r_i], 0) + sum_{i > count} s[r_i]
/// where s is the saliency and r orders the importance decreasingly.
/// The returned gradient is with respect to `saliency`; the importance only
/// enters through the ranking and gets no gradient.
ScalarAndGrad ranked_selection_loss(std::span<const double> saliency, std::span<const double> importance,
                                    std::size_t target_count, double margin);

/// sum (f - y)^2
ScalarAndGrad l2_loss(std::span<const double> f, std::span<const double> y);

/// Sum of squared differences over horizontally and vertically adjacent
/// pixel pairs, each pair counted once.
ScalarAndGrad smoothness_loss(std::span<const double> f, const Grid& grid);

struct LossBreakdown {
  double total = 0.0;
  double l2 = 0.0;
  double jr = 0.0;
  double smooth = 0.0;
};

struct CompositeResult {
  LossBreakdown loss;
  std::vector<double> grad;  ///< d total / d f
};

/// data_weight * ||f - y||^2 + lambda1 * selection(saliency(f), importance(f)) + lambda2 * ||grad f||^2,
/// with the gradient of the selection term routed through the measure and altitude backward rules.
CompositeResult composite_loss(const Image& f, const Image& y, const MaxTree& tree, const LossConfig& config);
/// Same, building the tree of f first.
CompositeResult composite_loss(const Image& f, const Image& y, const LossConfig& config);

}  // namespace mtloss
