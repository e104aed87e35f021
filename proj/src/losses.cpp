#include "mtloss/losses.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "mtloss/backprop.hpp"
#include "mtloss/errors.hpp"

namespace mtloss {

void LossConfig::validate() const {
  if (!(margin > 0.0) || !std::isfinite(margin)) throw InvalidArgument("margin must be a positive finite number");
  for (double w : {lambda1, lambda2, data_weight})
    if (!(w >= 0.0) || !std::isfinite(w)) throw InvalidArgument("loss weights must be finite and non-negative");
}

std::vector<std::size_t> rank_decreasing(std::span<const double> importance) {
  std::vector<std::size_t> r(importance.size());
  std::iota(r.begin(), r.end(), std::size_t{0});
  std::stable_sort(r.begin(), r.end(), [&](std::size_t a, std::size_t b) { return importance[a] > importance[b]; });
  return r;
}

ScalarAndGrad ranked_selection_loss(std::span<const double> saliency, std::span<const double> importance,
                                    std::size_t target_count, double margin) {
  if (saliency.size() != importance.size())
    throw InvalidArgument("saliency and importance lengths differ (" + std::to_string(saliency.size()) + " vs " +
                          std::to_string(importance.size()) + ")");
  ScalarAndGrad out;
  out.grad.assign(saliency.size(), 0.0);
  const auto r = rank_decreasing(importance);
  for (std::size_t rank = 0; rank < r.size(); ++rank) {
    const std::size_t i = r[rank];
    if (rank < target_count) {
      if (saliency[i] < margin) {
        out.value += margin - saliency[i];
        out.grad[i] = -1.0;
      }
    } else {
      out.value += saliency[i];
      out.grad[i] = 1.0;
    }
  }
  return out;
}

ScalarAndGrad l2_loss(std::span<const double> f, std::span<const double> y) {
  if (f.size() != y.size()) throw InvalidArgument("l2_loss: length mismatch");
  ScalarAndGrad out;
  out.grad.resize(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    const double d = f[i] - y[i];
    out.value += d * d;
    out.grad[i] = 2.0 * d;
  }
  return out;
}

ScalarAndGrad smoothness_loss(std::span<const double> f, const Grid& grid) {
  if (f.size() != grid.size()) throw InvalidArgument("smoothness_loss: image does not match grid");
  ScalarAndGrad out;
  out.grad.assign(f.size(), 0.0);
  const std::size_t w = grid.width();
  auto pair = [&](std::size_t p, std::size_t q) {
    const double d = f[p] - f[q];
    out.value += d * d;
    out.grad[p] += 2.0 * d;
    out.grad[q] -= 2.0 * d;
  };
  for (std::size_t y = 0; y < grid.height(); ++y) {
    for (std::size_t x = 0; x < w; ++x) {
      const std::size_t p = y * w + x;
      if (x + 1 < w) pair(p, p + 1);
      if (y + 1 < grid.height()) pair(p, p + w);
    }
  }
  return out;
}

CompositeResult composite_loss(const Image& f, const Image& y, const MaxTree& tree, const LossConfig& config) {
  if (f.size() != y.size()) throw InvalidArgument("composite_loss: image and observation sizes differ");
  if (tree.pixel_count() != f.size()) throw InvalidArgument("composite_loss: tree does not match image");
  CompositeResult out;
  out.grad.assign(f.size(), 0.0);

  const auto l2 = l2_loss(f.values, y.values);
  out.loss.l2 = l2.value;
  if (config.data_weight > 0.0)
    for (std::size_t i = 0; i < f.size(); ++i) out.grad[i] += config.data_weight * l2.grad[i];

  {
    const MeasureVector saliency = compute_measure(tree, config.saliency);
    const MeasureVector importance =
        config.importance == config.saliency ? saliency : compute_measure(tree, config.importance);
    const auto jr = ranked_selection_loss(saliency.values, importance.values, config.target_count, config.margin);
    out.loss.jr = jr.value;
    if (config.lambda1 > 0.0) {
      const PixelGrad g = backprop_measure_to_pixels(tree, saliency, jr.grad);
      for (std::size_t i = 0; i < f.size(); ++i) out.grad[i] += config.lambda1 * g.values[i];
    }
  }

  const auto smooth = smoothness_loss(f.values, f.grid);
  out.loss.smooth = smooth.value;
  if (config.lambda2 > 0.0)
    for (std::size_t i = 0; i < f.size(); ++i) out.grad[i] += config.lambda2 * smooth.grad[i];

  out.loss.total = config.data_weight * out.loss.l2 + config.lambda1 * out.loss.jr + config.lambda2 * out.loss.smooth;
  return out;
}

CompositeResult composite_loss(const Image& f, const Image& y, const LossConfig& config) {
  return composite_loss(f, y, build_maxtree(f), config);
}

}  // namespace mtloss
