#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string_view>
#include <vector>

#include "mtloss/image.hpp"
#include "mtloss/losses.hpp"

namespace mtloss {

struct OptimConfig {
  double step_size = 1e-2;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps_hat = 1e-8;
  std::size_t max_iters = 2000;
  std::size_t plateau_patience = 50;
  double plateau_tol = 1e-9;
  /// Recorded for reproducibility; the descent itself is deterministic.
  std::uint64_t seed = 0;

  void validate() const;
};

enum class StopReason { max_iters, plateau };
std::string_view to_string(StopReason reason);

/// `loss_log[t]` is the loss of the t-th evaluated iterate. The last
/// evaluated iterate is `final_image`; no update is applied after it.
struct Trajectory {
  Image final_image;
  std::vector<LossBreakdown> loss_log;
  std::size_t iterations_run = 0;
  StopReason stop_reason = StopReason::max_iters;
};

/// Called once per iteration with the iterate that was just evaluated.
using IterationObserver = std::function<void(std::size_t iteration, const Image& f, const LossBreakdown& loss)>;

/// Adam state over a flat parameter vector (bias-corrected moments).
class Adam {
 public:
  Adam(std::size_t size, const OptimConfig& config);
  /// Applies one update to x in place.
  void step(std::span<double> x, std::span<const double> grad);
  std::size_t steps_taken() const noexcept { return t_; }

 private:
  OptimConfig config_;
  std::vector<double> m_;
  std::vector<double> v_;
  std::size_t t_ = 0;
  double beta1_pow_ = 1.0;
  double beta2_pow_ = 1.0;
};

/// Minimizes the composite loss starting from f = y. The max-tree is rebuilt
/// from the current iterate at every iteration. Stops after max_iters
/// evaluations or when the best loss has not improved by plateau_tol for
/// plateau_patience consecutive iterations. Throws NumericError on a
/// non-finite loss or gradient.
Trajectory optimize(const Image& y, const LossConfig& loss, const OptimConfig& opt,
                    const IterationObserver& observer = {});

}  // namespace mtloss
