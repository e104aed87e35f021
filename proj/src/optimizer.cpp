#include "mtloss/optimizer.hpp"

#include <algorithm>
#include <cmath>

#include "mtloss/errors.hpp"

namespace mtloss {

void OptimConfig::validate() const {
  if (!(step_size > 0.0) || !std::isfinite(step_size)) throw InvalidArgument("step_size must be positive");
  if (!(beta1 > 0.0 && beta1 < 1.0)) throw InvalidArgument("beta1 must lie in (0,1)");
  if (!(beta2 > 0.0 && beta2 < 1.0)) throw InvalidArgument("beta2 must lie in (0,1)");
  if (!(eps_hat > 0.0)) throw InvalidArgument("eps_hat must be positive");
  if (max_iters == 0) throw InvalidArgument("max_iters must be positive");
  if (plateau_patience == 0) throw InvalidArgument("plateau_patience must be positive");
  if (!(plateau_tol >= 0.0)) throw InvalidArgument("plateau_tol must be non-negative");
}

std::string_view to_string(StopReason reason) {
  return reason == StopReason::plateau ? "plateau" : "max_iters";
}

Adam::Adam(std::size_t size, const OptimConfig& config) : config_(config), m_(size, 0.0), v_(size, 0.0) {}

void Adam::step(std::span<double> x, std::span<const double> grad) {
  ++t_;
  beta1_pow_ *= config_.beta1;
  beta2_pow_ *= config_.beta2;
  const double c1 = 1.0 - beta1_pow_;
  const double c2 = 1.0 - beta2_pow_;
  for (std::size_t i = 0; i < x.size(); ++i) {
    m_[i] = config_.beta1 * m_[i] + (1.0 - config_.beta1) * grad[i];
    v_[i] = config_.beta2 * v_[i] + (1.0 - config_.beta2) * grad[i] * grad[i];
    x[i] -= config_.step_size * (m_[i] / c1) / (std::sqrt(v_[i] / c2) + config_.eps_hat);
  }
}

Trajectory optimize(const Image& y, const LossConfig& loss, const OptimConfig& opt, const IterationObserver& observer) {
  loss.validate();
  opt.validate();

  Image f = y;
  Adam adam(f.size(), opt);
  Trajectory traj{f, {}, 0, StopReason::max_iters};
  traj.loss_log.reserve(opt.max_iters);

  double best = 0.0;
  std::size_t stale = 0;
  for (std::size_t it = 0; it < opt.max_iters; ++it) {
    const CompositeResult r = composite_loss(f, y, loss);
    if (!std::isfinite(r.loss.total)) throw NumericError("non-finite loss", it);
    for (double g : r.grad)
      if (!std::isfinite(g)) throw NumericError("non-finite gradient", it);

    traj.loss_log.push_back(r.loss);
    if (observer) observer(it, f, r.loss);

    if (it == 0 || r.loss.total < best - opt.plateau_tol) stale = 0;
    else ++stale;
    best = it == 0 ? r.loss.total : std::min(best, r.loss.total);
    if (stale >= opt.plateau_patience) {
      traj.stop_reason = StopReason::plateau;
      break;
    }
    if (it + 1 == opt.max_iters) break;
    adam.step(f.values, r.grad);
  }
  traj.iterations_run = traj.loss_log.size();
  traj.final_image = std::move(f);
  return traj;
}

}  // namespace mtloss
