#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "mtloss/errors.hpp"
#include "mtloss/optimizer.hpp"

using namespace mtloss;

TEST_CASE("Adam first step moves each coordinate by the step size") {
  OptimConfig cfg;
  cfg.step_size = 0.1;
  Adam adam(3, cfg);
  std::vector<double> x{0, 0, 0};
  const std::vector<double> g{2.0, -0.5, 0.0};
  adam.step(x, g);
  CHECK(adam.steps_taken() == 1);
  CHECK(x[0] == doctest::Approx(-0.1));
  CHECK(x[1] == doctest::Approx(0.1));
  CHECK(x[2] == 0.0);
}

TEST_CASE("Adam matches the bias-corrected recurrence") {
  OptimConfig cfg;
  cfg.step_size = 0.05;
  Adam adam(1, cfg);
  std::vector<double> x{1.0};
  double m = 0, v = 0, ref = 1.0;
  for (int t = 1; t <= 20; ++t) {
    const double g = 2.0 * x[0] + std::sin(t);
    m = cfg.beta1 * m + (1 - cfg.beta1) * g;
    v = cfg.beta2 * v + (1 - cfg.beta2) * g * g;
    const double mh = m / (1 - std::pow(cfg.beta1, t)), vh = v / (1 - std::pow(cfg.beta2, t));
    ref -= cfg.step_size * mh / (std::sqrt(vh) + cfg.eps_hat);
    adam.step(x, std::vector<double>{g});
    CHECK(x[0] == doctest::Approx(ref).epsilon(1e-12));
  }
}

TEST_CASE("pure data term stays at the input") {
  std::mt19937_64 rng(51);
  const Image y = testing_helpers::random_real_image(rng, 8, 8, Connectivity::conn8);
  LossConfig loss;
  loss.lambda1 = 0.0;
  OptimConfig opt;
  const auto tr = optimize(y, loss, opt);
  CHECK(tr.loss_log.back().l2 < 1e-8);
  CHECK(tr.final_image == y);
  CHECK(tr.stop_reason == StopReason::plateau);
  CHECK(tr.loss_log.size() == tr.iterations_run);
  CHECK(tr.iterations_run == opt.plateau_patience + 1);
}

TEST_CASE("pure selection loss flattens the discarded peak") {
  const Image y = testing_helpers::line({0.0, 0.3, 0.6, 0.3, 0.1, 0.4, 1.0, 0.4, 0.0});
  LossConfig loss;
  loss.saliency = MeasureKind::alt;
  loss.importance = MeasureKind::alt;
  loss.target_count = 1;
  loss.margin = 0.5;
  loss.data_weight = 0.0;
  OptimConfig opt;
  opt.step_size = 1e-3;
  opt.max_iters = 300;
  std::vector<double> discarded;
  const auto tr = optimize(y, loss, opt, [&](std::size_t, const Image& f, const LossBreakdown&) {
    // the left peak lives at pixel 2; its altitude is the largest value in 0..3
    discarded.push_back(*std::max_element(f.values.begin(), f.values.begin() + 4));
  });
  const auto& log = tr.loss_log;
  auto moving = [](const std::vector<double>& v, std::size_t end) {
    double s = 0;
    for (std::size_t i = end - 20; i < end; ++i) s += v[i];
    return s / 20.0;
  };
  std::vector<double> totals;
  for (const auto& l : log) totals.push_back(l.total);
  for (std::size_t t = 11; t < totals.size(); ++t) CHECK(totals[t] <= totals[t - 1] + 1e-12);
  for (std::size_t t = 40; t <= discarded.size(); t += 20) CHECK(moving(discarded, t) < moving(discarded, t - 20));
  CHECK(discarded.back() < 0.6 - 0.2);
}

TEST_CASE("logged totals are the weighted sum of the terms") {
  std::mt19937_64 rng(52);
  const Image y = testing_helpers::random_real_image(rng, 7, 6, Connectivity::conn8);
  LossConfig loss;
  loss.lambda1 = 0.5;
  loss.lambda2 = 0.25;
  loss.data_weight = 2.0;
  OptimConfig opt;
  opt.max_iters = 40;
  std::vector<Image> iterates;
  const auto tr = optimize(y, loss, opt, [&](std::size_t, const Image& f, const LossBreakdown&) { iterates.push_back(f); });
  REQUIRE(tr.loss_log.size() == 40);
  REQUIRE(iterates.size() == 40);
  CHECK(tr.stop_reason == StopReason::max_iters);
  CHECK(iterates.back() == tr.final_image);
  for (std::size_t t = 0; t < tr.loss_log.size(); ++t) {
    const auto& l = tr.loss_log[t];
    CHECK(l.total == doctest::Approx(2.0 * l.l2 + 0.5 * l.jr + 0.25 * l.smooth).epsilon(1e-14));
    CHECK(composite_loss(iterates[t], y, loss).loss.total == l.total);
  }
}

TEST_CASE("optimization is deterministic") {
  std::mt19937_64 rng(53);
  const Image y = testing_helpers::random_real_image(rng, 9, 9, Connectivity::conn4);
  LossConfig loss;
  loss.target_count = 2;
  loss.saliency = MeasureKind::vol;
  loss.importance = MeasureKind::vol;
  loss.lambda2 = 0.1;
  OptimConfig opt;
  opt.max_iters = 60;
  const auto a = optimize(y, loss, opt), b = optimize(y, loss, opt);
  CHECK(a.final_image == b.final_image);
  REQUIRE(a.loss_log.size() == b.loss_log.size());
  for (std::size_t t = 0; t < a.loss_log.size(); ++t) CHECK(a.loss_log[t].total == b.loss_log[t].total);
}

TEST_CASE("tiny steps follow the first-order prediction") {
  // Adam does not step along -grad, so the prediction is <grad, f(t+1) - f(t)>.
  std::mt19937_64 rng(54);
  const Image y = testing_helpers::random_real_image(rng, 6, 6, Connectivity::conn8);
  LossConfig loss;
  loss.lambda1 = 1.0;
  loss.lambda2 = 0.5;
  loss.margin = 2.0;
  OptimConfig opt;
  opt.step_size = 1e-6;
  opt.max_iters = 10;
  std::vector<Image> iterates;
  const auto tr = optimize(y, loss, opt, [&](std::size_t, const Image& f, const LossBreakdown&) { iterates.push_back(f); });
  for (std::size_t t = 0; t + 1 < iterates.size(); ++t) {
    const auto g = composite_loss(iterates[t], y, loss).grad;
    double predicted = 0;
    for (std::size_t p = 0; p < y.size(); ++p) predicted += g[p] * (iterates[t + 1].values[p] - iterates[t].values[p]);
    const double actual = tr.loss_log[t + 1].total - tr.loss_log[t].total;
    CHECK(predicted < 0.0);
    CHECK(std::abs(actual - predicted) <= 0.1 * std::abs(predicted));
  }
}

TEST_CASE("non-finite loss aborts with the iteration") {
  std::vector<double> v(16);
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = (i % 2 ? 1.0 : -1.0) * 1e300;
  const Image y(Grid(4, 4, Connectivity::conn4), v);
  LossConfig loss;
  loss.lambda2 = 1.0;
  try {
    optimize(y, loss, OptimConfig{});
    FAIL("no throw");
  } catch (const NumericError& e) {
    CHECK(e.iteration() == 0);
    CHECK(std::string(e.what()).find("iteration 0") != std::string::npos);
  }
}

TEST_CASE("optimizer config validation") {
  OptimConfig cfg;
  CHECK_NOTHROW(cfg.validate());
  cfg.beta1 = 1.0;
  CHECK_THROWS_AS(cfg.validate(), InvalidArgument);
  cfg = OptimConfig{};
  cfg.max_iters = 0;
  CHECK_THROWS_AS(cfg.validate(), InvalidArgument);
  CHECK(to_string(StopReason::plateau) == "plateau");
}
