#include <doctest.h>

#include "helpers.hpp"
#include "mtloss/backprop.hpp"
#include "mtloss/errors.hpp"
#include "oracles.hpp"

using namespace mtloss;
using testing_helpers::two_peak_signal;

TEST_CASE("altitude gradient lands on proper pixels") {
  const MaxTree t = build_maxtree(two_peak_signal());
  CHECK(backprop_altitudes(t, {{0, 0, 1, 0}}).values == std::vector<double>{0, 0, 1, 1, 0, 0});
  CHECK(backprop_altitudes(t, {{0, 0, 0, 0}}).values == std::vector<double>(6, 0.0));
  CHECK_THROWS_AS(backprop_altitudes(t, {{1, 2}}), InvalidArgument);
}

TEST_CASE("dynamics backward on the two-peak signal") {
  const MaxTree t = build_maxtree(two_peak_signal());
  const auto m = dyn_measure(t);
  CHECK(backprop_measure(t, m, std::vector<double>{1, 0}).values == std::vector<double>{0, -1, 1, 0});
  CHECK(backprop_measure(t, m, std::vector<double>{0, 1}).values == std::vector<double>{-1, 0, 0, 1});
  CHECK_THROWS_AS(backprop_measure(t, m, std::vector<double>{1}), InvalidArgument);
}

TEST_CASE("altitude measure backward is one-hot") {
  const MaxTree t = build_maxtree(two_peak_signal());
  const auto m = alt_measure(t);
  CHECK(backprop_measure(t, m, std::vector<double>{0, 1}).values == std::vector<double>{0, 0, 0, 1});
  CHECK(backprop_measure_to_pixels(t, m, std::vector<double>{1, 0}).values ==
        std::vector<double>{0, 0, 1, 1, 0, 0});
}

TEST_CASE("volume backward on the two-peak signal") {
  const MaxTree t = build_maxtree(two_peak_signal());
  const auto m = vol_measure(t);
  // vol(C3) = sum(f - a(root)): each node gains proper_count, the root also pays -area = -6
  CHECK(backprop_measure_to_pixels(t, m, std::vector<double>{1, 0}).values ==
        std::vector<double>{-4, -4, 2, 2, 1, 1});
  // vol(C4) = f6 - a(C2)
  CHECK(backprop_measure_to_pixels(t, m, std::vector<double>{0, 1}).values ==
        std::vector<double>{0, 0, 0, 0, -1, 1});
}

TEST_CASE("measure gradients match finite differences") {
  std::mt19937_64 rng(31);
  int done = 0;
  while (done < 30) {
    const Image img = testing_helpers::random_real_image(rng, 5, 5, Connectivity::conn8);
    std::vector<double> sorted = img.values;
    std::sort(sorted.begin(), sorted.end());
    bool close = false;
    for (std::size_t i = 1; i < sorted.size(); ++i) close |= sorted[i] - sorted[i - 1] < 1e-3;
    if (close) continue;
    const MaxTree t = build_maxtree(img);
    for (auto kind : {MeasureKind::alt, MeasureKind::dyn, MeasureKind::vol}) {
      const auto m = compute_measure(t, kind);
      std::vector<double> w(m.size());
      std::uniform_real_distribution<double> d(-1, 1);
      for (auto& x : w) x = d(rng);
      const auto grad = backprop_measure_to_pixels(t, m, w);
      auto fn = [&](std::span<const double> x) {
        const MaxTree tx = build_maxtree(Image(img.grid, {x.begin(), x.end()}));
        const auto mx = compute_measure(tx, kind);
        double s = 0;
        for (std::size_t i = 0; i < mx.size(); ++i) s += w[i] * mx.values[i];
        return s;
      };
      const auto fd = oracle::finite_difference_grad(fn, img.values, 1e-7);
      for (std::size_t p = 0; p < img.size(); ++p) CHECK(grad.values[p] == doctest::Approx(fd[p]).epsilon(1e-5));
    }
    ++done;
  }
}
