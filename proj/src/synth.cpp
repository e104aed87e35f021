#include "mtloss/synth.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "mtloss/errors.hpp"

namespace mtloss {

double bump_value(const Bump& bump, double x, double y) {
  const double dx = x - bump.x;
  const double dy = y - bump.y;
  return bump.amplitude * std::exp(-(dx * dx + dy * dy) / (2.0 * bump.sigma * bump.sigma));
}

namespace {

std::vector<double> four_bumps(const FourBumpsSpec& s) {
  std::vector<double> v(s.width * s.height, 0.0);
  for (const Bump& b : s.bumps) {
    if (!(b.sigma > 0.0)) throw InvalidArgument("bump sigma must be positive");
    for (std::size_t y = 0; y < s.height; ++y)
      for (std::size_t x = 0; x < s.width; ++x) v[y * s.width + x] += bump_value(b, double(x), double(y));
  }
  return v;
}

double segment_distance(double x, double y, double x0, double x1, double row) {
  const double cx = std::clamp(x, x0, x1);
  return std::hypot(x - cx, y - row);
}

std::vector<double> two_ridges(const TwoRidgesSpec& s) {
  if (!(s.sigma > 0.0)) throw InvalidArgument("ridge sigma must be positive");
  if (s.row >= s.height) throw InvalidArgument("ridge row outside the image");
  const double left_end = s.gap_position - s.gap_width / 2.0;
  const double right_begin = s.gap_position + s.gap_width / 2.0;
  if (!(s.ridge_start <= left_end && left_end < right_begin && right_begin <= s.ridge_end))
    throw InvalidArgument("ridge gap must lie strictly inside the ridge");
  const double row = static_cast<double>(s.row);
  const double k = 1.0 / (2.0 * s.sigma * s.sigma);
  std::vector<double> v(s.width * s.height, 0.0);
  for (std::size_t y = 0; y < s.height; ++y) {
    for (std::size_t x = 0; x < s.width; ++x) {
      const double dl = segment_distance(double(x), double(y), s.ridge_start, left_end, row);
      const double dr = segment_distance(double(x), double(y), right_begin, s.ridge_end, row);
      v[y * s.width + x] = std::max(s.left_amplitude * std::exp(-dl * dl * k), s.right_amplitude * std::exp(-dr * dr * k));
    }
  }
  return v;
}

}  // namespace

Image synthesize(const SynthSpec& spec, Connectivity connectivity) {
  std::size_t width = 0;
  std::size_t height = 0;
  std::vector<double> v;
  if (spec.generator == "four_bumps") {
    width = spec.four_bumps.width;
    height = spec.four_bumps.height;
    if (width == 0 || height == 0) throw InvalidArgument("synthetic image dimensions must be positive");
    v = four_bumps(spec.four_bumps);
  } else if (spec.generator == "two_ridges") {
    width = spec.two_ridges.width;
    height = spec.two_ridges.height;
    if (width == 0 || height == 0) throw InvalidArgument("synthetic image dimensions must be positive");
    v = two_ridges(spec.two_ridges);
  } else {
    throw InvalidArgument("unknown generator '" + spec.generator + "' (expected four_bumps or two_ridges)");
  }
  if (!(spec.noise >= 0.0) || !std::isfinite(spec.noise)) throw InvalidArgument("noise amplitude must be non-negative");
  if (spec.noise > 0.0) {
    // Raw engine bits mapped to [0,1) so the stream does not depend on the
    // standard library's distribution implementation.
    std::mt19937_64 rng(spec.seed);
    for (double& x : v) {
      const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
      x += spec.noise * (2.0 * u - 1.0);
    }
  }
  if (height > 1 && connectivity == Connectivity::chain2) connectivity = Connectivity::conn8;
  return Image(Grid(width, height, connectivity), std::move(v));
}

}  // namespace mtloss
