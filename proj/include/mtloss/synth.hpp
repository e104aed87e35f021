#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "mtloss/image.hpp"

namespace mtloss {

struct Bump {
  double x = 0.0;
  double y = 0.0;
  double sigma = 1.0;
  double amplitude = 1.0;
};

/// Isotropic Gaussian bumps on a zero background. The default set differs
/// pairwise in amplitude, extent and integrated mass: the two highest bumps
/// are the two smallest in mass.
struct FourBumpsSpec {
  std::size_t width = 64;
  std::size_t height = 64;
  std::vector<Bump> bumps{{18.0, 18.0, 2.5, 1.0}, {46.0, 18.0, 3.0, 0.85}, {18.0, 46.0, 6.0, 0.6}, {46.0, 46.0, 7.0, 0.5}};
};

/// A horizontal ridge along `row` from ridge_start to ridge_end, broken by a
/// gap of gap_width pixels centred on gap_position. The two segments have
/// constant crest values left_amplitude and right_amplitude and a Gaussian
/// cross-section.
struct TwoRidgesSpec {
  std::size_t width = 48;
  std::size_t height = 24;
  std::size_t row = 12;
  double ridge_start = 4.0;
  double ridge_end = 43.0;
  double gap_position = 24.0;
  double gap_width = 6.0;
  double sigma = 1.2;
  double left_amplitude = 1.0;
  double right_amplitude = 0.8;
};

struct SynthSpec {
  std::string generator = "four_bumps";  ///< "four_bumps" or "two_ridges"
  FourBumpsSpec four_bumps;
  TwoRidgesSpec two_ridges;
  double noise = 0.02;  ///< additive noise, uniform in [-noise, noise]
  std::uint64_t seed = 0;
};

/// Deterministic for a given spec. Throws InvalidArgument on an unknown
/// generator or bad geometry.
Image synthesize(const SynthSpec& spec, Connectivity connectivity = Connectivity::conn8);

/// Noise-free value of a single bump at pixel (x, y).
double bump_value(const Bump& bump, double x, double y);

}  // namespace mtloss
