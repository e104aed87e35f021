#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "mtloss/grid.hpp"

namespace mtloss {

/// A real-valued image: one value per pixel of `grid`, row-major.
struct Image {
  Grid grid;
  std::vector<double> values;

  /// Throws InvalidArgument if the sizes disagree or a value is not finite.
  Image(Grid g, std::vector<double> v);

  std::size_t size() const noexcept { return values.size(); }
  double operator[](std::size_t i) const { return values[i]; }

  friend bool operator==(const Image&, const Image&) = default;
};

// --- Netpbm graymap ---------------------------------------------------------

/// Reads a P2 or P5 graymap with maxval <= 255, rescaled to [0,1].
Image read_pgm(const std::filesystem::path& path, Connectivity connectivity = Connectivity::conn8);
/// Parses graymap bytes already in memory. Errors carry the byte offset.
Image parse_pgm(const std::string& bytes, Connectivity connectivity = Connectivity::conn8);

/// Writes binary P5. Values are min-max quantized to 0..255; a constant
/// image becomes all zeros.
void write_pgm(const Image& image, const std::filesystem::path& path);
std::string format_pgm(const Image& image);
/// The 0..255 levels write_pgm would emit.
std::vector<unsigned char> quantize_levels(const Image& image);

// --- CSV matrix -------------------------------------------------------------

/// One row per image row, comma separated, no header.
Image read_csv_matrix(const std::filesystem::path& path, Connectivity connectivity = Connectivity::conn8);
Image parse_csv_matrix(const std::string& text, Connectivity connectivity = Connectivity::conn8);

/// Values printed with 17 significant digits, so reading back is exact.
void write_csv_matrix(const Image& image, const std::filesystem::path& path);
std::string format_csv_matrix(const Image& image);

/// Dispatches on the extension: ".pgm" graymap, anything else CSV.
Image read_image(const std::filesystem::path& path, Connectivity connectivity = Connectivity::conn8);
void write_image(const Image& image, const std::filesystem::path& path);

/// Decimal text for a double with 17 significant digits (round-trips exactly).
std::string format_real(double v);

// File helpers shared by the writers; failures raise IoError naming the path.
std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, const std::string& contents);

}  // namespace mtloss
