#pragma once

#include <array>
#include <cstddef>
#include <string_view>
#include <vector>

namespace mtloss {

enum class Connectivity { chain2, conn4, conn8 };

std::string_view to_string(Connectivity c);
/// Throws InvalidArgument on an unknown name.
Connectivity connectivity_from_string(std::string_view name);

/// Pixel domain: a width x height raster in row-major order with a fixed
/// adjacency. height == 1 encodes 1-d signals. Immutable after construction.
class Grid {
 public:
  /// Throws InvalidArgument for zero dimensions or chain2 with height > 1.
  Grid(std::size_t width, std::size_t height, Connectivity connectivity);

  std::size_t width() const noexcept { return width_; }
  std::size_t height() const noexcept { return height_; }
  std::size_t size() const noexcept { return width_ * height_; }
  Connectivity connectivity() const noexcept { return connectivity_; }

  /// Neighbors of pixel i in ascending index order. Throws on out-of-range i.
  std::vector<std::size_t> neighbors(std::size_t i) const;

  /// Calls fn(j) for every neighbor j of i, ascending. No range check.
  template <class Fn>
  void for_each_neighbor(std::size_t i, Fn&& fn) const {
    const std::size_t x = i % width_;
    const std::size_t y = i / width_;
    for (const auto& [dx, dy] : offsets()) {
      if ((dx < 0 && x == 0) || (dx > 0 && x + 1 == width_)) continue;
      if ((dy < 0 && y == 0) || (dy > 0 && y + 1 == height_)) continue;
      fn(static_cast<std::size_t>(static_cast<std::ptrdiff_t>(i) + dy * static_cast<std::ptrdiff_t>(width_) + dx));
    }
  }

  friend bool operator==(const Grid&, const Grid&) = default;

 private:
  struct Offset {
    int dx;
    int dy;
  };
  // Listed in raster order so that neighbor indices come out ascending.
  static constexpr std::array<Offset, 8> kConn8{{{-1, -1}, {0, -1}, {1, -1}, {-1, 0}, {1, 0}, {-1, 1}, {0, 1}, {1, 1}}};
  static constexpr std::array<Offset, 4> kConn4{{{0, -1}, {-1, 0}, {1, 0}, {0, 1}}};
  static constexpr std::array<Offset, 2> kChain{{{-1, 0}, {1, 0}}};

  struct OffsetView {
    const Offset* first;
    const Offset* last;
    const Offset* begin() const { return first; }
    const Offset* end() const { return last; }
  };
  OffsetView offsets() const noexcept;

  std::size_t width_;
  std::size_t height_;
  Connectivity connectivity_;
};

}  // namespace mtloss
