#include "mtloss/grid.hpp"

#include <string>

#include "mtloss/errors.hpp"

namespace mtloss {

std::string_view to_string(Connectivity c) {
  switch (c) {
    case Connectivity::chain2: return "chain2";
    case Connectivity::conn4: return "conn4";
    case Connectivity::conn8: return "conn8";
  }
  return "?";
}

Connectivity connectivity_from_string(std::string_view name) {
  if (name == "chain2") return Connectivity::chain2;
  if (name == "conn4") return Connectivity::conn4;
  if (name == "conn8") return Connectivity::conn8;
  throw InvalidArgument("unknown connectivity '" + std::string(name) + "' (expected chain2, conn4 or conn8)");
}

Grid::Grid(std::size_t width, std::size_t height, Connectivity connectivity)
    : width_(width), height_(height), connectivity_(connectivity) {
  if (width == 0 || height == 0) throw InvalidArgument("grid dimensions must be positive");
  if (connectivity == Connectivity::chain2 && height != 1)
    throw InvalidArgument("chain2 connectivity requires height == 1");
}

Grid::OffsetView Grid::offsets() const noexcept {
  switch (connectivity_) {
    case Connectivity::chain2: return {kChain.data(), kChain.data() + kChain.size()};
    case Connectivity::conn4: return {kConn4.data(), kConn4.data() + kConn4.size()};
    case Connectivity::conn8: break;
  }
  return {kConn8.data(), kConn8.data() + kConn8.size()};
}

std::vector<std::size_t> Grid::neighbors(std::size_t i) const {
  if (i >= size()) throw InvalidArgument("pixel index " + std::to_string(i) + " out of range");
  std::vector<std::size_t> out;
  out.reserve(8);
  for_each_neighbor(i, [&](std::size_t j) { out.push_back(j); });
  return out;
}

}  // namespace mtloss
