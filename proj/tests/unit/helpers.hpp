#pragma once

#include <cstddef>
#include <random>
#include <vector>

#include "mtloss/image.hpp"

namespace testing_helpers {

inline mtloss::Image line(std::vector<double> values) {
  const std::size_t n = values.size();
  return mtloss::Image(mtloss::Grid(n, 1, mtloss::Connectivity::chain2), std::move(values));
}

inline mtloss::Image two_peak_signal() { return line({0, 0, 2, 2, 1, 3}); }

inline mtloss::Image random_integer_image(std::mt19937_64& rng, std::size_t w, std::size_t h, int levels,
                                          mtloss::Connectivity conn) {
  std::uniform_int_distribution<int> d(0, levels - 1);
  std::vector<double> v(w * h);
  for (auto& x : v) x = d(rng);
  return mtloss::Image(mtloss::Grid(w, h, conn), std::move(v));
}

inline mtloss::Image random_real_image(std::mt19937_64& rng, std::size_t w, std::size_t h, mtloss::Connectivity conn) {
  std::uniform_real_distribution<double> d(0.0, 1.0);
  std::vector<double> v(w * h);
  for (auto& x : v) x = d(rng);
  return mtloss::Image(mtloss::Grid(w, h, conn), std::move(v));
}

}  // namespace testing_helpers

#include <algorithm>
#include <map>

#include "mtloss/maxtree.hpp"
#include "oracles.hpp"

namespace testing_helpers {

/// Pixel set of every node, gathered from the proper-pixel map.
inline std::vector<std::vector<std::size_t>> node_pixel_sets(const mtloss::MaxTree& tree) {
  std::vector<std::vector<std::size_t>> sets(tree.node_count());
  for (std::size_t p = 0; p < tree.pixel_count(); ++p) {
    std::size_t n = tree.proper_node(p);
    while (true) {
      sets[n].push_back(p);
      if (n == tree.root()) break;
      n = tree.parent(n);
    }
  }
  for (auto& s : sets) std::sort(s.begin(), s.end());
  return sets;
}

/// True when the fast tree and the brute-force tree have the same nodes,
/// altitudes and parent relation.
inline bool same_as_oracle(const mtloss::MaxTree& tree, const mtloss::oracle::OracleTree& ref) {
  if (tree.node_count() != ref.components.size()) return false;
  std::map<std::vector<std::size_t>, std::size_t> index;
  for (std::size_t c = 0; c < ref.components.size(); ++c) index[ref.components[c]] = c;
  const auto sets = node_pixel_sets(tree);
  std::vector<std::size_t> to_ref(tree.node_count());
  for (std::size_t n = 0; n < tree.node_count(); ++n) {
    auto it = index.find(sets[n]);
    if (it == index.end()) return false;
    to_ref[n] = it->second;
    if (ref.altitudes[it->second] != tree.altitude(n)) return false;
  }
  for (std::size_t n = 0; n < tree.node_count(); ++n)
    if (ref.parent[to_ref[n]] != to_ref[tree.parent(n)]) return false;
  return true;
}

}  // namespace testing_helpers
