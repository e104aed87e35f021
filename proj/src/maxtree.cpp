#include "mtloss/maxtree.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <string>

#include "mtloss/errors.hpp"

namespace mtloss {

namespace {

constexpr std::size_t kUnset = std::numeric_limits<std::size_t>::max();

std::size_t find_root(std::vector<std::size_t>& zpar, std::size_t x) {
  std::size_t r = x;
  while (zpar[r] != r) r = zpar[r];
  while (zpar[x] != r) {
    const std::size_t next = zpar[x];
    zpar[x] = r;
    x = next;
  }
  return r;
}

}  // namespace

MaxTree::MaxTree(Grid grid, std::vector<std::size_t> parent, std::vector<double> altitude,
                 std::vector<std::size_t> proper_node)
    : grid_(grid), parent_(std::move(parent)), altitude_(std::move(altitude)), proper_node_(std::move(proper_node)) {
  index_children();
}

void MaxTree::index_children() {
  const std::size_t m = parent_.size();
  child_begin_.assign(m + 1, 0);
  for (std::size_t c = 1; c < m; ++c) ++child_begin_[parent_[c] + 1];
  std::partial_sum(child_begin_.begin(), child_begin_.end(), child_begin_.begin());
  child_list_.assign(m == 0 ? 0 : m - 1, 0);
  std::vector<std::size_t> fill(child_begin_.begin(), child_begin_.end() - 1);
  for (std::size_t c = 1; c < m; ++c) child_list_[fill[parent_[c]]++] = c;
}

MaxTree MaxTree::from_arrays(Grid grid, std::vector<std::size_t> parent, std::vector<double> altitude,
                             std::vector<std::size_t> proper_node) {
  const std::size_t m = parent.size();
  if (m == 0) throw InvalidArgument("tree must have at least one node");
  if (altitude.size() != m) throw InvalidArgument("altitude length differs from node count");
  if (proper_node.size() != grid.size()) throw InvalidArgument("proper_node length differs from pixel count");
  if (parent[0] != 0) throw InvalidArgument("node 0 must be the root");
  for (std::size_t c = 1; c < m; ++c) {
    if (parent[c] >= c) throw InvalidArgument("parent index must precede child index (node " + std::to_string(c) + ")");
    if (!(altitude[c] > altitude[parent[c]]))
      throw InvalidArgument("altitude must strictly increase toward leaves (node " + std::to_string(c) + ")");
  }
  std::vector<std::size_t> proper(m, 0);
  for (std::size_t p : proper_node) {
    if (p >= m) throw InvalidArgument("proper_node refers to a missing node");
    ++proper[p];
  }
  std::vector<std::size_t> nchild(m, 0);
  for (std::size_t c = 1; c < m; ++c) ++nchild[parent[c]];
  for (std::size_t c = 0; c < m; ++c)
    if (proper[c] == 0 && nchild[c] < 2) throw InvalidArgument("node " + std::to_string(c) + " is redundant");
  return MaxTree(grid, std::move(parent), std::move(altitude), std::move(proper_node));
}

MaxTree build_maxtree(const Image& image) {
  const std::size_t n = image.size();
  const auto& f = image.values;

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return f[a] > f[b]; });

  // Pixel-level tree: every pixel points to a pixel processed after it.
  std::vector<std::size_t> par(n, kUnset);
  std::vector<std::size_t> zpar(n, kUnset);
  for (std::size_t p : order) {
    par[p] = p;
    zpar[p] = p;
    image.grid.for_each_neighbor(p, [&](std::size_t q) {
      if (zpar[q] == kUnset) return;
      const std::size_t r = find_root(zpar, q);
      if (r != p) {
        par[r] = p;
        zpar[r] = p;
      }
    });
  }

  // Canonicalize: walking from the root upward, every pixel ends up pointing
  // at the canonical pixel of its own level component or of its parent node.
  const std::size_t root_pixel = order.back();
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const std::size_t p = *it;
    const std::size_t q = par[p];
    if (f[par[q]] == f[q]) par[p] = par[q];
  }

  auto is_canonical = [&](std::size_t p) { return p == root_pixel || f[par[p]] != f[p]; };

  std::vector<std::size_t> node_of(n, kUnset);
  std::vector<std::size_t> parent;
  std::vector<double> altitude;
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const std::size_t p = *it;
    if (!is_canonical(p)) continue;
    const std::size_t id = parent.size();
    node_of[p] = id;
    parent.push_back(p == root_pixel ? id : node_of[par[p]]);
    altitude.push_back(f[p]);
  }

  std::vector<std::size_t> proper_node(n);
  for (std::size_t p = 0; p < n; ++p) proper_node[p] = is_canonical(p) ? node_of[p] : node_of[par[p]];

  return MaxTree(image.grid, std::move(parent), std::move(altitude), std::move(proper_node));
}

std::vector<std::size_t> leaves(const MaxTree& tree) {
  std::vector<std::size_t> out;
  for (std::size_t c = 0; c < tree.node_count(); ++c)
    if (tree.is_leaf(c)) out.push_back(c);
  return out;
}

NodeAttributes compute_attributes(const MaxTree& tree) {
  const std::size_t m = tree.node_count();
  NodeAttributes attr;
  attr.area.assign(m, 0);
  attr.proper_count.assign(m, 0);
  attr.height.assign(m, 0.0);
  attr.volume.assign(m, 0.0);

  // above[c] = sum over the component of (f_p - altitude(c)); kept relative
  // to the node so that flat regions contribute exact zeros.
  std::vector<double> above(m, 0.0);
  std::vector<double> top(tree.altitudes().begin(), tree.altitudes().end());
  for (std::size_t p = 0; p < tree.pixel_count(); ++p) ++attr.proper_count[tree.proper_node(p)];
  for (std::size_t c = 0; c < m; ++c) attr.area[c] = attr.proper_count[c];
  for (std::size_t c = m; c-- > 1;) {
    const std::size_t p = tree.parent(c);
    attr.volume[c] = above[c] + static_cast<double>(attr.area[c]) * (tree.altitude(c) - tree.altitude(p));
    attr.area[p] += attr.area[c];
    above[p] += attr.volume[c];
    top[p] = std::max(top[p], top[c]);
  }
  attr.volume[0] = above[0];
  for (std::size_t c = 0; c < m; ++c) attr.height[c] = top[c] - tree.altitude(c);
  return attr;
}

Image reconstruct(const MaxTree& tree) {
  std::vector<double> values(tree.pixel_count());
  for (std::size_t p = 0; p < values.size(); ++p) values[p] = tree.altitude(tree.proper_node(p));
  return Image(tree.grid(), std::move(values));
}

}  // namespace mtloss
