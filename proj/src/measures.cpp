#include "mtloss/measures.hpp"

#include <limits>
#include <string>

#include "mtloss/errors.hpp"

namespace mtloss {

std::string_view to_string(MeasureKind kind) {
  switch (kind) {
    case MeasureKind::alt: return "alt";
    case MeasureKind::dyn: return "dyn";
    case MeasureKind::vol: return "vol";
  }
  return "?";
}

MeasureKind measure_kind_from_string(std::string_view name) {
  if (name == "alt") return MeasureKind::alt;
  if (name == "dyn") return MeasureKind::dyn;
  if (name == "vol") return MeasureKind::vol;
  throw InvalidArgument("unknown measure '" + std::string(name) + "' (expected alt, dyn or vol)");
}

namespace {

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

// Bottom-up competition between sibling branches. At every node the child
// with the largest branch_key(child, dominant leaf) carries its dominant leaf
// upward (ties: smaller dominant leaf); every other child's dominant leaf gets
// that node as saddle.
template <class BranchKey>
SaddleAssignment merge_pass(const MaxTree& tree, const std::vector<std::size_t>& leaf_nodes, BranchKey&& branch_key) {
  const std::size_t m = tree.node_count();
  std::vector<std::size_t> position(m, kNone);
  for (std::size_t i = 0; i < leaf_nodes.size(); ++i) position[leaf_nodes[i]] = i;

  std::vector<std::size_t> dominant(m, kNone);
  std::vector<std::size_t> winner(m, kNone);
  std::vector<double> winner_key(m, 0.0);
  for (std::size_t c = m; c-- > 0;) {
    if (tree.is_leaf(c)) dominant[c] = c;
    else dominant[c] = dominant[winner[c]];
    if (c == 0) break;
    const std::size_t p = tree.parent(c);
    const double key = branch_key(c, dominant[c]);
    const std::size_t w = winner[p];
    if (w == kNone || key > winner_key[p] || (key == winner_key[p] && dominant[c] < dominant[w])) {
      winner[p] = c;
      winner_key[p] = key;
    }
  }

  SaddleAssignment out;
  out.saddle.assign(leaf_nodes.size(), tree.root());
  out.branch_top.assign(leaf_nodes.size(), tree.root());
  for (std::size_t c = 1; c < m; ++c) {
    const std::size_t p = tree.parent(c);
    if (winner[p] == c) continue;
    const std::size_t i = position[dominant[c]];
    out.saddle[i] = p;
    out.branch_top[i] = c;
  }
  out.dominant = position[dominant[tree.root()]];
  if (winner[tree.root()] != kNone) out.branch_top[out.dominant] = winner[tree.root()];
  return out;
}

MeasureVector make_measure(MeasureKind kind, std::vector<std::size_t> leaf_nodes, SaddleAssignment sa) {
  MeasureVector mv;
  mv.kind = kind;
  mv.leaves = std::move(leaf_nodes);
  mv.values.assign(mv.leaves.size(), 0.0);
  mv.saddle = std::move(sa.saddle);
  mv.branch_top = std::move(sa.branch_top);
  mv.dominant = sa.dominant;
  return mv;
}

}  // namespace

SaddleAssignment saddle_nodes(const MaxTree& tree, std::span<const double> ranking) {
  const auto leaf_nodes = leaves(tree);
  if (ranking.size() != leaf_nodes.size())
    throw InvalidArgument("ranking has " + std::to_string(ranking.size()) + " entries for " +
                          std::to_string(leaf_nodes.size()) + " maxima");
  std::vector<std::size_t> position(tree.node_count(), kNone);
  for (std::size_t i = 0; i < leaf_nodes.size(); ++i) position[leaf_nodes[i]] = i;
  return merge_pass(tree, leaf_nodes, [&](std::size_t, std::size_t dom) { return ranking[position[dom]]; });
}

MeasureVector alt_measure(const MaxTree& tree) {
  auto leaf_nodes = leaves(tree);
  std::vector<double> ranking(leaf_nodes.size());
  for (std::size_t i = 0; i < leaf_nodes.size(); ++i) ranking[i] = tree.altitude(leaf_nodes[i]);
  SaddleAssignment sa = saddle_nodes(tree, ranking);
  // Highest altitude only depends on the leaf itself.
  for (std::size_t i = 0; i < leaf_nodes.size(); ++i) {
    sa.saddle[i] = tree.parent(leaf_nodes[i]);
    sa.branch_top[i] = leaf_nodes[i];
  }
  MeasureVector mv = make_measure(MeasureKind::alt, std::move(leaf_nodes), std::move(sa));
  mv.values = std::move(ranking);
  return mv;
}

MeasureVector dyn_measure(const MaxTree& tree) {
  auto leaf_nodes = leaves(tree);
  std::vector<double> ranking(leaf_nodes.size());
  for (std::size_t i = 0; i < leaf_nodes.size(); ++i) ranking[i] = tree.altitude(leaf_nodes[i]);
  MeasureVector mv = make_measure(MeasureKind::dyn, std::move(leaf_nodes), saddle_nodes(tree, ranking));
  for (std::size_t i = 0; i < mv.size(); ++i) mv.values[i] = ranking[i] - tree.altitude(mv.saddle[i]);
  return mv;
}

MeasureVector vol_measure(const MaxTree& tree, const NodeAttributes& attributes) {
  auto leaf_nodes = leaves(tree);
  // A branch entering node p carries the surface sum_{q in c}(f_q - alt(p)),
  // which is exactly the parent-referenced volume of c.
  SaddleAssignment sa = merge_pass(tree, leaf_nodes, [&](std::size_t c, std::size_t) { return attributes.volume[c]; });
  MeasureVector mv = make_measure(MeasureKind::vol, std::move(leaf_nodes), std::move(sa));
  for (std::size_t i = 0; i < mv.size(); ++i)
    mv.values[i] = i == mv.dominant ? attributes.volume[tree.root()] : attributes.volume[mv.branch_top[i]];
  return mv;
}

MeasureVector vol_measure(const MaxTree& tree) { return vol_measure(tree, compute_attributes(tree)); }

MeasureVector compute_measure(const MaxTree& tree, MeasureKind kind) {
  switch (kind) {
    case MeasureKind::alt: return alt_measure(tree);
    case MeasureKind::dyn: return dyn_measure(tree);
    case MeasureKind::vol: return vol_measure(tree);
  }
  throw InvalidArgument("unknown measure kind");
}

}  // namespace mtloss
