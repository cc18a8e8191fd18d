#include <algorithm>
#include <numeric>

#include "bot/sampling.hpp"

namespace bot {

LabeledBinaryTree sample_uniform(std::size_t n, Seed seed) {
  SplitMix64 rng(seed);
  return sample_uniform(n, rng);
}

LabeledBinaryTree sample_uniform(std::size_t n, SplitMix64& rng) {
  std::vector<Node> nodes;
  nodes.reserve(2 * n + 2);
  nodes.push_back(Node{NodeKind::kLeaf, kNoNode, NodeId(1), kNoNode, 0});
  nodes.push_back(Node{NodeKind::kLeaf, NodeId(0), kNoNode, kNoNode, 0});
  std::vector<std::uint32_t> leaves{1};
  leaves.reserve(n + 1);

  for (std::size_t k = 0; k < n; ++k) {
    // Every non-root node owns the edge to its parent: ids 1..2k+1.
    const auto c = static_cast<std::uint32_t>(1 + rng.below(2 * k + 1));
    const bool new_leaf_left = rng.below(2) == 0;
    const NodeId parent = nodes[c].parent;
    const auto leaf = static_cast<std::uint32_t>(nodes.size());
    const auto branch = leaf + 1;
    nodes.push_back(Node{NodeKind::kLeaf, NodeId(branch), kNoNode, kNoNode, 0});
    nodes.push_back(Node{NodeKind::kBranching, parent,
                         NodeId(new_leaf_left ? leaf : c), NodeId(new_leaf_left ? c : leaf), 0});
    Node& p = nodes[parent.index()];
    if (p.left == NodeId(c)) {
      p.left = NodeId(branch);
    } else {
      p.right = NodeId(branch);
    }
    nodes[c].parent = NodeId(branch);
    leaves.push_back(leaf);
  }

  std::vector<std::uint32_t> labels(n + 1);
  std::iota(labels.begin(), labels.end(), 1u);
  for (std::size_t i = labels.size(); i > 1; --i) {
    std::swap(labels[i - 1], labels[rng.below(i)]);
  }
  for (std::size_t i = 0; i < leaves.size(); ++i) nodes[leaves[i]].label = labels[i];
  return LabeledBinaryTree::from_nodes(std::move(nodes), NodeId(0));
}

namespace {

// Shapes as preorder token strings: 'b' branching, 'l' leaf.
std::vector<std::string> shapes_of_size(unsigned n) {
  std::vector<std::vector<std::string>> memo(n + 1);
  memo[0] = {"l"};
  for (unsigned m = 1; m <= n; ++m) {
    for (unsigned l = 0; l < m; ++l) {
      for (const auto& left : memo[l]) {
        for (const auto& right : memo[m - 1 - l]) memo[m].push_back("b" + left + right);
      }
    }
  }
  return memo[n];
}

LabeledBinaryTree tree_from_tokens(const std::string& tokens) {
  std::vector<Node> nodes;
  nodes.reserve(tokens.size() + 1);
  nodes.push_back(Node{NodeKind::kLeaf, kNoNode, kNoNode, kNoNode, 0});
  // Open branching nodes still missing a child.
  std::vector<std::uint32_t> open;
  std::uint32_t next_label = 1;
  for (char tok : tokens) {
    const auto id = static_cast<std::uint32_t>(nodes.size());
    NodeId parent(0);
    if (!open.empty()) parent = NodeId(open.back());
    Node n{tok == 'b' ? NodeKind::kBranching : NodeKind::kLeaf, parent, kNoNode, kNoNode,
           tok == 'b' ? 0 : next_label++};
    nodes.push_back(n);
    Node& p = nodes[parent.index()];
    if (!p.left.valid()) {
      p.left = NodeId(id);
    } else {
      p.right = NodeId(id);
      open.pop_back();
    }
    if (tok == 'b') open.push_back(id);
  }
  return LabeledBinaryTree::from_nodes(std::move(nodes), NodeId(0));
}

}  // namespace

Enumeration::Enumeration(unsigned n) : n_(n) {
  if (n > kMaxEnumerationSize) {
    throw Error("enumeration bound: n must be at most " + std::to_string(kMaxEnumerationSize));
  }
  for (const auto& tokens : shapes_of_size(n)) {
    shapes_.push_back(tree_from_tokens(tokens));
    leaf_order_.push_back(shapes_.back().leaves_in_order());
  }
}

Enumeration::Iterator::Iterator(const Enumeration* owner, std::size_t shape)
    : owner_(owner), shape_(shape), end_shape_(owner->shapes_.size()), labels_(owner->n_ + 1) {
  std::iota(labels_.begin(), labels_.end(), 1u);
}

LabeledBinaryTree Enumeration::Iterator::operator*() const {
  LabeledBinaryTree t = owner_->shapes_[shape_];
  TreeEditor ed(t);
  const auto& leaves = owner_->leaf_order_[shape_];
  for (std::size_t i = 0; i < leaves.size(); ++i) ed.node(leaves[i]).label = labels_[i];
  return t;
}

Enumeration::Iterator& Enumeration::Iterator::operator++() {
  if (!std::next_permutation(labels_.begin(), labels_.end())) {
    ++shape_;
    std::iota(labels_.begin(), labels_.end(), 1u);
  }
  return *this;
}

Enumeration enumerate(unsigned n) { return Enumeration(n); }

namespace detail {

std::map<std::string, std::uint64_t> preimage_census_with(
    unsigned n, const std::function<ErasureResult(const LabeledBinaryTree&)>& erase) {
  if (n < 2 || n > kMaxEnumerationSize) throw Error("preimage_census: n must lie in [2, 7]");
  std::map<std::string, std::uint64_t> counts;
  for (const LabeledBinaryTree& t : enumerate(n)) ++counts[canonical_encoding(erase(t).tree)];
  return counts;
}

}  // namespace detail

std::map<std::string, std::uint64_t> preimage_census(unsigned n) {
  return detail::preimage_census_with(n, [](const LabeledBinaryTree& t) { return bot_erase(t); });
}

}  // namespace bot
