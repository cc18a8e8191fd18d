#include "bot/tree.hpp"

#include <algorithm>
#include <string_view>
#include <utility>

namespace bot {

namespace {

constexpr NodeId make_id(std::size_t i) { return NodeId(static_cast<std::uint32_t>(i)); }

void push_children(const LabeledBinaryTree& t, NodeId v, std::vector<NodeId>& stack) {
  if (v == t.root()) {
    if (t.node(v).left.valid()) stack.push_back(t.node(v).left);
  } else if (t.is_branching(v)) {
    stack.push_back(t.right(v));
    stack.push_back(t.left(v));
  }
}

}  // namespace

LabeledBinaryTree LabeledBinaryTree::from_nodes(std::vector<Node> nodes, NodeId root) {
  LabeledBinaryTree t;
  t.nodes_ = std::move(nodes);
  t.root_ = root;
  t.recount();
  return t;
}

void LabeledBinaryTree::recount() {
  branching_count_ = 0;
  leaf_count_ = 0;
  for (const Node& n : nodes_) {
    if (n.kind == NodeKind::kBranching) ++branching_count_;
    if (n.kind == NodeKind::kLeaf) ++leaf_count_;
  }
}

std::vector<NodeId> LabeledBinaryTree::preorder() const {
  std::vector<NodeId> order;
  order.reserve(branching_count_ + leaf_count_);
  std::vector<NodeId> stack{root_};
  while (!stack.empty()) {
    NodeId v = stack.back();
    stack.pop_back();
    order.push_back(v);
    push_children(*this, v, stack);
  }
  return order;
}

std::vector<NodeId> LabeledBinaryTree::leaves_in_order() const {
  std::vector<NodeId> out;
  out.reserve(leaf_count_);
  for (NodeId v : preorder()) {
    if (v != root_ && is_leaf(v)) out.push_back(v);
  }
  return out;
}

std::optional<NodeId> LabeledBinaryTree::leaf_with_label(std::uint32_t label) const {
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    if (nodes_[i].kind == NodeKind::kLeaf && nodes_[i].label == label) return make_id(i);
  }
  return std::nullopt;
}

bool operator==(const LabeledBinaryTree& a, const LabeledBinaryTree& b) {
  if (a.size() != b.size() || a.leaf_count() != b.leaf_count()) return false;
  std::vector<NodeId> sa{a.root()};
  std::vector<NodeId> sb{b.root()};
  while (!sa.empty() && !sb.empty()) {
    NodeId u = sa.back();
    NodeId w = sb.back();
    sa.pop_back();
    sb.pop_back();
    if (a.node(u).kind != b.node(w).kind) return false;
    if (a.is_leaf(u) && a.label(u) != b.label(w)) return false;
    push_children(a, u, sa);
    push_children(b, w, sb);
  }
  return sa.empty() && sb.empty();
}

NodeId TreeEditor::append(const Node& n) {
  tree_.nodes_.push_back(n);
  return make_id(tree_.nodes_.size() - 1);
}

FringeSet::FringeSet(std::vector<NodeId> members) : members_(std::move(members)) {
  std::sort(members_.begin(), members_.end());
}

bool FringeSet::contains(NodeId v) const {
  return std::binary_search(members_.begin(), members_.end(), v);
}

LabeledBinaryTree minimal_tree() {
  std::vector<Node> nodes(2);
  nodes[0] = Node{NodeKind::kLeaf, kNoNode, NodeId(1), kNoNode, 0};
  nodes[1] = Node{NodeKind::kLeaf, NodeId(0), kNoNode, kNoNode, 1};
  return LabeledBinaryTree::from_nodes(std::move(nodes), NodeId(0));
}

std::optional<Violation> validate(const LabeledBinaryTree& t) {
  const auto& nodes = t.nodes();
  auto in_arena = [&](NodeId v) { return v.valid() && v.index() < nodes.size(); };

  const NodeId root = t.root();
  if (!in_arena(root) || nodes[root.index()].kind != NodeKind::kLeaf) {
    return Violation{"root kind", root, "root must be a leaf"};
  }
  const Node& r = nodes[root.index()];
  if (r.label != 0) return Violation{"root label", root, "root must be labeled 0"};
  if (r.parent.valid()) return Violation{"root parent", root, "root has a parent"};
  if (!t.contains(r.left) || r.right.valid()) {
    return Violation{"root degree", root, "root must have exactly one neighbour"};
  }

  std::vector<bool> seen(nodes.size(), false);
  seen[root.index()] = true;
  std::size_t reached = 1;
  std::size_t branching = 0;
  std::vector<NodeId> leaves{root};
  // (node, expected parent)
  std::vector<std::pair<NodeId, NodeId>> stack{{r.left, root}};
  while (!stack.empty()) {
    auto [v, expected_parent] = stack.back();
    stack.pop_back();
    if (!t.contains(v)) {
      return Violation{"child link", expected_parent, "link to a missing node"};
    }
    if (seen[v.index()]) return Violation{"cycle", v, "node reached twice"};
    seen[v.index()] = true;
    ++reached;
    const Node& n = nodes[v.index()];
    if (n.parent != expected_parent) {
      return Violation{"parent link", v, "parent pointer disagrees with child link"};
    }
    if (n.kind == NodeKind::kBranching) {
      ++branching;
      if (!n.left.valid() || !n.right.valid()) {
        return Violation{"degree", v, "branching node needs two children"};
      }
      stack.emplace_back(n.right, v);
      stack.emplace_back(n.left, v);
    } else {
      if (n.left.valid() || n.right.valid()) {
        return Violation{"degree", v, "leaf with children"};
      }
      leaves.push_back(v);
    }
  }

  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (nodes[i].kind != NodeKind::kTombstone && !seen[i]) {
      return Violation{"connectivity", make_id(i), "node not reachable from the root"};
    }
  }
  (void)reached;

  if (leaves.size() != branching + 2) {
    return Violation{"leaf count", root, "leaf count must equal size + 2"};
  }
  std::vector<bool> used(leaves.size(), false);
  for (NodeId v : leaves) {
    const std::uint32_t label = nodes[v.index()].label;
    if (label >= used.size() || used[label]) {
      return Violation{"label bijection", v,
                       "leaf labels must be a bijection onto {0.." +
                           std::to_string(leaves.size() - 1) + "}"};
    }
    used[label] = true;
  }
  return std::nullopt;
}

FringeSet fringe(const LabeledBinaryTree& t, NodeId v) {
  if (!t.contains(v)) throw Error("no such node");
  std::vector<NodeId> members;
  std::vector<NodeId> stack;
  if (v == t.root()) {
    stack.push_back(t.top());
  } else if (t.is_branching(v)) {
    stack.push_back(t.left(v));
    stack.push_back(t.right(v));
  }
  while (!stack.empty()) {
    NodeId u = stack.back();
    stack.pop_back();
    members.push_back(u);
    if (t.is_branching(u)) {
      stack.push_back(t.left(u));
      stack.push_back(t.right(u));
    }
  }
  return FringeSet(std::move(members));
}

LabeledBinaryTree renumber(const LabeledBinaryTree& t) {
  std::vector<NodeId> leaves;
  for (NodeId v : t.preorder()) {
    if (t.is_leaf(v)) leaves.push_back(v);
  }
  std::sort(leaves.begin(), leaves.end(),
            [&](NodeId a, NodeId b) { return t.label(a) < t.label(b); });
  LabeledBinaryTree out = t;
  TreeEditor ed(out);
  for (std::size_t rank = 0; rank < leaves.size(); ++rank) {
    ed.node(leaves[rank]).label = static_cast<std::uint32_t>(rank);
  }
  return out;
}

LabeledBinaryTree cut(const LabeledBinaryTree& t, NodeId v) {
  if (!t.contains(v)) throw Error("no such node");
  if (!t.is_branching(v)) throw Error("cut at leaf");
  LabeledBinaryTree out = t;
  {
    TreeEditor ed(out);
    std::uint32_t min_label = std::numeric_limits<std::uint32_t>::max();
    std::vector<NodeId> stack{t.left(v), t.right(v)};
    while (!stack.empty()) {
      NodeId u = stack.back();
      stack.pop_back();
      Node& n = ed.node(u);
      if (n.kind == NodeKind::kBranching) {
        stack.push_back(n.left);
        stack.push_back(n.right);
      } else {
        min_label = std::min(min_label, n.label);
      }
      n = Node{};
    }
    Node& cv = ed.node(v);
    cv.kind = NodeKind::kLeaf;
    cv.left = kNoNode;
    cv.right = kNoNode;
    cv.label = min_label;
  }
  return renumber(out);
}

namespace detail {

LabeledBinaryTree graft_unchecked(const LabeledBinaryTree& t, NodeId anchor, Side side,
                                  std::uint32_t new_label) {
  LabeledBinaryTree out = t;
  TreeEditor ed(out);
  const NodeId parent = t.parent(anchor);
  const NodeId leaf = ed.append(Node{NodeKind::kLeaf, kNoNode, kNoNode, kNoNode, new_label});
  const NodeId branch = ed.append(Node{NodeKind::kBranching, parent, kNoNode, kNoNode, 0});
  Node& b = ed.node(branch);
  b.left = side == Side::kLeft ? leaf : anchor;
  b.right = side == Side::kLeft ? anchor : leaf;
  ed.node(leaf).parent = branch;
  ed.node(anchor).parent = branch;
  Node& p = ed.node(parent);
  if (p.left == anchor) {
    p.left = branch;
  } else {
    p.right = branch;
  }
  return out;
}

LabeledBinaryTree relabel_onto(const LabeledBinaryTree& t,
                               const std::vector<std::uint32_t>& targets) {
  std::vector<NodeId> leaves = t.leaves_in_order();
  if (leaves.size() != targets.size()) throw Error("relabel: target count mismatch");
  std::sort(leaves.begin(), leaves.end(),
            [&](NodeId a, NodeId b) { return t.label(a) < t.label(b); });
  LabeledBinaryTree out = t;
  TreeEditor ed(out);
  for (std::size_t i = 0; i < leaves.size(); ++i) ed.node(leaves[i]).label = targets[i];
  return out;
}

}  // namespace detail

LabeledBinaryTree graft(const LabeledBinaryTree& t, NodeId anchor, Side side,
                        std::uint32_t new_label) {
  if (!t.contains(anchor) || !t.is_leaf(anchor) || anchor == t.root()) {
    throw Error("graft anchor must be a non-root leaf");
  }
  if (new_label < 2) throw Error("graft label must be at least 2");
  const std::size_t top_label = t.size() + 2;
  if (new_label > top_label) throw Error("graft label out of range");
  std::vector<bool> present(top_label + 1, false);
  for (NodeId v : t.preorder()) {
    if (!t.is_leaf(v)) continue;
    const std::uint32_t l = t.label(v);
    if (l > top_label || l == new_label || present[l]) {
      throw Error("graft expects labels {0.." + std::to_string(top_label) + "} minus " +
                  std::to_string(new_label));
    }
    present[l] = true;
  }
  return detail::graft_unchecked(t, anchor, side, new_label);
}

LabeledBinaryTree relabel_excluding(const LabeledBinaryTree& t, std::uint32_t j) {
  const std::size_t top_label = t.size() + 2;
  if (j < 2 || j > top_label) {
    throw Error("relabel_excluding: j must lie in [2, " + std::to_string(top_label) + "]");
  }
  std::vector<std::uint32_t> targets;
  targets.reserve(top_label - 1);
  for (std::uint32_t l = 1; l <= top_label; ++l) {
    if (l != j) targets.push_back(l);
  }
  return detail::relabel_onto(t, targets);
}

std::string canonical_encoding(const LabeledBinaryTree& t) {
  std::string out = "0:";
  out.reserve(8 * t.leaf_count());
  // Stack entries: a node to print, or one of the literal characters ',' ')'.
  struct Item {
    NodeId node;
    char literal;
  };
  std::vector<Item> stack{{t.top(), 0}};
  while (!stack.empty()) {
    Item it = stack.back();
    stack.pop_back();
    if (it.literal != 0) {
      out.push_back(it.literal);
      continue;
    }
    if (t.is_leaf(it.node)) {
      out += std::to_string(t.label(it.node));
      continue;
    }
    out.push_back('(');
    stack.push_back({kNoNode, ')'});
    stack.push_back({t.right(it.node), 0});
    stack.push_back({kNoNode, ','});
    stack.push_back({t.left(it.node), 0});
  }
  return out;
}

std::uint64_t catalan(unsigned n) {
  std::uint64_t c = 1;
  for (unsigned k = 0; k < n; ++k) c = c * 2 * (2 * k + 1) / (k + 2);
  return c;
}

std::uint64_t labeled_tree_count(unsigned n) {
  std::uint64_t f = 1;
  for (unsigned k = 2; k <= n + 1; ++k) f *= k;
  return catalan(n) * f;
}

}  // namespace bot
