#pragma once

// Labeled binary plane trees rooted at a leaf.
//
// A tree of size n has n branching nodes (one parent, two ordered children)
// and n + 2 leaves. The root is a leaf labeled 0 whose single neighbour is
// stored in its `left` slot. Leaf labels form a bijection onto {0, ..., n+1}.
//
// Nodes live in an arena addressed by NodeId. Operations that remove nodes
// tombstone their slots instead of compacting, so every surviving node keeps
// its id across cuts. Grafts append new slots.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace bot {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct NodeId {
  static constexpr std::uint32_t kNone = std::numeric_limits<std::uint32_t>::max();

  std::uint32_t value = kNone;

  constexpr NodeId() = default;
  constexpr explicit NodeId(std::uint32_t v) : value(v) {}

  [[nodiscard]] constexpr bool valid() const { return value != kNone; }
  [[nodiscard]] constexpr std::size_t index() const { return value; }

  friend constexpr auto operator<=>(NodeId, NodeId) = default;
};

inline constexpr NodeId kNoNode{};

enum class NodeKind : std::uint8_t { kLeaf, kBranching, kTombstone };

enum class Side : std::uint8_t { kLeft, kRight };

struct Node {
  NodeKind kind = NodeKind::kTombstone;
  NodeId parent;
  NodeId left;   // root leaf: its only child
  NodeId right;
  std::uint32_t label = 0;  // meaningful for leaves only
};

class LabeledBinaryTree {
 public:
  // Builds a tree from raw records without checking any invariant. Use
  // validate() to check the result.
  static LabeledBinaryTree from_nodes(std::vector<Node> nodes, NodeId root);

  [[nodiscard]] NodeId root() const { return root_; }
  // The node adjacent to the root leaf.
  [[nodiscard]] NodeId top() const { return node(root_).left; }

  [[nodiscard]] std::size_t size() const { return branching_count_; }
  [[nodiscard]] std::size_t leaf_count() const { return leaf_count_; }
  [[nodiscard]] std::size_t arena_size() const { return nodes_.size(); }

  [[nodiscard]] bool contains(NodeId v) const {
    return v.valid() && v.index() < nodes_.size() &&
           nodes_[v.index()].kind != NodeKind::kTombstone;
  }
  [[nodiscard]] const Node& node(NodeId v) const { return nodes_[v.index()]; }
  [[nodiscard]] const std::vector<Node>& nodes() const { return nodes_; }

  [[nodiscard]] bool is_leaf(NodeId v) const { return node(v).kind == NodeKind::kLeaf; }
  [[nodiscard]] bool is_branching(NodeId v) const {
    return node(v).kind == NodeKind::kBranching;
  }
  [[nodiscard]] NodeId parent(NodeId v) const { return node(v).parent; }
  [[nodiscard]] NodeId left(NodeId v) const { return node(v).left; }
  [[nodiscard]] NodeId right(NodeId v) const { return node(v).right; }
  [[nodiscard]] std::uint32_t label(NodeId v) const { return node(v).label; }

  // Live nodes reachable from the root, parents before children, left
  // subtree before right subtree.
  [[nodiscard]] std::vector<NodeId> preorder() const;

  // Non-root leaves in plane (left-to-right) order.
  [[nodiscard]] std::vector<NodeId> leaves_in_order() const;

  [[nodiscard]] std::optional<NodeId> leaf_with_label(std::uint32_t label) const;

  // Same shape and same labels; NodeIds are not compared.
  friend bool operator==(const LabeledBinaryTree& a, const LabeledBinaryTree& b);

 private:
  friend class TreeEditor;

  LabeledBinaryTree() = default;
  void recount();

  std::vector<Node> nodes_;
  NodeId root_;
  std::size_t branching_count_ = 0;
  std::size_t leaf_count_ = 0;
};

// Mutable access for the library's own constructors. Keeps counts in sync.
class TreeEditor {
 public:
  explicit TreeEditor(LabeledBinaryTree& tree) : tree_(tree) {}
  ~TreeEditor() { tree_.recount(); }
  TreeEditor(const TreeEditor&) = delete;
  TreeEditor& operator=(const TreeEditor&) = delete;

  Node& node(NodeId v) { return tree_.nodes_[v.index()]; }
  NodeId append(const Node& n);

 private:
  LabeledBinaryTree& tree_;
};

struct Violation {
  std::string invariant;  // e.g. "root label", "label bijection"
  NodeId node;
  std::string detail;
};

class FringeSet {
 public:
  FringeSet() = default;
  explicit FringeSet(std::vector<NodeId> members);

  [[nodiscard]] bool contains(NodeId v) const;
  [[nodiscard]] bool empty() const { return members_.empty(); }
  [[nodiscard]] std::size_t size() const { return members_.size(); }
  // Sorted by NodeId.
  [[nodiscard]] const std::vector<NodeId>& members() const { return members_; }

 private:
  std::vector<NodeId> members_;
};

// The size-0 tree: root leaf 0 joined to leaf 1.
LabeledBinaryTree minimal_tree();

// Returns the first violated invariant, or nullopt when the tree is valid.
std::optional<Violation> validate(const LabeledBinaryTree& t);

// Strict descendants of v.
FringeSet fringe(const LabeledBinaryTree& t, NodeId v);

// Cut(t; v): drops the strict descendants of v, turns v into a leaf carrying
// the minimal label of its former fringe, then renumbers all labels
// increasingly. Surviving nodes keep their NodeIds.
LabeledBinaryTree cut(const LabeledBinaryTree& t, NodeId v);

// Replaces the edge above `anchor` by a new branching node whose children are
// a new leaf labeled `new_label` and `anchor`; the new leaf goes on the left
// iff side == kLeft. Expects the label set of t to be {0..|t|+2} \ {new_label}.
LabeledBinaryTree graft(const LabeledBinaryTree& t, NodeId anchor, Side side,
                        std::uint32_t new_label);

// Order-preserving relabeling of non-root leaves onto {1..|t|+2} \ {j}.
LabeledBinaryTree relabel_excluding(const LabeledBinaryTree& t, std::uint32_t j);

// Order-preserving renumbering of all leaves onto {0..leaves-1}.
LabeledBinaryTree renumber(const LabeledBinaryTree& t);

// tree := "0:" subtree ; subtree := label | "(" subtree "," subtree ")"
std::string canonical_encoding(const LabeledBinaryTree& t);

std::uint64_t catalan(unsigned n);
std::uint64_t labeled_tree_count(unsigned n);  // catalan(n) * (n+1)!

namespace detail {

// Graft without the label-set and new_label >= 2 checks. Used by brute-force
// oracles that graft blindly.
LabeledBinaryTree graft_unchecked(const LabeledBinaryTree& t, NodeId anchor, Side side,
                                  std::uint32_t new_label);

// Relabels non-root leaves, in increasing order of their current labels, with
// the given increasing sequence of target labels.
LabeledBinaryTree relabel_onto(const LabeledBinaryTree& t,
                               const std::vector<std::uint32_t>& targets);

}  // namespace detail

}  // namespace bot

template <>
struct std::hash<bot::NodeId> {
  std::size_t operator()(bot::NodeId v) const noexcept { return v.value; }
};
