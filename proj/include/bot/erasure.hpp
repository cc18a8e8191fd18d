#pragma once

// Best-of-three (BoT) erasure and the nested erasure chain.
//
// The BoT walk starts at the branching node adjacent to the root leaf. At an
// active node whose fringe still holds a branching node, it moves to the
// child that contains at least two of the three smallest labels of the
// fringe. It halts at a node whose two children are leaves; cutting there
// removes one leaf (the larger label, the "BoT leaf").

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bot/tree.hpp"

namespace bot {

struct ErasureStep {
  NodeId cut_node;                  // in the id space of the chain's input tree
  std::uint32_t bot_label = 0;      // larger cherry label, labeling current at the step
  std::uint32_t inherited_label = 0;
  std::uint32_t step_index = 0;     // k in 1..n

  friend bool operator==(const ErasureStep&, const ErasureStep&) = default;
};

struct ErasureChain {
  std::size_t initial_size = 0;
  std::vector<ErasureStep> steps;
  // Canonical encodings of T_n, T_{n-1}, ..., T_0 when requested.
  std::vector<std::string> snapshots;
  // Indexed by NodeId of the input tree. erasure_time holds the step at which
  // a branching node was cut; leaf_erasure_time the step at which a leaf was
  // removed (n + 1 for leaves that survive to T_0). 0 means "not applicable".
  std::vector<std::uint32_t> erasure_time;
  std::vector<std::uint32_t> leaf_erasure_time;

  [[nodiscard]] std::optional<std::uint32_t> erasure_time_of(NodeId v) const;
  [[nodiscard]] std::optional<std::uint32_t> leaf_erasure_time_of(NodeId v) const;

  // Cut nodes in order b_1, ..., b_n.
  [[nodiscard]] std::vector<NodeId> order() const;
};

// Same steps and same time tables; snapshots are ignored.
bool same_trajectory(const ErasureChain& a, const ErasureChain& b);

NodeId bot_select(const LabeledBinaryTree& t);

struct ErasureResult {
  LabeledBinaryTree tree;
  ErasureStep step;
};

ErasureResult bot_erase(const LabeledBinaryTree& t);

// Reference implementation: iterates bot_erase, materializing every tree.
ErasureChain erasure_chain(const LabeledBinaryTree& t, bool keep_snapshots = false);

// Same result as erasure_chain without snapshots. Works on original labels
// throughout and caches, per node, the three smallest labels of its fringe.
ErasureChain erasure_chain_fast(const LabeledBinaryTree& t);

namespace detail {

enum class WalkRule { kMajority, kMinority };

// bot_select with a selectable descent rule. kMinority exists for mutation
// tests of the verification suite.
NodeId bot_select_with_rule(const LabeledBinaryTree& t, WalkRule rule);
ErasureResult bot_erase_with_rule(const LabeledBinaryTree& t, WalkRule rule);

}  // namespace detail

}  // namespace bot
