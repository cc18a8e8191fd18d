#include "bot/erasure.hpp"

#include <algorithm>
#include <cassert>
#include <utility>

namespace bot {

namespace {

struct SideLabel {
  std::uint32_t label;
  bool in_left;
};

// How many of the three smallest labels in fringe(v) sit under left(v).
int majority_count_left(const LabeledBinaryTree& t, NodeId v) {
  std::vector<SideLabel> labels;
  for (int side = 0; side < 2; ++side) {
    std::vector<NodeId> stack{side == 0 ? t.left(v) : t.right(v)};
    while (!stack.empty()) {
      NodeId u = stack.back();
      stack.pop_back();
      if (t.is_leaf(u)) {
        labels.push_back({t.label(u), side == 0});
      } else {
        stack.push_back(t.left(u));
        stack.push_back(t.right(u));
      }
    }
  }
  assert(labels.size() >= 3);
  std::partial_sort(labels.begin(), labels.begin() + 3, labels.end(),
                    [](const SideLabel& a, const SideLabel& b) { return a.label < b.label; });
  return static_cast<int>(labels[0].in_left) + labels[1].in_left + labels[2].in_left;
}

}  // namespace

std::optional<std::uint32_t> ErasureChain::erasure_time_of(NodeId v) const {
  if (v.index() >= erasure_time.size() || erasure_time[v.index()] == 0) return std::nullopt;
  return erasure_time[v.index()];
}

std::optional<std::uint32_t> ErasureChain::leaf_erasure_time_of(NodeId v) const {
  if (v.index() >= leaf_erasure_time.size() || leaf_erasure_time[v.index()] == 0) {
    return std::nullopt;
  }
  return leaf_erasure_time[v.index()];
}

std::vector<NodeId> ErasureChain::order() const {
  std::vector<NodeId> out;
  out.reserve(steps.size());
  for (const auto& s : steps) out.push_back(s.cut_node);
  return out;
}

bool same_trajectory(const ErasureChain& a, const ErasureChain& b) {
  return a.initial_size == b.initial_size && a.steps == b.steps &&
         a.erasure_time == b.erasure_time && a.leaf_erasure_time == b.leaf_erasure_time;
}

namespace detail {

NodeId bot_select_with_rule(const LabeledBinaryTree& t, WalkRule rule) {
  NodeId v = t.top();
  if (!t.is_branching(v)) throw Error("no branching node");
  while (!(t.is_leaf(t.left(v)) && t.is_leaf(t.right(v)))) {
    const int in_left = majority_count_left(t, v);
    const bool go_left = rule == WalkRule::kMajority ? in_left >= 2 : in_left < 2;
    const NodeId next = go_left ? t.left(v) : t.right(v);
    if (!t.is_branching(next)) {
      // Only reachable under kMinority.
      break;
    }
    v = next;
  }
  return v;
}

ErasureResult bot_erase_with_rule(const LabeledBinaryTree& t, WalkRule rule) {
  const NodeId v = bot_select_with_rule(t, rule);
  std::uint32_t lo = std::numeric_limits<std::uint32_t>::max();
  std::uint32_t hi = 0;
  const FringeSet below = fringe(t, v);
  for (NodeId u : below.members()) {
    if (!t.is_leaf(u)) continue;
    lo = std::min(lo, t.label(u));
    hi = std::max(hi, t.label(u));
  }
  ErasureStep step{v, hi, lo, 1};
  return {cut(t, v), step};
}

}  // namespace detail

NodeId bot_select(const LabeledBinaryTree& t) {
  return detail::bot_select_with_rule(t, detail::WalkRule::kMajority);
}

ErasureResult bot_erase(const LabeledBinaryTree& t) {
  const NodeId v = bot_select(t);
  const std::uint32_t a = t.label(t.left(v));
  const std::uint32_t b = t.label(t.right(v));
  ErasureStep step{v, std::max(a, b), std::min(a, b), 1};
  return {cut(t, v), step};
}

ErasureChain erasure_chain(const LabeledBinaryTree& t, bool keep_snapshots) {
  if (auto bad = validate(t)) throw Error("erasure_chain: invalid tree (" + bad->invariant + ")");
  const std::size_t n = t.size();
  ErasureChain chain;
  chain.initial_size = n;
  chain.steps.reserve(n);
  chain.erasure_time.assign(t.arena_size(), 0);
  chain.leaf_erasure_time.assign(t.arena_size(), 0);
  if (keep_snapshots) chain.snapshots.push_back(canonical_encoding(t));

  LabeledBinaryTree current = t;
  for (std::uint32_t k = 1; k <= n; ++k) {
    auto [next, step] = bot_erase(current);
    step.step_index = k;
    chain.erasure_time[step.cut_node.index()] = k;
    chain.steps.push_back(step);
    current = std::move(next);
    if (keep_snapshots) chain.snapshots.push_back(canonical_encoding(current));
  }

  // A node disappears exactly when its parent is cut; nodes are never
  // re-parented by cuts.
  const auto final_time = static_cast<std::uint32_t>(n + 1);
  for (NodeId v : t.preorder()) {
    if (!t.is_leaf(v)) continue;
    const NodeId p = t.parent(v);
    chain.leaf_erasure_time[v.index()] =
        (p.valid() && p != t.root()) ? chain.erasure_time[p.index()] : final_time;
  }
  return chain;
}

}  // namespace bot
