#include "bot/span.hpp"

#include <algorithm>

#include <nlohmann/json.hpp>

namespace bot {

SpanTree::SpanTree(const LabeledBinaryTree& host, std::uint32_t ell) : host_(&host), ell_(ell) {
  if (ell < 2 || ell > host.size() + 1) {
    throw Error("span: ell must lie in [2, " + std::to_string(host.size() + 1) + "]");
  }
  const std::vector<NodeId> order = host.preorder();
  std::vector<std::uint32_t> marked(host.arena_size(), 0);
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const NodeId v = *it;
    if (host.is_leaf(v)) {
      marked[v.index()] = host.label(v) <= ell ? 1 : 0;
    } else if (v != host.root()) {
      marked[v.index()] = marked[host.left(v).index()] + marked[host.right(v).index()];
    }
  }

  kinds_.assign(host.arena_size(), SpanKind::kOutside);
  for (NodeId v : order) {
    if (marked[v.index()] == 0) continue;
    if (host.is_leaf(v)) {
      kinds_[v.index()] = SpanKind::kLeaf;
      ++leaf_count_;
    } else if (marked[host.left(v).index()] > 0 && marked[host.right(v).index()] > 0) {
      kinds_[v.index()] = SpanKind::kBranching;
      branch_list_.push_back(v);
    } else {
      kinds_[v.index()] = SpanKind::kUnary;
    }
  }
  if (leaf_count_ != ell + 1 || kinds_[host.root().index()] != SpanKind::kLeaf) {
    throw Error("span: host must carry exactly one leaf per label 0.." + std::to_string(ell));
  }
}

std::vector<NodeId> SpanTree::nodes() const {
  std::vector<NodeId> out;
  for (NodeId v : host_->preorder()) {
    if (contains(v)) out.push_back(v);
  }
  return out;
}

SpanTree::Contraction SpanTree::contract() const {
  const LabeledBinaryTree& h = *host_;
  std::vector<Node> nodes;
  std::vector<NodeId> to_host;
  nodes.reserve(2 * ell_);
  to_host.reserve(2 * ell_);

  nodes.push_back(Node{NodeKind::kLeaf, kNoNode, kNoNode, kNoNode, 0});
  to_host.push_back(h.root());

  struct Pending {
    NodeId host_node;
    std::uint32_t parent;  // contracted index
    bool left_slot;
  };
  std::vector<Pending> stack{{h.top(), 0, true}};
  while (!stack.empty()) {
    auto [u, parent, left_slot] = stack.back();
    stack.pop_back();
    while (kind(u) == SpanKind::kUnary) u = contains(h.left(u)) ? h.left(u) : h.right(u);

    const auto id = static_cast<std::uint32_t>(nodes.size());
    Node n{kind(u) == SpanKind::kLeaf ? NodeKind::kLeaf : NodeKind::kBranching, NodeId(parent),
           kNoNode, kNoNode, kind(u) == SpanKind::kLeaf ? h.label(u) : 0};
    nodes.push_back(n);
    to_host.push_back(u);
    if (left_slot) {
      nodes[parent].left = NodeId(id);
    } else {
      nodes[parent].right = NodeId(id);
    }
    if (kind(u) == SpanKind::kBranching) {
      stack.push_back({h.right(u), id, false});
      stack.push_back({h.left(u), id, true});
    }
  }
  return {LabeledBinaryTree::from_nodes(std::move(nodes), NodeId(0)), std::move(to_host)};
}

SpanTree span(const LabeledBinaryTree& t, std::uint32_t ell) { return SpanTree(t, ell); }

std::vector<NodeId> span_erasure_order(const SpanTree& s) {
  const auto contraction = s.contract();
  const ErasureChain chain = erasure_chain_fast(contraction.tree);
  std::vector<NodeId> order;
  order.reserve(chain.steps.size());
  for (const auto& step : chain.steps) order.push_back(contraction.to_host[step.cut_node.index()]);
  return order;
}

std::string to_json(const Counterexample& c) {
  nlohmann::json j{{"ell", c.ell}, {"i", c.i}, {"node", c.node.value}, {"reason", c.reason}};
  return j.dump();
}

namespace {

// Entry/exit times of a preorder walk: w is a strict descendant of v iff
// enter[v] < enter[w] && enter[w] < leave[v].
struct Intervals {
  std::vector<std::uint32_t> enter;
  std::vector<std::uint32_t> leave;

  explicit Intervals(const LabeledBinaryTree& t)
      : enter(t.arena_size(), 0), leave(t.arena_size(), 0) {
    const auto order = t.preorder();
    std::vector<std::uint32_t> subtree(t.arena_size(), 1);
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      if (t.is_branching(*it)) {
        subtree[it->index()] += subtree[t.left(*it).index()] + subtree[t.right(*it).index()];
      }
    }
    for (std::uint32_t i = 0; i < order.size(); ++i) {
      enter[order[i].index()] = i;
      leave[order[i].index()] = i + subtree[order[i].index()];
    }
  }

  [[nodiscard]] bool in_fringe(NodeId w, NodeId v) const {
    return enter[v.index()] < enter[w.index()] && enter[w.index()] < leave[v.index()];
  }
};

}  // namespace

std::optional<Counterexample> check_compatibility(const LabeledBinaryTree& t,
                                                  std::uint32_t ell) {
  return check_compatibility(t, erasure_chain(t), ell);
}

std::optional<Counterexample> check_compatibility(const LabeledBinaryTree& t,
                                                  const ErasureChain& host_chain,
                                                  std::uint32_t ell) {
  if (ell < 2 || ell > t.size()) {
    throw Error("check_compatibility: ell must lie in [2, " + std::to_string(t.size()) + "]");
  }
  const SpanTree s(t, ell);
  const std::vector<NodeId> order = span_erasure_order(s);
  const auto time = [&](NodeId v) { return host_chain.erasure_time[v.index()]; };

  for (std::uint32_t i = 1; i < order.size(); ++i) {
    if (time(order[i - 1]) > time(order[i])) {
      return Counterexample{ell, i, order[i - 1], "order"};
    }
  }

  const Intervals iv(t);
  for (std::uint32_t i = 1; i < order.size(); ++i) {
    const NodeId next = order[i];
    for (std::uint32_t k = time(order[i - 1]) + 1; k < time(next); ++k) {
      const NodeId b = host_chain.steps[k - 1].cut_node;
      if (!iv.in_fringe(b, next)) {
        return Counterexample{ell, i, b, "nesting: outside fringe of b_{i+1}"};
      }
      for (std::uint32_t j = 0; j < i; ++j) {
        if (iv.in_fringe(b, order[j])) {
          return Counterexample{ell, i, b, "nesting: inside fringe of an earlier b_j"};
        }
      }
    }
  }
  return std::nullopt;
}

std::optional<Fraction> ReverseTimeTable::at(NodeId v) const {
  for (const auto& e : entries_) {
    if (e.node == v) return e.theta;
  }
  return std::nullopt;
}

ReverseTimeTable reverse_time(const LabeledBinaryTree& t, std::uint32_t ell) {
  const SpanTree s(t, ell);
  const std::vector<NodeId> order = span_erasure_order(s);
  std::vector<bool> erased(t.arena_size(), false);
  std::uint64_t mass = 0;
  const std::uint64_t total = t.size() + 1;
  std::vector<ReverseTimeTable::Entry> entries;
  entries.reserve(order.size());
  std::vector<NodeId> stack;
  for (NodeId b : order) {
    stack.assign(1, b);
    while (!stack.empty()) {
      const NodeId u = stack.back();
      stack.pop_back();
      if (erased[u.index()] || !t.is_branching(u)) continue;
      erased[u.index()] = true;
      ++mass;
      stack.push_back(t.left(u));
      stack.push_back(t.right(u));
    }
    entries.push_back({b, Fraction{mass, total}});
  }
  return ReverseTimeTable(std::move(entries));
}

}  // namespace bot
