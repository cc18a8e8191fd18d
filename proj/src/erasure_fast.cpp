// Incremental erasure chain.
//
// Renumbering after a cut is an order isomorphism on labels, so the walk can
// compare original labels throughout. Each node caches the (up to) three
// smallest original labels of its subtree; after a cut only the ancestors on
// the walk path need repair. Current-step labels for the report are recovered
// as ranks among the live labels with a Fenwick tree.

#include <algorithm>
#include <array>

#include "bot/erasure.hpp"

namespace bot {

namespace {

constexpr std::uint32_t kEmpty = std::numeric_limits<std::uint32_t>::max();

using Min3 = std::array<std::uint32_t, 3>;

Min3 merge(const Min3& a, const Min3& b) {
  Min3 out{};
  std::size_t i = 0;
  std::size_t j = 0;
  for (auto& slot : out) {
    const std::uint32_t x = i < 3 ? a[i] : kEmpty;
    const std::uint32_t y = j < 3 ? b[j] : kEmpty;
    if (x <= y) {
      slot = x;
      ++i;
    } else {
      slot = y;
      ++j;
    }
  }
  return out;
}

bool holds(const Min3& m, std::uint32_t label) {
  return m[0] == label || m[1] == label || m[2] == label;
}

class Fenwick {
 public:
  explicit Fenwick(std::size_t n) : tree_(n + 1, 0) {}
  void add(std::size_t i, int delta) {
    for (++i; i < tree_.size(); i += i & (~i + 1)) tree_[i] += delta;
  }
  // Number of marked positions <= i.
  [[nodiscard]] int prefix(std::size_t i) const {
    int s = 0;
    for (++i; i > 0; i -= i & (~i + 1)) s += tree_[i];
    return s;
  }

 private:
  std::vector<int> tree_;
};

}  // namespace

ErasureChain erasure_chain_fast(const LabeledBinaryTree& t) {
  if (auto bad = validate(t)) {
    throw Error("erasure_chain_fast: invalid tree (" + bad->invariant + ")");
  }
  const std::size_t n = t.size();
  const std::size_t slots = t.arena_size();

  ErasureChain chain;
  chain.initial_size = n;
  chain.steps.reserve(n);
  chain.erasure_time.assign(slots, 0);
  chain.leaf_erasure_time.assign(slots, 0);

  std::vector<std::uint32_t> left(slots, NodeId::kNone);
  std::vector<std::uint32_t> right(slots, NodeId::kNone);
  std::vector<std::uint8_t> leaf(slots, 0);
  std::vector<Min3> min3(slots, Min3{kEmpty, kEmpty, kEmpty});

  const std::vector<NodeId> order = t.preorder();
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const std::size_t v = it->index();
    if (t.is_leaf(*it)) {
      leaf[v] = 1;
      min3[v] = {t.label(*it), kEmpty, kEmpty};
    } else {
      left[v] = t.left(*it).value;
      right[v] = t.right(*it).value;
      min3[v] = merge(min3[left[v]], min3[right[v]]);
    }
  }

  Fenwick live(n + 2);
  for (std::size_t l = 0; l < n + 2; ++l) live.add(l, 1);

  const std::uint32_t top = t.top().value;
  std::vector<std::uint32_t> path;
  for (std::uint32_t k = 1; k <= n; ++k) {
    path.clear();
    std::uint32_t v = top;
    while (!(leaf[left[v]] && leaf[right[v]])) {
      path.push_back(v);
      const Min3& m = min3[v];
      const Min3& ml = min3[left[v]];
      const int in_left = int(holds(ml, m[0])) + int(holds(ml, m[1])) + int(holds(ml, m[2]));
      v = in_left >= 2 ? left[v] : right[v];
    }

    const std::uint32_t a = min3[left[v]][0];
    const std::uint32_t b = min3[right[v]][0];
    const std::uint32_t lo = std::min(a, b);
    const std::uint32_t hi = std::max(a, b);
    ErasureStep step;
    step.cut_node = NodeId(v);
    step.inherited_label = static_cast<std::uint32_t>(live.prefix(lo) - 1);
    step.bot_label = static_cast<std::uint32_t>(live.prefix(hi) - 1);
    step.step_index = k;
    chain.steps.push_back(step);
    chain.erasure_time[v] = k;
    live.add(hi, -1);

    leaf[v] = 1;
    min3[v] = {lo, kEmpty, kEmpty};
    for (auto it = path.rbegin(); it != path.rend(); ++it) {
      const Min3 repaired = merge(min3[left[*it]], min3[right[*it]]);
      if (repaired == min3[*it]) break;
      min3[*it] = repaired;
    }
  }

  const auto final_time = static_cast<std::uint32_t>(n + 1);
  for (NodeId u : order) {
    if (!t.is_leaf(u)) continue;
    const NodeId p = t.parent(u);
    chain.leaf_erasure_time[u.index()] =
        (p.valid() && p != t.root()) ? chain.erasure_time[p.index()] : final_time;
  }
  return chain;
}

}  // namespace bot
