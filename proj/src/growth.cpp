#include "bot/growth.hpp"

#include <algorithm>
#include <map>

#include <nlohmann/json.hpp>

#include "bot/erasure.hpp"
#include "bot/span.hpp"

namespace bot {

std::vector<GrowthOption> growth_options_for_label(const LabeledBinaryTree& t, std::uint32_t j) {
  const LabeledBinaryTree r = relabel_excluding(t, j);
  std::vector<NodeId> anchors;
  if (j == 2) {
    anchors.push_back(*r.leaf_with_label(1));
  } else {
    // Labels >= j never reach the three minimal labels of an active node
    // that still holds three labels < j, so the walk runs on the span of
    // {0..j-1} and stops at the cherry of that span.
    const SpanTree s(r, j - 1);
    const auto contraction = s.contract();
    const NodeId v = bot_select(contraction.tree);
    anchors.push_back(contraction.to_host[contraction.tree.left(v).index()]);
    anchors.push_back(contraction.to_host[contraction.tree.right(v).index()]);
    std::sort(anchors.begin(), anchors.end(),
              [&](NodeId a, NodeId b) { return r.label(a) < r.label(b); });
  }
  std::vector<GrowthOption> out;
  out.reserve(2 * anchors.size());
  for (NodeId a : anchors) {
    out.push_back({j, a, r.label(a), Side::kLeft});
    out.push_back({j, a, r.label(a), Side::kRight});
  }
  return out;
}

std::vector<GrowthOption> growth_options(const LabeledBinaryTree& t) {
  std::vector<GrowthOption> out;
  out.reserve(4 * (t.size() + 1) - 2);
  for (std::uint32_t j = 2; j <= t.size() + 2; ++j) {
    auto part = growth_options_for_label(t, j);
    out.insert(out.end(), part.begin(), part.end());
  }
  return out;
}

LabeledBinaryTree apply_option(const LabeledBinaryTree& t, const GrowthOption& opt) {
  const LabeledBinaryTree r = relabel_excluding(t, opt.j);
  if (!r.contains(opt.anchor) || !r.is_leaf(opt.anchor) || opt.anchor == r.root() ||
      r.label(opt.anchor) != opt.anchor_label) {
    throw Error("stale growth option: anchor is not the expected leaf");
  }
  return graft(r, opt.anchor, opt.side, opt.j);
}

LabeledBinaryTree grow_uniform(const LabeledBinaryTree& t, Seed seed) {
  SplitMix64 rng(seed);
  return grow_uniform(t, rng);
}

LabeledBinaryTree grow_uniform(const LabeledBinaryTree& t, SplitMix64& rng,
                               GrowthOption* chosen) {
  // Index k into the sorted option list: 0,1 are the two j = 2 options, then
  // four per j >= 3.
  const std::uint64_t total = 4 * (t.size() + 1) - 2;
  const std::uint64_t k = rng.below(total);
  std::uint32_t j = 2;
  std::uint64_t within = k;
  if (k >= 2) {
    j = static_cast<std::uint32_t>(3 + (k - 2) / 4);
    within = (k - 2) % 4;
  }
  const GrowthOption opt = growth_options_for_label(t, j)[within];
  if (chosen != nullptr) *chosen = opt;
  return apply_option(t, opt);
}

GrowthChain grow_chain(const LabeledBinaryTree& start, std::size_t target_size,
                       SplitMix64& rng) {
  GrowthChain chain{start, {}};
  while (chain.final_tree.size() < target_size) {
    GrowthOption opt;
    chain.final_tree = grow_uniform(chain.final_tree, rng, &opt);
    chain.log.push_back({chain.final_tree.size(), opt.j, opt.anchor_label, opt.side});
  }
  return chain;
}

LabeledBinaryTree replay(const LabeledBinaryTree& start, const std::vector<GrowthRecord>& log) {
  LabeledBinaryTree t = start;
  for (const GrowthRecord& rec : log) {
    const auto options = growth_options_for_label(t, rec.j);
    const auto it = std::find_if(options.begin(), options.end(), [&](const GrowthOption& o) {
      return o.anchor_label == rec.anchor_label && o.side == rec.side;
    });
    if (it == options.end()) throw Error("replay: no option matches log entry");
    t = apply_option(t, *it);
    if (t.size() != rec.n) throw Error("replay: size mismatch");
  }
  return t;
}

std::string to_jsonl(const GrowthRecord& r) {
  nlohmann::ordered_json j{{"n", r.n},
                           {"j", r.j},
                           {"anchor_label", r.anchor_label},
                           {"side", r.side == Side::kLeft ? "left" : "right"}};
  return j.dump();
}

std::vector<LabeledBinaryTree> preimages_oracle(const LabeledBinaryTree& t, unsigned n) {
  if (n < 1 || n > 7 || t.size() + 1 != n) {
    throw Error("preimages_oracle: need |t| = n - 1 and n <= 7");
  }
  std::map<std::string, LabeledBinaryTree> found;
  for (std::uint32_t j = 1; j <= n + 1; ++j) {
    std::vector<std::uint32_t> targets;
    for (std::uint32_t l = 1; l <= n + 1; ++l) {
      if (l != j) targets.push_back(l);
    }
    const LabeledBinaryTree r = detail::relabel_onto(t, targets);
    for (NodeId anchor : r.leaves_in_order()) {
      for (Side side : {Side::kLeft, Side::kRight}) {
        LabeledBinaryTree candidate = detail::graft_unchecked(r, anchor, side, j);
        if (bot_erase(candidate).tree == t) {
          found.emplace(canonical_encoding(candidate), std::move(candidate));
        }
      }
    }
  }
  std::vector<LabeledBinaryTree> out;
  out.reserve(found.size());
  for (auto& [key, tree] : found) out.push_back(std::move(tree));
  return out;
}

}  // namespace bot
