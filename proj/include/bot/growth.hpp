#pragma once

// Inverse of one BoT erasure step.
//
// Every tree t of size n-1 has exactly 4n-2 preimages of size n. Each is
// reached by choosing the label j of the erased leaf, relabeling t onto
// {1..n+1} \ {j}, and grafting a leaf labeled j to the left or right of an
// allowed anchor leaf: the leaf labeled 1 when j = 2, otherwise the two leaves
// where the BoT walk restricted to labels < j ends.

#include <cstdint>
#include <string>
#include <vector>

#include "bot/rng.hpp"
#include "bot/tree.hpp"

namespace bot {

struct GrowthOption {
  std::uint32_t j = 0;
  NodeId anchor;                  // valid in t and in relabel_excluding(t, j)
  std::uint32_t anchor_label = 0; // label of the anchor after relabeling
  Side side = Side::kLeft;

  friend bool operator==(const GrowthOption&, const GrowthOption&) = default;
};

// All 4(|t|+1) - 2 options, sorted by (j, anchor_label, side).
std::vector<GrowthOption> growth_options(const LabeledBinaryTree& t);

// Options for one label j in [2, |t|+2]: 2 when j = 2, otherwise 4.
std::vector<GrowthOption> growth_options_for_label(const LabeledBinaryTree& t, std::uint32_t j);

LabeledBinaryTree apply_option(const LabeledBinaryTree& t, const GrowthOption& opt);

// One step of the monotone coupling: a uniform option, applied.
LabeledBinaryTree grow_uniform(const LabeledBinaryTree& t, Seed seed);
LabeledBinaryTree grow_uniform(const LabeledBinaryTree& t, SplitMix64& rng,
                               GrowthOption* chosen = nullptr);

// Replay log entry of a growth chain; n is the size after the step.
struct GrowthRecord {
  std::size_t n = 0;
  std::uint32_t j = 0;
  std::uint32_t anchor_label = 0;
  Side side = Side::kLeft;
};

struct GrowthChain {
  LabeledBinaryTree final_tree;
  std::vector<GrowthRecord> log;
};

GrowthChain grow_chain(const LabeledBinaryTree& start, std::size_t target_size, SplitMix64& rng);

// Re-applies a replay log to its start tree.
LabeledBinaryTree replay(const LabeledBinaryTree& start, const std::vector<GrowthRecord>& log);

std::string to_jsonl(const GrowthRecord& r);

// Brute force: every non-root label j, every non-root leaf, both sides;
// keeps the grafts whose BoT erasure gives back t. Duplicates removed, sorted
// by canonical encoding. Requires |t| = n - 1 and n <= 7.
std::vector<LabeledBinaryTree> preimages_oracle(const LabeledBinaryTree& t, unsigned n);

}  // namespace bot
