#include <gtest/gtest.h>

#include <nlohmann/json.hpp>

#include "bot/io.hpp"
#include "bot/sampling.hpp"
#include "bot/span.hpp"
#include "support.hpp"

using namespace bot;

namespace {

const NodeId kB1{1};
const NodeId kB2{3};

std::vector<int> as_ints(const std::vector<NodeId>& ids) {
  std::vector<int> out;
  for (NodeId v : ids) out.push_back(static_cast<int>(v.value));
  return out;
}

TEST(Span, WAtTwo) {
  const auto w = parse_tree("0:(3,(1,2))");
  const SpanTree s(w, 2);
  EXPECT_EQ(s.kind(kB1), SpanKind::kUnary);
  EXPECT_EQ(s.kind(kB2), SpanKind::kBranching);
  EXPECT_EQ(s.kind(NodeId(2)), SpanKind::kOutside);  // leaf 3
  EXPECT_EQ(s.kind(NodeId(0)), SpanKind::kLeaf);
  EXPECT_EQ(s.branch_list(), std::vector<NodeId>{kB2});
  EXPECT_EQ(s.leaf_count(), 3u);
  EXPECT_EQ(span_erasure_order(s), std::vector<NodeId>{kB2});

  const auto c = s.contract();
  EXPECT_EQ(canonical_encoding(c.tree), "0:(1,2)");
  EXPECT_EQ(c.to_host[c.tree.top().index()], kB2);
}

TEST(Span, FullSpanIsTheHost) {
  const auto t = sample_uniform(30, Seed{4, 1});
  const SpanTree s(t, 31);
  EXPECT_EQ(s.branch_list().size(), 30u);
  EXPECT_EQ(s.contract().tree, t);
  EXPECT_EQ(span_erasure_order(s), erasure_chain(t).order());
}

TEST(Span, BranchCountIsEllMinusOne) {
  const auto t = sample_uniform(50, Seed{4, 2});
  for (std::uint32_t ell = 2; ell <= 51; ++ell) {
    const SpanTree s(t, ell);
    EXPECT_EQ(s.branch_list().size(), ell - 1);
    EXPECT_EQ(s.leaf_count(), ell + 1);
    EXPECT_FALSE(validate(s.contract().tree).has_value());
  }
}

TEST(Span, Errors) {
  const auto w = parse_tree("0:(3,(1,2))");
  EXPECT_THROW(SpanTree(w, 1), Error);
  EXPECT_THROW(SpanTree(w, 4), Error);
  EXPECT_THROW(check_compatibility(w, 3), Error);
  EXPECT_THROW(check_compatibility(w, 1), Error);
}

TEST(Span, OrderMatchesReferenceModel) {
  SplitMix64 rng(Seed{31, 0});
  for (int i = 0; i < 150; ++i) {
    const auto t = parse_tree(canonical_encoding(sample_uniform(2 + rng.below(80), rng)));
    const auto ell = static_cast<std::uint32_t>(2 + rng.below(t.size()));
    const std::string text = canonical_encoding(t);
    ASSERT_EQ(as_ints(span_erasure_order(span(t, ell))), ref::span_order(text, static_cast<int>(ell)))
        << text << " ell=" << ell;
  }
}

TEST(Span, ReinsertionSpanExample) {
  // Host of size 6 whose 6-span has five branching nodes: dropping leaf 7
  // unaries its parent.
  const auto t = parse_tree("0:(1,(2,(3,(4,((5,7),6)))))");
  const SpanTree s(t, 6);
  EXPECT_EQ(s.branch_list().size(), 5u);
  const NodeId parent_of_7 = t.parent(*t.leaf_with_label(7));
  EXPECT_EQ(s.kind(parent_of_7), SpanKind::kUnary);
  EXPECT_EQ(canonical_encoding(s.contract().tree), "0:(1,(2,(3,(4,(5,6)))))");
}

TEST(Compatibility, W) {
  const auto w = parse_tree("0:(3,(1,2))");
  EXPECT_FALSE(check_compatibility(w, 2).has_value());
}

TEST(Compatibility, ExhaustiveUpToFive) {
  for (unsigned n = 2; n <= 5; ++n) {
    for (const auto& t : enumerate(n)) {
      const auto chain = erasure_chain(t);
      for (std::uint32_t ell = 2; ell <= n; ++ell) {
        const auto ce = check_compatibility(t, chain, ell);
        ASSERT_FALSE(ce.has_value()) << canonical_encoding(t) << " " << to_json(*ce);
      }
    }
  }
}

TEST(Compatibility, OrderRefinementAgainstReferenceModel) {
  // The span order read off the reference model is increasing in host time.
  SplitMix64 rng(Seed{32, 0});
  for (int i = 0; i < 100; ++i) {
    const auto t = sample_uniform(2 + rng.below(60), rng);
    const std::string text = canonical_encoding(t);
    std::map<int, int> host_time;
    int k = 0;
    for (const auto& e : ref::chain(text)) host_time[e.cut_id] = ++k;
    const auto ell = static_cast<int>(2 + rng.below(t.size() - 1));
    const auto order = ref::span_order(text, ell);
    for (std::size_t j = 1; j < order.size(); ++j) {
      ASSERT_LT(host_time[order[j - 1]], host_time[order[j]]) << text;
    }
  }
}

TEST(Compatibility, CheckerFlagsSwappedTimes) {
  const auto t = sample_uniform(40, Seed{33, 0});
  auto chain = erasure_chain(t);
  const auto order = span_erasure_order(span(t, 10));
  std::swap(chain.erasure_time[order[0].index()], chain.erasure_time[order[1].index()]);
  const auto ce = check_compatibility(t, chain, 10);
  ASSERT_TRUE(ce.has_value());
  EXPECT_EQ(ce->reason, "order");
  EXPECT_EQ(ce->i, 1u);
}

TEST(Compatibility, CheckerFlagsForeignCut) {
  // Replace a host step strictly between two span cuts by a node that lies
  // outside the next span node's fringe.
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto t = sample_uniform(60, Seed{34, seed});
    auto chain = erasure_chain(t);
    const auto order = span_erasure_order(span(t, 8));
    for (std::size_t i = 1; i < order.size(); ++i) {
      const std::uint32_t lo = chain.erasure_time[order[i - 1].index()];
      const std::uint32_t hi = chain.erasure_time[order[i].index()];
      if (hi - lo < 2) continue;
      const NodeId late = chain.steps.back().cut_node;  // the top node
      chain.steps[lo].cut_node = late;                   // step lo + 1
      const auto ce = check_compatibility(t, chain, 8);
      ASSERT_TRUE(ce.has_value());
      EXPECT_EQ(ce->reason, "nesting: outside fringe of b_{i+1}");
      EXPECT_EQ(ce->node, late);
      return;
    }
  }
  FAIL() << "no instance with a gap between span cuts";
}

TEST(Compatibility, CounterexampleJson) {
  const Counterexample c{5, 2, NodeId(17), "order"};
  const auto j = nlohmann::json::parse(to_json(c));
  EXPECT_EQ(j["ell"], 5);
  EXPECT_EQ(j["i"], 2);
  EXPECT_EQ(j["node"], 17);
  EXPECT_EQ(j["reason"], "order");
}

TEST(ReverseTime, W) {
  const auto w = parse_tree("0:(3,(1,2))");
  const auto table = reverse_time(w, 2);
  ASSERT_EQ(table.entries().size(), 1u);
  EXPECT_EQ(table.entries()[0].node, kB2);
  EXPECT_EQ(table.entries()[0].theta, (Fraction{1, 3}));
  EXPECT_EQ(table.at(kB2), (Fraction{1, 3}));
  EXPECT_EQ(table.at(kB1), std::nullopt);
  EXPECT_EQ(reverse_time(w, 3).at(kB1), (Fraction{2, 3}));
}

TEST(ReverseTime, EqualsHostTimeFromReferenceModel) {
  SplitMix64 rng(Seed{35, 0});
  for (int i = 0; i < 60; ++i) {
    const auto t = parse_tree(canonical_encoding(sample_uniform(1 + rng.below(60), rng)));
    std::map<int, std::uint64_t> host_time;
    std::uint64_t k = 0;
    for (const auto& e : ref::chain(canonical_encoding(t))) host_time[e.cut_id] = ++k;
    for (std::uint32_t ell = 2; ell <= t.size() + 1; ++ell) {
      const ReverseTimeTable table = reverse_time(t, ell);
      for (const auto& e : table.entries()) {
        ASSERT_EQ(e.theta, (Fraction{host_time.at(static_cast<int>(e.node.value)), t.size() + 1}));
      }
    }
  }
}

TEST(ReverseTime, FractionEqualityIsRational) {
  EXPECT_EQ((Fraction{2, 6}), (Fraction{1, 3}));
  EXPECT_FALSE((Fraction{2, 7}) == (Fraction{1, 3}));
  EXPECT_DOUBLE_EQ((Fraction{1, 4}).value(), 0.25);
}

}  // namespace
