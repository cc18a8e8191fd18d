#pragma once

// Spanned subtrees and the compatibility of their erasure orders with the
// order of the host chain.
//
// The ell-span of a host tree is the union of the host paths between the
// leaves labeled 0..ell. Inside it a host branching node either keeps both
// directions below it (span-branching) or only one (unary). BoT erasure on a
// span treats unary nodes as transparent; this is implemented by contracting
// unary chains into a strictly binary tree and running the ordinary chain.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bot/erasure.hpp"
#include "bot/tree.hpp"

namespace bot {

enum class SpanKind : std::uint8_t { kOutside, kLeaf, kBranching, kUnary };

class SpanTree {
 public:
  // The host must outlive the span.
  SpanTree(const LabeledBinaryTree& host, std::uint32_t ell);

  [[nodiscard]] const LabeledBinaryTree& host() const { return *host_; }
  [[nodiscard]] std::uint32_t ell() const { return ell_; }
  [[nodiscard]] SpanKind kind(NodeId v) const { return kinds_[v.index()]; }
  [[nodiscard]] bool contains(NodeId v) const { return kind(v) != SpanKind::kOutside; }
  // Span-branching nodes in host preorder; always ell - 1 of them.
  [[nodiscard]] const std::vector<NodeId>& branch_list() const { return branch_list_; }
  [[nodiscard]] std::vector<NodeId> nodes() const;
  [[nodiscard]] std::size_t leaf_count() const { return leaf_count_; }

  // Strictly binary tree on the span leaves and span-branching nodes, with
  // the map from its NodeIds back to host NodeIds.
  struct Contraction {
    LabeledBinaryTree tree;
    std::vector<NodeId> to_host;
  };
  [[nodiscard]] Contraction contract() const;

 private:
  const LabeledBinaryTree* host_;
  std::uint32_t ell_;
  std::vector<SpanKind> kinds_;
  std::vector<NodeId> branch_list_;
  std::size_t leaf_count_ = 0;
};

SpanTree span(const LabeledBinaryTree& t, std::uint32_t ell);

// b_1^ell, ..., b_{ell-1}^ell as host NodeIds.
std::vector<NodeId> span_erasure_order(const SpanTree& s);

struct Counterexample {
  std::uint32_t ell = 0;
  std::uint32_t i = 0;  // 1-based index into the span order
  NodeId node;
  std::string reason;
};

std::string to_json(const Counterexample& c);

// Checks order compatibility and nesting of the ell-span against the host
// chain. Returns the first violation, or nullopt.
std::optional<Counterexample> check_compatibility(const LabeledBinaryTree& t,
                                                  std::uint32_t ell);

// Variant reusing a precomputed host chain (must belong to t).
std::optional<Counterexample> check_compatibility(const LabeledBinaryTree& t,
                                                  const ErasureChain& host_chain,
                                                  std::uint32_t ell);

struct Fraction {
  std::uint64_t num = 0;
  std::uint64_t den = 1;

  friend bool operator==(const Fraction& a, const Fraction& b) {
    return a.num * b.den == b.num * a.den;
  }
  [[nodiscard]] double value() const { return static_cast<double>(num) / static_cast<double>(den); }
};

class ReverseTimeTable {
 public:
  struct Entry {
    NodeId node;
    Fraction theta;
  };

  explicit ReverseTimeTable(std::vector<Entry> entries) : entries_(std::move(entries)) {}

  // In span erasure order.
  [[nodiscard]] const std::vector<Entry>& entries() const { return entries_; }
  [[nodiscard]] std::optional<Fraction> at(NodeId v) const;

 private:
  std::vector<Entry> entries_;
};

// Discrete reverse time: for b_i in the span order, the leaf mass removed
// by the cuts at b_1..b_i, i.e. the number of host branching nodes in the
// union of the subtrees rooted at b_1..b_i, over |t| + 1.
ReverseTimeTable reverse_time(const LabeledBinaryTree& t, std::uint32_t ell);

}  // namespace bot
