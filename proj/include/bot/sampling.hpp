#pragma once

// Uniform random labeled binary trees and exhaustive enumeration.

#include <cstdint>
#include <functional>
#include <iterator>
#include <map>
#include <string>
#include <vector>

#include "bot/erasure.hpp"
#include "bot/rng.hpp"
#include "bot/tree.hpp"

namespace bot {

// Exactly uniform over the catalan(n) * (n+1)! labeled trees of size n.
// The shape comes from Remy's insertion (a uniform edge, including the root
// edge, and a uniform side per step); the non-root labels are then a uniform
// random permutation of {1..n+1}.
LabeledBinaryTree sample_uniform(std::size_t n, Seed seed);
LabeledBinaryTree sample_uniform(std::size_t n, SplitMix64& rng);

inline constexpr unsigned kMaxEnumerationSize = 7;

// All labeled trees of a given size in a fixed order: shapes by recursive
// left/right size split (left size ascending), then label permutations in
// lexicographic order of the labels read left to right.
class Enumeration {
 public:
  explicit Enumeration(unsigned n);

  class Iterator {
   public:
    using iterator_category = std::input_iterator_tag;
    using value_type = LabeledBinaryTree;
    using difference_type = std::ptrdiff_t;
    using pointer = void;
    using reference = LabeledBinaryTree;

    Iterator() = default;
    LabeledBinaryTree operator*() const;
    Iterator& operator++();
    Iterator operator++(int) {
      Iterator old = *this;
      ++*this;
      return old;
    }
    friend bool operator==(const Iterator& a, const Iterator& b) {
      return a.shape_ == b.shape_ && (a.shape_ == a.end_shape_ || a.labels_ == b.labels_);
    }

   private:
    friend class Enumeration;
    Iterator(const Enumeration* owner, std::size_t shape);

    const Enumeration* owner_ = nullptr;
    std::size_t shape_ = 0;
    std::size_t end_shape_ = 0;
    std::vector<std::uint32_t> labels_;
  };

  [[nodiscard]] unsigned size() const { return n_; }
  [[nodiscard]] std::uint64_t count() const { return labeled_tree_count(n_); }
  [[nodiscard]] std::size_t shape_count() const { return shapes_.size(); }
  [[nodiscard]] Iterator begin() const { return Iterator(this, 0); }
  [[nodiscard]] Iterator end() const { return Iterator(this, shapes_.size()); }

 private:
  unsigned n_;
  // Each shape with leaves labeled 1..n+1 left to right.
  std::vector<LabeledBinaryTree> shapes_;
  std::vector<std::vector<NodeId>> leaf_order_;
};

Enumeration enumerate(unsigned n);

// Applies bot_erase to every tree of size n and tallies the images by
// canonical encoding.
std::map<std::string, std::uint64_t> preimage_census(unsigned n);

namespace detail {
std::map<std::string, std::uint64_t> preimage_census_with(
    unsigned n, const std::function<ErasureResult(const LabeledBinaryTree&)>& erase);
}  // namespace detail

}  // namespace bot
