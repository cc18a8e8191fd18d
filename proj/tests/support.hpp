#pragma once

// Test-only reference model: a pointer tree read from the canonical text,
// with its own BoT walk, cut and renumbering. Shares no code with the
// library, so agreement between the two is evidence, not tautology.

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <ostream>
#include <string>
#include <vector>

#include "bot/tree.hpp"

namespace bot {
// Readable gtest failure messages.
inline void PrintTo(const LabeledBinaryTree& t, std::ostream* os) { *os << canonical_encoding(t); }
inline void PrintTo(NodeId v, std::ostream* os) { *os << "node " << v.value; }
}  // namespace bot

namespace ref {

struct Node {
  int id = 0;      // preorder index, root leaf = 0, as parse_tree assigns
  int label = -1;  // -1 for branching nodes
  std::unique_ptr<Node> l, r;
  bool leaf() const { return label >= 0; }
};

inline std::unique_ptr<Node> parse_sub(const std::string& s, std::size_t& i, int& next_id) {
  auto n = std::make_unique<Node>();
  n->id = next_id++;
  if (s[i] == '(') {
    ++i;
    n->l = parse_sub(s, i, next_id);
    ++i;  // ','
    n->r = parse_sub(s, i, next_id);
    ++i;  // ')'
  } else {
    int v = 0;
    while (i < s.size() && s[i] >= '0' && s[i] <= '9') v = v * 10 + (s[i++] - '0');
    n->label = v;
  }
  return n;
}

// The root leaf is implicit; returns the subtree hanging below it.
inline std::unique_ptr<Node> parse(const std::string& s) {
  std::size_t i = 2;
  int next_id = 1;
  return parse_sub(s, i, next_id);
}

inline std::string encode_sub(const Node& n) {
  if (n.leaf()) return std::to_string(n.label);
  return "(" + encode_sub(*n.l) + "," + encode_sub(*n.r) + ")";
}

inline std::string encode(const Node& top) { return "0:" + encode_sub(top); }

inline void labels(const Node& n, std::vector<int>& out) {
  if (n.leaf()) {
    out.push_back(n.label);
    return;
  }
  labels(*n.l, out);
  labels(*n.r, out);
}

inline int count_in(const Node& n, const std::vector<int>& wanted) {
  std::vector<int> mine;
  labels(n, mine);
  int c = 0;
  for (int x : mine) c += static_cast<int>(std::count(wanted.begin(), wanted.end(), x));
  return c;
}

inline void renumber(Node& n, const std::map<int, int>& rank) {
  if (n.leaf()) {
    n.label = rank.at(n.label);
  } else {
    renumber(*n.l, rank);
    renumber(*n.r, rank);
  }
}

struct Erased {
  std::string tree;
  int bot_label = 0;
  int inherited_label = 0;
  int cut_id = 0;
};

// One BoT erasure in place; `top` must be branching.
inline Erased erase_in_place(Node& top) {
  Node* a = &top;
  while (!(a->l->leaf() && a->r->leaf())) {
    std::vector<int> fr;
    labels(*a, fr);
    std::sort(fr.begin(), fr.end());
    fr.resize(3);
    a = count_in(*a->l, fr) >= 2 ? a->l.get() : a->r.get();
  }
  Erased e;
  e.cut_id = a->id;
  e.bot_label = std::max(a->l->label, a->r->label);
  e.inherited_label = std::min(a->l->label, a->r->label);
  a->l.reset();
  a->r.reset();
  a->label = e.inherited_label;

  std::vector<int> all;
  labels(top, all);
  std::sort(all.begin(), all.end());
  std::map<int, int> rank;
  for (std::size_t k = 0; k < all.size(); ++k) rank[all[k]] = static_cast<int>(k) + 1;
  renumber(top, rank);
  e.tree = encode(top);
  return e;
}

inline Erased erase(const std::string& text) {
  auto top = parse(text);
  return erase_in_place(*top);
}

inline int size(const std::string& text) {
  return static_cast<int>(std::count(text.begin(), text.end(), '('));
}

// BoT labels and cut ids along the whole chain, first step first.
inline std::vector<Erased> chain(const std::string& text) {
  auto top = parse(text);
  std::vector<Erased> out;
  while (!top->leaf()) out.push_back(erase_in_place(*top));
  return out;
}

inline std::vector<int> bot_labels(const std::string& text) {
  std::vector<int> out;
  for (const auto& e : chain(text)) out.push_back(e.bot_label);
  return out;
}

// Keeps the leaves labeled <= ell and contracts the nodes left with a single
// child; surviving branching nodes keep their host ids.
inline std::unique_ptr<Node> prune(const Node& n, int ell) {
  if (n.leaf()) {
    if (n.label > ell) return nullptr;
    auto c = std::make_unique<Node>();
    c->id = n.id;
    c->label = n.label;
    return c;
  }
  auto l = prune(*n.l, ell);
  auto r = prune(*n.r, ell);
  if (!l) return r;
  if (!r) return l;
  auto c = std::make_unique<Node>();
  c->id = n.id;
  c->l = std::move(l);
  c->r = std::move(r);
  return c;
}

// Host ids of the span's branching nodes in the order the span's own chain
// cuts them.
inline std::vector<int> span_order(const std::string& host, int ell) {
  auto top = prune(*parse(host), ell);
  std::vector<int> out;
  while (!top->leaf()) out.push_back(erase_in_place(*top).cut_id);
  return out;
}

}  // namespace ref
