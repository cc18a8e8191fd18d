#include "bot/io.hpp"

#include <cstdlib>
#include <vector>

namespace bot {

namespace {

bool is_digit(char c) { return c >= '0' && c <= '9'; }

}  // namespace

LabeledBinaryTree parse_tree(std::string_view text) {
  if (text.substr(0, 2) != "0:") throw ParseError("expected \"0:\"", 0);

  std::vector<Node> nodes;
  nodes.push_back(Node{NodeKind::kLeaf, kNoNode, kNoNode, kNoNode, 0});

  // stage: 0 awaiting left subtree, 1 awaiting ',', 2 awaiting right
  // subtree, 3 awaiting ')'.
  struct Frame {
    std::uint32_t node;
    int stage;
  };
  std::vector<Frame> open;

  const auto attach = [&](std::uint32_t id) {
    if (open.empty()) {
      nodes[0].left = NodeId(id);
      nodes[id].parent = NodeId(0);
      return;
    }
    Frame& f = open.back();
    nodes[id].parent = NodeId(f.node);
    if (f.stage == 0) {
      nodes[f.node].left = NodeId(id);
      f.stage = 1;
    } else {
      nodes[f.node].right = NodeId(id);
      f.stage = 3;
    }
  };

  std::size_t pos = 2;
  bool want_subtree = true;
  while (true) {
    if (want_subtree) {
      if (pos >= text.size()) throw ParseError("unexpected end of input", pos);
      const char c = text[pos];
      const auto id = static_cast<std::uint32_t>(nodes.size());
      if (c == '(') {
        nodes.push_back(Node{NodeKind::kBranching, kNoNode, kNoNode, kNoNode, 0});
        attach(id);
        open.push_back({id, 0});
        ++pos;
        continue;
      }
      if (!is_digit(c)) throw ParseError("expected '(' or a label", pos);
      const std::size_t start = pos;
      while (pos < text.size() && is_digit(text[pos])) ++pos;
      const std::string_view digits = text.substr(start, pos - start);
      if (digits.size() > 1 && digits[0] == '0') throw ParseError("leading zero in label", start);
      if (digits.size() > 9) throw ParseError("label too large", start);
      const auto label = static_cast<std::uint32_t>(std::stoul(std::string(digits)));
      nodes.push_back(Node{NodeKind::kLeaf, kNoNode, kNoNode, kNoNode, label});
      attach(id);
      want_subtree = false;
      continue;
    }

    if (open.empty()) {
      if (pos != text.size()) throw ParseError("trailing characters", pos);
      break;
    }
    Frame& f = open.back();
    if (pos >= text.size()) throw ParseError("unexpected end of input", pos);
    if (f.stage == 1) {
      if (text[pos] != ',') throw ParseError("expected ','", pos);
      f.stage = 2;
      ++pos;
      want_subtree = true;
    } else {
      if (text[pos] != ')') throw ParseError("expected ')'", pos);
      open.pop_back();
      ++pos;
    }
  }

  LabeledBinaryTree t = LabeledBinaryTree::from_nodes(std::move(nodes), NodeId(0));
  if (auto bad = validate(t)) throw Error(bad->invariant + ": " + bad->detail);
  return t;
}

std::string chain_to_jsonl(const ErasureChain& chain) {
  std::string out;
  for (const ErasureStep& s : chain.steps) {
    nlohmann::ordered_json j{{"k", s.step_index},
                             {"cut_node", s.cut_node.value},
                             {"bot_label", s.bot_label},
                             {"inherited_label", s.inherited_label},
                             {"size_after", chain.initial_size - s.step_index}};
    out += j.dump();
    out += '\n';
  }
  return out;
}

std::string coloring_to_csv(const LabeledBinaryTree& t, const ErasureChain& chain) {
  std::string out = "node_id,node_kind,erasure_time\n";
  for (std::size_t i = 0; i < t.arena_size(); ++i) {
    const NodeId v(static_cast<std::uint32_t>(i));
    if (!t.contains(v)) continue;
    const bool leaf = t.is_leaf(v);
    out += std::to_string(i);
    out += leaf ? ",leaf," : ",branching,";
    out += std::to_string(leaf ? chain.leaf_erasure_time[i] : chain.erasure_time[i]);
    out += '\n';
  }
  return out;
}

std::string to_string(Subcommand c) {
  switch (c) {
    case Subcommand::kSample: return "sample";
    case Subcommand::kEnumerate: return "enumerate";
    case Subcommand::kErase: return "erase";
    case Subcommand::kGrow: return "grow";
    case Subcommand::kVerify: return "verify";
    case Subcommand::kStats: return "stats";
    case Subcommand::kRender: return "render";
  }
  return "unknown";
}

nlohmann::ordered_json RunConfig::header() const {
  nlohmann::ordered_json config{{"subcommand", to_string(subcommand)}, {"n", n}};
  if (!format.empty()) config["format"] = format;
  for (const auto& [key, value] : extra.items()) config[key] = value;
  return nlohmann::ordered_json{
      {"version", kVersion},
      {"seed", {{"master", seed.master}, {"stream", seed.stream}}},
      {"config", config}};
}

std::uint64_t default_master_seed() {
  const char* env = std::getenv("BOT_SEED");
  if (env == nullptr || *env == '\0') return kDefaultMasterSeed;
  try {
    std::size_t used = 0;
    const std::uint64_t v = std::stoull(env, &used, 0);
    if (env[used] != '\0') throw Error("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw Error(std::string("BOT_SEED is not an unsigned integer: ") + env);
  }
}

}  // namespace bot
