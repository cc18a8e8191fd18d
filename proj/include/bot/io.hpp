#pragma once

// Text formats: the canonical tree grammar, chain exports, run headers.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "bot/erasure.hpp"
#include "bot/rng.hpp"
#include "bot/tree.hpp"

namespace bot {

inline constexpr const char* kVersion = "0.1.0";

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t offset)
      : Error(what + " at byte " + std::to_string(offset)), offset_(offset) {}
  [[nodiscard]] std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

// Inverse of canonical_encoding. NodeIds are assigned in preorder, root = 0.
// Throws ParseError on a syntax error and Error("label bijection: ...") when
// the labels are not {0..size+1}.
LabeledBinaryTree parse_tree(std::string_view text);

// One JSON object per step: {k, cut_node, bot_label, inherited_label, size_after}.
std::string chain_to_jsonl(const ErasureChain& chain);

// node_id,node_kind,erasure_time; leaves carry leaf_erasure_time.
std::string coloring_to_csv(const LabeledBinaryTree& t, const ErasureChain& chain);

enum class Subcommand { kSample, kEnumerate, kErase, kGrow, kVerify, kStats, kRender };

std::string to_string(Subcommand c);

struct RunConfig {
  Subcommand subcommand = Subcommand::kSample;
  std::size_t n = 0;
  Seed seed{kDefaultMasterSeed, 0};
  std::string format;
  std::string output;
  nlohmann::ordered_json extra = nlohmann::ordered_json::object();

  // {version, seed, config}
  [[nodiscard]] nlohmann::ordered_json header() const;
};

// BOT_SEED (decimal or 0x-prefixed hex) when set, else kDefaultMasterSeed.
std::uint64_t default_master_seed();

}  // namespace bot
