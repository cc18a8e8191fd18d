#pragma once

// Executable checks of the exact combinatorial properties, and the suite the
// `verify` subcommand runs. Each check returns nullopt on success or a short
// description of the first failure.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "bot/erasure.hpp"
#include "bot/rng.hpp"
#include "bot/tree.hpp"

namespace bot {

using EraseFn = std::function<ErasureResult(const LabeledBinaryTree&)>;

// Every tree of size n-1 is hit exactly 4n-2 times by erasure from size n.
std::optional<std::string> check_census(unsigned n, const EraseFn& erase);

// growth_options(t): 4(|t|+1)-2 distinct images, each erasing back to t with
// BoT label j, and the same set as preimages_oracle.
std::optional<std::string> check_growth_matches_oracle(const LabeledBinaryTree& t);

// growth_options(t) alone (no oracle), for sizes beyond the oracle's reach.
std::optional<std::string> check_growth_round_trip(const LabeledBinaryTree& t);

std::optional<std::string> check_fast_matches_naive(const LabeledBinaryTree& t);

// check_compatibility for every ell in [2, |t|].
std::optional<std::string> check_compatibility_all(const LabeledBinaryTree& t);

// reverse_time via every ell in [2, |t|+1] agrees on shared nodes and equals
// erasure time / (|t|+1).
std::optional<std::string> check_theta_coherence(const LabeledBinaryTree& t);

enum class VerifyLevel { kQuick, kExhaustive };

struct VerifyCheck {
  std::string name;
  bool passed = false;
  std::size_t instances = 0;
  std::string failure;
  double seconds = 0.0;
};

struct VerifyReport {
  VerifyLevel level = VerifyLevel::kQuick;
  std::vector<VerifyCheck> checks;

  [[nodiscard]] bool passed() const;
  [[nodiscard]] nlohmann::ordered_json to_json() const;
};

// quick: randomized property checks seeded from `seed`.
// exhaustive: censuses for n = 2..6, compatibility for all trees n <= 6,
// growth against the oracle for all |t| <= 5, fast path for all n <= 5.
VerifyReport verify_suite(VerifyLevel level, Seed seed);

namespace detail {
VerifyReport verify_suite_with(VerifyLevel level, Seed seed, const EraseFn& erase);
}  // namespace detail

}  // namespace bot
