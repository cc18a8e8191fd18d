#include "bot/verify.hpp"

#include <chrono>
#include <set>

#include "bot/growth.hpp"
#include "bot/sampling.hpp"
#include "bot/span.hpp"

namespace bot {

std::optional<std::string> check_census(unsigned n, const EraseFn& erase) {
  const auto counts = detail::preimage_census_with(n, erase);
  const std::uint64_t expected = 4 * static_cast<std::uint64_t>(n) - 2;
  std::uint64_t total = 0;
  std::uint64_t images = 0;
  for (const LabeledBinaryTree& small : enumerate(n - 1)) {
    const auto it = counts.find(canonical_encoding(small));
    const std::uint64_t c = it == counts.end() ? 0 : it->second;
    if (c != expected) {
      return "n=" + std::to_string(n) + ": " + canonical_encoding(small) + " has " +
             std::to_string(c) + " preimages, expected " + std::to_string(expected);
    }
    total += c;
    ++images;
  }
  if (images != counts.size()) {
    return "n=" + std::to_string(n) + ": erasure produced trees outside the size-" +
           std::to_string(n - 1) + " enumeration";
  }
  if (total != labeled_tree_count(n)) {
    return "n=" + std::to_string(n) + ": total " + std::to_string(total) + " != " +
           std::to_string(labeled_tree_count(n));
  }
  return std::nullopt;
}

std::optional<std::string> check_growth_round_trip(const LabeledBinaryTree& t) {
  const auto options = growth_options(t);
  const std::size_t expected = 4 * (t.size() + 1) - 2;
  const std::string where = " for " + canonical_encoding(t);
  if (options.size() != expected) {
    return std::to_string(options.size()) + " options, expected " + std::to_string(expected) +
           where;
  }
  std::set<std::string> images;
  for (const GrowthOption& o : options) {
    const LabeledBinaryTree grown = apply_option(t, o);
    const ErasureResult back = bot_erase(grown);
    if (!(back.tree == t) || back.step.bot_label != o.j) {
      return "option j=" + std::to_string(o.j) + " anchor=" + std::to_string(o.anchor_label) +
             " does not erase back" + where;
    }
    if (!images.insert(canonical_encoding(grown)).second) return "duplicate image" + where;
  }
  return std::nullopt;
}

std::optional<std::string> check_growth_matches_oracle(const LabeledBinaryTree& t) {
  if (auto bad = check_growth_round_trip(t)) return bad;
  std::set<std::string> grown;
  for (const GrowthOption& o : growth_options(t)) {
    grown.insert(canonical_encoding(apply_option(t, o)));
  }
  std::set<std::string> oracle;
  for (const LabeledBinaryTree& s : preimages_oracle(t, static_cast<unsigned>(t.size() + 1))) {
    if (bot_erase(s).step.bot_label < 2) {
      return "oracle preimage with BoT label below 2 for " + canonical_encoding(t);
    }
    oracle.insert(canonical_encoding(s));
  }
  if (grown != oracle) {
    return "growth options and oracle disagree (" + std::to_string(grown.size()) + " vs " +
           std::to_string(oracle.size()) + ") for " + canonical_encoding(t);
  }
  return std::nullopt;
}

std::optional<std::string> check_fast_matches_naive(const LabeledBinaryTree& t) {
  if (!same_trajectory(erasure_chain(t), erasure_chain_fast(t))) {
    return "fast chain differs from reference for " + canonical_encoding(t);
  }
  return std::nullopt;
}

std::optional<std::string> check_compatibility_all(const LabeledBinaryTree& t) {
  const ErasureChain chain = erasure_chain(t);
  for (std::uint32_t ell = 2; ell <= t.size(); ++ell) {
    if (auto ce = check_compatibility(t, chain, ell)) {
      return to_json(*ce) + " for " + canonical_encoding(t);
    }
  }
  return std::nullopt;
}

std::optional<std::string> check_theta_coherence(const LabeledBinaryTree& t) {
  if (t.size() < 1) return std::nullopt;
  const ErasureChain chain = erasure_chain_fast(t);
  const std::uint64_t total = t.size() + 1;
  // First theta seen per node, from any ell.
  std::vector<std::optional<Fraction>> seen(t.arena_size());
  for (std::uint32_t ell = 2; ell <= t.size() + 1; ++ell) {
    const ReverseTimeTable table = reverse_time(t, ell);
    for (const auto& e : table.entries()) {
      auto& slot = seen[e.node.index()];
      if (!slot) {
        slot = e.theta;
      } else if (!(*slot == e.theta)) {
        return "theta of node " + std::to_string(e.node.value) + " differs at ell=" +
               std::to_string(ell) + " for " + canonical_encoding(t);
      }
      if (!(e.theta == Fraction{chain.erasure_time[e.node.index()], total})) {
        return "theta of node " + std::to_string(e.node.value) +
               " is not its erasure time over |t|+1 for " + canonical_encoding(t);
      }
    }
  }
  return std::nullopt;
}

bool VerifyReport::passed() const {
  for (const auto& c : checks) {
    if (!c.passed) return false;
  }
  return true;
}

nlohmann::ordered_json VerifyReport::to_json() const {
  nlohmann::ordered_json list = nlohmann::ordered_json::array();
  for (const auto& c : checks) {
    nlohmann::ordered_json j{{"name", c.name},
                             {"passed", c.passed},
                             {"instances", c.instances},
                             {"seconds", c.seconds}};
    if (!c.passed) j["failure"] = c.failure;
    list.push_back(j);
  }
  return nlohmann::ordered_json{{"level", level == VerifyLevel::kQuick ? "quick" : "exhaustive"},
                                {"passed", passed()},
                                {"checks", list}};
}

namespace {

class Runner {
 public:
  explicit Runner(VerifyReport& report) : report_(report) {}

  // body(count) returns the first failure; count tallies instances.
  template <typename Body>
  void run(const std::string& name, Body&& body) {
    const auto start = std::chrono::steady_clock::now();
    VerifyCheck check;
    check.name = name;
    std::optional<std::string> failure = body(check.instances);
    check.passed = !failure.has_value();
    if (failure) check.failure = *failure;
    check.seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    report_.checks.push_back(std::move(check));
  }

 private:
  VerifyReport& report_;
};

template <typename Check>
std::optional<std::string> over_enumeration(unsigned n, std::size_t& count, Check&& check) {
  for (const LabeledBinaryTree& t : enumerate(n)) {
    ++count;
    if (auto bad = check(t)) return bad;
  }
  return std::nullopt;
}

template <typename Check>
std::optional<std::string> over_random(Seed seed, std::size_t instances, std::size_t min_n,
                                       std::size_t max_n, std::size_t& count, Check&& check) {
  for (std::size_t i = 0; i < instances; ++i) {
    SplitMix64 rng(Seed{seed.master, seed.stream + i});
    const std::size_t n = min_n + rng.below(max_n - min_n + 1);
    const LabeledBinaryTree t = sample_uniform(n, rng);
    ++count;
    if (auto bad = check(t, rng)) return bad;
  }
  return std::nullopt;
}

}  // namespace

namespace detail {

VerifyReport verify_suite_with(VerifyLevel level, Seed seed, const EraseFn& erase) {
  VerifyReport report;
  report.level = level;
  Runner runner(report);

  if (level == VerifyLevel::kQuick) {
    runner.run("census n=2..4", [&](std::size_t& count) -> std::optional<std::string> {
      for (unsigned n = 2; n <= 4; ++n) {
        ++count;
        if (auto bad = check_census(n, erase)) return bad;
      }
      return std::nullopt;
    });
    runner.run("tree invariants", [&](std::size_t& count) {
      return over_random(Seed{seed.master, seed.stream}, 200, 0, 64, count,
                         [](const LabeledBinaryTree& t, SplitMix64&) -> std::optional<std::string> {
                           if (auto v = validate(t)) return "sampled tree invalid: " + v->invariant;
                           return std::nullopt;
                         });
    });
    runner.run("fast chain vs reference", [&](std::size_t& count) {
      return over_random(Seed{seed.master, seed.stream + 1'000'000}, 200, 0, 128, count,
                         [](const LabeledBinaryTree& t, SplitMix64&) {
                           return check_fast_matches_naive(t);
                         });
    });
    runner.run("compatibility", [&](std::size_t& count) {
      return over_random(Seed{seed.master, seed.stream + 2'000'000}, 500, 2, 128, count,
                         [](const LabeledBinaryTree& t, SplitMix64& rng) -> std::optional<std::string> {
                           const auto ell = static_cast<std::uint32_t>(2 + rng.below(t.size() - 1));
                           if (auto ce = check_compatibility(t, ell)) return to_json(*ce);
                           return std::nullopt;
                         });
    });
    runner.run("theta coherence", [&](std::size_t& count) {
      return over_random(Seed{seed.master, seed.stream + 3'000'000}, 50, 1, 64, count,
                         [](const LabeledBinaryTree& t, SplitMix64&) {
                           return check_theta_coherence(t);
                         });
    });
    runner.run("growth round trip", [&](std::size_t& count) {
      return over_random(Seed{seed.master, seed.stream + 4'000'000}, 100, 0, 32, count,
                         [](const LabeledBinaryTree& t, SplitMix64&) {
                           return check_growth_round_trip(t);
                         });
    });
    return report;
  }

  runner.run("census n=2..6", [&](std::size_t& count) -> std::optional<std::string> {
    for (unsigned n = 2; n <= 6; ++n) {
      count += labeled_tree_count(n);
      if (auto bad = check_census(n, erase)) return bad;
    }
    return std::nullopt;
  });
  runner.run("compatibility n<=6", [&](std::size_t& count) -> std::optional<std::string> {
    for (unsigned n = 2; n <= 6; ++n) {
      if (auto bad = over_enumeration(n, count, check_compatibility_all)) return bad;
    }
    return std::nullopt;
  });
  runner.run("growth vs oracle |t|<=5", [&](std::size_t& count) -> std::optional<std::string> {
    for (unsigned n = 0; n <= 5; ++n) {
      if (auto bad = over_enumeration(n, count, check_growth_matches_oracle)) return bad;
    }
    return std::nullopt;
  });
  runner.run("fast chain vs reference n<=5", [&](std::size_t& count) -> std::optional<std::string> {
    for (unsigned n = 0; n <= 5; ++n) {
      if (auto bad = over_enumeration(n, count, check_fast_matches_naive)) return bad;
    }
    return std::nullopt;
  });
  return report;
}

}  // namespace detail

VerifyReport verify_suite(VerifyLevel level, Seed seed) {
  return detail::verify_suite_with(level, seed,
                                   [](const LabeledBinaryTree& t) { return bot_erase(t); });
}

}  // namespace bot
