#pragma once

// Statistical gates and tree summary statistics.
//
// Thresholds: chi-square uniformity passes iff p >= 1e-3; the two-sample KS
// test passes iff D <= 1.628 * sqrt((m+n)/(m*n)), i.e. alpha = 0.01.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "bot/erasure.hpp"
#include "bot/rng.hpp"
#include "bot/tree.hpp"

namespace bot {

enum class Verdict { kPass, kFail };

struct DiagnosticsReport {
  std::string test_name;
  double statistic = 0.0;
  double threshold = 0.0;
  std::size_t n_samples = 0;
  Verdict verdict = Verdict::kFail;
  nlohmann::ordered_json details = nlohmann::ordered_json::object();

  [[nodiscard]] bool passed() const { return verdict == Verdict::kPass; }
  [[nodiscard]] nlohmann::ordered_json to_json() const;
};

inline constexpr double kChiSquarePValueFloor = 1e-3;
inline constexpr double kKsAlpha = 0.01;
inline constexpr double kKsCoefficient = 1.628;  // c(alpha) for alpha = 0.01
inline constexpr double kMinExpectedPerCell = 20.0;
inline constexpr std::size_t kMinKsSample = 100;

// Q(a, x) = Gamma(a, x) / Gamma(a): power series below a + 1, Lentz continued
// fraction above.
double regularized_gamma_q(double a, double x);

// P(X >= x) for X ~ chi-square with `dof` degrees of freedom.
double chi_square_survival(double x, double dof);

// Asymptotic Kolmogorov tail with the Stephens small-sample correction.
double kolmogorov_survival(double d, double effective_n);

DiagnosticsReport chi_square_uniform(std::span<const std::uint64_t> counts);

struct HeightSample {
  std::vector<double> values;
};

DiagnosticsReport ks_two_sample(const HeightSample& a, const HeightSample& b);

// Largest edge distance from the root leaf.
std::size_t tree_height(const LabeledBinaryTree& t);
std::size_t tree_diameter(const LabeledBinaryTree& t);

// Height of T_{n-steps}, the tree left after `steps` erasures of chain.
std::size_t height_after(const LabeledBinaryTree& t, const ErasureChain& chain,
                         std::size_t steps);

struct ScalingOptions {
  // Multiply the reference sample by sqrt(t). Turning this off gives the
  // negative control, which must fail.
  bool rescale_reference = true;
  // When set, receive copies of the two samples (plot data).
  HeightSample* chain_sample = nullptr;
  HeightSample* reference_sample = nullptr;
};

// Sample A: height(T_{floor(nt)} in the chain of a uniform T_n) / sqrt(n).
// Sample B: sqrt(t) * height(independent uniform T_m) / sqrt(m), m = floor(nt).
// Trial i draws A from stream seed.stream + 2i and B from seed.stream + 2i + 1.
DiagnosticsReport scaling_proxy(std::size_t n, double t, std::size_t trials, Seed seed,
                                ScalingOptions options = {});

// Per ell: the maximal gap of {0, theta(b_1), ..., theta(b_{ell-1}), 1}.
// Passes iff the gap sequence is non-increasing in ell.
DiagnosticsReport theta_gap_report(const LabeledBinaryTree& t,
                                   const std::vector<std::uint32_t>& ells);

// theta_gap_report over `trees` uniform trees of size n (tree i from stream
// seed.stream + i). Passes iff the median maximal gap strictly decreases
// along the sorted ells. details: ells, median_gaps.
DiagnosticsReport theta_gap_survey(std::size_t n, std::size_t trees,
                                   std::vector<std::uint32_t> ells, Seed seed);

}  // namespace bot
