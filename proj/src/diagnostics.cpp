#include "bot/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "bot/sampling.hpp"
#include "bot/span.hpp"

namespace bot {

nlohmann::ordered_json DiagnosticsReport::to_json() const {
  return nlohmann::ordered_json{{"test_name", test_name},
                                {"statistic", statistic},
                                {"threshold", threshold},
                                {"n_samples", n_samples},
                                {"verdict", passed() ? "pass" : "fail"},
                                {"details", details}};
}

namespace {

constexpr double kEps = 1e-15;
constexpr double kTiny = 1e-300;
constexpr int kMaxIterations = 100000;

double log_prefactor(double a, double x) { return -x + a * std::log(x) - std::lgamma(a); }

double gamma_p_series(double a, double x) {
  double ap = a;
  double term = 1.0 / a;
  double sum = term;
  for (int i = 0; i < kMaxIterations; ++i) {
    ap += 1.0;
    term *= x / ap;
    sum += term;
    if (std::abs(term) < std::abs(sum) * kEps) break;
  }
  return sum * std::exp(log_prefactor(a, x));
}

double gamma_q_continued_fraction(double a, double x) {
  double b = x + 1.0 - a;
  double c = 1.0 / kTiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < kMaxIterations; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < kTiny) d = kTiny;
    c = b + an / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::abs(delta - 1.0) < kEps) break;
  }
  return std::exp(log_prefactor(a, x)) * h;
}

}  // namespace

double regularized_gamma_q(double a, double x) {
  if (a <= 0.0 || x < 0.0) throw Error("regularized_gamma_q: need a > 0 and x >= 0");
  if (x == 0.0) return 1.0;
  if (x < a + 1.0) return 1.0 - gamma_p_series(a, x);
  return gamma_q_continued_fraction(a, x);
}

double chi_square_survival(double x, double dof) { return regularized_gamma_q(dof / 2.0, x / 2.0); }

double kolmogorov_survival(double d, double effective_n) {
  const double root = std::sqrt(effective_n);
  const double lambda = (root + 0.12 + 0.11 / root) * d;
  if (lambda < 1e-3) return 1.0;
  double sum = 0.0;
  double sign = 1.0;
  for (int k = 1; k <= 200; ++k) {
    const double term = sign * std::exp(-2.0 * k * k * lambda * lambda);
    sum += term;
    if (std::abs(term) < 1e-16) break;
    sign = -sign;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

DiagnosticsReport chi_square_uniform(std::span<const std::uint64_t> counts) {
  if (counts.size() < 2) throw Error("chi_square_uniform: need at least two cells");
  const std::uint64_t total = std::accumulate(counts.begin(), counts.end(), std::uint64_t{0});
  const double expected = static_cast<double>(total) / static_cast<double>(counts.size());
  if (expected < kMinExpectedPerCell) throw Error("cells too thin");

  double stat = 0.0;
  for (std::uint64_t c : counts) {
    const double diff = static_cast<double>(c) - expected;
    stat += diff * diff / expected;
  }
  const double dof = static_cast<double>(counts.size() - 1);
  const double p = chi_square_survival(stat, dof);

  DiagnosticsReport r;
  r.test_name = "chi_square_uniform";
  r.statistic = stat;
  r.threshold = kChiSquarePValueFloor;
  r.n_samples = total;
  r.verdict = p >= kChiSquarePValueFloor ? Verdict::kPass : Verdict::kFail;
  r.details["criterion"] = "p_value >= threshold";
  r.details["p_value"] = p;
  r.details["dof"] = dof;
  r.details["cells"] = counts.size();
  r.details["expected_per_cell"] = expected;
  return r;
}

DiagnosticsReport ks_two_sample(const HeightSample& a, const HeightSample& b) {
  if (a.values.size() < kMinKsSample || b.values.size() < kMinKsSample) {
    throw Error("ks_two_sample: each sample needs at least " + std::to_string(kMinKsSample) +
                " points");
  }
  std::vector<double> x = a.values;
  std::vector<double> y = b.values;
  std::sort(x.begin(), x.end());
  std::sort(y.begin(), y.end());
  const double m = static_cast<double>(x.size());
  const double n = static_cast<double>(y.size());

  double d = 0.0;
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < x.size() && j < y.size()) {
    const double v = std::min(x[i], y[j]);
    while (i < x.size() && x[i] == v) ++i;
    while (j < y.size() && y[j] == v) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / m - static_cast<double>(j) / n));
  }

  DiagnosticsReport r;
  r.test_name = "ks_two_sample";
  r.statistic = d;
  r.threshold = kKsCoefficient * std::sqrt((m + n) / (m * n));
  r.n_samples = x.size() + y.size();
  r.verdict = d <= r.threshold ? Verdict::kPass : Verdict::kFail;
  r.details["criterion"] = "statistic <= threshold";
  r.details["alpha"] = kKsAlpha;
  r.details["m"] = x.size();
  r.details["n"] = y.size();
  r.details["p_value_asymptotic"] = kolmogorov_survival(d, m * n / (m + n));
  return r;
}

namespace {

std::vector<std::uint32_t> depths(const LabeledBinaryTree& t) {
  std::vector<std::uint32_t> depth(t.arena_size(), 0);
  for (NodeId v : t.preorder()) {
    if (v != t.root()) depth[v.index()] = depth[t.parent(v).index()] + 1;
  }
  return depth;
}

}  // namespace

std::size_t tree_height(const LabeledBinaryTree& t) {
  const auto depth = depths(t);
  return *std::max_element(depth.begin(), depth.end());
}

std::size_t tree_diameter(const LabeledBinaryTree& t) {
  // down[v]: longest downward path from v. The root leaf counts as the top
  // end of the path through its child.
  const auto order = t.preorder();
  std::vector<std::size_t> down(t.arena_size(), 0);
  std::size_t best = 0;
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const NodeId v = *it;
    if (v == t.root()) {
      best = std::max(best, down[t.top().index()] + 1);
    } else if (t.is_branching(v)) {
      const std::size_t l = down[t.left(v).index()] + 1;
      const std::size_t r = down[t.right(v).index()] + 1;
      down[v.index()] = std::max(l, r);
      best = std::max(best, l + r);
    }
  }
  return best;
}

std::size_t height_after(const LabeledBinaryTree& t, const ErasureChain& chain,
                         std::size_t steps) {
  // A node is gone after `steps` erasures iff its parent was cut by then.
  std::vector<std::uint32_t> depth(t.arena_size(), 0);
  std::size_t best = 0;
  for (NodeId v : t.preorder()) {
    if (v == t.root()) continue;
    const NodeId p = t.parent(v);
    if (p != t.root() && chain.erasure_time[p.index()] <= steps) continue;
    depth[v.index()] = depth[p.index()] + 1;
    best = std::max<std::size_t>(best, depth[v.index()]);
  }
  return best;
}

DiagnosticsReport scaling_proxy(std::size_t n, double t, std::size_t trials, Seed seed,
                                ScalingOptions options) {
  if (!(t > 0.0 && t <= 1.0)) throw Error("scaling_proxy: t must lie in (0, 1]");
  const auto m = static_cast<std::size_t>(std::floor(static_cast<double>(n) * t));
  if (m < 64) throw Error("scaling_proxy: floor(n t) must be at least 64");

  HeightSample a;
  HeightSample b;
  a.values.reserve(trials);
  b.values.reserve(trials);
  double diameter_sum = 0.0;
  const double reference_scale =
      (options.rescale_reference ? std::sqrt(t) : 1.0) / std::sqrt(static_cast<double>(m));
  for (std::size_t i = 0; i < trials; ++i) {
    const LabeledBinaryTree big = sample_uniform(n, Seed{seed.master, seed.stream + 2 * i});
    const ErasureChain chain = erasure_chain_fast(big);
    a.values.push_back(static_cast<double>(height_after(big, chain, n - m)) /
                       std::sqrt(static_cast<double>(n)));

    const LabeledBinaryTree fresh = sample_uniform(m, Seed{seed.master, seed.stream + 2 * i + 1});
    b.values.push_back(reference_scale * static_cast<double>(tree_height(fresh)));
    diameter_sum += static_cast<double>(tree_diameter(fresh)) / std::sqrt(static_cast<double>(m));
  }

  if (options.chain_sample != nullptr) *options.chain_sample = a;
  if (options.reference_sample != nullptr) *options.reference_sample = b;
  DiagnosticsReport r = ks_two_sample(a, b);
  r.test_name = options.rescale_reference ? "scaling_proxy" : "scaling_proxy_unrescaled";
  r.details["n"] = n;
  r.details["t"] = t;
  r.details["m"] = m;
  r.details["trials"] = trials;
  r.details["seed_master"] = seed.master;
  r.details["seed_stream"] = seed.stream;
  r.details["mean_height_chain"] =
      std::accumulate(a.values.begin(), a.values.end(), 0.0) / static_cast<double>(trials);
  r.details["mean_height_reference"] =
      std::accumulate(b.values.begin(), b.values.end(), 0.0) / static_cast<double>(trials);
  r.details["mean_diameter_reference"] = diameter_sum / static_cast<double>(trials);
  return r;
}

DiagnosticsReport theta_gap_report(const LabeledBinaryTree& t,
                                   const std::vector<std::uint32_t>& ells) {
  const std::uint64_t total = t.size() + 1;
  std::vector<std::pair<std::uint32_t, std::uint64_t>> gaps;  // (ell, gap numerator)
  for (std::uint32_t ell : ells) {
    const ReverseTimeTable table = reverse_time(t, ell);
    std::vector<std::uint64_t> cuts{0, total};
    for (const auto& e : table.entries()) cuts.push_back(e.theta.num);
    std::sort(cuts.begin(), cuts.end());
    std::uint64_t widest = 0;
    for (std::size_t i = 1; i < cuts.size(); ++i) widest = std::max(widest, cuts[i] - cuts[i - 1]);
    gaps.emplace_back(ell, widest);
  }

  std::vector<std::pair<std::uint32_t, std::uint64_t>> sorted = gaps;
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const auto& x, const auto& y) { return x.first < y.first; });
  double worst_increase = 0.0;
  for (std::size_t i = 1; i < sorted.size(); ++i) {
    if (sorted[i].second > sorted[i - 1].second) {
      worst_increase = std::max(
          worst_increase,
          static_cast<double>(sorted[i].second - sorted[i - 1].second) / static_cast<double>(total));
    }
  }

  DiagnosticsReport r;
  r.test_name = "theta_gap";
  r.statistic = worst_increase;
  r.threshold = 0.0;
  r.n_samples = gaps.size();
  r.verdict = worst_increase <= 0.0 ? Verdict::kPass : Verdict::kFail;
  r.details["criterion"] = "largest increase of the maximal gap along ell <= threshold";
  r.details["normalization"] = "theta = k / (|t| + 1)";
  auto& ell_list = r.details["ells"] = nlohmann::ordered_json::array();
  auto& gap_list = r.details["max_gaps"] = nlohmann::ordered_json::array();
  for (const auto& [ell, g] : gaps) {
    ell_list.push_back(ell);
    gap_list.push_back(static_cast<double>(g) / static_cast<double>(total));
  }
  return r;
}

DiagnosticsReport theta_gap_survey(std::size_t n, std::size_t trees,
                                   std::vector<std::uint32_t> ells, Seed seed) {
  if (trees == 0) throw Error("theta_gap_survey: need at least one tree");
  std::sort(ells.begin(), ells.end());
  std::vector<std::vector<double>> per_ell(ells.size());
  for (std::size_t i = 0; i < trees; ++i) {
    const LabeledBinaryTree t = sample_uniform(n, Seed{seed.master, seed.stream + i});
    const DiagnosticsReport one = theta_gap_report(t, ells);
    for (std::size_t k = 0; k < ells.size(); ++k) {
      per_ell[k].push_back(one.details["max_gaps"][k].get<double>());
    }
  }
  std::vector<double> medians;
  for (auto& g : per_ell) {
    std::sort(g.begin(), g.end());
    const std::size_t h = g.size() / 2;
    medians.push_back(g.size() % 2 == 1 ? g[h] : (g[h - 1] + g[h]) / 2.0);
  }
  // Statistic: smallest drop between consecutive medians (must be > 0).
  double smallest_drop = std::numeric_limits<double>::infinity();
  for (std::size_t k = 1; k < medians.size(); ++k) {
    smallest_drop = std::min(smallest_drop, medians[k - 1] - medians[k]);
  }

  DiagnosticsReport r;
  r.test_name = "theta_gap_survey";
  r.statistic = medians.size() < 2 ? 0.0 : smallest_drop;
  r.threshold = 0.0;
  r.n_samples = trees;
  r.verdict = medians.size() < 2 || smallest_drop > 0.0 ? Verdict::kPass : Verdict::kFail;
  r.details["criterion"] = "median maximal gap strictly decreases along ell";
  r.details["n"] = n;
  r.details["ells"] = ells;
  r.details["median_gaps"] = medians;
  return r;
}

}  // namespace bot
