// bot: command-line front end for the library.
//
// Exit codes: 0 ok, 1 gate failure, 2 usage error.

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "bot/diagnostics.hpp"
#include "bot/erasure.hpp"
#include "bot/growth.hpp"
#include "bot/io.hpp"
#include "bot/render.hpp"
#include "bot/sampling.hpp"
#include "bot/verify.hpp"

namespace fs = std::filesystem;
using bot::RunConfig;
using bot::Subcommand;
using json = nlohmann::ordered_json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitGate = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct GlobalOptions {
  std::optional<std::uint64_t> seed;
  std::uint64_t stream = 0;
  bool fresh_seed = false;
  std::string output;
};

bot::Seed resolve_seed(const GlobalOptions& g) {
  if (g.fresh_seed) {
    std::random_device rd;
    const std::uint64_t hi = rd();
    return {(hi << 32) ^ rd(), g.stream};
  }
  return {g.seed ? *g.seed : bot::default_master_seed(), g.stream};
}

// Writes to --output when given, stdout otherwise.
class Sink {
 public:
  explicit Sink(const std::string& path) {
    if (!path.empty()) {
      file_.open(path, std::ios::binary);
      if (!file_) throw UsageError("cannot open " + path);
    }
  }
  std::ostream& out() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

std::string comment_header(const RunConfig& cfg) { return "# " + cfg.header().dump() + "\n"; }

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw UsageError("cannot write " + path.string());
  f << text;
}

int run_sample(const GlobalOptions& g, std::size_t n, std::size_t count, const std::string& format) {
  RunConfig cfg{Subcommand::kSample, n, resolve_seed(g), format, g.output, {{"count", count}}};
  Sink sink(g.output);
  auto& out = sink.out();
  bot::SplitMix64 rng(cfg.seed);
  if (format == "jsonl") {
    out << cfg.header().dump() << '\n';
  } else {
    out << comment_header(cfg);
  }
  for (std::size_t i = 0; i < count; ++i) {
    const std::string tree = bot::canonical_encoding(bot::sample_uniform(n, rng));
    if (format == "jsonl") {
      out << json{{"index", i}, {"tree", tree}}.dump() << '\n';
    } else {
      out << tree << '\n';
    }
  }
  return kExitOk;
}

int run_enumerate(const GlobalOptions& g, unsigned n) {
  RunConfig cfg{Subcommand::kEnumerate, n, resolve_seed(g), "canonical", g.output, {}};
  const bot::Enumeration all = bot::enumerate(n);
  Sink sink(g.output);
  auto& out = sink.out();
  out << comment_header(cfg);
  for (const auto& t : all) out << bot::canonical_encoding(t) << '\n';
  return kExitOk;
}

int run_erase(const GlobalOptions& g, const std::string& tree_text, std::optional<std::size_t> n,
              const std::string& format) {
  RunConfig cfg{Subcommand::kErase, 0, resolve_seed(g), format, g.output, {}};
  bot::LabeledBinaryTree t = bot::minimal_tree();
  if (!tree_text.empty()) {
    t = bot::parse_tree(tree_text);
    cfg.extra["tree"] = tree_text;
  } else if (n) {
    t = bot::sample_uniform(*n, cfg.seed);
  } else {
    throw UsageError("erase: give a tree or --n");
  }
  cfg.n = t.size();
  const bot::ErasureChain chain = bot::erasure_chain_fast(t);
  Sink sink(g.output);
  auto& out = sink.out();
  if (format == "csv") {
    out << comment_header(cfg) << bot::coloring_to_csv(t, chain);
  } else {
    out << cfg.header().dump() << '\n' << bot::chain_to_jsonl(chain);
  }
  return kExitOk;
}

int run_grow(const GlobalOptions& g, std::size_t from, std::size_t to, const std::string& emit) {
  if (to < from) throw UsageError("grow: --to-size must be at least --from-size");
  RunConfig cfg{Subcommand::kGrow, to, resolve_seed(g), emit, g.output, {{"from_size", from}}};
  bot::SplitMix64 rng(cfg.seed);
  const bot::LabeledBinaryTree start = bot::sample_uniform(from, rng);
  const bot::GrowthChain chain = bot::grow_chain(start, to, rng);
  cfg.extra["start"] = bot::canonical_encoding(start);
  Sink sink(g.output);
  auto& out = sink.out();
  if (emit == "replay-log") {
    out << cfg.header().dump() << '\n';
    for (const auto& r : chain.log) out << bot::to_jsonl(r) << '\n';
  } else {
    out << comment_header(cfg) << bot::canonical_encoding(chain.final_tree) << '\n';
  }
  return kExitOk;
}

int run_verify(const GlobalOptions& g, const std::string& level) {
  RunConfig cfg{Subcommand::kVerify, 0, resolve_seed(g), "json", g.output, {{"level", level}}};
  const bot::VerifyReport report = bot::verify_suite(
      level == "exhaustive" ? bot::VerifyLevel::kExhaustive : bot::VerifyLevel::kQuick, cfg.seed);
  Sink sink(g.output);
  sink.out() << json{{"header", cfg.header()}, {"report", report.to_json()}}.dump(2) << '\n';
  for (const auto& c : report.checks) {
    std::cerr << (c.passed ? "PASS " : "FAIL ") << std::left << std::setw(32) << c.name
              << std::right << std::setw(9) << c.instances << " instances  " << std::fixed
              << std::setprecision(2) << c.seconds << " s";
    if (!c.passed) std::cerr << "  " << c.failure;
    std::cerr << '\n';
  }
  return report.passed() ? kExitOk : kExitGate;
}

struct StatsOptions {
  std::string test = "chi2";
  std::size_t n = 0;
  std::size_t samples = 0;
  double t = 0.25;
  std::size_t trials = 0;
  bool unrescaled = false;
  std::vector<std::uint32_t> ells;
  std::string format = "table";
  std::string plot;
};

std::vector<std::uint64_t> uniformity_counts(std::size_t n, std::size_t samples, bot::Seed seed,
                                             bool through_growth) {
  std::map<std::string, std::size_t> cell;
  for (const auto& t : bot::enumerate(static_cast<unsigned>(n))) {
    cell.emplace(bot::canonical_encoding(t), cell.size());
  }
  std::vector<std::uint64_t> counts(cell.size(), 0);
  bot::SplitMix64 rng(seed);
  for (std::size_t i = 0; i < samples; ++i) {
    const bot::LabeledBinaryTree t =
        through_growth ? bot::grow_chain(bot::minimal_tree(), n, rng).final_tree
                       : bot::sample_uniform(n, rng);
    ++counts[cell.at(bot::canonical_encoding(t))];
  }
  return counts;
}

void print_table(const bot::DiagnosticsReport& r) {
  std::cout << std::left << std::setw(12) << "test" << r.test_name << '\n'
            << std::setw(12) << "statistic" << std::setprecision(6) << r.statistic << '\n'
            << std::setw(12) << "threshold" << r.threshold << '\n'
            << std::setw(12) << "samples" << r.n_samples << '\n'
            << std::setw(12) << "verdict" << (r.passed() ? "pass" : "fail") << '\n';
  for (const auto& [key, value] : r.details.items()) {
    if (value.is_array() && value.size() > 16) continue;
    std::cout << "  " << std::setw(24) << key << value.dump() << '\n';
  }
}

int run_stats(const GlobalOptions& g, StatsOptions s) {
  RunConfig cfg{Subcommand::kStats, 0, resolve_seed(g), s.format, g.output, {{"test", s.test}}};
  std::ostringstream plot;
  bot::DiagnosticsReport report;
  if (s.test == "chi2" || s.test == "growth-chi2") {
    if (s.n == 0) s.n = 4;
    if (s.samples == 0) s.samples = 1'000'000;
    if (s.n > bot::kMaxEnumerationSize) throw UsageError("stats: --n above the enumeration bound");
    const auto counts = uniformity_counts(s.n, s.samples, cfg.seed, s.test == "growth-chi2");
    report = bot::chi_square_uniform(counts);
    report.test_name = s.test;
    cfg.extra["samples"] = s.samples;
    plot << "cell,count\n";
    for (std::size_t i = 0; i < counts.size(); ++i) plot << i << ',' << counts[i] << '\n';
  } else if (s.test == "scaling") {
    if (s.n == 0) s.n = 4096;
    if (s.trials == 0) s.trials = 2000;
    bot::HeightSample a;
    bot::HeightSample b;
    report = bot::scaling_proxy(s.n, s.t, s.trials, cfg.seed,
                                {!s.unrescaled, &a, &b});
    cfg.extra["t"] = s.t;
    cfg.extra["trials"] = s.trials;
    plot << "trial,chain_height,reference_height\n";
    for (std::size_t i = 0; i < a.values.size(); ++i) {
      plot << i << ',' << bot::format_fixed4(a.values[i]) << ','
           << bot::format_fixed4(b.values[i]) << '\n';
    }
  } else if (s.test == "theta-gaps") {
    if (s.n == 0) s.n = 10'000;
    if (s.trials == 0) s.trials = 100;
    if (s.ells.empty()) {
      for (std::uint32_t ell = 2; ell <= 1024 && ell <= s.n + 1; ell *= 2) s.ells.push_back(ell);
    }
    report = bot::theta_gap_survey(s.n, s.trials, s.ells, cfg.seed);
    cfg.extra["trials"] = s.trials;
    plot << "ell,median_max_gap\n";
    for (std::size_t k = 0; k < report.details["ells"].size(); ++k) {
      plot << report.details["ells"][k].get<std::uint32_t>() << ','
           << report.details["median_gaps"][k].get<double>() << '\n';
    }
  } else {
    throw UsageError("stats: unknown test " + s.test);
  }
  cfg.n = s.n;

  if (!s.plot.empty()) {
    std::ofstream f(s.plot, std::ios::binary);
    if (!f) throw UsageError("cannot write " + s.plot);
    f << comment_header(cfg) << plot.str();
  }
  if (s.format == "json") {
    Sink sink(g.output);
    sink.out() << json{{"header", cfg.header()}, {"report", report.to_json()}}.dump(2) << '\n';
  } else {
    std::cout << comment_header(cfg);
    print_table(report);
  }
  return report.passed() ? kExitOk : kExitGate;
}

int run_render(const GlobalOptions& g, std::size_t n, const std::string& mode, std::size_t frames,
               const std::string& dir) {
  RunConfig cfg{Subcommand::kRender, n, resolve_seed(g), "svg", dir,
                {{"mode", mode}, {"frames", frames}}};
  const bot::LabeledBinaryTree t = bot::sample_uniform(n, cfg.seed);
  const bot::ErasureChain chain = bot::erasure_chain_fast(t);
  const bot::ColorScale scale{
      mode == "branch-time" ? bot::ColorMode::kBranchTime : bot::ColorMode::kLeafTime, n};
  bot::RenderOptions options;
  options.header_comment = cfg.header().dump();

  fs::create_directories(dir);
  if (frames == 0) {
    write_file(fs::path(dir) / "tree.svg", bot::render_svg(t, chain, scale, options));
  } else {
    const auto docs = bot::render_frames(t, chain, scale, frames, options);
    for (std::size_t i = 0; i < docs.size(); ++i) {
      std::ostringstream name;
      name << "frame_" << std::setw(4) << std::setfill('0') << i << ".svg";
      write_file(fs::path(dir) / name.str(), docs[i]);
    }
  }
  write_file(fs::path(dir) / "coloring.csv", comment_header(cfg) + bot::coloring_to_csv(t, chain));
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Best-of-three leaf erasure on labeled binary trees"};
  app.set_version_flag("--version", std::string(bot::kVersion));
  app.require_subcommand(1);

  GlobalOptions g;
  app.add_option("--seed", g.seed, "master seed (default: $BOT_SEED, else built-in)");
  app.add_option("--stream", g.stream, "seed stream");
  app.add_flag("--fresh-seed", g.fresh_seed, "draw the master seed from the system");
  app.add_option("-o,--output", g.output, "output file (default stdout)");

  int status = kExitOk;
  std::size_t n = 0;
  std::size_t count = 1;
  std::string format = "canonical";
  auto* sample = app.add_subcommand("sample", "uniform labeled trees of size n");
  sample->add_option("--n", n, "size")->required();
  sample->add_option("--count", count, "number of trees");
  sample->add_option("--format", format)->check(CLI::IsMember({"canonical", "jsonl"}));
  sample->callback([&] { status = run_sample(g, n, count, format); });

  unsigned enum_n = 0;
  auto* enumerate = app.add_subcommand("enumerate", "all labeled trees of size n <= 7");
  enumerate->add_option("--n", enum_n, "size")->required()->check(CLI::Range(0u, 7u));
  enumerate->callback([&] { status = run_enumerate(g, enum_n); });

  std::string tree_text;
  std::optional<std::size_t> erase_n;
  std::string erase_format = "jsonl";
  auto* erase = app.add_subcommand("erase", "full erasure chain of a tree");
  erase->add_option("tree", tree_text, "tree in canonical form");
  erase->add_option("--n", erase_n, "sample a uniform tree of this size instead");
  erase->add_option("--format", erase_format)->check(CLI::IsMember({"jsonl", "csv"}));
  erase->callback([&] { status = run_erase(g, tree_text, erase_n, erase_format); });

  std::size_t from = 0;
  std::size_t to = 0;
  std::string emit = "final";
  auto* grow = app.add_subcommand("grow", "uniform growth chain");
  grow->add_option("--from-size", from, "size of the uniform starting tree");
  grow->add_option("--to-size", to, "final size")->required();
  grow->add_option("--emit", emit)->check(CLI::IsMember({"final", "replay-log"}));
  grow->callback([&] { status = run_grow(g, from, to, emit); });

  std::string level = "quick";
  auto* verify = app.add_subcommand("verify", "exact property checks");
  verify->add_option("level", level)->check(CLI::IsMember({"quick", "exhaustive"}));
  verify->callback([&] { status = run_verify(g, level); });

  StatsOptions s;
  auto* stats = app.add_subcommand("stats", "statistical diagnostics");
  stats->add_option("test", s.test)
      ->check(CLI::IsMember({"chi2", "growth-chi2", "scaling", "theta-gaps"}));
  stats->add_option("--n", s.n, "tree size");
  stats->add_option("--samples", s.samples, "samples for chi2 tests");
  stats->add_option("--t", s.t, "time fraction for scaling")->check(CLI::Range(0.0, 1.0));
  stats->add_option("--trials", s.trials, "trials (scaling) or trees (theta-gaps)");
  stats->add_flag("--unrescaled", s.unrescaled, "negative control: drop the sqrt(t) factor");
  stats->add_option("--ells", s.ells, "span sizes for theta-gaps");
  stats->add_option("--format", s.format)->check(CLI::IsMember({"table", "json"}));
  stats->add_option("--plot", s.plot, "write plot data as CSV");
  stats->callback([&] { status = run_stats(g, s); });

  std::size_t render_n = 0;
  std::string mode = "leaf-time";
  std::size_t frames = 0;
  std::string dir;
  auto* render = app.add_subcommand("render", "SVG colored by erasure time");
  render->add_option("--n", render_n, "size")->required();
  render->add_option("--mode", mode)->check(CLI::IsMember({"leaf-time", "branch-time"}));
  render->add_option("--frames", frames, "frame count (0: a single picture)");
  render->add_option("--out", dir, "output directory")->required();
  render->callback([&] { status = run_render(g, render_n, mode, frames, dir); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  } catch (const UsageError& e) {
    std::cerr << "bot: " << e.what() << '\n';
    return kExitUsage;
  } catch (const bot::Error& e) {
    std::cerr << "bot: " << e.what() << '\n';
    return kExitUsage;
  }
  return status;
}
