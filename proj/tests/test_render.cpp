#include <gtest/gtest.h>

#include <cmath>
#include <regex>

#include "bot/diagnostics.hpp"
#include "bot/io.hpp"
#include "bot/render.hpp"
#include "bot/sampling.hpp"

using namespace bot;

namespace {

std::size_t count_of(const std::string& text, const std::string& needle) {
  std::size_t c = 0;
  for (auto p = text.find(needle); p != std::string::npos; p = text.find(needle, p + 1)) ++c;
  return c;
}

// Swaps the children of every branching node.
std::string mirror(const std::string& canonical) {
  std::string body = canonical.substr(2);
  std::vector<std::string> stack;
  std::string token;
  for (char c : body) {
    if (std::isdigit(static_cast<unsigned char>(c))) {
      token += c;
      continue;
    }
    if (!token.empty()) {
      stack.push_back(token);
      token.clear();
    }
    if (c == ')') {
      const std::string right = stack.back();
      stack.pop_back();
      const std::string left = stack.back();
      stack.pop_back();
      stack.push_back("(" + right + "," + left + ")");
    }
  }
  if (!token.empty()) stack.push_back(token);
  return "0:" + stack.back();
}

double cross(const Point& o, const Point& a, const Point& b) {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

bool same(const Point& a, const Point& b) {
  return std::abs(a.x - b.x) < 1e-12 && std::abs(a.y - b.y) < 1e-12;
}

// Segments ab and cd cross at a point interior to both. Edges sharing an
// endpoint are never reported.
bool crosses(const Point& a, const Point& b, const Point& c, const Point& d) {
  if (same(a, c) || same(a, d) || same(b, c) || same(b, d)) return false;
  const double eps = 1e-12;
  const double d1 = cross(a, b, c);
  const double d2 = cross(a, b, d);
  const double d3 = cross(c, d, a);
  const double d4 = cross(c, d, b);
  return ((d1 > eps && d2 < -eps) || (d1 < -eps && d2 > eps)) &&
         ((d3 > eps && d4 < -eps) || (d3 < -eps && d4 > eps));
}

std::size_t crossing_count(const LabeledBinaryTree& t) {
  const Layout layout = layout_radial(t);
  std::vector<std::pair<Point, Point>> edges;
  for (NodeId v : t.preorder()) {
    if (v != t.root()) edges.emplace_back(layout.at(t.parent(v)), layout.at(v));
  }
  std::size_t c = 0;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    for (std::size_t j = i + 1; j < edges.size(); ++j) {
      c += crosses(edges[i].first, edges[i].second, edges[j].first, edges[j].second) ? 1 : 0;
    }
  }
  return c;
}

TEST(Layout, MinimalTree) {
  const auto t = minimal_tree();
  const auto layout = layout_radial(t);
  // Root at the bottom, the single other leaf straight up, radius 1.
  EXPECT_NEAR(layout.at(t.root()).x, 0.0, 1e-15);
  EXPECT_NEAR(layout.at(t.root()).y, -1.0, 1e-15);
  EXPECT_NEAR(layout.at(t.top()).x, 0.0, 1e-15);
  EXPECT_NEAR(layout.at(t.top()).y, 1.0, 1e-15);
}

TEST(Layout, LeavesOnCircleOfRadiusHeight) {
  const auto t = sample_uniform(50, Seed{59, 0});
  const auto layout = layout_radial(t);
  const double h = static_cast<double>(tree_height(t));
  for (NodeId v : t.preorder()) {
    const Point& p = layout.at(v);
    if (t.is_leaf(v)) {
      EXPECT_NEAR(std::hypot(p.x, p.y), h, 1e-9);
    } else {
      EXPECT_LT(std::hypot(p.x, p.y), h);
    }
  }
}

TEST(Layout, MirrorTreeMirrorsLayout) {
  for (std::uint64_t s = 0; s < 10; ++s) {
    const auto t = sample_uniform(25, Seed{60, s});
    const auto m = parse_tree(mirror(canonical_encoding(t)));
    const auto lt = layout_radial(t);
    const auto lm = layout_radial(m);
    for (std::uint32_t label = 0; label <= 26; ++label) {
      const Point& p = lt.at(*t.leaf_with_label(label));
      const Point& q = lm.at(*m.leaf_with_label(label));
      ASSERT_NEAR(p.x, -q.x, 1e-9);
      ASSERT_NEAR(p.y, q.y, 1e-9);
    }
  }
  EXPECT_EQ(mirror("0:(3,(1,2))"), "0:((2,1),3)");
}

TEST(Layout, NoCrossingsOnSmallShapes) {
  for (unsigned n = 1; n <= 6; ++n) {
    // Labels do not affect the layout; one labeling per shape suffices.
    const std::uint64_t per_shape = labeled_tree_count(n) / catalan(n);
    std::uint64_t index = 0;
    std::size_t shapes = 0;
    for (const auto& t : enumerate(n)) {
      if (index++ % per_shape != 0) continue;
      ASSERT_EQ(crossing_count(t), 0u) << canonical_encoding(t);
      ++shapes;
    }
    EXPECT_EQ(shapes, catalan(n));
  }
}

TEST(Layout, NoCrossingsOnRandomTrees) {
  for (std::uint64_t s = 0; s < 60; ++s) {
    const auto t = sample_uniform(10 + 4 * s, Seed{61, s});
    ASSERT_EQ(crossing_count(t), 0u) << canonical_encoding(t);
  }
}

TEST(Color, EndpointsAndHex) {
  const ColorScale scale{ColorMode::kLeafTime, 100};
  EXPECT_EQ(scale.color(1), "#0000ff");
  EXPECT_EQ(scale.color(100), "#ff0000");
  EXPECT_EQ(scale.color(101), "#ff0000");
  EXPECT_EQ(scale.color(0), "#0000ff");
  const std::regex hex("#[0-9a-f]{6}");
  for (std::uint32_t k = 0; k <= 101; ++k) EXPECT_TRUE(std::regex_match(scale.color(k), hex));
}

TEST(Color, StrictlyMonotoneUpTo256) {
  for (std::size_t n : {2u, 3u, 17u, 255u, 256u}) {
    const ColorScale scale{ColorMode::kLeafTime, n};
    for (std::uint32_t k = 1; k < n; ++k) {
      const auto red = [&](std::uint32_t time) { return std::stoi(scale.color(time).substr(1, 2), nullptr, 16); };
      ASSERT_LT(red(k), red(k + 1)) << n << " " << k;
    }
  }
}

TEST(Color, NonDecreasingAbove256) {
  const ColorScale scale{ColorMode::kLeafTime, 10000};
  int last = -1;
  for (std::uint32_t k = 1; k <= 10000; ++k) {
    const int red = std::stoi(scale.color(k).substr(1, 2), nullptr, 16);
    ASSERT_GE(red, last);
    last = red;
  }
}

TEST(Svg, CensusAndColors) {
  const auto t = sample_uniform(40, Seed{62, 0});
  const auto chain = erasure_chain_fast(t);
  const std::string svg = render_svg(t, chain, ColorScale{ColorMode::kLeafTime, 40});
  EXPECT_EQ(count_of(svg, "<circle"), 2 * 40u + 2);
  EXPECT_EQ(count_of(svg, "<line"), 2 * 40u + 1);
  const std::regex fill("fill=\"([^\"]*)\"");
  const std::regex hex("#[0-9a-f]{6}");
  for (auto it = std::sregex_iterator(svg.begin(), svg.end(), fill); it != std::sregex_iterator(); ++it) {
    EXPECT_TRUE(std::regex_match((*it)[1].str(), hex)) << (*it)[1].str();
  }
  EXPECT_EQ(svg.rfind("<?xml", 0), 0u);
  EXPECT_NE(svg.find("version=\"1.1\""), std::string::npos);
  EXPECT_EQ(svg.find("href"), std::string::npos);
}

TEST(Svg, BranchModeGraysLeaves) {
  const auto t = sample_uniform(10, Seed{62, 1});
  const auto chain = erasure_chain_fast(t);
  const std::string svg = render_svg(t, chain, ColorScale{ColorMode::kBranchTime, 10});
  EXPECT_EQ(count_of(svg, std::string("fill=\"") + kNeutralColor + "\""), 12u);
}

TEST(Svg, Deterministic) {
  const auto t = sample_uniform(300, Seed{63, 0});
  const auto chain = erasure_chain_fast(t);
  RenderOptions options;
  options.header_comment = "run 1";
  const ColorScale scale{ColorMode::kLeafTime, 300};
  EXPECT_EQ(render_svg(t, chain, scale, options), render_svg(t, chain, scale, options));
  EXPECT_NE(render_svg(t, chain, scale, options).find("<!-- run 1 -->"), std::string::npos);
}

TEST(Svg, MismatchedChain) {
  const auto t = sample_uniform(20, Seed{64, 0});
  const auto other = sample_uniform(21, Seed{64, 1});
  const ColorScale scale{ColorMode::kLeafTime, 20};
  EXPECT_THROW(render_svg(t, erasure_chain_fast(other), scale), Error);
  EXPECT_THROW(render_svg(t, ErasureChain{}, scale), Error);
}

TEST(Frames, SizesAndCircleCounts) {
  EXPECT_EQ(frame_sizes(10, 3), (std::vector<std::size_t>{10, 5, 0}));
  EXPECT_EQ(frame_sizes(7, 1), std::vector<std::size_t>{7});
  EXPECT_EQ(frame_sizes(4, 5), (std::vector<std::size_t>{4, 3, 2, 1, 0}));
  EXPECT_THROW(frame_sizes(4, 0), Error);

  const auto t = sample_uniform(30, Seed{65, 0});
  const auto chain = erasure_chain_fast(t);
  const auto docs = render_frames(t, chain, ColorScale{ColorMode::kLeafTime, 30}, 4);
  const auto sizes = frame_sizes(30, 4);
  ASSERT_EQ(docs.size(), 4u);
  for (std::size_t i = 0; i < docs.size(); ++i) {
    EXPECT_EQ(count_of(docs[i], "<circle"), 2 * sizes[i] + 2);
  }
}

TEST(Format, FixedFourDecimals) {
  EXPECT_EQ(format_fixed4(0.0), "0.0000");
  EXPECT_EQ(format_fixed4(-0.00004), "0.0000");
  EXPECT_EQ(format_fixed4(1.23456), "1.2346");
  EXPECT_EQ(format_fixed4(-2.5), "-2.5000");
  EXPECT_EQ(format_fixed4(1000.0), "1000.0000");
  EXPECT_EQ(format_fixed4(0.00006), "0.0001");
}

}  // namespace
