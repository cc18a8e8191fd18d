#pragma once

// Radial layout and SVG export of a tree colored by erasure time.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bot/erasure.hpp"
#include "bot/tree.hpp"

namespace bot {

struct Point {
  double x = 0.0;
  double y = 0.0;
};

struct Layout {
  std::vector<std::optional<Point>> positions;  // indexed by NodeId
  Point min;
  Point max;

  [[nodiscard]] const Point& at(NodeId v) const { return *positions[v.index()]; }
};

// All n+2 leaves in plane order at equal angular steps on a circle of radius
// height(t), the root leaf at the bottom. A branching node sits on the ray
// at the mean angle of its leaf arc, at radius equal to its depth, clamped
// into the triangle spanned by the chord of its arc and the chords of its
// children's arcs. Those triangles have disjoint interiors, so straight
// edges never cross.
Layout layout_radial(const LabeledBinaryTree& t);

enum class ColorMode {
  // Leaves by the step they disappear, branching nodes by the step they
  // are cut.
  kLeafTime,
  // Branching nodes by the step they are cut; leaves neutral gray.
  kBranchTime,
};

struct ColorScale {
  ColorMode mode = ColorMode::kLeafTime;
  std::size_t n = 0;  // ramp spans erasure times [1, n]

  // "#rrggbb" on the blue-to-red ramp; times above n clamp to red.
  [[nodiscard]] std::string color(std::uint32_t time) const;
};

inline constexpr const char* kNeutralColor = "#9a9a9a";

struct RenderOptions {
  bool draw_edges = true;
  double canvas = 1000.0;
  // Prepended as an XML comment when non-empty.
  std::string header_comment;
};

// Coordinates are printed with exactly four decimals (round half away from
// zero), so output is byte-identical for identical inputs.
std::string render_svg(const LabeledBinaryTree& t, const ErasureChain& chain,
                       const ColorScale& scale, const RenderOptions& options = {});

// Sizes shown by a K-frame sequence: n, ..., 0 at evenly rounded steps.
std::vector<std::size_t> frame_sizes(std::size_t n, std::size_t frames);

// One SVG per entry of frame_sizes: the tree T_k inside the chain, drawn on
// the layout of the full tree.
std::vector<std::string> render_frames(const LabeledBinaryTree& t, const ErasureChain& chain,
                                       const ColorScale& scale, std::size_t frames,
                                       const RenderOptions& options = {});

std::string format_fixed4(double v);

}  // namespace bot
