#include "bot/render.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "bot/diagnostics.hpp"

namespace bot {

std::string format_fixed4(double v) {
  const long long q = std::llround(v * 10000.0);
  if (q == 0) return "0.0000";
  const unsigned long long a = q < 0 ? static_cast<unsigned long long>(-q) : q;
  std::string frac = std::to_string(a % 10000);
  frac.insert(0, 4 - frac.size(), '0');
  return (q < 0 ? "-" : "") + std::to_string(a / 10000) + "." + frac;
}

namespace {

Point on_circle(double radius, double angle) { return {radius * std::cos(angle), radius * std::sin(angle)}; }

// Parameter s > from where the line s*u meets the line through p and q, or
// +inf.
double ray_hits_line(Point u, double from, Point p, Point q) {
  const Point d{q.x - p.x, q.y - p.y};
  const double det = u.x * -d.y + d.x * u.y;
  if (std::abs(det) < 1e-300) return std::numeric_limits<double>::infinity();
  const double s = (p.x * -d.y + d.x * p.y) / det;
  return s > from ? s : std::numeric_limits<double>::infinity();
}

}  // namespace

Layout layout_radial(const LabeledBinaryTree& t) {
  Layout layout;
  layout.positions.assign(t.arena_size(), std::nullopt);

  const auto order = t.preorder();
  std::vector<std::uint32_t> depth(t.arena_size(), 0);
  for (NodeId v : order) {
    if (v != t.root()) depth[v.index()] = depth[t.parent(v).index()] + 1;
  }
  const double radius = static_cast<double>(tree_height(t));

  // Leaf slots in plane order, the root taking slot 0.
  std::vector<std::uint32_t> first(t.arena_size(), 0);
  std::vector<std::uint32_t> last(t.arena_size(), 0);
  std::uint32_t next_leaf = 1;
  for (NodeId v : order) {
    if (v != t.root() && t.is_leaf(v)) first[v.index()] = last[v.index()] = next_leaf++;
  }
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    if (t.is_branching(*it)) {
      first[it->index()] = first[t.left(*it).index()];
      last[it->index()] = last[t.right(*it).index()];
    }
  }

  const double slots = static_cast<double>(next_leaf);
  const auto angle = [&](double slot) { return -std::numbers::pi / 2.0 + 2.0 * std::numbers::pi * slot / slots; };
  for (NodeId v : order) {
    Point p;
    if (t.is_leaf(v)) {
      p = on_circle(radius, angle(v == t.root() ? 0.0 : first[v.index()]));
    } else {
      const double mid = angle((first[v.index()] + last[v.index()]) / 2.0);
      const Point u{std::cos(mid), std::sin(mid)};
      const Point a = on_circle(radius, angle(first[v.index()] - 0.5));
      const Point b = on_circle(radius, angle(last[v.index()] + 0.5));
      const Point m = on_circle(radius, angle(last[t.left(v).index()] + 0.5));
      // Signed radii along u where the ray enters (chord ab) and leaves the
      // triangle abm.
      const double lo = (a.x + b.x) / 2.0 * u.x + (a.y + b.y) / 2.0 * u.y;
      const double hi = std::min({ray_hits_line(u, lo, a, m), ray_hits_line(u, lo, m, b), radius});
      const double margin = (hi - lo) / 8.0;
      const double r = std::clamp(static_cast<double>(depth[v.index()]), lo + margin, hi - margin);
      p = {r * u.x, r * u.y};
    }
    layout.positions[v.index()] = p;
    if (v == order.front()) {
      layout.min = layout.max = p;
    } else {
      layout.min = {std::min(layout.min.x, p.x), std::min(layout.min.y, p.y)};
      layout.max = {std::max(layout.max.x, p.x), std::max(layout.max.y, p.y)};
    }
  }
  return layout;
}

std::string ColorScale::color(std::uint32_t time) const {
  double s = 0.0;
  if (n > 1) {
    const double clamped = std::clamp<double>(time, 1.0, static_cast<double>(n));
    s = (clamped - 1.0) / static_cast<double>(n - 1);
  } else if (time > n) {
    s = 1.0;
  }
  const auto red = static_cast<unsigned>(std::lround(255.0 * s));
  const unsigned blue = 255 - red;
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out = "#";
  out += kHex[red >> 4];
  out += kHex[red & 15];
  out += "00";
  out += kHex[blue >> 4];
  out += kHex[blue & 15];
  return out;
}

namespace {

void check_chain(const LabeledBinaryTree& t, const ErasureChain& chain) {
  if (chain.initial_size != t.size() || chain.erasure_time.size() != t.arena_size() ||
      chain.leaf_erasure_time.size() != t.arena_size()) {
    throw Error("render: chain was not computed for this tree");
  }
  for (NodeId v : t.preorder()) {
    const bool timed = t.is_leaf(v) ? chain.leaf_erasure_time[v.index()] != 0
                                    : chain.erasure_time[v.index()] != 0;
    if (!timed) throw Error("render: chain was not computed for this tree");
  }
}

std::string node_color(const LabeledBinaryTree& t, const ErasureChain& chain,
                       const ColorScale& scale, NodeId v) {
  if (t.is_branching(v)) return scale.color(chain.erasure_time[v.index()]);
  if (scale.mode == ColorMode::kBranchTime) return kNeutralColor;
  return scale.color(chain.leaf_erasure_time[v.index()]);
}

// Draws the nodes still present after `steps` erasures.
std::string render_document(const LabeledBinaryTree& t, const ErasureChain& chain,
                            const ColorScale& scale, const RenderOptions& options,
                            const Layout& layout, std::size_t steps) {
  const double half = options.canvas / 2.0;
  const double margin = 10.0;
  const double extent = std::max({std::abs(layout.min.x), std::abs(layout.min.y),
                                  std::abs(layout.max.x), std::abs(layout.max.y), 1.0});
  const double unit = (half - margin) / extent;
  const auto sx = [&](const Point& p) { return format_fixed4(half + unit * p.x); };
  const auto sy = [&](const Point& p) { return format_fixed4(half - unit * p.y); };
  const double dot =
      std::clamp(40.0 / std::sqrt(static_cast<double>(t.leaf_count()) + 1.0), 0.6, 6.0);
  const std::string canvas = format_fixed4(options.canvas);

  std::string svg;
  svg.reserve(160 * t.leaf_count() * 2);
  svg += "<?xml version=\"1.0\" encoding=\"UTF-8\" standalone=\"no\"?>\n";
  if (!options.header_comment.empty()) svg += "<!-- " + options.header_comment + " -->\n";
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" + canvas +
         "\" height=\"" + canvas + "\" viewBox=\"0 0 " + canvas + " " + canvas + "\">\n";
  svg += "<rect x=\"0\" y=\"0\" width=\"" + canvas + "\" height=\"" + canvas +
         "\" fill=\"#ffffff\"/>\n";

  const auto alive = [&](NodeId v) {
    if (v == t.root()) return true;
    const NodeId p = t.parent(v);
    return p == t.root() || chain.erasure_time[p.index()] > steps;
  };
  const auto order = t.preorder();

  if (options.draw_edges) {
    svg += "<g stroke-width=\"" + format_fixed4(dot / 2.0) + "\">\n";
    for (NodeId v : order) {
      if (v == t.root() || !alive(v)) continue;
      const Point& a = layout.at(t.parent(v));
      const Point& b = layout.at(v);
      svg += "<line x1=\"" + sx(a) + "\" y1=\"" + sy(a) + "\" x2=\"" + sx(b) + "\" y2=\"" +
             sy(b) + "\" stroke=\"" + node_color(t, chain, scale, v) + "\"/>\n";
    }
    svg += "</g>\n";
  }
  svg += "<g>\n";
  const std::string r = format_fixed4(dot);
  for (NodeId v : order) {
    if (!alive(v)) continue;
    const Point& p = layout.at(v);
    svg += "<circle id=\"n" + std::to_string(v.value) + "\" cx=\"" + sx(p) + "\" cy=\"" + sy(p) +
           "\" r=\"" + r + "\" fill=\"" + node_color(t, chain, scale, v) + "\"/>\n";
  }
  svg += "</g>\n</svg>\n";
  return svg;
}

}  // namespace

std::string render_svg(const LabeledBinaryTree& t, const ErasureChain& chain,
                       const ColorScale& scale, const RenderOptions& options) {
  check_chain(t, chain);
  return render_document(t, chain, scale, options, layout_radial(t), 0);
}

std::vector<std::size_t> frame_sizes(std::size_t n, std::size_t frames) {
  if (frames == 0) throw Error("render: need at least one frame");
  std::vector<std::size_t> sizes;
  sizes.reserve(frames);
  if (frames == 1) return {n};
  for (std::size_t i = 0; i < frames; ++i) {
    // n - round(i * n / (frames - 1)) in integer arithmetic.
    const std::size_t removed = (2 * i * n + (frames - 1)) / (2 * (frames - 1));
    sizes.push_back(n - removed);
  }
  return sizes;
}

std::vector<std::string> render_frames(const LabeledBinaryTree& t, const ErasureChain& chain,
                                       const ColorScale& scale, std::size_t frames,
                                       const RenderOptions& options) {
  check_chain(t, chain);
  const Layout layout = layout_radial(t);
  std::vector<std::string> out;
  for (std::size_t k : frame_sizes(t.size(), frames)) {
    RenderOptions frame_options = options;
    const std::string note = "frame size " + std::to_string(k);
    frame_options.header_comment =
        options.header_comment.empty() ? note : options.header_comment + "; " + note;
    out.push_back(render_document(t, chain, scale, frame_options, layout, t.size() - k));
  }
  return out;
}

}  // namespace bot
