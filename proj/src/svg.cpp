#include "scpo/svg.hpp"

#include <array>

#include <fmt/format.h>

#include "scpo/io.hpp"

namespace scpo {

namespace {

constexpr double kCanvas = 800.0;
constexpr double kMargin = 10.0;

constexpr std::array<const char*, 10> kPalette{"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728",
                                               "#9467bd", "#8c564b", "#e377c2", "#17becf",
                                               "#bcbd22", "#393b79"};

// Maps area coordinates to canvas pixels, y pointing down.
class Viewport {
 public:
  explicit Viewport(const Rect& area) : area_(area) {
    scale_ = (kCanvas - 2 * kMargin) / std::max(area.width(), area.height());
  }
  double x(double v) const { return kMargin + (v - area_.x_lo()) * scale_; }
  double y(double v) const { return kMargin + (area_.y_hi() - v) * scale_; }
  double width() const { return area_.width() * scale_ + 2 * kMargin; }
  double height() const { return area_.height() * scale_ + 2 * kMargin; }

 private:
  const Rect& area_;
  double scale_ = 1.0;
};

}  // namespace

std::string render_svg(const ClusteringResult& result, const Grid& g, const ObstacleSet& obs) {
  const Viewport vp(g.config().area);
  std::string out;
  out += fmt::format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{:.0f}\" height=\"{:.0f}\" "
      "viewBox=\"0 0 {:.2f} {:.2f}\">\n",
      vp.width(), vp.height(), vp.width(), vp.height());
  out +=
      "<defs><pattern id=\"hatch\" width=\"6\" height=\"6\" patternUnits=\"userSpaceOnUse\" "
      "patternTransform=\"rotate(45)\"><line x1=\"0\" y1=\"0\" x2=\"0\" y2=\"6\" "
      "stroke=\"#999\" stroke-width=\"2\"/></pattern></defs>\n";
  out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  out += "<g id=\"obstructed\">\n";
  for (const Cell& c : g.cells()) {
    if (!c.obstructed) continue;
    const Rect& r = c.extent;
    out += fmt::format(
        "<rect x=\"{:.2f}\" y=\"{:.2f}\" width=\"{:.2f}\" height=\"{:.2f}\" fill=\"url(#hatch)\"/>\n",
        vp.x(r.x_lo()), vp.y(r.y_hi()), vp.x(r.x_hi()) - vp.x(r.x_lo()),
        vp.y(r.y_lo()) - vp.y(r.y_hi()));
  }
  out += "</g>\n<g id=\"grid\" stroke=\"#ccc\" stroke-width=\"0.5\">\n";
  const Rect& area = g.config().area;
  for (int i = 0; i <= g.side(); ++i) {
    const double gx = i == g.side() ? area.x_hi() : g.cell(0, i).extent.x_lo();
    const double gy = i == g.side() ? area.y_hi() : g.cell(i, 0).extent.y_lo();
    out += fmt::format("<line x1=\"{0:.2f}\" y1=\"{1:.2f}\" x2=\"{0:.2f}\" y2=\"{2:.2f}\"/>\n",
                       vp.x(gx), vp.y(area.y_lo()), vp.y(area.y_hi()));
    out += fmt::format("<line x1=\"{1:.2f}\" y1=\"{0:.2f}\" x2=\"{2:.2f}\" y2=\"{0:.2f}\"/>\n",
                       vp.y(gy), vp.x(area.x_lo()), vp.x(area.x_hi()));
  }
  out += "</g>\n<g id=\"obstacles\" fill=\"#555\" fill-opacity=\"0.6\" stroke=\"#222\">\n";
  for (const Polygon& poly : obs.obstacles()) {
    out += "<polygon points=\"";
    for (std::size_t i = 0; i < poly.size(); ++i) {
      out += fmt::format("{}{:.2f},{:.2f}", i ? " " : "", vp.x(poly.vertex(i).x),
                         vp.y(poly.vertex(i).y));
    }
    out += "\"/>\n";
  }

  std::vector<int> owner(g.id_capacity(), -1);
  for (const Region& r : result.regions) {
    for (PointId id : r.member_point_ids) owner[id] = static_cast<int>(r.id);
  }
  out += "</g>\n<g id=\"points\">\n";
  for (PointId id = 0; id < g.id_capacity(); ++id) {
    if (!g.is_live(id)) continue;
    const Point p = g.point(id);
    const char* color = owner[id] < 0 ? "#aaaaaa" : kPalette[owner[id] % kPalette.size()];
    out += fmt::format("<circle cx=\"{:.2f}\" cy=\"{:.2f}\" r=\"2\" fill=\"{}\"/>\n", vp.x(p.x),
                       vp.y(p.y), color);
  }
  out += "</g>\n<g id=\"centers\" stroke=\"black\" stroke-width=\"2\">\n";
  for (const Region& r : result.regions) {
    const double cx = vp.x(r.center.x), cy = vp.y(r.center.y);
    out += fmt::format(
        "<line x1=\"{:.2f}\" y1=\"{:.2f}\" x2=\"{:.2f}\" y2=\"{:.2f}\"/>"
        "<line x1=\"{:.2f}\" y1=\"{:.2f}\" x2=\"{:.2f}\" y2=\"{:.2f}\"/>\n",
        cx - 6, cy - 6, cx + 6, cy + 6, cx - 6, cy + 6, cx + 6, cy - 6);
  }
  out += "</g>\n</svg>\n";
  return out;
}

void write_svg(const ClusteringResult& result, const Grid& g, const ObstacleSet& obs,
               const std::filesystem::path& path) {
  write_file_atomic(path, render_svg(result, g, obs));
}

}  // namespace scpo
