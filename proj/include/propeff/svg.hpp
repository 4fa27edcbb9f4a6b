#pragma once

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "propeff/instance_io.hpp"

namespace propeff {

// Static 2-D figure: cone wedge from the origin, the blocks of A, D markers,
// x0, and an optional witness arrow. Instances in other dimensions are
// rejected by the CLI before reaching this point.

namespace detail {

struct SvgFrame {
  double min_x = -1, max_x = 1, min_y = -1, max_y = 1;
  static constexpr double size = 480.0;

  void grow(const Vec& p) {
    min_x = std::min(min_x, p[0] - 1);
    max_x = std::max(max_x, p[0] + 1);
    min_y = std::min(min_y, p[1] - 1);
    max_y = std::max(max_y, p[1] + 1);
  }
  double sx(double x) const { return (x - min_x) / (max_x - min_x) * size; }
  double sy(double y) const { return size - (y - min_y) / (max_y - min_y) * size; }
  double reach() const { return 2.0 * std::max(max_x - min_x, max_y - min_y); }
};

inline std::string svg_point(const SvgFrame& fr, const Vec& p, const char* color,
                             double r = 4.0) {
  std::ostringstream os;
  os << "<circle cx=\"" << fr.sx(p[0]) << "\" cy=\"" << fr.sy(p[1]) << "\" r=\""
     << r << "\" fill=\"" << color << "\"/>\n";
  return os.str();
}

}  // namespace detail

inline std::string render_svg(const InstanceFile& inst,
                              const std::optional<Vec>& witness = std::nullopt) {
  if (inst.space.dim != 2)
    throw ValidationError("svg rendering supports 2-D instances only");
  detail::SvgFrame fr;
  for (const auto& b : inst.set.blocks)
    for (const auto& v : b.vertices) fr.grow(v);
  for (const auto& g : inst.cone_gens) fr.grow(g);
  if (inst.x0) fr.grow(*inst.x0);
  if (inst.approx)
    for (const auto& d : inst.approx->d_points) fr.grow(Vec(inst.approx->eps * d));

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fr.size
     << "\" height=\"" << fr.size << "\" viewBox=\"0 0 " << fr.size << " "
     << fr.size << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  // Axes.
  os << "<line x1=\"" << fr.sx(fr.min_x) << "\" y1=\"" << fr.sy(0) << "\" x2=\""
     << fr.sx(fr.max_x) << "\" y2=\"" << fr.sy(0)
     << "\" stroke=\"#ddd\" stroke-width=\"1\"/>\n";
  os << "<line x1=\"" << fr.sx(0) << "\" y1=\"" << fr.sy(fr.min_y) << "\" x2=\""
     << fr.sx(0) << "\" y2=\"" << fr.sy(fr.max_y)
     << "\" stroke=\"#ddd\" stroke-width=\"1\"/>\n";

  // Cone wedge: origin plus the extreme rays stretched to the frame.
  auto cone = inst.cone();
  const auto& gens = cone.generators();
  if (!gens.empty()) {
    const double R = fr.reach();
    os << "<polygon points=\"" << fr.sx(0) << "," << fr.sy(0);
    for (const auto& g : gens)
      os << " " << fr.sx(R * g[0]) << "," << fr.sy(R * g[1]);
    os << "\" fill=\"#74a9cf\" fill-opacity=\"0.35\" stroke=\"#2b8cbe\"/>\n";
  }

  // Blocks of A.
  for (const auto& b : inst.set.blocks) {
    if (b.vertices.size() == 1) {
      os << detail::svg_point(fr, b.vertices[0], "#d94801");
      continue;
    }
    // Order hull vertices by angle about the centroid.
    Vec c = Vec::Zero(2);
    for (const auto& v : b.vertices) c += v;
    c /= double(b.vertices.size());
    std::vector<Vec> ordered = b.vertices;
    std::sort(ordered.begin(), ordered.end(), [&](const Vec& a, const Vec& d) {
      return std::atan2(a[1] - c[1], a[0] - c[0]) <
             std::atan2(d[1] - c[1], d[0] - c[0]);
    });
    os << "<polygon points=\"";
    for (const auto& v : ordered) os << fr.sx(v[0]) << "," << fr.sy(v[1]) << " ";
    os << "\" fill=\"#fd8d3c\" fill-opacity=\"0.5\" stroke=\"#d94801\" "
          "stroke-width=\"2\"/>\n";
  }

  // Approximation set markers.
  if (inst.approx)
    for (const auto& d : inst.approx->d_points)
      os << detail::svg_point(fr, Vec(inst.approx->eps * d), "#31a354", 3.0);

  if (inst.x0) {
    os << detail::svg_point(fr, *inst.x0, "#000", 4.5);
    if (witness) {
      Vec tip = *inst.x0 + *witness;
      os << "<line x1=\"" << fr.sx((*inst.x0)[0]) << "\" y1=\""
         << fr.sy((*inst.x0)[1]) << "\" x2=\"" << fr.sx(tip[0]) << "\" y2=\""
         << fr.sy(tip[1])
         << "\" stroke=\"#cb181d\" stroke-width=\"2.5\" "
            "marker-end=\"url(#tip)\"/>\n";
    }
  }
  os << "<defs><marker id=\"tip\" markerWidth=\"8\" markerHeight=\"8\" "
        "refX=\"6\" refY=\"3\" orient=\"auto\"><path d=\"M0,0 L6,3 L0,6 z\" "
        "fill=\"#cb181d\"/></marker></defs>\n";
  os << "</svg>\n";
  return os.str();
}

inline void write_svg(const std::string& path, const InstanceFile& inst,
                      const std::optional<Vec>& witness = std::nullopt) {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot open svg output path: " + path);
  out << render_svg(inst, witness);
}

}  // namespace propeff
