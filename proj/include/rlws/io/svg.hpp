#pragma once

// Static SVG phase portraits of the first integral on the half disk.

#include <array>
#include <cmath>
#include <future>
#include <ostream>
#include <string>
#include <vector>

#include "rlws/io/format.hpp"
#include "rlws/level_curve.hpp"
#include "rlws/phase_core.hpp"

namespace rlws::io {

struct PortraitOptions {
  int grid_n = 256;
  std::vector<double> levels;  // empty: evenly spaced levels inside the attained range
  bool show_gamma = true;
  bool show_singular_locus = true;
};

struct Portrait {
  std::vector<double> levels;
  std::vector<ContourSet> contours;  // one per level, same order
  std::vector<bool> point_levels;    // level is the maximum: drawn as a marker
};

inline std::vector<double> default_levels(const Coefficients& co, int count = 10) {
  const CriticalData cd = critical_data(co);
  std::vector<double> out;
  for (int k = 1; k <= count; ++k)
    out.push_back(cd.alpha_min + (cd.alpha0 - cd.alpha_min) * k / (count + 1));
  out.push_back(cd.alpha0);
  return out;
}

/// Computes contours for every level, one task per level; results keep the
/// order of `opts.levels`.
inline Portrait compute_portrait(const Coefficients& co, const PortraitOptions& opts,
                                 const Tolerances& tol = {}) {
  if (opts.grid_n < 16 || opts.grid_n > 4096)
    throw Error(ErrorCode::InvalidArgument, "grid_n must lie in [16, 4096]");
  Portrait p;
  p.levels = opts.levels.empty() ? default_levels(co) : opts.levels;
  const CriticalData cd = critical_data(co);
  std::vector<std::future<ContourSet>> jobs;
  for (double alpha : p.levels) {
    const bool point = std::abs(alpha - cd.alpha0) <= level_tolerance(cd, tol);
    p.point_levels.push_back(point);
    if (point) {
      std::promise<ContourSet> done;
      done.set_value(ContourSet{alpha, {}, 0.0, 0.0});
      jobs.push_back(done.get_future());
    } else {
      jobs.push_back(std::async(std::launch::async,
                                [&co, alpha, n = opts.grid_n] { return contour_oracle(co, alpha, n); }));
    }
  }
  for (auto& j : jobs) p.contours.push_back(j.get());
  return p;
}

namespace detail {

inline constexpr double kSvgScale = 400.0;
inline constexpr double kSvgMargin = 40.0;

inline std::string svg_x(double u) { return format_fixed(kSvgMargin + kSvgScale * u, 6); }
inline std::string svg_y(double v) { return format_fixed(kSvgMargin + kSvgScale * (1.0 - v), 6); }

inline const char* level_color(std::size_t i) {
  static constexpr std::array<const char*, 10> palette{
      "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
      "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};
  return palette[i % palette.size()];
}

inline void svg_polyline(std::ostream& os, const std::vector<PhasePoint>& pts, const char* cls,
                         const std::string& style, const std::string& extra = {}) {
  if (pts.size() < 2) return;
  os << "<polyline class=\"" << cls << '"' << extra << " style=\"" << style << "\" points=\"";
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (i) os << ' ';
    os << svg_x(pts[i].u) << ',' << svg_y(pts[i].v);
  }
  os << "\"/>\n";
}

inline void svg_marker(std::ostream& os, PhasePoint p, const char* cls, const char* fill,
                       double r = 4.0) {
  os << "<circle class=\"" << cls << "\" cx=\"" << svg_x(p.u) << "\" cy=\"" << svg_y(p.v)
     << "\" r=\"" << format_fixed(r, 6) << "\" fill=\"" << fill << "\"/>\n";
}

// Curve {v^2 = 1 - k u^2}, u in [0, 1/sqrt(k)], both branches joined.
inline std::vector<PhasePoint> ellipse_arc(double k, int n = 200) {
  const double u_max = 1.0 / std::sqrt(k);
  std::vector<PhasePoint> pts;
  for (int i = 0; i <= n; ++i) {
    const double u = u_max * i / n;
    pts.push_back({u, std::sqrt(std::max(0.0, 1.0 - k * u * u))});
  }
  for (int i = n; i >= 0; --i) {
    const double u = u_max * i / n;
    pts.push_back({u, -std::sqrt(std::max(0.0, 1.0 - k * u * u))});
  }
  return pts;
}

}  // namespace detail

inline void write_portrait_svg(std::ostream& os, const Coefficients& co, const Portrait& p,
                               const PortraitOptions& opts, const Tolerances& tol = {}) {
  using detail::kSvgMargin;
  using detail::kSvgScale;
  const CriticalData cd = critical_data(co);
  const std::string width = format_fixed(2.0 * kSvgMargin + kSvgScale, 6);
  const std::string height = format_fixed(2.0 * kSvgMargin + 2.0 * kSvgScale, 6);

  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << width
     << "\" height=\"" << height << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n"
     << "<title>" << kToolName << " phase portrait a=" << format_g(co.a(), 17)
     << " b=" << format_g(co.b(), 17) << " c=" << format_g(co.c(), 17) << "</title>\n"
     << "<rect x=\"0\" y=\"0\" width=\"" << width << "\" height=\"" << height
     << "\" fill=\"#ffffff\"/>\n";

  // Half disk: axis segment and the right half of the unit circle.
  os << "<path class=\"domain\" d=\"M " << detail::svg_x(0.0) << ' ' << detail::svg_y(1.0)
     << " A " << format_fixed(kSvgScale, 6) << ' ' << format_fixed(kSvgScale, 6) << " 0 0 1 "
     << detail::svg_x(0.0) << ' ' << detail::svg_y(-1.0)
     << " Z\" fill=\"#f7f7f7\" stroke=\"#000000\" stroke-width=\"1.5\"/>\n";

  if (opts.show_gamma) {
    // Horizontal-tangent locus: v^2 = 1 - u^2 (1 + tau^2/a^2).
    const double k = 1.0 + cd.tau * cd.tau / (co.a() * co.a());
    detail::svg_polyline(os, detail::ellipse_arc(k), "gamma",
                         "fill:none;stroke:#555555;stroke-width:1;stroke-dasharray:6,4");
  }
  if (opts.show_singular_locus && co.b() > 0.0) {
    const double k = 1.0 + co.a() * co.a() / (4.0 * co.b() * co.b());
    detail::svg_polyline(os, detail::ellipse_arc(k), "singular-locus",
                         "fill:none;stroke:#d62728;stroke-width:1;stroke-dasharray:2,3");
  }

  for (std::size_t i = 0; i < p.levels.size(); ++i) {
    const double alpha = p.levels[i];
    const std::string attr = " data-alpha=\"" + format_g(alpha, 17) + '"';
    os << "<g class=\"level\"" << attr << ">\n";
    if (p.point_levels[i]) {
      detail::svg_marker(os, cd.critical_point(), "level-point", detail::level_color(i), 5.0);
    } else {
      const std::string style =
          std::string("fill:none;stroke-width:1.5;stroke:") + detail::level_color(i);
      for (const auto& line : p.contours[i].polylines)
        detail::svg_polyline(os, line, "contour", style);
      const BoundaryIntersections bi = boundary_intersections(co, alpha, tol);
      for (PhasePoint q : bi.axis) detail::svg_marker(os, q, "axis-hit", "#000000", 3.0);
      for (PhasePoint q : bi.circle) detail::svg_marker(os, q, "circle-hit", "#000000", 3.0);
    }
    os << "</g>\n";
  }

  detail::svg_marker(os, cd.critical_point(), "critical", "#000000", 3.5);
  os << "</svg>\n";
}

}  // namespace rlws::io
