#pragma once

#include <algorithm>
#include <cmath>
#include <ostream>
#include <string>
#include <vector>

#include "sweep.hpp"

namespace ghatom {

namespace detail {

struct Panel {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

inline void draw_panel(std::ostream& os, const Panel& p, double left,
                       double top, double width, double height,
                       const std::string& xlabel, bool with_x_axis_label) {
  double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
  for (size_t i = 0; i < p.x.size(); ++i) {
    if (!std::isfinite(p.y[i])) continue;
    xmin = std::min(xmin, p.x[i]);
    xmax = std::max(xmax, p.x[i]);
    ymin = std::min(ymin, p.y[i]);
    ymax = std::max(ymax, p.y[i]);
  }
  if (xmin > xmax) {
    xmin = 0;
    xmax = 1;
    ymin = 0;
    ymax = 1;
  }
  if (ymax - ymin < 1e-300) {
    ymin -= 0.5;
    ymax += 0.5;
  }
  auto sx = [&](double v) {
    return left + (v - xmin) / (xmax - xmin) * width;
  };
  auto sy = [&](double v) {
    return top + height - (v - ymin) / (ymax - ymin) * height;
  };

  os << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << width
     << "\" height=\"" << height
     << "\" fill=\"none\" stroke=\"black\" stroke-width=\"1\"/>\n";
  os << "<polyline fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"1.2\" "
        "points=\"";
  bool open = false;
  for (size_t i = 0; i < p.x.size(); ++i) {
    if (!std::isfinite(p.y[i])) {
      if (open) {
        os << "\"/>\n<polyline fill=\"none\" stroke=\"#1f77b4\" "
              "stroke-width=\"1.2\" points=\"";
        open = false;
      }
      continue;
    }
    os << sx(p.x[i]) << ',' << sy(p.y[i]) << ' ';
    open = true;
  }
  os << "\"/>\n";
  os << "<text x=\"" << left + 4 << "\" y=\"" << top + 14
     << "\" font-size=\"12\">" << p.label << "</text>\n";
  os << "<text x=\"" << left - 6 << "\" y=\"" << top + 12
     << "\" font-size=\"10\" text-anchor=\"end\">" << ymax << "</text>\n";
  os << "<text x=\"" << left - 6 << "\" y=\"" << top + height
     << "\" font-size=\"10\" text-anchor=\"end\">" << ymin << "</text>\n";
  if (with_x_axis_label) {
    os << "<text x=\"" << left << "\" y=\"" << top + height + 16
       << "\" font-size=\"10\">" << xmin << "</text>\n";
    os << "<text x=\"" << left + width << "\" y=\"" << top + height + 16
       << "\" font-size=\"10\" text-anchor=\"end\">" << xmax << "</text>\n";
    os << "<text x=\"" << left + width / 2 << "\" y=\"" << top + height + 30
       << "\" font-size=\"12\" text-anchor=\"middle\">" << xlabel
       << "</text>\n";
  }
}

}  // namespace detail

// Static stacked line charts for one channel of a sweep (SVG 1.1).
inline void write_channel_svg(std::ostream& os,
                              const std::vector<SweepRow>& rows, Channel ch) {
  detail::Panel mag, phase, shift;
  mag.label = ch == Channel::R ? "absR1sq" : "absT1sq";
  phase.label = ch == Channel::R ? "ThetaR" : "ThetaT";
  shift.label = ch == Channel::R ? "yR" : "yT";
  for (const SweepRow& r : rows) {
    mag.x.push_back(r.theta_deg);
    phase.x.push_back(r.theta_deg);
    shift.x.push_back(r.theta_deg);
    mag.y.push_back(ch == Channel::R ? r.absR1sq : r.absT1sq);
    phase.y.push_back(ch == Channel::R ? r.theta_R : r.theta_T);
    shift.y.push_back(ch == Channel::R ? r.y_R : r.y_T);
  }

  const double w = 640, panel_h = 150, pad = 70, gap = 24;
  const double total_h = 3 * panel_h + 2 * gap + 60;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\""
     << w + pad + 20 << "\" height=\"" << total_h << "\">\n";
  detail::draw_panel(os, mag, pad, 10, w, panel_h, "theta_deg", false);
  detail::draw_panel(os, phase, pad, 10 + panel_h + gap, w, panel_h,
                     "theta_deg", false);
  detail::draw_panel(os, shift, pad, 10 + 2 * (panel_h + gap), w, panel_h,
                     "theta_deg", true);
  os << "</svg>\n";
}

}  // namespace ghatom
