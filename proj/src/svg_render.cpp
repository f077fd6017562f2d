#include "devperf/svg_render.hpp"

#include <cstdio>
#include <sstream>

namespace devperf {

namespace {

constexpr double kBarW = 48.0;
constexpr double kGap = 22.0;
constexpr double kPlotTop = 34.0;
constexpr double kBaseline = 306.0;
constexpr double kPlotH = kBaseline - kPlotTop;
constexpr double kLeft = 64.0;

const char* kHitColor = "#4daf4a";
const char* kMissPalette[] = {"#e41a1c", "#377eb8", "#ff7f00", "#984ea3", "#a65628",
                              "#f781bf", "#17becf", "#999999", "#bcbd22", "#a6cee3",
                              "#fb9a99", "#b2df8a", "#fdbf6f", "#cab2d6", "#8c564b"};

std::string esc(const std::string& s) {
  std::string o;
  o.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '&': o += "&amp;"; break;
      case '<': o += "&lt;"; break;
      case '>': o += "&gt;"; break;
      case '"': o += "&quot;"; break;
      case '\'': o += "&apos;"; break;
      default: o += c;
    }
  }
  return o;
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string color_for(const CodeUniverse& u, size_t idx) {
  if (u.codes[idx] == "0") return kHitColor;
  size_t miss_rank = 0;
  for (size_t i = 0; i < idx; ++i)
    if (u.codes[i] != "0") ++miss_rank;
  return kMissPalette[miss_rank % (sizeof kMissPalette / sizeof *kMissPalette)];
}

// Stack order: hit at the bottom, then misses in universe order.
std::vector<size_t> stack_order(const CodeUniverse& u) {
  std::vector<size_t> order;
  for (size_t i = 0; i < u.size(); ++i)
    if (u.codes[i] == "0") order.push_back(i);
  for (size_t i = 0; i < u.size(); ++i)
    if (u.codes[i] != "0") order.push_back(i);
  return order;
}

void draw_bar(std::ostringstream& svg, double x, const ConfusionDistribution& d,
              const CodeUniverse& u, const std::vector<size_t>& order, double height_frac,
              const std::string& label, const std::string& note) {
  if (d.total <= 0) {
    svg << "<text x=\"" << num(x + kBarW / 2) << "\" y=\"" << num(kBaseline - 8)
        << "\" class=\"note\">no errors</text>\n";
  } else {
    std::vector<double> props = d.proportions();
    double y = kBaseline;
    for (size_t idx : order) {
      double h = props[idx] * height_frac * kPlotH;
      if (h <= 0.0) continue;
      y -= h;
      svg << "<rect x=\"" << num(x) << "\" y=\"" << num(y) << "\" width=\"" << num(kBarW)
          << "\" height=\"" << num(h) << "\" fill=\"" << color_for(u, idx) << "\"/>\n";
    }
    svg << "<text x=\"" << num(x + kBarW / 2) << "\" y=\"" << num(y - 5) << "\" class=\"note\">"
        << esc(note) << "</text>\n";
  }
  svg << "<text x=\"" << num(x + kBarW / 2) << "\" y=\"" << num(kBaseline + 14)
      << "\" class=\"lbl\">" << esc(label) << "</text>\n";
}

}  // namespace

std::string render_edp_svg(const EDPResult& edp, const ErrorZoom* zoom) {
  const CodeUniverse& u = zoom ? zoom->miss_universe : edp.universe;
  const auto& bins = zoom ? zoom->per_bin : edp.per_bin;
  const ConfusionDistribution& global = zoom ? zoom->global : edp.global;
  std::vector<size_t> order = stack_order(u);

  size_t n_bars = bins.size() + 1;
  double legend_w = 120.0;
  double width = kLeft + n_bars * (kBarW + kGap) + kGap + legend_w;
  double height = kBaseline + 54.0;

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << num(width)
      << "\" height=\"" << num(height) << "\" viewBox=\"0 0 " << num(width) << ' ' << num(height)
      << "\">\n";
  svg << "<style>text{font-family:monospace}.title{font-size:13px}.lbl{font-size:9px;"
         "text-anchor:middle}.note{font-size:9px;text-anchor:middle}.axis{font-size:9px;"
         "text-anchor:end}.leg{font-size:10px}</style>\n";
  svg << "<rect x=\"0\" y=\"0\" width=\"" << num(width) << "\" height=\"" << num(height)
      << "\" fill=\"white\"/>\n";

  std::string title = zoom ? edp.predictor + " (errors only)" : edp.predictor;
  svg << "<text x=\"" << num(kLeft) << "\" y=\"20\" class=\"title\">" << esc(title)
      << "</text>\n";

  for (int tick = 0; tick <= 4; ++tick) {
    double frac = tick / 4.0;
    double y = kBaseline - frac * kPlotH;
    svg << "<line x1=\"" << num(kLeft - 4) << "\" y1=\"" << num(y) << "\" x2=\""
        << num(width - legend_w) << "\" y2=\"" << num(y)
        << "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n";
    svg << "<text x=\"" << num(kLeft - 8) << "\" y=\"" << num(y + 3) << "\" class=\"axis\">"
        << num(frac * 100) << "%</text>\n";
  }

  double x = kLeft + kGap / 2;
  std::string gnote = zoom ? "n=" + std::to_string(zoom->total_errors)
                           : "n=" + std::to_string(static_cast<size_t>(edp.global.total));
  draw_bar(svg, x, global, u, order, 1.0, zoom ? "ALL ERRORS" : "GLOBAL", gnote);
  x += kBarW + kGap;
  svg << "<line x1=\"" << num(x - kGap / 2) << "\" y1=\"" << num(kPlotTop) << "\" x2=\""
      << num(x - kGap / 2) << "\" y2=\"" << num(kBaseline)
      << "\" stroke=\"#888888\" stroke-dasharray=\"3,3\"/>\n";

  for (size_t b = 0; b < bins.size(); ++b) {
    double frac = 1.0;
    std::string note = "n=" + std::to_string(static_cast<size_t>(bins[b].total));
    if (zoom) {
      frac = zoom->bin_share[b];
      char pct[32];
      std::snprintf(pct, sizeof pct, "%.1f%%", zoom->bin_share[b] * 100.0);
      note += " (" + std::string(pct) + ")";
    }
    draw_bar(svg, x, bins[b], u, order, frac, edp.scheme.bins[b].label, note);
    x += kBarW + kGap;
  }

  double lx = width - legend_w + 8, ly = kPlotTop + 4;
  for (size_t idx : order) {
    svg << "<rect x=\"" << num(lx) << "\" y=\"" << num(ly) << "\" width=\"10\" height=\"10\" "
        << "fill=\"" << color_for(u, idx) << "\"/>\n";
    svg << "<text x=\"" << num(lx + 15) << "\" y=\"" << num(ly + 9) << "\" class=\"leg\">"
        << esc(u.codes[idx]) << "</text>\n";
    ly += 16.0;
  }
  if (!zoom && edp.n_missing > 0)
    svg << "<text x=\"" << num(lx) << "\" y=\"" << num(ly + 9) << "\" class=\"leg\">missing: "
        << edp.n_missing << "</text>\n";

  svg << "</svg>\n";
  return svg.str();
}

}  // namespace devperf
