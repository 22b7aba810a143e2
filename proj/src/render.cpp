#include "tmpp/render.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "tmpp/errors.hpp"
#include "tmpp/table_io.hpp"

namespace tmpp {

namespace {

constexpr int kCell = 28;
constexpr int kPanelGap = 36;
constexpr int kLeft = 44;
constexpr int kTitleH = 28;
constexpr int kPanelTitleH = 20;
constexpr int kColLabelH = 16;
constexpr int kLegendW = 90;
constexpr const char* kFont = "font-family=\"Helvetica,Arial,sans-serif\"";

std::string escape_xml(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out += c;
    }
  }
  return out;
}

// Fixed-point coordinate text with at most two decimals.
std::string coord(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", x);
  std::string s(buf);
  while (s.back() == '0') s.pop_back();
  if (s.back() == '.') s.pop_back();
  if (s == "-0") s = "0";
  return s;
}

std::string short_value(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

}  // namespace

std::string ramp_color(double t) {
  t = std::clamp(std::isfinite(t) ? t : 0.0, 0.0, 1.0);
  // white -> #00441b
  constexpr int lo[3] = {255, 255, 255};
  constexpr int hi[3] = {0, 68, 27};
  char buf[8];
  int c[3];
  for (int i = 0; i < 3; ++i) c[i] = static_cast<int>(std::lround(lo[i] + (hi[i] - lo[i]) * t));
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x", c[0], c[1], c[2]);
  return buf;
}

HeatmapSpec make_heatmap_spec(std::span<const double> values, ProfileKind kind, const HeatmapOptions& opts) {
  if (values.size() != dimension(kind)) {
    throw ValidationError("heatmap expects " + std::to_string(dimension(kind)) + " values, got " +
                          std::to_string(values.size()));
  }
  HeatmapSpec spec;
  spec.title = opts.title;
  double vmax = 0.0;
  for (double v : values) {
    if (!(v >= 0.0 && v <= 1.0)) throw ValidationError("heatmap values must lie in [0, 1]");
    vmax = std::max(vmax, v);
  }
  spec.scale_max = opts.scale_max ? *opts.scale_max : vmax;
  if (kind == ProfileKind::kPositionless) {
    MotifGrid g;
    for (std::size_t m = 0; m < kMotifCount; ++m) g[m] = values[m];
    spec.grids.push_back(g);
    spec.grid_titles.push_back("All positions");
    return spec;
  }
  for (int p = 1; p <= 3; ++p) {
    MotifGrid g;
    for (std::size_t m = 0; m < kMotifCount; ++m) {
      const auto motif = MotifId::from_index(m);
      if (p <= node_count(motif)) g[m] = values[cell_index(motif, p)];
    }
    spec.grids.push_back(g);
    spec.grid_titles.push_back("Position " + std::to_string(p));
  }
  return spec;
}

std::string render_heatmap(const HeatmapSpec& spec) {
  const int panels = static_cast<int>(spec.grids.size());
  const int panel_w = 6 * kCell;
  const int width = kLeft + panels * panel_w + (panels - 1) * kPanelGap + 24 + kLegendW;
  const int grid_top = kTitleH + kPanelTitleH + kColLabelH;
  const int height = grid_top + 6 * kCell + 24;
  const double anchor = spec.scale_max > 0.0 ? spec.scale_max : 1.0;

  std::ostringstream o;
  o << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
    << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n";
  o << "<rect x=\"0\" y=\"0\" width=\"" << width << "\" height=\"" << height << "\" fill=\"#ffffff\"/>\n";
  o << "<text x=\"" << kLeft << "\" y=\"19\" " << kFont << " font-size=\"15\">" << escape_xml(spec.title)
    << "</text>\n";

  for (int p = 0; p < panels; ++p) {
    const int x0 = kLeft + p * (panel_w + kPanelGap);
    o << "<g class=\"panel\">\n";
    o << "<text x=\"" << x0 + panel_w / 2 << "\" y=\"" << kTitleH + 14 << "\" " << kFont
      << " font-size=\"12\" text-anchor=\"middle\">" << escape_xml(spec.grid_titles[p]) << "</text>\n";
    for (int c = 0; c < 6; ++c) {
      o << "<text x=\"" << x0 + c * kCell + kCell / 2 << "\" y=\"" << grid_top - 4 << "\" " << kFont
        << " font-size=\"10\" text-anchor=\"middle\">" << c + 1 << "</text>\n";
    }
    for (int r = 0; r < 6; ++r) {
      o << "<text x=\"" << x0 - 6 << "\" y=\"" << grid_top + r * kCell + kCell / 2 + 4 << "\" " << kFont
        << " font-size=\"10\" text-anchor=\"end\">" << r + 1 << "</text>\n";
    }
    const auto& grid = spec.grids[p];
    for (int r = 0; r < 6; ++r) {
      for (int c = 0; c < 6; ++c) {
        const auto& cell = grid[static_cast<std::size_t>(r * 6 + c)];
        const std::string label = "M" + std::to_string(r + 1) + "," + std::to_string(c + 1);
        o << "<rect x=\"" << x0 + c * kCell << "\" y=\"" << grid_top + r * kCell << "\" width=\"" << kCell
          << "\" height=\"" << kCell << "\" stroke=\"#bdbdbd\" stroke-width=\"0.5\" ";
        if (cell) {
          o << "fill=\"" << ramp_color(*cell / anchor) << "\"><title>" << label << ": " << format_real(*cell)
            << "</title></rect>\n";
        } else {
          o << "fill=\"#eeeeee\"><title>" << label << ": no such position</title></rect>\n";
        }
      }
    }
    o << "</g>\n";
  }

  // Colour legend: five swatches from 0 to the anchor value.
  const int lx = width - kLegendW + 8;
  o << "<g class=\"legend\">\n";
  for (int i = 0; i < 5; ++i) {
    const double t = static_cast<double>(4 - i) / 4.0;
    const int y = grid_top + i * 20;
    o << "<rect x=\"" << lx << "\" y=\"" << y << "\" width=\"16\" height=\"20\" fill=\"" << ramp_color(t)
      << "\" stroke=\"#bdbdbd\" stroke-width=\"0.5\"/>\n";
    o << "<text x=\"" << lx + 22 << "\" y=\"" << y + 14 << "\" " << kFont << " font-size=\"10\">"
      << short_value(t * anchor) << "</text>\n";
  }
  o << "</g>\n</svg>\n";
  return o.str();
}

std::string cluster_color(std::size_t c) {
  static constexpr std::array<const char*, 9> kPalette = {"#ff7f0e", "#2ca02c", "#d62728",
                                                          "#9467bd", "#8c564b", "#e377c2",
                                                          "#7f7f7f", "#bcbd22", "#17becf"};
  return kPalette[c % kPalette.size()];
}

std::string dendrogram_svg(const Dendrogram& d, const std::vector<std::string>& names,
                           std::size_t k_highlight) {
  const std::size_t n = d.leaf_count();
  if (names.size() != n) throw ValidationError("leaf names do not match the dendrogram");
  const std::size_t k = std::clamp<std::size_t>(k_highlight, 1, n);
  const auto order = d.leaf_order();
  const auto flat = cut(d, k);

  constexpr double kLeafGap = 14.0;
  constexpr double kMarginL = 64.0, kMarginR = 20.0, kMarginT = 24.0, kPlotH = 300.0, kLabelH = 110.0;
  const double width = kMarginL + kMarginR + kLeafGap * static_cast<double>(n);
  const double height = kMarginT + kPlotH + kLabelH;
  const double base_y = kMarginT + kPlotH;
  double hmax = 0.0;
  for (const auto& m : d.merges()) hmax = std::max(hmax, m.height);
  const double scale = hmax > 0.0 ? kPlotH / hmax : 0.0;

  // x and y of every cluster id; cluster label (or -1 above the cut).
  std::vector<double> x(2 * n - 1, 0.0), y(2 * n - 1, base_y);
  std::vector<int> label(2 * n - 1, -1);
  for (std::size_t i = 0; i < n; ++i) {
    x[order[i]] = kMarginL + kLeafGap * (static_cast<double>(i) + 0.5);
    label[order[i]] = flat.labels[order[i]];
  }
  const std::size_t below_cut = n - k;
  for (std::size_t i = 0; i < d.merges().size(); ++i) {
    const auto& m = d.merges()[i];
    const std::size_t id = n + i;
    x[id] = 0.5 * (x[m.left] + x[m.right]);
    y[id] = base_y - m.height * scale;
    label[id] = i < below_cut ? label[m.left] : -1;
  }

  std::ostringstream o;
  o << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << coord(width) << "\" height=\""
    << coord(height) << "\" viewBox=\"0 0 " << coord(width) << ' ' << coord(height) << "\">\n";
  o << "<rect x=\"0\" y=\"0\" width=\"" << coord(width) << "\" height=\"" << coord(height)
    << "\" fill=\"#ffffff\"/>\n";

  // Height axis.
  o << "<g class=\"axis\">\n";
  o << "<line x1=\"" << coord(kMarginL - 8) << "\" y1=\"" << coord(kMarginT) << "\" x2=\"" << coord(kMarginL - 8)
    << "\" y2=\"" << coord(base_y) << "\" stroke=\"#000000\" stroke-width=\"1\"/>\n";
  for (int t = 0; t <= 4; ++t) {
    const double h = hmax * t / 4.0;
    const double ty = base_y - h * scale;
    o << "<line x1=\"" << coord(kMarginL - 12) << "\" y1=\"" << coord(ty) << "\" x2=\"" << coord(kMarginL - 8)
      << "\" y2=\"" << coord(ty) << "\" stroke=\"#000000\" stroke-width=\"1\"/>\n";
    o << "<text x=\"" << coord(kMarginL - 14) << "\" y=\"" << coord(ty + 3) << "\" " << kFont
      << " font-size=\"9\" text-anchor=\"end\">" << short_value(h) << "</text>\n";
  }
  o << "</g>\n";

  o << "<g class=\"links\" fill=\"none\" stroke-width=\"1.2\">\n";
  for (std::size_t i = 0; i < d.merges().size(); ++i) {
    const auto& m = d.merges()[i];
    const std::size_t id = n + i;
    const std::string color = label[id] >= 0 ? cluster_color(static_cast<std::size_t>(label[id])) : "#1f77b4";
    o << "<path d=\"M" << coord(x[m.left]) << ' ' << coord(y[m.left]) << " V" << coord(y[id]) << " H"
      << coord(x[m.right]) << " V" << coord(y[m.right]) << "\" stroke=\"" << color << "\"/>\n";
  }
  o << "</g>\n";

  o << "<g class=\"leaves\">\n";
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t leaf = order[i];
    const double lx = x[leaf];
    const double ly = base_y + 6;
    o << "<text x=\"" << coord(lx + 3) << "\" y=\"" << coord(ly) << "\" " << kFont
      << " font-size=\"9\" text-anchor=\"end\" fill=\"" << cluster_color(static_cast<std::size_t>(label[leaf]))
      << "\" transform=\"rotate(-90 " << coord(lx + 3) << ' ' << coord(ly) << ")\">" << escape_xml(names[leaf])
      << "</text>\n";
  }
  o << "</g>\n</svg>\n";
  return o.str();
}

}  // namespace tmpp
