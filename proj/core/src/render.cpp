#include "fluxriver/render.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace fluxriver {

namespace {

std::string xml_escape(std::string_view s) {
  std::string out;
  for (char ch : s) {
    switch (ch) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out += ch;
    }
  }
  return out;
}

double round_to(double value, int decimal_places) {
  const double scale = std::pow(10.0, decimal_places);
  return std::round(value * scale) / scale;
}

int hex_channel(std::string_view color, int channel) {
  return std::stoi(std::string(color.substr(1 + 2 * channel, 2)), nullptr, 16);
}

class PathWriter {
 public:
  explicit PathWriter(int dp) : dp_(dp) {}
  void move(double x, double y) { cmd('M', x, y); }
  void line(double x, double y) { cmd('L', x, y); }
  void close() { d_ += " Z"; }
  const std::string& str() const { return d_; }

 private:
  void cmd(char c, double x, double y) {
    if (!d_.empty()) d_ += ' ';
    d_ += c;
    d_ += ' ';
    d_ += format_coord(x, dp_);
    d_ += ' ';
    d_ += format_coord(y, dp_);
  }
  int dp_;
  std::string d_;
};

}  // namespace

std::string format_coord(double value, int decimal_places) {
  const double r = round_to(value, decimal_places);
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimal_places, r);
  std::string s = buf;
  if (s.find('.') != std::string::npos) {
    while (s.back() == '0') s.pop_back();
    if (s.back() == '.') s.pop_back();
  }
  if (s == "-0") s = "0";
  return s;
}

Canvas Canvas::fit(double width_px, double height_px, Margins margins, double x0, double x1, double y0, double y1,
                   int decimal_places) {
  Canvas c;
  c.width_px = width_px;
  c.height_px = height_px;
  c.margins = margins;
  c.decimal_places = decimal_places;
  const double plot_w = width_px - margins.left - margins.right;
  const double plot_h = height_px - margins.top - margins.bottom;
  if (!(plot_w > 0.0) || !(plot_h > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "canvas margins leave no plot area");
  }
  if (!(x1 > x0)) throw Error(ErrorCode::InvalidArgument, "empty x domain");
  if (!(y1 > y0)) {
    y0 -= 0.5;
    y1 += 0.5;
  }
  c.x.scale = plot_w / (x1 - x0);
  c.x.offset = margins.left - c.x.scale * x0;
  c.y.scale = -plot_h / (y1 - y0);
  c.y.offset = margins.top - c.y.scale * y1;
  return c;
}

Canvas Canvas::for_river(const RiverGeometry& geometry, double width_px, double height_px, Margins margins,
                         int decimal_places) {
  return fit(width_px, height_px, margins, geometry.x_min, geometry.x_max, geometry.y_min, geometry.y_max,
             decimal_places);
}

std::string SvgDocument::to_string() const {
  const std::string w = format_coord(width_px, decimal_places);
  const std::string h = format_coord(height_px, decimal_places);
  std::string out;
  out.reserve(body.size() + 256);
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" + w + "\" height=\"" + h +
         "\" viewBox=\"0 0 " + w + " " + h + "\">\n";
  out += body;
  out += "</svg>\n";
  return out;
}

SvgDocument render_river(const RiverGeometry& geometry, const Canvas& canvas, const MoodSet& moods) {
  if (geometry.polygons.empty()) throw Error(ErrorCode::EmptyGeometry, "river geometry has no polygons");
  const int dp = canvas.decimal_places;
  SvgDocument doc{canvas.width_px, canvas.height_px, {}, canvas.x, dp};
  std::string& b = doc.body;
  b += "<g class=\"river\" data-design=\"" + std::string(to_string(geometry.design)) + "\" data-smoothing=\"" +
       std::string(to_string(geometry.smoothing)) + "\">\n";
  for (const auto& band : geometry.polygons) {
    if (!moods.contains(band.mood)) throw Error(ErrorCode::DimensionMismatch, "band mood outside mood set");
    const Mood& mood = moods[band.mood];
    PathWriter path(dp);
    const auto pts = band.outline();
    path.move(canvas.x(pts[0].x), canvas.y(pts[0].y));
    for (std::size_t i = 1; i < pts.size(); ++i) path.line(canvas.x(pts[i].x), canvas.y(pts[i].y));
    path.close();
    b += "<path d=\"" + path.str() + "\" fill=\"" + mood.color + "\" data-mood=\"" + xml_escape(mood.label) +
         "\"/>\n";
  }
  if (geometry.design == Design::DualFlux) {
    PathWriter base(dp);
    base.move(canvas.x(geometry.x_min), canvas.y(0.0));
    base.line(canvas.x(geometry.x_max), canvas.y(0.0));
    b += "<path class=\"baseline\" d=\"" + base.str() + "\" fill=\"none\" stroke=\"#FFFFFF\" stroke-width=\"1\"/>\n";
  }
  for (const auto& line : geometry.gridlines) {
    if (line.points.empty()) continue;
    PathWriter path(dp);
    path.move(canvas.x(line.points[0].x), canvas.y(line.points[0].y));
    for (std::size_t i = 1; i < line.points.size(); ++i) {
      path.line(canvas.x(line.points[i].x), canvas.y(line.points[i].y));
    }
    b += "<path class=\"threshold\" d=\"" + path.str() +
         "\" fill=\"none\" stroke=\"#404040\" stroke-width=\"1\" stroke-dasharray=\"4 3\"/>\n";
  }
  b += "</g>\n";
  return doc;
}

std::string GrayRamp::color(double value) const {
  const double v = std::clamp(value, 0.0, 1.0);
  char buf[8];
  int ch[3];
  for (int i = 0; i < 3; ++i) {
    const double lo = hex_channel(low, i);
    const double hi = hex_channel(high, i);
    ch[i] = static_cast<int>(std::lround(lo + v * (hi - lo)));
  }
  std::snprintf(buf, sizeof buf, "#%02X%02X%02X", ch[0], ch[1], ch[2]);
  return buf;
}

Canvas pixel_canvas(const PixelPanel& panel, const Canvas& river_canvas, double row_height_px) {
  Canvas c = river_canvas;
  const double plot_h = row_height_px * static_cast<double>(std::max<std::size_t>(panel.rows(), 1));
  c.height_px = c.margins.top + plot_h + c.margins.bottom;
  c.y.scale = -plot_h / static_cast<double>(std::max<std::size_t>(panel.rows(), 1));
  c.y.offset = c.margins.top + plot_h;
  return c;
}

SvgDocument render_pixels(const PixelPanel& panel, const Canvas& canvas, const MoodSet& moods,
                          const PixelStyle& style) {
  const std::size_t m = panel.rows();
  const std::size_t n = panel.cols();
  if (m == 0 || n == 0) throw Error(ErrorCode::DimensionMismatch, "empty pixel panel");
  if (panel.side_bar.size() != m || panel.row_order.size() != m) {
    throw Error(ErrorCode::DimensionMismatch, "side bar or row order length differs from row count");
  }
  if (style.layer == PixelLayer::Weights) {
    if (!panel.weight_grid) throw Error(ErrorCode::DimensionMismatch, "weight layer requested without weight grid");
    if (panel.weight_grid->rows() != m || panel.weight_grid->cols() != n) {
      throw Error(ErrorCode::DimensionMismatch, "weight grid differs from prediction grid");
    }
  }
  const int dp = canvas.decimal_places;

  // Shared, pre-rounded cell edges keep neighbouring cells seamless.
  std::vector<double> xs(n + 1);
  for (std::size_t j = 0; j <= n; ++j) xs[j] = round_to(canvas.x(static_cast<double>(j) + 0.5), dp);
  std::vector<double> ys(m + 1);
  const double row_h = (canvas.plot_bottom() - canvas.plot_top()) / static_cast<double>(m);
  for (std::size_t r = 0; r <= m; ++r) ys[r] = round_to(canvas.plot_top() + row_h * static_cast<double>(r), dp);

  auto rect = [&](std::string& out, double x0, double x1, double y0, double y1, const std::string& fill) {
    out += "<rect x=\"" + format_coord(x0, dp) + "\" y=\"" + format_coord(y0, dp) + "\" width=\"" +
           format_coord(x1 - x0, dp) + "\" height=\"" + format_coord(y1 - y0, dp) + "\" fill=\"" + fill + "\"/>\n";
  };

  SvgDocument doc{canvas.width_px, canvas.height_px, {}, canvas.x, dp};
  std::string& b = doc.body;
  b.reserve(m * n * 72);
  const bool weights = style.layer == PixelLayer::Weights;
  b += std::string("<g class=\"pixels\" data-layer=\"") + (weights ? "weights" : "predictions") +
       "\" data-power=\"" + std::to_string(panel.power) + "\" shape-rendering=\"crispEdges\">\n";
  for (std::size_t r = 0; r < m; ++r) {
    for (std::size_t t = 0; t < n; ++t) {
      std::string fill;
      if (weights) {
        fill = style.ramp.color((*panel.weight_grid)(r, t));
      } else {
        const MoodId mood = panel.prediction_grid(r, t);
        if (!moods.contains(mood)) throw Error(ErrorCode::DimensionMismatch, "cell mood outside mood set");
        fill = moods[mood].color;
      }
      rect(b, xs[t], xs[t + 1], ys[r], ys[r + 1], fill);
    }
  }
  b += "</g>\n";

  double bar_x0 = 0.0;
  if (weights) {
    bar_x0 = round_to(xs.front() - style.bar_gap - style.bar_width, dp);
  } else {
    bar_x0 = round_to(xs.back() + style.bar_gap, dp);
  }
  const double bar_x1 = round_to(bar_x0 + style.bar_width, dp);
  b += "<g class=\"accuracy-bar\" shape-rendering=\"crispEdges\">\n";
  for (std::size_t r = 0; r < m; ++r) rect(b, bar_x0, bar_x1, ys[r], ys[r + 1], style.ramp.color(panel.side_bar[r]));
  b += "</g>\n";
  return doc;
}

SvgDocument compose_figure(const std::vector<FigurePart>& parts) {
  if (parts.empty()) throw Error(ErrorCode::EmptyList, "no figure parts");
  // Page mapping of each alignment group, from its first member.
  std::vector<std::pair<int, AxisMap>> groups;
  int dp = 0;
  SvgDocument out;
  for (const auto& part : parts) {
    dp = std::max(dp, part.document.decimal_places);
    if (part.align_group) {
      if (!part.document.column_axis) {
        throw Error(ErrorCode::ScaleMismatch, "aligned part has no column axis");
      }
      const AxisMap page{part.document.column_axis->scale, part.document.column_axis->offset + part.x};
      auto it = std::find_if(groups.begin(), groups.end(), [&](const auto& g) { return g.first == *part.align_group; });
      if (it == groups.end()) {
        groups.emplace_back(*part.align_group, page);
      } else {
        const double tol = 1e-9 * std::max(1.0, std::abs(it->second.offset));
        if (std::abs(it->second.scale - page.scale) > 1e-12 * std::max(1.0, std::abs(page.scale)) ||
            std::abs(it->second.offset - page.offset) > tol) {
          throw Error(ErrorCode::ScaleMismatch,
                      "alignment group " + std::to_string(*part.align_group) + " has differing column scales");
        }
      }
    }
    out.width_px = std::max(out.width_px, part.x + part.document.width_px);
    out.height_px = std::max(out.height_px, part.y + part.document.height_px);
  }
  out.decimal_places = dp;
  if (!groups.empty()) out.column_axis = groups.front().second;
  out.body += "<g class=\"figure\">\n";
  for (std::size_t i = 0; i < parts.size(); ++i) {
    const auto& part = parts[i];
    out.body += "<g class=\"part\" data-index=\"" + std::to_string(i) + "\" transform=\"translate(" +
                format_coord(part.x, dp) + "," + format_coord(part.y, dp) + ")\">\n";
    out.body += part.document.body;
    out.body += "</g>\n";
  }
  out.body += "</g>\n";
  return out;
}

SvgDocument render_legend(const MoodSet& moods, const std::vector<std::string>& ramp_labels, const GrayRamp& ramp) {
  constexpr double kPad = 6.0;
  constexpr double kRow = 16.0;
  constexpr double kSwatch = 12.0;
  constexpr int kRampSteps = 10;
  constexpr double kRampWidth = 60.0;
  const double rows = static_cast<double>(moods.size() + ramp_labels.size());
  SvgDocument doc{180.0, 2 * kPad + rows * kRow, {}, std::nullopt, 3};
  std::string& b = doc.body;
  b += "<g class=\"legend\" font-family=\"sans-serif\" font-size=\"11\">\n";
  double y = kPad;
  for (const auto& mood : moods.moods()) {
    b += "<rect x=\"" + format_coord(kPad, 3) + "\" y=\"" + format_coord(y, 3) + "\" width=\"" +
         format_coord(kSwatch, 3) + "\" height=\"" + format_coord(kSwatch, 3) + "\" fill=\"" + mood.color +
         "\" data-mood=\"" + xml_escape(mood.label) + "\"/>\n";
    b += "<text x=\"" + format_coord(kPad + kSwatch + 4, 3) + "\" y=\"" + format_coord(y + kSwatch - 2, 3) + "\">" +
         xml_escape(mood.label) + "</text>\n";
    y += kRow;
  }
  for (const auto& label : ramp_labels) {
    b += "<g class=\"ramp\">\n";
    const double step = kRampWidth / kRampSteps;
    for (int i = 0; i < kRampSteps; ++i) {
      const double v = (i + 0.5) / kRampSteps;
      b += "<rect x=\"" + format_coord(kPad + i * step, 3) + "\" y=\"" + format_coord(y, 3) + "\" width=\"" +
           format_coord(step, 3) + "\" height=\"" + format_coord(kSwatch, 3) + "\" fill=\"" + ramp.color(v) +
           "\"/>\n";
    }
    b += "<text x=\"" + format_coord(kPad + kRampWidth + 4, 3) + "\" y=\"" + format_coord(y + kSwatch - 2, 3) +
         "\">" + xml_escape(label) + "</text>\n";
    b += "</g>\n";
    y += kRow;
  }
  b += "</g>\n";
  return doc;
}

}  // namespace fluxriver
