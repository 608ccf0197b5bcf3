#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fluxriver/layout.hpp"
#include "fluxriver/pixelmap.hpp"
#include "fluxriver/types.hpp"

namespace fluxriver {

// pixel = scale * data + offset
struct AxisMap {
  double scale = 1.0;
  double offset = 0.0;

  double operator()(double data) const noexcept { return scale * data + offset; }
  double inverse(double pixel) const noexcept { return (pixel - offset) / scale; }
  bool operator==(const AxisMap&) const = default;
};

struct Margins {
  double top = 10.0;
  double right = 10.0;
  double bottom = 10.0;
  double left = 10.0;
};

struct Canvas {
  double width_px = 0.0;
  double height_px = 0.0;
  Margins margins;
  AxisMap x;
  AxisMap y;  // flipped: larger data y is higher on the page
  int decimal_places = 3;

  double plot_left() const noexcept { return margins.left; }
  double plot_right() const noexcept { return width_px - margins.right; }
  double plot_top() const noexcept { return margins.top; }
  double plot_bottom() const noexcept { return height_px - margins.bottom; }

  // Maps [x0, x1] onto the plot width and [y0, y1] onto the plot height.
  // A degenerate y range is widened by one unit.
  static Canvas fit(double width_px, double height_px, Margins margins, double x0, double x1, double y0,
                    double y1, int decimal_places = 3);
  static Canvas for_river(const RiverGeometry& geometry, double width_px, double height_px,
                          Margins margins = {}, int decimal_places = 3);
};

// Fixed-point text with at most `decimal_places` digits and no trailing
// zeros; negative zero prints as "0".
std::string format_coord(double value, int decimal_places);

// An SVG fragment plus the size of the document it belongs to. `column_axis`
// maps step index to pixel x for parts that carry time columns.
struct SvgDocument {
  double width_px = 0.0;
  double height_px = 0.0;
  std::string body;
  std::optional<AxisMap> column_axis;
  int decimal_places = 3;

  // Complete SVG 1.1 document with viewBox.
  std::string to_string() const;
};

SvgDocument render_river(const RiverGeometry& geometry, const Canvas& canvas, const MoodSet& moods);

// Accuracy and weight cells map 0 to white and 1 to black by default.
struct GrayRamp {
  std::string low = "#FFFFFF";
  std::string high = "#000000";

  std::string color(double value) const;
};

enum class PixelLayer {
  Predictions,  // mood colors, accuracy bar on the right
  Weights,      // weight grid, accuracy bar on the left
};

struct PixelStyle {
  PixelLayer layer = PixelLayer::Predictions;
  GrayRamp ramp;
  double bar_width = 8.0;
  double bar_gap = 2.0;
};

// Cells span the canvas plot area; column t is centered on canvas.x(t + 1).
SvgDocument render_pixels(const PixelPanel& panel, const Canvas& canvas, const MoodSet& moods,
                          const PixelStyle& style = {});

// Canvas sized for a panel so that its columns share `column_axis`.
Canvas pixel_canvas(const PixelPanel& panel, const Canvas& river_canvas, double row_height_px);

struct FigurePart {
  SvgDocument document;
  double x = 0.0;
  double y = 0.0;
  // Parts in the same group must map step t to the same page x.
  std::optional<int> align_group;
};

// One document with a translated group per part. Throws ScaleMismatch when
// parts of an alignment group disagree on their column mapping.
SvgDocument compose_figure(const std::vector<FigurePart>& parts);

SvgDocument render_legend(const MoodSet& moods, const std::vector<std::string>& ramp_labels = {},
                          const GrayRamp& ramp = {});

}  // namespace fluxriver
