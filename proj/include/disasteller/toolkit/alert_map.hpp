#pragma once

#include <span>
#include <string>

#include "disasteller/core/grade.hpp"
#include "disasteller/core/raster.hpp"

namespace disasteller::toolkit {

struct MapAnnotation {
  std::string location_name;
  core::DamageGrade grade = core::DamageGrade::G1;
  int x = 0;
  int y = 0;
};

struct MarkerStyle {
  int radius = 12;
  int outline = 2;
};

enum class Corner { TopLeft, TopRight, BottomLeft, BottomRight };

struct LegendBox {
  int x = 0;
  int y = 0;
  int width = 0;
  int height = 0;
};

/// Legend rectangle for a corner, 8 px in from the map edges.
LegendBox legend_box(Corner corner, int map_width, int map_height);

/// Corner for the legend: corners clear of every marker come first, then
/// the one whose covered region of the base map has the lowest luminance
/// variance. Ties resolve TL, TR, BL, BR.
Corner choose_legend_corner(const core::Raster& base,
                            std::span<const MapAnnotation> annotations,
                            const MarkerStyle& style = {});

/// Draws one marker per annotation (filled disc in grade_color with a black
/// outline, grade token beside it) plus a five-grade legend. The input is
/// not modified; with no annotations the copy is pixel-identical. Throws
/// OutOfBounds naming the first annotation outside the map.
core::Raster annotate_map(const core::Raster& base,
                          std::span<const MapAnnotation> annotations,
                          const MarkerStyle& style = {});

}  // namespace disasteller::toolkit
