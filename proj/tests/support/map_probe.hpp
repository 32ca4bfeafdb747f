#pragma once

#include <vector>

#include "disasteller/core/grade.hpp"
#include "disasteller/core/raster.hpp"

namespace fixtures {

/// Connected regions (4-neighbour) of exact palette colour with at least
/// min_area pixels; legend swatches fall below the default threshold.
inline int count_marker_discs(const disasteller::core::Raster& img, int min_area = 300) {
  using namespace disasteller::core;
  const int w = img.width();
  const int h = img.height();
  std::vector<char> seen(static_cast<std::size_t>(w) * h, 0);
  auto palette_index = [&](int x, int y) {
    const auto c = img.at(x, y);
    for (auto g : kAllGrades) {
      if (grade_color(g) == c) return grade_level(g);
    }
    return 0;
  };
  int count = 0;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const int p = palette_index(x, y);
      if (p == 0 || seen[static_cast<std::size_t>(y) * w + x]) continue;
      int area = 0;
      std::vector<std::pair<int, int>> stack = {{x, y}};
      seen[static_cast<std::size_t>(y) * w + x] = 1;
      while (!stack.empty()) {
        auto [cx, cy] = stack.back();
        stack.pop_back();
        ++area;
        const int nx[4] = {cx + 1, cx - 1, cx, cx};
        const int ny[4] = {cy, cy, cy + 1, cy - 1};
        for (int i = 0; i < 4; ++i) {
          if (nx[i] < 0 || ny[i] < 0 || nx[i] >= w || ny[i] >= h) continue;
          auto& s = seen[static_cast<std::size_t>(ny[i]) * w + nx[i]];
          if (!s && palette_index(nx[i], ny[i]) == p) {
            s = 1;
            stack.push_back({nx[i], ny[i]});
          }
        }
      }
      if (area >= min_area) ++count;
    }
  }
  return count;
}

/// Number of pixels inside the rectangle that differ between two images.
inline int changed_pixels(const disasteller::core::Raster& a, const disasteller::core::Raster& b,
                          int x0, int y0, int w, int h) {
  int n = 0;
  for (int y = y0; y < y0 + h; ++y) {
    for (int x = x0; x < x0 + w; ++x) {
      if (!(a.at(x, y) == b.at(x, y))) ++n;
    }
  }
  return n;
}

}  // namespace fixtures
