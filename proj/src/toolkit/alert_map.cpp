#include "disasteller/toolkit/alert_map.hpp"

#include <algorithm>
#include <array>
#include <limits>

#include <opencv2/imgproc.hpp>

#include "disasteller/error.hpp"
#include "raster_cv.hpp"

namespace disasteller::toolkit {

namespace {

constexpr int kLegendWidth = 132;
constexpr int kLegendHeight = 104;
constexpr int kLegendMargin = 8;
constexpr int kLegendRow = 18;
constexpr double kFontScale = 0.42;

const cv::Scalar kBlack(0, 0, 0);
const cv::Scalar kWhite(255, 255, 255);

cv::Scalar bgr(core::Rgb c) { return cv::Scalar(c.b, c.g, c.r); }

bool overlaps(const LegendBox& box, const MapAnnotation& a, int reach) {
  return a.x + reach >= box.x && a.x - reach < box.x + box.width &&
         a.y + reach >= box.y && a.y - reach < box.y + box.height;
}

double luminance_variance(const core::Raster& img, const LegendBox& box) {
  const int x0 = std::max(0, box.x);
  const int y0 = std::max(0, box.y);
  const int x1 = std::min(img.width(), box.x + box.width);
  const int y1 = std::min(img.height(), box.y + box.height);
  if (x1 <= x0 || y1 <= y0) return 0.0;
  double sum = 0;
  double sum_sq = 0;
  for (int y = y0; y < y1; ++y) {
    for (int x = x0; x < x1; ++x) {
      const auto p = img.at(x, y);
      const double l = 0.299 * p.r + 0.587 * p.g + 0.114 * p.b;
      sum += l;
      sum_sq += l * l;
    }
  }
  const double n = static_cast<double>(x1 - x0) * (y1 - y0);
  const double mean = sum / n;
  return std::max(0.0, sum_sq / n - mean * mean);
}

void draw_legend(cv::Mat& img, const LegendBox& box) {
  const cv::Rect r(box.x, box.y, box.width, box.height);
  cv::rectangle(img, r, kWhite, cv::FILLED, cv::LINE_8);
  cv::rectangle(img, r, kBlack, 1, cv::LINE_8);
  int row_y = box.y + 7;
  for (auto g : core::kAllGrades) {
    const cv::Rect swatch(box.x + 8, row_y, 12, 12);
    cv::rectangle(img, swatch, bgr(core::grade_color(g)), cv::FILLED, cv::LINE_8);
    cv::rectangle(img, swatch, kBlack, 1, cv::LINE_8);
    static constexpr std::array<const char*, 5> kNames = {"slight", "moderate", "heavy",
                                                           "very heavy", "destruction"};
    const std::string label =
        core::to_string(g) + " " + kNames[static_cast<std::size_t>(core::grade_level(g) - 1)];
    cv::putText(img, label, cv::Point(box.x + 26, row_y + 11), cv::FONT_HERSHEY_SIMPLEX,
                kFontScale, kBlack, 1, cv::LINE_8);
    row_y += kLegendRow;
  }
}

}  // namespace

LegendBox legend_box(Corner corner, int w, int h) {
  const bool left = corner == Corner::TopLeft || corner == Corner::BottomLeft;
  const bool top = corner == Corner::TopLeft || corner == Corner::TopRight;
  return {left ? kLegendMargin : w - kLegendMargin - kLegendWidth,
          top ? kLegendMargin : h - kLegendMargin - kLegendHeight, kLegendWidth,
          kLegendHeight};
}

Corner choose_legend_corner(const core::Raster& base,
                            std::span<const MapAnnotation> annotations,
                            const MarkerStyle& style) {
  // Marker reach covers disc, outline and the label drawn to its right.
  const int reach = style.radius + style.outline + 30;
  constexpr std::array<Corner, 4> kOrder = {Corner::TopLeft, Corner::TopRight,
                                            Corner::BottomLeft, Corner::BottomRight};
  Corner best = Corner::TopLeft;
  bool best_clear = false;
  double best_var = std::numeric_limits<double>::infinity();
  for (auto c : kOrder) {
    const auto box = legend_box(c, base.width(), base.height());
    bool clear = true;
    for (const auto& a : annotations) clear = clear && !overlaps(box, a, reach);
    const double var = luminance_variance(base, box);
    if ((clear && !best_clear) || (clear == best_clear && var < best_var)) {
      best = c;
      best_clear = clear;
      best_var = var;
    }
  }
  return best;
}

core::Raster annotate_map(const core::Raster& base,
                          std::span<const MapAnnotation> annotations,
                          const MarkerStyle& style) {
  for (const auto& a : annotations) {
    if (a.x < 0 || a.x >= base.width() || a.y < 0 || a.y >= base.height()) {
      throw Error(Errc::OutOfBounds, "annotation '" + a.location_name + "' at (" +
                                         std::to_string(a.x) + "," + std::to_string(a.y) +
                                         ") is outside the " + std::to_string(base.width()) +
                                         "x" + std::to_string(base.height()) + " map");
    }
  }
  if (annotations.empty()) return base;

  cv::Mat img = core::detail::to_bgr(base);
  draw_legend(img, legend_box(choose_legend_corner(base, annotations, style), base.width(),
                              base.height()));

  // Labels first, then outlines, then fills, so no label or neighbouring
  // outline can cover a disc.
  for (const auto& a : annotations) {
    const std::string token = core::to_string(a.grade);
    const cv::Point org(a.x + style.radius + style.outline + 3, a.y + 5);
    int baseline = 0;
    const auto size =
        cv::getTextSize(token, cv::FONT_HERSHEY_SIMPLEX, kFontScale, 1, &baseline);
    cv::rectangle(img, cv::Rect(org.x - 1, org.y - size.height - 2, size.width + 3,
                                size.height + baseline + 3),
                  kWhite, cv::FILLED, cv::LINE_8);
    cv::putText(img, token, org, cv::FONT_HERSHEY_SIMPLEX, kFontScale, kBlack, 1,
                cv::LINE_8);
  }
  for (const auto& a : annotations) {
    cv::circle(img, cv::Point(a.x, a.y), style.radius + style.outline, kBlack, cv::FILLED,
               cv::LINE_8);
  }
  for (const auto& a : annotations) {
    cv::circle(img, cv::Point(a.x, a.y), style.radius, bgr(core::grade_color(a.grade)),
               cv::FILLED, cv::LINE_8);
  }
  auto out = core::detail::from_bgr(img);
  // Coincident markers: every center still shows its own grade.
  for (const auto& a : annotations) out.set(a.x, a.y, core::grade_color(a.grade));
  return out;
}

}  // namespace disasteller::toolkit
