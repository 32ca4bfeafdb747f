#pragma once

// OpenCV bridge, private to the library.

#include <opencv2/core.hpp>

#include "disasteller/core/raster.hpp"

namespace disasteller::core::detail {

inline cv::Mat to_bgr(const Raster& image) {
  cv::Mat bgr(image.height(), image.width(), CV_8UC3);
  const auto src = image.data();
  for (int y = 0; y < image.height(); ++y) {
    auto* row = bgr.ptr<cv::Vec3b>(y);
    for (int x = 0; x < image.width(); ++x) {
      const auto i = (static_cast<std::size_t>(y) * image.width() + x) * 3;
      row[x] = cv::Vec3b(src[i + 2], src[i + 1], src[i]);
    }
  }
  return bgr;
}

inline Raster from_bgr(const cv::Mat& bgr) {
  Raster out(bgr.cols, bgr.rows);
  auto dst = out.data();
  for (int y = 0; y < bgr.rows; ++y) {
    const auto* row = bgr.ptr<cv::Vec3b>(y);
    for (int x = 0; x < bgr.cols; ++x) {
      const auto i = (static_cast<std::size_t>(y) * bgr.cols + x) * 3;
      dst[i] = row[x][2];
      dst[i + 1] = row[x][1];
      dst[i + 2] = row[x][0];
    }
  }
  return out;
}

}  // namespace disasteller::core::detail
