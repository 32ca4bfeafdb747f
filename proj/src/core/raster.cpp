#include "disasteller/core/raster.hpp"

#include <algorithm>

#include <opencv2/imgcodecs.hpp>
#include <opencv2/imgproc.hpp>

#include "disasteller/core/digest.hpp"
#include "disasteller/error.hpp"
#include "raster_cv.hpp"

namespace disasteller::core {

Raster::Raster(int width, int height, Rgb fill)
    : width_(width),
      height_(height),
      pixels_(static_cast<std::size_t>(width) * height * 3) {
  if (width < 0 || height < 0) {
    throw Error(Errc::UndecodableImage, "negative raster dimensions");
  }
  for (std::size_t i = 0; i < pixels_.size(); i += 3) {
    pixels_[i] = fill.r;
    pixels_[i + 1] = fill.g;
    pixels_[i + 2] = fill.b;
  }
}

Rgb Raster::at(int x, int y) const {
  const auto i = (static_cast<std::size_t>(y) * width_ + x) * 3;
  return {pixels_.at(i), pixels_.at(i + 1), pixels_.at(i + 2)};
}

void Raster::set(int x, int y, Rgb c) {
  const auto i = (static_cast<std::size_t>(y) * width_ + x) * 3;
  pixels_.at(i) = c.r;
  pixels_.at(i + 1) = c.g;
  pixels_.at(i + 2) = c.b;
}

std::string sniff_media_type(std::span<const std::uint8_t> b) {
  if (b.size() >= 8 && b[0] == 0x89 && b[1] == 'P' && b[2] == 'N' &&
      b[3] == 'G') {
    return "image/png";
  }
  if (b.size() >= 3 && b[0] == 0xFF && b[1] == 0xD8 && b[2] == 0xFF) {
    return "image/jpeg";
  }
  return "";
}

Raster decode_image(std::span<const std::uint8_t> bytes) {
  if (sniff_media_type(bytes).empty()) {
    throw Error(Errc::UndecodableImage, "not a PNG or JPEG payload");
  }
  const cv::Mat buf(1, static_cast<int>(bytes.size()), CV_8UC1,
                    const_cast<std::uint8_t*>(bytes.data()));
  const cv::Mat bgr = cv::imdecode(buf, cv::IMREAD_COLOR);
  if (bgr.empty()) throw Error(Errc::UndecodableImage, "image decode failed");
  return detail::from_bgr(bgr);
}

Raster load_image(const std::string& path) {
  try {
    return decode_image(read_file(path));
  } catch (const Error& e) {
    throw Error(e.code(), path + ": " + e.detail());
  }
}

std::vector<std::uint8_t> encode_png(const Raster& image) {
  std::vector<std::uint8_t> out;
  const std::vector<int> params = {cv::IMWRITE_PNG_COMPRESSION, 6};
  if (!cv::imencode(".png", detail::to_bgr(image), out, params)) {
    throw Error(Errc::IoError, "PNG encoding failed");
  }
  return out;
}

Raster fit_within(const Raster& image, int max_side) {
  const int longest = std::max(image.width(), image.height());
  if (longest <= max_side) return image;
  const double scale = static_cast<double>(max_side) / longest;
  const int w = std::max(1, static_cast<int>(image.width() * scale + 0.5));
  const int h = std::max(1, static_cast<int>(image.height() * scale + 0.5));
  cv::Mat resized;
  cv::resize(detail::to_bgr(image), resized, cv::Size(w, h), 0, 0,
             cv::INTER_AREA);
  return detail::from_bgr(resized);
}

}  // namespace disasteller::core
