#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "disasteller/core/grade.hpp"

namespace disasteller::core {

/// Packed 8-bit RGB image, row-major.
class Raster {
 public:
  Raster() = default;
  Raster(int width, int height, Rgb fill = {});

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  bool empty() const noexcept { return width_ == 0 || height_ == 0; }

  Rgb at(int x, int y) const;
  void set(int x, int y, Rgb c);

  std::span<std::uint8_t> data() noexcept { return pixels_; }
  std::span<const std::uint8_t> data() const noexcept { return pixels_; }

  friend bool operator==(const Raster&, const Raster&) = default;

 private:
  int width_ = 0;
  int height_ = 0;
  std::vector<std::uint8_t> pixels_;
};

/// "image/png", "image/jpeg", or "" when the magic bytes match neither.
std::string sniff_media_type(std::span<const std::uint8_t> bytes);

/// Throws UndecodableImage for anything that is not a readable PNG or JPEG.
Raster decode_image(std::span<const std::uint8_t> bytes);
Raster load_image(const std::string& path);

std::vector<std::uint8_t> encode_png(const Raster& image);

/// Downscales (area interpolation) so the longest side is at most max_side;
/// returns the input unchanged when it already fits.
Raster fit_within(const Raster& image, int max_side);

}  // namespace disasteller::core
