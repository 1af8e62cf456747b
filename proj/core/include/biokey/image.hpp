#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <type_traits>
#include <vector>

#include "biokey/error.hpp"

namespace biokey {

namespace detail {
struct GrayTag {};
struct FloatTag {};
struct BinaryTag {};

template <typename Tag, typename T>
void validate_pixels(std::span<const T> pixels) {
  if constexpr (std::is_same_v<Tag, BinaryTag>) {
    for (T v : pixels) {
      if (v > 1) throw ArgumentError("binary raster values must be 0 or 1");
    }
  } else if constexpr (std::is_same_v<Tag, FloatTag>) {
    for (T v : pixels) {
      if (!std::isfinite(v)) throw ArgumentError("float raster values must be finite");
    }
  }
}
}  // namespace detail

/// Row-major 2-D raster with a top-left origin. `Tag` separates rasters that
/// share a storage type but not a meaning (gray levels vs. 0/1 masks).
template <typename T, typename Tag>
class Raster {
 public:
  using value_type = T;

  Raster() = default;

  Raster(int width, int height, T fill = T{}) : width_(width), height_(height) {
    check_dims(width, height);
    pixels_.assign(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), fill);
    detail::validate_pixels<Tag, T>(pixels_);
  }

  Raster(int width, int height, std::vector<T> pixels)
      : width_(width), height_(height), pixels_(std::move(pixels)) {
    check_dims(width, height);
    if (pixels_.size() != static_cast<std::size_t>(width) * static_cast<std::size_t>(height)) {
      throw LengthError("raster payload does not match width x height");
    }
    detail::validate_pixels<Tag, T>(pixels_);
  }

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  std::size_t size() const noexcept { return pixels_.size(); }
  bool empty() const noexcept { return pixels_.empty(); }

  bool contains(int x, int y) const noexcept {
    return x >= 0 && y >= 0 && x < width_ && y < height_;
  }

  T& operator()(int x, int y) noexcept { return pixels_[index(x, y)]; }
  const T& operator()(int x, int y) const noexcept { return pixels_[index(x, y)]; }

  /// Replicate-edge sampling: coordinates outside the raster snap to the
  /// nearest border pixel.
  T clamped(int x, int y) const noexcept {
    x = x < 0 ? 0 : (x >= width_ ? width_ - 1 : x);
    y = y < 0 ? 0 : (y >= height_ ? height_ - 1 : y);
    return pixels_[index(x, y)];
  }

  std::span<const T> pixels() const noexcept { return pixels_; }
  std::span<T> pixels() noexcept { return pixels_; }

  friend bool operator==(const Raster&, const Raster&) = default;

 private:
  static void check_dims(int width, int height) {
    if (width <= 0 || height <= 0) throw ArgumentError("raster dimensions must be positive");
  }
  std::size_t index(int x, int y) const noexcept {
    return static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) + static_cast<std::size_t>(x);
  }

  int width_ = 0;
  int height_ = 0;
  std::vector<T> pixels_;
};

using GrayImage = Raster<std::uint8_t, detail::GrayTag>;
using FloatImage = Raster<double, detail::FloatTag>;
/// 1 = foreground (ridge, edge, or masked-out pixel depending on use), 0 = background.
using BinaryImage = Raster<std::uint8_t, detail::BinaryTag>;

/// Dense odd-sized filter kernel addressed by signed offsets from its center.
class Kernel {
 public:
  Kernel(int width, int height, std::vector<double> weights);

  static Kernel identity() { return Kernel(1, 1, {1.0}); }

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  int radius_x() const noexcept { return width_ / 2; }
  int radius_y() const noexcept { return height_ / 2; }

  double operator()(int dx, int dy) const noexcept {
    return weights_[static_cast<std::size_t>((dy + radius_y()) * width_ + (dx + radius_x()))];
  }

  double sum() const noexcept;
  std::span<const double> weights() const noexcept { return weights_; }

 private:
  int width_;
  int height_;
  std::vector<double> weights_;
};

// --- PGM (P5) ---------------------------------------------------------------

GrayImage load_pgm(const std::filesystem::path& path);
void save_pgm(const GrayImage& img, const std::filesystem::path& path);

GrayImage decode_pgm(std::span<const std::uint8_t> bytes);
std::vector<std::uint8_t> encode_pgm(const GrayImage& img);

// --- kernels ------------------------------------------------------------------

/// out(x,y) = sum_{u,v} k(u,v) * img(x-u, y-v), replicate-edge sampling.
FloatImage convolve(const FloatImage& img, const Kernel& kernel);

/// Sampled Gaussian of half-width ceil(3 sigma), normalized to unit sum.
Kernel gaussian_kernel(double sigma);

struct Gradients {
  FloatImage gx;
  FloatImage gy;
};

/// Central differences with replicate edges: gx = (I(x+1,y) - I(x-1,y)) / 2.
Gradients central_gradients(const FloatImage& img);

FloatImage to_float(const GrayImage& img);
FloatImage to_float(const BinaryImage& img);

/// Clamp to [0, 255] then round half-up.
std::uint8_t quantize_level(double v) noexcept;
GrayImage quantize(const FloatImage& img);

/// 1 -> 255, 0 -> 0; for dumping masks as viewable PGMs.
GrayImage to_gray(const BinaryImage& img);

}  // namespace biokey
