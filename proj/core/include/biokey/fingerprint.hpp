#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <vector>

#include "biokey/image.hpp"

namespace biokey::fingerprint {

inline constexpr int kSegmentationBlock = 16;

/// Block grid of foreground flags covering an image; partial blocks at the
/// right and bottom edges count as whole blocks.
class SegmentationMask {
 public:
  SegmentationMask(int image_width, int image_height, int block, std::vector<std::uint8_t> blocks);

  int image_width() const noexcept { return image_width_; }
  int image_height() const noexcept { return image_height_; }
  int block_size() const noexcept { return block_; }
  int grid_width() const noexcept { return grid_width_; }
  int grid_height() const noexcept { return grid_height_; }

  bool block_foreground(int bx, int by) const noexcept {
    return blocks_[static_cast<std::size_t>(by * grid_width_ + bx)] != 0;
  }
  /// False outside the image.
  bool foreground(int x, int y) const noexcept;
  std::size_t foreground_blocks() const noexcept;

  BinaryImage to_image() const;

  friend bool operator==(const SegmentationMask&, const SegmentationMask&) = default;

 private:
  int image_width_;
  int image_height_;
  int block_;
  int grid_width_;
  int grid_height_;
  std::vector<std::uint8_t> blocks_;
};

/// Per-block ridge direction in [0, pi), measured from +x toward +y in pixel
/// coordinates (y grows downward). Blocks with no gradient energy, or blocks
/// removed by a segmentation mask, carry no orientation.
class OrientationField {
 public:
  OrientationField(int image_width, int image_height, int block, std::vector<double> angles,
                   std::vector<std::uint8_t> defined);

  int image_width() const noexcept { return image_width_; }
  int image_height() const noexcept { return image_height_; }
  int block_size() const noexcept { return block_; }
  int grid_width() const noexcept { return grid_width_; }
  int grid_height() const noexcept { return grid_height_; }

  double angle(int bx, int by) const noexcept { return angles_[cell(bx, by)]; }
  bool defined(int bx, int by) const noexcept { return defined_[cell(bx, by)] != 0; }
  double angle_at(int x, int y) const noexcept { return angle(x / block_, y / block_); }
  bool defined_at(int x, int y) const noexcept { return defined(x / block_, y / block_); }

  /// Copy with every block whose center falls in mask background undefined.
  OrientationField restricted_to(const SegmentationMask& mask) const;

 private:
  std::size_t cell(int bx, int by) const noexcept { return static_cast<std::size_t>(by * grid_width_ + bx); }

  int image_width_;
  int image_height_;
  int block_;
  int grid_width_;
  int grid_height_;
  std::vector<double> angles_;
  std::vector<std::uint8_t> defined_;
};

enum class MinutiaKind : std::uint8_t { RidgeEnding, Bifurcation };

struct Minutia {
  int x = 0;
  int y = 0;
  MinutiaKind kind = MinutiaKind::RidgeEnding;

  friend bool operator==(const Minutia&, const Minutia&) = default;
};

/// Minutiae in canonical (y, x) order with unique positions.
class MinutiaeSet {
 public:
  MinutiaeSet() = default;
  explicit MinutiaeSet(std::vector<Minutia> points);

  std::span<const Minutia> points() const noexcept { return points_; }
  std::size_t size() const noexcept { return points_.size(); }
  bool empty() const noexcept { return points_.empty(); }
  auto begin() const noexcept { return points_.begin(); }
  auto end() const noexcept { return points_.end(); }

  friend bool operator==(const MinutiaeSet&, const MinutiaeSet&) = default;

 private:
  std::vector<Minutia> points_;
};

enum class RidgePolarity : std::uint8_t { Dark, Bright };

// --- preprocessing ------------------------------------------------------------

/// s = round(255 * CDF(r)), half-up.
GrayImage histogram_equalize(const GrayImage& img);

/// Adaptive 3x3 Wiener filter; the noise variance is the mean of all local
/// variances.
GrayImage wiener_filter(const GrayImage& img);

// --- segmentation and orientation ---------------------------------------------

/// stddev(gx) + stddev(gy) for every block, row-major over the block grid.
std::vector<double> block_gradient_deviation(const GrayImage& img, int block = kSegmentationBlock);

/// 0.05 x the largest block deviation (never below a tiny positive floor).
double default_segmentation_threshold(const GrayImage& img);

SegmentationMask segment(const GrayImage& img, double threshold);

OrientationField orientation_field(const GrayImage& img, int block = kSegmentationBlock);

// --- enhancement ---------------------------------------------------------------

FloatImage gaussian_lowpass(const FloatImage& img, double sigma);
GrayImage gaussian_lowpass(const GrayImage& img, double sigma);

struct GaborParams {
  double frequency = 1.0 / 7.0;  // cycles per pixel
  double sigma_x = 4.0;
  double sigma_y = 4.0;
};

/// Even-symmetric Gabor kernel tuned to ridge direction `theta`. Kernel taps
/// are evaluated in Cartesian coordinates (y up) so that the carrier runs
/// across ridges whose direction comes from orientation_field().
Kernel gabor_kernel(double theta, const GaborParams& params);

/// Raw filter response; pixels in undefined blocks pass through unchanged.
FloatImage gabor_response(const FloatImage& img, const OrientationField& field, const GaborParams& params);

GrayImage gabor_enhance(const GrayImage& img, const OrientationField& field, const GaborParams& params);

// --- minutiae -------------------------------------------------------------------

/// Otsu threshold over a 256-bin histogram; the smallest maximizing level.
/// Returns -1 when fewer than two levels are populated.
int otsu_threshold(std::span<const std::uint64_t, 256> histogram);

/// Global Otsu threshold over foreground pixels. With Dark polarity a pixel
/// at or below the threshold becomes ridge (1); with Bright, above it.
BinaryImage binarize(const GrayImage& img, const SegmentationMask& mask,
                     RidgePolarity polarity = RidgePolarity::Dark);

inline constexpr int kMinutiaBorderMargin = 16;

/// Crossing-number detector. Points closer than `margin` pixels (Chebyshev)
/// to mask background or the image edge are dropped.
MinutiaeSet extract_minutiae(const BinaryImage& skeleton, const SegmentationMask& mask,
                             int margin = kMinutiaBorderMargin);

}  // namespace biokey::fingerprint
