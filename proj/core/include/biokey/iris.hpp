#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "biokey/image.hpp"

namespace biokey::iris {

struct Circle {
  double cx = 0.0;
  double cy = 0.0;
  double r = 0.0;

  friend bool operator==(const Circle&, const Circle&) = default;
};

/// Pupil and limbic boundaries. Requires r_pupil < r_iris and the pupil
/// center strictly inside the iris circle.
class IrisGeometry {
 public:
  IrisGeometry(Circle pupil, Circle iris);

  const Circle& pupil() const noexcept { return pupil_; }
  const Circle& iris() const noexcept { return iris_; }

 private:
  Circle pupil_;
  Circle iris_;
};

/// 1 = occluded or otherwise unusable pixel.
using NoiseMask = BinaryImage;

/// Polar-unwrapped iris: row k is radius k/(radial-1) between the pupil (0)
/// and limbic (1) boundaries; column j is angle 2*pi*j/angular.
struct NormalizedIris {
  FloatImage samples;
  BinaryImage valid;  // 1 = usable sample

  int radial_resolution() const noexcept { return samples.height(); }
  int angular_resolution() const noexcept { return samples.width(); }
};

/// Real parts (I1) and imaginary parts (I2) of the filtered iris, row-major,
/// valid samples only.
struct IrisFeatureVectors {
  std::vector<double> real;
  std::vector<double> imag;

  std::size_t size() const noexcept { return real.size(); }
};

// --- edges -----------------------------------------------------------------

/// Canny detector with absolute hysteresis thresholds on the gradient
/// magnitude of the Gaussian-smoothed image.
BinaryImage canny_edges(const GrayImage& img, double sigma, double low, double high);

/// Same, with high = high_fraction * max magnitude and low = low_ratio * high.
BinaryImage canny_edges_relative(const GrayImage& img, double sigma, double high_fraction, double low_ratio);

// --- circles ---------------------------------------------------------------

struct CenterWindow {
  int x_min, x_max, y_min, y_max;
};

/// Global maximum of the (cx, cy, r) vote space with integer centers and
/// radii. Ties go to the smaller r, then the smaller (cy, cx). Throws
/// NotFoundError when there is nothing to vote.
Circle circular_hough(const BinaryImage& edges, int rmin, int rmax);
Circle circular_hough(const BinaryImage& edges, int rmin, int rmax, const std::optional<CenterWindow>& centers);

struct LocalizationParams {
  int pupil_rmin = 15;
  int pupil_rmax = 80;
  int iris_rmin = 80;
  int iris_rmax = 150;
  double canny_sigma = 2.0;
  double canny_high_fraction = 0.3;
  double canny_low_ratio = 0.4;
  double meridian_half_angle_deg = 30.0;
  int iris_center_max_offset = 15;  // limbic center search radius around the pupil center
};

/// Pupil first over the whole edge map, then the limbic boundary from edges
/// near the horizontal meridian of the pupil.
IrisGeometry locate_boundaries(const GrayImage& img, const LocalizationParams& params = {});

// --- occlusion -------------------------------------------------------------

struct Line {
  double angle = 0.0;  // normal direction, radians
  double rho = 0.0;    // x cos(angle) + y sin(angle) = rho
  int votes = 0;
};

/// Strongest near-horizontal line (normal within 45 degrees of vertical)
/// through the given points, if it gathers at least `min_votes`.
std::optional<Line> linear_hough(std::span<const std::pair<int, int>> points, int min_votes);

struct EyelidParams {
  double canny_sigma = 2.0;
  double canny_high_fraction = 0.3;
  double canny_low_ratio = 0.4;
  double min_votes_fraction = 0.3;  // of the iris radius
};

NoiseMask isolate_eyelids(const GrayImage& img, const IrisGeometry& geom, const EyelidParams& params = {});

/// Pixels strictly darker than `threshold`.
NoiseMask isolate_eyelashes(const GrayImage& img, int threshold);

/// Pixels strictly brighter than `threshold`.
NoiseMask isolate_reflections(const GrayImage& img, int threshold = 250);

NoiseMask combine(const NoiseMask& a, const NoiseMask& b);

// --- normalization and texture -----------------------------------------------

NormalizedIris normalize_rubber_sheet(const GrayImage& img, const IrisGeometry& geom, const NoiseMask& noise,
                                      int radial_res, int angular_res);

/// exp(-(ln(f/f0))^2 / (2 (ln ratio)^2)); zero for f <= 0.
double log_gabor_gain(double f, double f0, double sigma_ratio);

/// Gain for every bin of an n-point transform. Only positive frequencies
/// (1 <= k <= n/2) carry gain; DC and the negative half are zero.
std::vector<double> log_gabor_bank(std::size_t n, double f0, double sigma_ratio);

/// Filters one signal, zero-padded to the next power of two, and returns the
/// complex response trimmed back to the input length.
std::vector<std::complex<double>> log_gabor_filter(std::span<const double> signal, double f0, double sigma_ratio);

/// Rows (fixed radius) are the 1-D signals; intensities are scaled to [0, 1].
IrisFeatureVectors log_gabor_features(const NormalizedIris& norm, double f0, double sigma_ratio);

}  // namespace biokey::iris
