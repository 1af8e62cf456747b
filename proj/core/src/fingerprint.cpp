#include "biokey/fingerprint.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <numbers>

#include "biokey/thinning.hpp"

namespace biokey::fingerprint {

namespace {

int ceil_div(int a, int b) { return (a + b - 1) / b; }

}  // namespace

SegmentationMask::SegmentationMask(int image_width, int image_height, int block, std::vector<std::uint8_t> blocks)
    : image_width_(image_width), image_height_(image_height), block_(block), blocks_(std::move(blocks)) {
  if (image_width <= 0 || image_height <= 0 || block <= 0) {
    throw ArgumentError("segmentation mask dimensions must be positive");
  }
  grid_width_ = ceil_div(image_width, block);
  grid_height_ = ceil_div(image_height, block);
  if (blocks_.size() != static_cast<std::size_t>(grid_width_ * grid_height_)) {
    throw LengthError("segmentation mask grid size mismatch");
  }
}

bool SegmentationMask::foreground(int x, int y) const noexcept {
  if (x < 0 || y < 0 || x >= image_width_ || y >= image_height_) return false;
  return block_foreground(x / block_, y / block_);
}

std::size_t SegmentationMask::foreground_blocks() const noexcept {
  return static_cast<std::size_t>(std::count_if(blocks_.begin(), blocks_.end(), [](auto b) { return b != 0; }));
}

BinaryImage SegmentationMask::to_image() const {
  BinaryImage out(image_width_, image_height_);
  for (int y = 0; y < image_height_; ++y) {
    for (int x = 0; x < image_width_; ++x) out(x, y) = foreground(x, y) ? 1 : 0;
  }
  return out;
}

OrientationField::OrientationField(int image_width, int image_height, int block, std::vector<double> angles,
                                   std::vector<std::uint8_t> defined)
    : image_width_(image_width),
      image_height_(image_height),
      block_(block),
      angles_(std::move(angles)),
      defined_(std::move(defined)) {
  if (image_width <= 0 || image_height <= 0 || block <= 0) {
    throw ArgumentError("orientation field dimensions must be positive");
  }
  grid_width_ = ceil_div(image_width, block);
  grid_height_ = ceil_div(image_height, block);
  const auto cells = static_cast<std::size_t>(grid_width_ * grid_height_);
  if (angles_.size() != cells || defined_.size() != cells) throw LengthError("orientation field grid size mismatch");
  for (double a : angles_) {
    if (!(a >= 0.0 && a < std::numbers::pi)) throw ArgumentError("orientation angle outside [0, pi)");
  }
}

OrientationField OrientationField::restricted_to(const SegmentationMask& mask) const {
  auto defined = defined_;
  for (int by = 0; by < grid_height_; ++by) {
    for (int bx = 0; bx < grid_width_; ++bx) {
      const int cx = std::min(bx * block_ + block_ / 2, image_width_ - 1);
      const int cy = std::min(by * block_ + block_ / 2, image_height_ - 1);
      if (!mask.foreground(cx, cy)) defined[cell(bx, by)] = 0;
    }
  }
  return OrientationField(image_width_, image_height_, block_, angles_, std::move(defined));
}

MinutiaeSet::MinutiaeSet(std::vector<Minutia> points) : points_(std::move(points)) {
  std::sort(points_.begin(), points_.end(), [](const Minutia& a, const Minutia& b) {
    return a.y != b.y ? a.y < b.y : a.x < b.x;
  });
  for (std::size_t i = 1; i < points_.size(); ++i) {
    if (points_[i].x == points_[i - 1].x && points_[i].y == points_[i - 1].y) {
      throw ArgumentError("duplicate minutia position");
    }
  }
  for (const auto& m : points_) {
    if (m.x < 0 || m.y < 0) throw ArgumentError("minutia coordinates must be non-negative");
  }
}

GrayImage histogram_equalize(const GrayImage& img) {
  std::array<std::uint64_t, 256> hist{};
  for (auto v : img.pixels()) ++hist[v];
  std::array<std::uint8_t, 256> lut{};
  const double n = static_cast<double>(img.size());
  std::uint64_t cumulative = 0;
  for (int level = 0; level < 256; ++level) {
    cumulative += hist[static_cast<std::size_t>(level)];
    lut[static_cast<std::size_t>(level)] = quantize_level(255.0 * static_cast<double>(cumulative) / n);
  }
  GrayImage out(img.width(), img.height());
  std::transform(img.pixels().begin(), img.pixels().end(), out.pixels().begin(), [&](auto v) { return lut[v]; });
  return out;
}

GrayImage wiener_filter(const GrayImage& img) {
  const int w = img.width();
  const int h = img.height();
  FloatImage mean(w, h);
  FloatImage variance(w, h);
  double variance_total = 0.0;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      double s = 0.0;
      double s2 = 0.0;
      for (int dy = -1; dy <= 1; ++dy) {
        for (int dx = -1; dx <= 1; ++dx) {
          const double v = img.clamped(x + dx, y + dy);
          s += v;
          s2 += v * v;
        }
      }
      const double mu = s / 9.0;
      const double var = std::max(s2 / 9.0 - mu * mu, 0.0);
      mean(x, y) = mu;
      variance(x, y) = var;
      variance_total += var;
    }
  }
  const double noise = variance_total / static_cast<double>(img.size());
  constexpr double kEpsilon = 1e-12;

  GrayImage out(w, h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const double var = variance(x, y);
      const double gain = std::max(var - noise, 0.0) / std::max(var, kEpsilon);
      out(x, y) = quantize_level(mean(x, y) + gain * (img(x, y) - mean(x, y)));
    }
  }
  return out;
}

std::vector<double> block_gradient_deviation(const GrayImage& img, int block) {
  if (block <= 0) throw ArgumentError("block size must be positive");
  const auto grad = central_gradients(to_float(img));
  const int gw = ceil_div(img.width(), block);
  const int gh = ceil_div(img.height(), block);
  std::vector<double> out(static_cast<std::size_t>(gw * gh));
  auto stddev = [](double s, double s2, double n) { return std::sqrt(std::max(s2 / n - (s / n) * (s / n), 0.0)); };
  for (int by = 0; by < gh; ++by) {
    for (int bx = 0; bx < gw; ++bx) {
      double sx = 0, sx2 = 0, sy = 0, sy2 = 0, n = 0;
      for (int y = by * block; y < std::min((by + 1) * block, img.height()); ++y) {
        for (int x = bx * block; x < std::min((bx + 1) * block, img.width()); ++x) {
          const double gx = grad.gx(x, y);
          const double gy = grad.gy(x, y);
          sx += gx;
          sx2 += gx * gx;
          sy += gy;
          sy2 += gy * gy;
          n += 1;
        }
      }
      out[static_cast<std::size_t>(by * gw + bx)] = stddev(sx, sx2, n) + stddev(sy, sy2, n);
    }
  }
  return out;
}

double default_segmentation_threshold(const GrayImage& img) {
  const auto dev = block_gradient_deviation(img);
  const double peak = *std::max_element(dev.begin(), dev.end());
  return std::max(0.05 * peak, 1e-9);
}

SegmentationMask segment(const GrayImage& img, double threshold) {
  if (!(threshold > 0.0)) throw ArgumentError("segmentation threshold must be positive");
  const auto dev = block_gradient_deviation(img, kSegmentationBlock);
  std::vector<std::uint8_t> blocks(dev.size());
  std::transform(dev.begin(), dev.end(), blocks.begin(), [&](double d) { return d > threshold ? 1 : 0; });
  return SegmentationMask(img.width(), img.height(), kSegmentationBlock, std::move(blocks));
}

OrientationField orientation_field(const GrayImage& img, int block) {
  if (block < 3) throw ArgumentError("orientation block size must be at least 3");
  const auto grad = central_gradients(to_float(img));
  const int gw = ceil_div(img.width(), block);
  const int gh = ceil_div(img.height(), block);
  std::vector<double> angles(static_cast<std::size_t>(gw * gh), 0.0);
  std::vector<std::uint8_t> defined(angles.size(), 0);
  for (int by = 0; by < gh; ++by) {
    for (int bx = 0; bx < gw; ++bx) {
      double num = 0.0;
      double den = 0.0;
      for (int y = by * block; y < std::min((by + 1) * block, img.height()); ++y) {
        for (int x = bx * block; x < std::min((bx + 1) * block, img.width()); ++x) {
          const double gx = grad.gx(x, y);
          const double gy = grad.gy(x, y);
          num += 2.0 * gx * gy;
          den += gx * gx - gy * gy;
        }
      }
      const auto idx = static_cast<std::size_t>(by * gw + bx);
      if (num == 0.0 && den == 0.0) continue;
      double theta = 0.5 * std::atan2(num, den) + std::numbers::pi / 2.0;
      if (theta >= std::numbers::pi) theta -= std::numbers::pi;
      if (theta < 0.0) theta += std::numbers::pi;
      angles[idx] = theta;
      defined[idx] = 1;
    }
  }
  return OrientationField(img.width(), img.height(), block, std::move(angles), std::move(defined));
}

FloatImage gaussian_lowpass(const FloatImage& img, double sigma) { return convolve(img, gaussian_kernel(sigma)); }

GrayImage gaussian_lowpass(const GrayImage& img, double sigma) {
  return quantize(gaussian_lowpass(to_float(img), sigma));
}

Kernel gabor_kernel(double theta, const GaborParams& params) {
  if (!(params.frequency > 0.0) || !(params.sigma_x > 0.0) || !(params.sigma_y > 0.0)) {
    throw ArgumentError("gabor frequency and sigmas must be positive");
  }
  const int half = static_cast<int>(std::ceil(3.0 * std::max(params.sigma_x, params.sigma_y)));
  const int size = 2 * half + 1;
  const double s = std::sin(theta);
  const double c = std::cos(theta);
  std::vector<double> w(static_cast<std::size_t>(size * size));
  for (int row = -half; row <= half; ++row) {
    const double y = -row;
    for (int x = -half; x <= half; ++x) {
      const double xt = x * s + y * c;
      const double yt = -x * c + y * s;
      const double envelope =
          std::exp(-0.5 * (xt * xt / (params.sigma_x * params.sigma_x) + yt * yt / (params.sigma_y * params.sigma_y)));
      w[static_cast<std::size_t>((row + half) * size + (x + half))] =
          envelope * std::cos(2.0 * std::numbers::pi * params.frequency * xt);
    }
  }
  return Kernel(size, size, std::move(w));
}

FloatImage gabor_response(const FloatImage& img, const OrientationField& field, const GaborParams& params) {
  if (field.image_width() != img.width() || field.image_height() != img.height()) {
    throw ArgumentError("orientation field does not match image dimensions");
  }
  std::vector<Kernel> kernels;
  kernels.reserve(static_cast<std::size_t>(field.grid_width() * field.grid_height()));
  for (int by = 0; by < field.grid_height(); ++by) {
    for (int bx = 0; bx < field.grid_width(); ++bx) kernels.push_back(gabor_kernel(field.angle(bx, by), params));
  }

  FloatImage out(img.width(), img.height());
  for (int y = 0; y < img.height(); ++y) {
    for (int x = 0; x < img.width(); ++x) {
      if (!field.defined_at(x, y)) {
        out(x, y) = img(x, y);
        continue;
      }
      const int bx = x / field.block_size();
      const int by = y / field.block_size();
      const Kernel& k = kernels[static_cast<std::size_t>(by * field.grid_width() + bx)];
      double acc = 0.0;
      for (int v = -k.radius_y(); v <= k.radius_y(); ++v) {
        for (int u = -k.radius_x(); u <= k.radius_x(); ++u) acc += k(u, v) * img.clamped(x - u, y - v);
      }
      out(x, y) = acc;
    }
  }
  return out;
}

GrayImage gabor_enhance(const GrayImage& img, const OrientationField& field, const GaborParams& params) {
  return quantize(gabor_response(to_float(img), field, params));
}

int otsu_threshold(std::span<const std::uint64_t, 256> histogram) {
  double total = 0.0;
  double weighted = 0.0;
  int populated = 0;
  for (int v = 0; v < 256; ++v) {
    const auto c = static_cast<double>(histogram[static_cast<std::size_t>(v)]);
    total += c;
    weighted += c * v;
    if (c > 0) ++populated;
  }
  if (populated < 2) return -1;

  int best = -1;
  double best_between = -1.0;
  double w0 = 0.0;
  double sum0 = 0.0;
  for (int t = 0; t < 255; ++t) {
    const auto c = static_cast<double>(histogram[static_cast<std::size_t>(t)]);
    w0 += c;
    sum0 += c * t;
    const double w1 = total - w0;
    if (w0 == 0.0 || w1 == 0.0) continue;
    const double mu0 = sum0 / w0;
    const double mu1 = (weighted - sum0) / w1;
    const double between = w0 * w1 * (mu0 - mu1) * (mu0 - mu1);
    if (between > best_between) {
      best_between = between;
      best = t;
    }
  }
  return best;
}

BinaryImage binarize(const GrayImage& img, const SegmentationMask& mask, RidgePolarity polarity) {
  if (mask.image_width() != img.width() || mask.image_height() != img.height()) {
    throw ArgumentError("segmentation mask does not match image dimensions");
  }
  std::array<std::uint64_t, 256> hist{};
  for (int y = 0; y < img.height(); ++y) {
    for (int x = 0; x < img.width(); ++x) {
      if (mask.foreground(x, y)) ++hist[img(x, y)];
    }
  }
  BinaryImage out(img.width(), img.height());
  const int threshold = otsu_threshold(hist);
  if (threshold < 0) return out;  // degenerate: at most one populated level

  for (int y = 0; y < img.height(); ++y) {
    for (int x = 0; x < img.width(); ++x) {
      if (!mask.foreground(x, y)) continue;
      const int v = img(x, y);
      const bool ridge = polarity == RidgePolarity::Dark ? v <= threshold : v > threshold;
      out(x, y) = ridge ? 1 : 0;
    }
  }
  return out;
}

namespace {

bool window_inside_foreground(const SegmentationMask& mask, int x, int y, int margin) {
  const int x0 = x - margin;
  const int y0 = y - margin;
  const int x1 = x + margin;
  const int y1 = y + margin;
  if (x0 < 0 || y0 < 0 || x1 >= mask.image_width() || y1 >= mask.image_height()) return false;
  const int b = mask.block_size();
  for (int by = y0 / b; by <= y1 / b; ++by) {
    for (int bx = x0 / b; bx <= x1 / b; ++bx) {
      if (!mask.block_foreground(bx, by)) return false;
    }
  }
  return true;
}

}  // namespace

MinutiaeSet extract_minutiae(const BinaryImage& skeleton, const SegmentationMask& mask, int margin) {
  if (mask.image_width() != skeleton.width() || mask.image_height() != skeleton.height()) {
    throw ArgumentError("segmentation mask does not match skeleton dimensions");
  }
  std::vector<Minutia> found;
  for (int y = 0; y < skeleton.height(); ++y) {
    for (int x = 0; x < skeleton.width(); ++x) {
      if (skeleton(x, y) == 0) continue;
      const int cn = crossing_number(neighborhood(skeleton, x, y));
      if (cn != 1 && cn != 3) continue;
      if (!window_inside_foreground(mask, x, y, margin)) continue;
      found.push_back({x, y, cn == 1 ? MinutiaKind::RidgeEnding : MinutiaKind::Bifurcation});
    }
  }
  return MinutiaeSet(std::move(found));
}

}  // namespace biokey::fingerprint
