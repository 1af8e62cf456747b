#include "biokey/iris.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <deque>
#include <numbers>
#include <set>
#include <utility>

namespace biokey::iris {

IrisGeometry::IrisGeometry(Circle pupil, Circle iris) : pupil_(pupil), iris_(iris) {
  if (!(pupil.r > 0.0) || !(iris.r > 0.0)) throw ArgumentError("circle radii must be positive");
  if (!(pupil.r < iris.r)) throw LocalizationError("pupil radius must be smaller than iris radius");
  if (std::hypot(pupil.cx - iris.cx, pupil.cy - iris.cy) >= iris.r) {
    throw LocalizationError("pupil center lies outside the iris circle");
  }
}

namespace {

struct GradientField {
  FloatImage magnitude;
  FloatImage gx;
  FloatImage gy;
};

GradientField smoothed_gradient(const GrayImage& img, double sigma) {
  const auto smooth = convolve(to_float(img), gaussian_kernel(sigma));
  auto g = central_gradients(smooth);
  FloatImage mag(img.width(), img.height());
  for (int y = 0; y < img.height(); ++y) {
    for (int x = 0; x < img.width(); ++x) mag(x, y) = std::hypot(g.gx(x, y), g.gy(x, y));
  }
  return {std::move(mag), std::move(g.gx), std::move(g.gy)};
}

BinaryImage hysteresis(const GradientField& field, double low, double high) {
  const auto& mag = field.magnitude;
  const int w = mag.width();
  const int h = mag.height();
  auto at = [&](int x, int y) { return mag.contains(x, y) ? mag(x, y) : 0.0; };

  // Non-maximum suppression along the gradient, quantized to 45 degrees.
  // The asymmetric comparison keeps exactly one pixel of a symmetric ridge.
  FloatImage thin(w, h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const double m = mag(x, y);
      if (m <= 0.0) continue;
      double angle = std::atan2(field.gy(x, y), field.gx(x, y));
      if (angle < 0) angle += std::numbers::pi;
      const int sector = static_cast<int>(std::floor(angle / (std::numbers::pi / 4.0) + 0.5)) % 4;
      static constexpr int kDx[4] = {1, 1, 0, -1};
      static constexpr int kDy[4] = {0, 1, 1, 1};
      const double behind = at(x - kDx[sector], y - kDy[sector]);
      const double ahead = at(x + kDx[sector], y + kDy[sector]);
      if (m > behind && m >= ahead) thin(x, y) = m;
    }
  }

  BinaryImage edges(w, h);
  std::deque<std::pair<int, int>> frontier;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      if (thin(x, y) > 0.0 && thin(x, y) >= high) {
        edges(x, y) = 1;
        frontier.emplace_back(x, y);
      }
    }
  }
  while (!frontier.empty()) {
    const auto [x, y] = frontier.front();
    frontier.pop_front();
    for (int dy = -1; dy <= 1; ++dy) {
      for (int dx = -1; dx <= 1; ++dx) {
        const int nx = x + dx;
        const int ny = y + dy;
        if (!edges.contains(nx, ny) || edges(nx, ny) != 0) continue;
        if (thin(nx, ny) > 0.0 && thin(nx, ny) >= low) {
          edges(nx, ny) = 1;
          frontier.emplace_back(nx, ny);
        }
      }
    }
  }
  return edges;
}

}  // namespace

BinaryImage canny_edges(const GrayImage& img, double sigma, double low, double high) {
  if (!(low > 0.0 && low < high)) throw ArgumentError("canny thresholds must satisfy 0 < low < high");
  return hysteresis(smoothed_gradient(img, sigma), low, high);
}

BinaryImage canny_edges_relative(const GrayImage& img, double sigma, double high_fraction, double low_ratio) {
  if (!(high_fraction > 0.0 && high_fraction <= 1.0) || !(low_ratio > 0.0 && low_ratio < 1.0)) {
    throw ArgumentError("canny relative thresholds out of range");
  }
  const auto field = smoothed_gradient(img, sigma);
  const auto px = field.magnitude.pixels();
  const double peak = *std::max_element(px.begin(), px.end());
  if (peak <= 0.0) return BinaryImage(img.width(), img.height());
  const double high = high_fraction * peak;
  return hysteresis(field, low_ratio * high, high);
}

namespace {

// Distinct integer offsets of a digital circle of radius r.
std::vector<std::pair<int, int>> circle_offsets(int r) {
  const int samples = std::max(16, static_cast<int>(std::ceil(4.0 * std::numbers::pi * r)));
  std::set<std::pair<int, int>> unique;
  for (int i = 0; i < samples; ++i) {
    const double t = 2.0 * std::numbers::pi * i / samples;
    unique.emplace(static_cast<int>(std::lround(r * std::cos(t))), static_cast<int>(std::lround(r * std::sin(t))));
  }
  return {unique.begin(), unique.end()};
}

}  // namespace

Circle circular_hough(const BinaryImage& edges, int rmin, int rmax) {
  return circular_hough(edges, rmin, rmax, std::nullopt);
}

Circle circular_hough(const BinaryImage& edges, int rmin, int rmax, const std::optional<CenterWindow>& centers) {
  if (!(rmin > 0 && rmin < rmax)) throw ArgumentError("circular hough requires 0 < rmin < rmax");
  const int w = edges.width();
  const int h = edges.height();
  int x0 = 0, x1 = w - 1, y0 = 0, y1 = h - 1;
  if (centers) {
    x0 = std::max(x0, centers->x_min);
    x1 = std::min(x1, centers->x_max);
    y0 = std::max(y0, centers->y_min);
    y1 = std::min(y1, centers->y_max);
  }
  std::vector<std::pair<int, int>> points;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      if (edges(x, y) != 0) points.emplace_back(x, y);
    }
  }
  if (points.empty() || x0 > x1 || y0 > y1) throw NotFoundError("circular hough: no edge pixels to vote");

  const int aw = x1 - x0 + 1;
  const int ah = y1 - y0 + 1;
  std::vector<std::uint32_t> acc(static_cast<std::size_t>(aw) * static_cast<std::size_t>(ah));
  std::uint32_t best_votes = 0;
  Circle best{};
  for (int r = rmin; r <= rmax; ++r) {
    std::fill(acc.begin(), acc.end(), 0u);
    const auto offsets = circle_offsets(r);
    for (const auto& [px, py] : points) {
      for (const auto& [dx, dy] : offsets) {
        const int cx = px - dx;
        const int cy = py - dy;
        if (cx < x0 || cx > x1 || cy < y0 || cy > y1) continue;
        ++acc[static_cast<std::size_t>(cy - y0) * static_cast<std::size_t>(aw) + static_cast<std::size_t>(cx - x0)];
      }
    }
    for (int cy = 0; cy < ah; ++cy) {
      for (int cx = 0; cx < aw; ++cx) {
        const auto v = acc[static_cast<std::size_t>(cy) * static_cast<std::size_t>(aw) + static_cast<std::size_t>(cx)];
        if (v > best_votes) {
          best_votes = v;
          best = {static_cast<double>(cx + x0), static_cast<double>(cy + y0), static_cast<double>(r)};
        }
      }
    }
  }
  if (best_votes == 0) throw NotFoundError("circular hough: no circle received votes");
  return best;
}

IrisGeometry locate_boundaries(const GrayImage& img, const LocalizationParams& params) {
  const auto edges = canny_edges_relative(img, params.canny_sigma, params.canny_high_fraction, params.canny_low_ratio);

  Circle pupil;
  try {
    pupil = circular_hough(edges, params.pupil_rmin, params.pupil_rmax);
  } catch (const NotFoundError&) {
    throw LocalizationError("iris localization failed: pupil boundary not found");
  }

  const double tan_limit = std::tan(params.meridian_half_angle_deg * std::numbers::pi / 180.0);
  BinaryImage meridian(img.width(), img.height());
  for (int y = 0; y < img.height(); ++y) {
    for (int x = 0; x < img.width(); ++x) {
      if (edges(x, y) == 0) continue;
      const double dx = x - pupil.cx;
      const double dy = y - pupil.cy;
      if (std::hypot(dx, dy) <= pupil.r + 3.0) continue;
      if (std::abs(dy) <= std::abs(dx) * tan_limit) meridian(x, y) = 1;
    }
  }
  const int cx = static_cast<int>(pupil.cx);
  const int cy = static_cast<int>(pupil.cy);
  const int off = params.iris_center_max_offset;
  Circle limbus;
  try {
    limbus = circular_hough(meridian, params.iris_rmin, params.iris_rmax,
                            CenterWindow{cx - off, cx + off, cy - off, cy + off});
  } catch (const NotFoundError&) {
    throw LocalizationError("iris localization failed: limbic boundary not found");
  }
  return IrisGeometry(pupil, limbus);
}

std::optional<Line> linear_hough(std::span<const std::pair<int, int>> points, int min_votes) {
  if (points.empty()) return std::nullopt;
  constexpr int kFirstDeg = 45;
  constexpr int kLastDeg = 135;
  int max_abs_rho = 0;
  for (const auto& [x, y] : points) max_abs_rho = std::max({max_abs_rho, std::abs(x) + std::abs(y)});
  const int rho_span = 2 * max_abs_rho + 1;

  std::optional<Line> best;
  std::vector<int> acc(static_cast<std::size_t>(rho_span));
  for (int deg = kFirstDeg; deg < kLastDeg; ++deg) {
    const double a = deg * std::numbers::pi / 180.0;
    const double c = std::cos(a);
    const double s = std::sin(a);
    std::fill(acc.begin(), acc.end(), 0);
    for (const auto& [x, y] : points) {
      const auto rho = static_cast<int>(std::lround(x * c + y * s));
      ++acc[static_cast<std::size_t>(rho + max_abs_rho)];
    }
    for (int i = 0; i < rho_span; ++i) {
      const int v = acc[static_cast<std::size_t>(i)];
      if (v >= min_votes && (!best || v > best->votes)) best = Line{a, static_cast<double>(i - max_abs_rho), v};
    }
  }
  return best;
}

namespace {

// Intersection of the line with the circle closest to `target`, if any.
std::optional<std::pair<double, double>> nearest_intersection(const Line& line, const Circle& circle, double tx,
                                                              double ty) {
  const double nx = std::cos(line.angle);
  const double ny = std::sin(line.angle);
  const double px = line.rho * nx - circle.cx;
  const double py = line.rho * ny - circle.cy;
  const double dx = -ny;
  const double dy = nx;
  const double b = dx * px + dy * py;
  const double c = px * px + py * py - circle.r * circle.r;
  const double disc = b * b - c;
  if (disc < 0) return std::nullopt;
  std::optional<std::pair<double, double>> best;
  double best_d = 0;
  for (double t : {-b - std::sqrt(disc), -b + std::sqrt(disc)}) {
    const double x = circle.cx + px + t * dx;
    const double y = circle.cy + py + t * dy;
    const double d = std::hypot(x - tx, y - ty);
    if (!best || d < best_d) {
      best = std::pair{x, y};
      best_d = d;
    }
  }
  return best;
}

}  // namespace

NoiseMask isolate_eyelids(const GrayImage& img, const IrisGeometry& geom, const EyelidParams& params) {
  NoiseMask mask(img.width(), img.height());
  const auto edges = canny_edges_relative(img, params.canny_sigma, params.canny_high_fraction, params.canny_low_ratio);
  const Circle& pupil = geom.pupil();
  const Circle& iris = geom.iris();

  std::vector<std::pair<int, int>> upper;
  std::vector<std::pair<int, int>> lower;
  for (int y = 0; y < img.height(); ++y) {
    for (int x = 0; x < img.width(); ++x) {
      if (edges(x, y) == 0) continue;
      if (std::hypot(x - iris.cx, y - iris.cy) >= iris.r - 2.0) continue;
      if (std::hypot(x - pupil.cx, y - pupil.cy) <= pupil.r + 2.0) continue;
      (y <= pupil.cy ? upper : lower).emplace_back(x, y);
    }
  }

  const int min_votes = std::max(3, static_cast<int>(std::ceil(params.min_votes_fraction * iris.r)));
  const int x_lo = std::max(0, static_cast<int>(std::floor(iris.cx - iris.r)));
  const int x_hi = std::min(img.width() - 1, static_cast<int>(std::ceil(iris.cx + iris.r)));

  if (auto line = linear_hough(upper, min_votes)) {
    if (auto hit = nearest_intersection(*line, iris, pupil.cx, pupil.cy)) {
      const int y_cut = std::min(img.height() - 1, static_cast<int>(std::floor(hit->second)));
      for (int y = 0; y <= y_cut; ++y) {
        for (int x = x_lo; x <= x_hi; ++x) mask(x, y) = 1;
      }
    }
  }
  if (auto line = linear_hough(lower, min_votes)) {
    if (auto hit = nearest_intersection(*line, iris, pupil.cx, pupil.cy)) {
      const int y_cut = std::max(0, static_cast<int>(std::ceil(hit->second)));
      for (int y = y_cut; y < img.height(); ++y) {
        for (int x = x_lo; x <= x_hi; ++x) mask(x, y) = 1;
      }
    }
  }
  return mask;
}

NoiseMask isolate_eyelashes(const GrayImage& img, int threshold) {
  if (threshold < 0 || threshold > 255) throw ArgumentError("eyelash threshold must lie in [0, 255]");
  NoiseMask mask(img.width(), img.height());
  std::transform(img.pixels().begin(), img.pixels().end(), mask.pixels().begin(),
                 [&](std::uint8_t v) { return static_cast<std::uint8_t>(v < threshold ? 1 : 0); });
  return mask;
}

NoiseMask isolate_reflections(const GrayImage& img, int threshold) {
  if (threshold < 0 || threshold > 255) throw ArgumentError("reflection threshold must lie in [0, 255]");
  NoiseMask mask(img.width(), img.height());
  std::transform(img.pixels().begin(), img.pixels().end(), mask.pixels().begin(),
                 [&](std::uint8_t v) { return static_cast<std::uint8_t>(v > threshold ? 1 : 0); });
  return mask;
}

NoiseMask combine(const NoiseMask& a, const NoiseMask& b) {
  if (a.width() != b.width() || a.height() != b.height()) throw ArgumentError("noise masks differ in size");
  NoiseMask out(a.width(), a.height());
  std::transform(a.pixels().begin(), a.pixels().end(), b.pixels().begin(), out.pixels().begin(),
                 [](std::uint8_t p, std::uint8_t q) { return static_cast<std::uint8_t>(p | q); });
  return out;
}

NormalizedIris normalize_rubber_sheet(const GrayImage& img, const IrisGeometry& geom, const NoiseMask& noise,
                                      int radial_res, int angular_res) {
  if (radial_res < 2 || angular_res < 8) throw ArgumentError("rubber sheet needs radial >= 2 and angular >= 8");
  if (noise.width() != img.width() || noise.height() != img.height()) {
    throw ArgumentError("noise mask does not match image dimensions");
  }
  const Circle& p = geom.pupil();
  const Circle& q = geom.iris();
  NormalizedIris out{FloatImage(angular_res, radial_res), BinaryImage(angular_res, radial_res)};
  const double max_x = img.width() - 1;
  const double max_y = img.height() - 1;

  for (int j = 0; j < angular_res; ++j) {
    const double theta = 2.0 * std::numbers::pi * j / angular_res;
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    const double xp = p.cx + p.r * c;
    const double yp = p.cy + p.r * s;
    const double xi = q.cx + q.r * c;
    const double yi = q.cy + q.r * s;
    for (int k = 0; k < radial_res; ++k) {
      const double r = static_cast<double>(k) / (radial_res - 1);
      const double x = (1.0 - r) * xp + r * xi;
      const double y = (1.0 - r) * yp + r * yi;
      if (x < 0.0 || y < 0.0 || x > max_x || y > max_y) continue;

      const int x0 = static_cast<int>(std::floor(x));
      const int y0 = static_cast<int>(std::floor(y));
      const double fx = x - x0;
      const double fy = y - y0;
      const double v = (1 - fx) * (1 - fy) * img.clamped(x0, y0) + fx * (1 - fy) * img.clamped(x0 + 1, y0) +
                       (1 - fx) * fy * img.clamped(x0, y0 + 1) + fx * fy * img.clamped(x0 + 1, y0 + 1);
      out.samples(j, k) = v;
      const int nx = static_cast<int>(std::floor(x + 0.5));
      const int ny = static_cast<int>(std::floor(y + 0.5));
      out.valid(j, k) = noise.clamped(nx, ny) != 0 ? 0 : 1;
    }
  }
  return out;
}

}  // namespace biokey::iris
