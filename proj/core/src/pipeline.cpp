#include "biokey/pipeline.hpp"

#include <cmath>
#include <numbers>

#include "biokey/thinning.hpp"

namespace biokey::pipeline {

FingerprintStages run_fingerprint(const GrayImage& img, const FingerprintConfig& config) {
  using namespace fingerprint;
  auto equalized = histogram_equalize(img);
  auto wiener = wiener_filter(equalized);
  const double threshold = config.segmentation_threshold.value_or(default_segmentation_threshold(wiener));
  auto mask = segment(wiener, threshold);
  auto field = orientation_field(wiener, config.orientation_block).restricted_to(mask);
  auto smoothed = gaussian_lowpass(wiener, config.lowpass_sigma);
  auto enhanced = gabor_enhance(smoothed, field, config.gabor);
  auto binary = binarize(enhanced, mask, config.polarity);
  auto skeleton = thin(binary);
  auto minutiae = extract_minutiae(skeleton, mask, config.border_margin);
  return {std::move(equalized), std::move(wiener), std::move(mask),     std::move(field),   std::move(smoothed),
          std::move(enhanced),  std::move(binary), std::move(skeleton), std::move(minutiae)};
}

IrisStages run_iris(const GrayImage& img, const IrisConfig& config) {
  using namespace iris;
  const auto& loc = config.localization;
  auto edges = canny_edges_relative(img, loc.canny_sigma, loc.canny_high_fraction, loc.canny_low_ratio);
  auto geometry = locate_boundaries(img, loc);
  auto eyelids = isolate_eyelids(img, geometry, config.eyelids);
  auto noise = combine(combine(eyelids, isolate_eyelashes(img, config.eyelash_threshold)),
                       isolate_reflections(img, config.reflection_threshold));
  auto normalized = normalize_rubber_sheet(img, geometry, noise, config.radial_res, config.angular_res);
  auto features = log_gabor_features(normalized, config.log_gabor_f0, config.log_gabor_sigma_ratio);
  return {std::move(edges),      std::move(geometry), std::move(eyelids),
          std::move(noise),      std::move(normalized), std::move(features)};
}

fusion::FeatureVectors assemble_features(const fingerprint::MinutiaeSet& minutiae,
                                         const iris::IrisFeatureVectors& iris_features) {
  std::vector<long long> xs, ys;
  for (const auto& m : minutiae) {
    xs.push_back(m.x);
    ys.push_back(m.y);
  }
  auto [i1, i2] = fusion::quantize_iris(iris_features.real, iris_features.imag);
  return fusion::FeatureVectors::from_coordinates(xs, ys, std::move(i1), std::move(i2));
}

GrayImage draw_minutiae(const GrayImage& background, const fingerprint::MinutiaeSet& minutiae) {
  GrayImage out = background;
  for (const auto& m : minutiae) {
    // endings: hollow 5x5 square; bifurcations: filled 3x3 square
    const bool ending = m.kind == fingerprint::MinutiaKind::RidgeEnding;
    const int r = ending ? 2 : 1;
    for (int dy = -r; dy <= r; ++dy) {
      for (int dx = -r; dx <= r; ++dx) {
        if (ending && std::abs(dx) != r && std::abs(dy) != r) continue;
        if (out.contains(m.x + dx, m.y + dy)) out(m.x + dx, m.y + dy) = ending ? 255 : 0;
      }
    }
  }
  return out;
}

namespace {

void draw_circle(GrayImage& img, const iris::Circle& c, std::uint8_t value) {
  const int samples = std::max(32, static_cast<int>(8 * c.r));
  for (int i = 0; i < samples; ++i) {
    const double t = 2.0 * std::numbers::pi * i / samples;
    const int x = static_cast<int>(std::lround(c.cx + c.r * std::cos(t)));
    const int y = static_cast<int>(std::lround(c.cy + c.r * std::sin(t)));
    if (img.contains(x, y)) img(x, y) = value;
  }
}

}  // namespace

GrayImage draw_geometry(const GrayImage& background, const iris::IrisGeometry& geometry) {
  GrayImage out = background;
  draw_circle(out, geometry.pupil(), 255);
  draw_circle(out, geometry.iris(), 255);
  return out;
}

GrayImage draw_noise(const GrayImage& background, const iris::NoiseMask& noise) {
  GrayImage out = background;
  for (int y = 0; y < out.height(); ++y) {
    for (int x = 0; x < out.width(); ++x) {
      if (noise(x, y) != 0) out(x, y) = 0;
    }
  }
  return out;
}

GrayImage render_normalized(const iris::NormalizedIris& norm) { return quantize(norm.samples); }

}  // namespace biokey::pipeline
