#pragma once

#include <optional>

#include "biokey/fingerprint.hpp"
#include "biokey/fusion.hpp"
#include "biokey/iris.hpp"
#include "biokey/keygen.hpp"

namespace biokey::pipeline {

struct FingerprintConfig {
  std::optional<double> segmentation_threshold;  // default: 0.05 x peak block deviation
  int orientation_block = 16;
  double lowpass_sigma = 1.0;
  fingerprint::GaborParams gabor;
  fingerprint::RidgePolarity polarity = fingerprint::RidgePolarity::Dark;
  int border_margin = fingerprint::kMinutiaBorderMargin;
};

struct FingerprintStages {
  GrayImage equalized;
  GrayImage wiener;
  fingerprint::SegmentationMask mask;
  fingerprint::OrientationField orientation;
  GrayImage smoothed;
  GrayImage enhanced;
  BinaryImage binary;
  BinaryImage skeleton;
  fingerprint::MinutiaeSet minutiae;
};

FingerprintStages run_fingerprint(const GrayImage& img, const FingerprintConfig& config = {});

struct IrisConfig {
  iris::LocalizationParams localization;
  iris::EyelidParams eyelids;
  int eyelash_threshold = 60;
  int reflection_threshold = 250;
  int radial_res = 20;
  int angular_res = 240;
  double log_gabor_f0 = 1.0 / 18.0;
  double log_gabor_sigma_ratio = 0.5;
};

struct IrisStages {
  BinaryImage edges;
  iris::IrisGeometry geometry;
  iris::NoiseMask eyelids;
  iris::NoiseMask noise;
  iris::NormalizedIris normalized;
  iris::IrisFeatureVectors features;
};

IrisStages run_iris(const GrayImage& img, const IrisConfig& config = {});

/// Packs minutiae coordinates and quantized iris responses for fusion.
fusion::FeatureVectors assemble_features(const fingerprint::MinutiaeSet& minutiae,
                                         const iris::IrisFeatureVectors& iris_features);

// Stage visualizations for dumps.
GrayImage draw_minutiae(const GrayImage& background, const fingerprint::MinutiaeSet& minutiae);
GrayImage draw_geometry(const GrayImage& background, const iris::IrisGeometry& geometry);
GrayImage draw_noise(const GrayImage& background, const iris::NoiseMask& noise);
GrayImage render_normalized(const iris::NormalizedIris& norm);

}  // namespace biokey::pipeline
