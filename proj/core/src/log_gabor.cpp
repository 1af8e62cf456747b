#include <fftw3.h>

#include <bit>
#include <cmath>
#include <memory>
#include <mutex>

#include "biokey/iris.hpp"

namespace biokey::iris {

namespace {

// The FFTW planner is not re-entrant; execution on distinct buffers is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

struct PlanDeleter {
  void operator()(fftw_plan_s* p) const noexcept {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(p);
  }
};
using Plan = std::unique_ptr<fftw_plan_s, PlanDeleter>;

struct BufferDeleter {
  void operator()(fftw_complex* p) const noexcept { fftw_free(p); }
};
using Buffer = std::unique_ptr<fftw_complex[], BufferDeleter>;

Buffer make_buffer(std::size_t n) { return Buffer(fftw_alloc_complex(n)); }

Plan make_plan(std::size_t n, fftw_complex* in, fftw_complex* out, int sign) {
  std::lock_guard lock(planner_mutex());
  return Plan(fftw_plan_dft_1d(static_cast<int>(n), in, out, sign, FFTW_ESTIMATE));
}

void check_filter_params(double f0, double sigma_ratio) {
  if (!(f0 > 0.0 && f0 < 0.5)) throw ArgumentError("log-gabor center frequency must lie in (0, 0.5)");
  if (!(sigma_ratio > 0.0 && sigma_ratio < 1.0)) throw ArgumentError("log-gabor sigma ratio must lie in (0, 1)");
}

}  // namespace

double log_gabor_gain(double f, double f0, double sigma_ratio) {
  if (f <= 0.0) return 0.0;
  const double num = std::log(f / f0);
  const double den = std::log(sigma_ratio);
  return std::exp(-(num * num) / (2.0 * den * den));
}

std::vector<double> log_gabor_bank(std::size_t n, double f0, double sigma_ratio) {
  check_filter_params(f0, sigma_ratio);
  std::vector<double> gain(n, 0.0);
  for (std::size_t k = 1; k <= n / 2; ++k) {
    gain[k] = log_gabor_gain(static_cast<double>(k) / static_cast<double>(n), f0, sigma_ratio);
  }
  return gain;
}

std::vector<std::complex<double>> log_gabor_filter(std::span<const double> signal, double f0, double sigma_ratio) {
  check_filter_params(f0, sigma_ratio);
  if (signal.empty()) return {};
  const std::size_t n = std::bit_ceil(signal.size());
  const auto gain = log_gabor_bank(n, f0, sigma_ratio);

  auto time = make_buffer(n);
  auto freq = make_buffer(n);
  const auto forward = make_plan(n, time.get(), freq.get(), FFTW_FORWARD);
  const auto backward = make_plan(n, freq.get(), time.get(), FFTW_BACKWARD);

  for (std::size_t i = 0; i < n; ++i) {
    time[i][0] = i < signal.size() ? signal[i] : 0.0;
    time[i][1] = 0.0;
  }
  fftw_execute(forward.get());
  for (std::size_t k = 0; k < n; ++k) {
    freq[k][0] *= gain[k];
    freq[k][1] *= gain[k];
  }
  fftw_execute(backward.get());

  std::vector<std::complex<double>> out(signal.size());
  const double scale = 1.0 / static_cast<double>(n);
  for (std::size_t i = 0; i < signal.size(); ++i) out[i] = {time[i][0] * scale, time[i][1] * scale};
  return out;
}

IrisFeatureVectors log_gabor_features(const NormalizedIris& norm, double f0, double sigma_ratio) {
  check_filter_params(f0, sigma_ratio);
  IrisFeatureVectors out;
  const int cols = norm.angular_resolution();
  std::vector<double> row(static_cast<std::size_t>(cols));
  for (int k = 0; k < norm.radial_resolution(); ++k) {
    for (int j = 0; j < cols; ++j) row[static_cast<std::size_t>(j)] = norm.samples(j, k) / 255.0;
    const auto response = log_gabor_filter(row, f0, sigma_ratio);
    for (int j = 0; j < cols; ++j) {
      if (norm.valid(j, k) == 0) continue;
      out.real.push_back(response[static_cast<std::size_t>(j)].real());
      out.imag.push_back(response[static_cast<std::size_t>(j)].imag());
    }
  }
  return out;
}

}  // namespace biokey::iris
