#include "biokey/image.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <iterator>
#include <numeric>
#include <string>

namespace biokey {

Kernel::Kernel(int width, int height, std::vector<double> weights)
    : width_(width), height_(height), weights_(std::move(weights)) {
  if (width <= 0 || height <= 0 || width % 2 == 0 || height % 2 == 0) {
    throw ArgumentError("kernel dimensions must be odd and positive");
  }
  if (weights_.size() != static_cast<std::size_t>(width) * static_cast<std::size_t>(height)) {
    throw ArgumentError("kernel weight count does not match its dimensions");
  }
}

double Kernel::sum() const noexcept { return std::accumulate(weights_.begin(), weights_.end(), 0.0); }

namespace {

class HeaderReader {
 public:
  explicit HeaderReader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  // Skips whitespace and '#' comments, then parses an unsigned decimal.
  unsigned long next_number() {
    skip_separators();
    if (pos_ >= bytes_.size() || !std::isdigit(bytes_[pos_])) {
      throw FormatError("PGM header: expected a decimal number");
    }
    unsigned long value = 0;
    while (pos_ < bytes_.size() && std::isdigit(bytes_[pos_])) {
      value = value * 10 + static_cast<unsigned long>(bytes_[pos_] - '0');
      if (value > 1'000'000'000UL) throw FormatError("PGM header: number out of range");
      ++pos_;
    }
    return value;
  }

  // Exactly one whitespace byte separates maxval from the raster.
  std::size_t payload_offset() {
    if (pos_ >= bytes_.size() || !std::isspace(bytes_[pos_])) {
      throw FormatError("PGM header: missing separator before raster");
    }
    return pos_ + 1;
  }

  void skip(std::size_t n) { pos_ += n; }

 private:
  void skip_separators() {
    while (pos_ < bytes_.size()) {
      if (std::isspace(bytes_[pos_])) {
        ++pos_;
      } else if (bytes_[pos_] == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 0;
};

}  // namespace

GrayImage decode_pgm(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 2 || bytes[0] != 'P' || bytes[1] != '5') {
    throw FormatError("not a binary PGM (expected magic \"P5\")");
  }
  HeaderReader reader(bytes);
  reader.skip(2);
  const auto width = reader.next_number();
  const auto height = reader.next_number();
  const auto maxval = reader.next_number();
  if (width == 0 || height == 0) throw FormatError("PGM header: zero dimension");
  if (maxval == 0) throw FormatError("PGM header: maxval must be positive");
  if (maxval > 255) throw UnsupportedDepthError("PGM maxval " + std::to_string(maxval) + " exceeds 255");

  const std::size_t offset = reader.payload_offset();
  const std::size_t expected = width * height;
  if (bytes.size() < offset || bytes.size() - offset < expected) {
    throw LengthError("PGM payload truncated: expected " + std::to_string(expected) + " bytes, found " +
                      std::to_string(bytes.size() > offset ? bytes.size() - offset : 0));
  }
  std::vector<std::uint8_t> pixels(bytes.begin() + static_cast<std::ptrdiff_t>(offset),
                                   bytes.begin() + static_cast<std::ptrdiff_t>(offset + expected));
  return GrayImage(static_cast<int>(width), static_cast<int>(height), std::move(pixels));
}

std::vector<std::uint8_t> encode_pgm(const GrayImage& img) {
  const std::string header =
      "P5\n" + std::to_string(img.width()) + " " + std::to_string(img.height()) + "\n255\n";
  std::vector<std::uint8_t> out(header.begin(), header.end());
  out.insert(out.end(), img.pixels().begin(), img.pixels().end());
  return out;
}

GrayImage load_pgm(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (in.bad()) throw IoError("read failure on " + path.string());
  try {
    return decode_pgm(bytes);
  } catch (const FormatError& e) {
    throw FormatError(path.string() + ": " + e.what());
  } catch (const UnsupportedDepthError& e) {
    throw UnsupportedDepthError(path.string() + ": " + e.what());
  } catch (const LengthError& e) {
    throw LengthError(path.string() + ": " + e.what());
  }
}

void save_pgm(const GrayImage& img, const std::filesystem::path& path) {
  const auto bytes = encode_pgm(img);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("write failure on " + path.string());
}

FloatImage convolve(const FloatImage& img, const Kernel& kernel) {
  const int rx = kernel.radius_x();
  const int ry = kernel.radius_y();
  FloatImage out(img.width(), img.height());
  for (int y = 0; y < img.height(); ++y) {
    for (int x = 0; x < img.width(); ++x) {
      double acc = 0.0;
      for (int v = -ry; v <= ry; ++v) {
        for (int u = -rx; u <= rx; ++u) {
          acc += kernel(u, v) * img.clamped(x - u, y - v);
        }
      }
      out(x, y) = acc;
    }
  }
  return out;
}

Kernel gaussian_kernel(double sigma) {
  if (!(sigma > 0.0)) throw ArgumentError("gaussian sigma must be positive");
  const int half = static_cast<int>(std::ceil(3.0 * sigma));
  const int size = 2 * half + 1;
  std::vector<double> w(static_cast<std::size_t>(size * size));
  double total = 0.0;
  for (int y = -half; y <= half; ++y) {
    for (int x = -half; x <= half; ++x) {
      const double g = std::exp(-(x * x + y * y) / (2.0 * sigma * sigma));
      w[static_cast<std::size_t>((y + half) * size + (x + half))] = g;
      total += g;
    }
  }
  for (double& v : w) v /= total;
  return Kernel(size, size, std::move(w));
}

Gradients central_gradients(const FloatImage& img) {
  Gradients g{FloatImage(img.width(), img.height()), FloatImage(img.width(), img.height())};
  for (int y = 0; y < img.height(); ++y) {
    for (int x = 0; x < img.width(); ++x) {
      g.gx(x, y) = 0.5 * (img.clamped(x + 1, y) - img.clamped(x - 1, y));
      g.gy(x, y) = 0.5 * (img.clamped(x, y + 1) - img.clamped(x, y - 1));
    }
  }
  return g;
}

FloatImage to_float(const GrayImage& img) {
  std::vector<double> px(img.pixels().begin(), img.pixels().end());
  return FloatImage(img.width(), img.height(), std::move(px));
}

FloatImage to_float(const BinaryImage& img) {
  std::vector<double> px(img.pixels().begin(), img.pixels().end());
  return FloatImage(img.width(), img.height(), std::move(px));
}

std::uint8_t quantize_level(double v) noexcept {
  const double c = std::clamp(v, 0.0, 255.0);
  return static_cast<std::uint8_t>(std::floor(c + 0.5));
}

GrayImage quantize(const FloatImage& img) {
  std::vector<std::uint8_t> px(img.size());
  std::transform(img.pixels().begin(), img.pixels().end(), px.begin(), quantize_level);
  return GrayImage(img.width(), img.height(), std::move(px));
}

GrayImage to_gray(const BinaryImage& img) {
  std::vector<std::uint8_t> px(img.size());
  std::transform(img.pixels().begin(), img.pixels().end(), px.begin(),
                 [](std::uint8_t b) { return static_cast<std::uint8_t>(b ? 255 : 0); });
  return GrayImage(img.width(), img.height(), std::move(px));
}

}  // namespace biokey
