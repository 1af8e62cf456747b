#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "biokey/error.hpp"

namespace biokey::fusion {

using Component = std::uint16_t;
using Sequence = std::vector<Component>;

/// F1/F2: minutiae x/y coordinates; I1/I2: quantized iris real/imaginary parts.
class FeatureVectors {
 public:
  FeatureVectors(Sequence f1, Sequence f2, Sequence i1, Sequence i2);

  /// Range-checked construction from wider integers (coordinates > 65535 are rejected).
  static FeatureVectors from_coordinates(std::span<const long long> xs, std::span<const long long> ys, Sequence i1,
                                         Sequence i2);

  const Sequence& f1() const noexcept { return f1_; }
  const Sequence& f2() const noexcept { return f2_; }
  const Sequence& i1() const noexcept { return i1_; }
  const Sequence& i2() const noexcept { return i2_; }
  std::size_t n() const noexcept { return f1_.size(); }
  std::size_t m() const noexcept { return i1_.size(); }

 private:
  Sequence f1_, f2_, i1_, i2_;
};

/// Fused template B_T; every component is a 16-bit value.
struct TemplateVector {
  Sequence components;

  std::size_t size() const noexcept { return components.size(); }
  friend bool operator==(const TemplateVector&, const TemplateVector&) = default;
};

struct ShuffleSeed {
  std::uint64_t value = 1;
};

/// Multiplier applied to each random component before the index reduction.
inline constexpr std::uint64_t kShuffleMultiplier = 104729;

/// Affine map of [-1, 1] onto [0, 65535], rounded half-up, clamped.
Component quantize_iris_value(double v);
std::pair<Sequence, Sequence> quantize_iris(std::span<const double> real, std::span<const double> imag);

/// 64-bit LCG step; the returned value is the new state.
struct PrngStep {
  std::uint64_t value;
  std::uint64_t state;
};
PrngStep prng_next(std::uint64_t state) noexcept;

/// First `count` outputs of prng_next starting from `seed`.
std::vector<std::uint64_t> random_vector(std::uint64_t seed, std::size_t count);

/// For each i, swap positions i and (randoms[i mod |randoms|] * 104729 mod 2^64) mod |v|.
Sequence shuffle(std::span<const Component> v, std::span<const std::uint64_t> randoms);
Sequence shuffle(std::span<const Component> v, std::span<const Component> randoms);

struct ShuffledVectors {
  Sequence s1, s2, s3, s4;
};

/// S1 = shuffle(F1, R), S2 = shuffle(F2, S1), S3 = shuffle(I1, S2), S4 = shuffle(I2, S3).
ShuffledVectors shuffle_chain(const FeatureVectors& f, ShuffleSeed seed);

/// Starts from `tail` and inserts tail-ward: element i of `head` is placed at
/// index min(i, filled) after shifting the rest right by one.
Sequence concatenate(std::span<const Component> head, std::span<const Component> tail);

/// Elementwise 16-bit NOR.
TemplateVector merge_nor(std::span<const Component> a, std::span<const Component> b);

/// Full fusion: B_T = merge_nor(concatenate(S1, S3), concatenate(S2, S4)).
TemplateVector fuse(const FeatureVectors& f, ShuffleSeed seed);

}  // namespace biokey::fusion
