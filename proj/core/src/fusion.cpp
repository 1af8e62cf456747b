#include "biokey/fusion.hpp"

#include <cmath>
#include <limits>

namespace biokey::fusion {

namespace {

constexpr std::uint64_t kLcgMultiplier = 6364136223846793005ULL;
constexpr std::uint64_t kLcgIncrement = 1442695040888963407ULL;

template <typename R>
Sequence shuffle_impl(std::span<const Component> v, std::span<const R> randoms) {
  if (v.empty()) throw ArgumentError("cannot shuffle an empty vector");
  if (randoms.empty()) throw ArgumentError("shuffle needs at least one random component");
  Sequence out(v.begin(), v.end());
  const auto size = static_cast<std::uint64_t>(out.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    const auto r = static_cast<std::uint64_t>(randoms[i % randoms.size()]);
    const auto j = static_cast<std::size_t>((r * kShuffleMultiplier) % size);
    std::swap(out[i], out[j]);
  }
  return out;
}

}  // namespace

FeatureVectors::FeatureVectors(Sequence f1, Sequence f2, Sequence i1, Sequence i2)
    : f1_(std::move(f1)), f2_(std::move(f2)), i1_(std::move(i1)), i2_(std::move(i2)) {
  if (f1_.empty() || f1_.size() != f2_.size()) {
    throw ArgumentError("fingerprint vectors must be non-empty and of equal length");
  }
  if (i1_.empty() || i1_.size() != i2_.size()) throw ArgumentError("iris vectors must be non-empty and of equal length");
}

FeatureVectors FeatureVectors::from_coordinates(std::span<const long long> xs, std::span<const long long> ys,
                                                Sequence i1, Sequence i2) {
  auto narrow = [](std::span<const long long> in) {
    Sequence out;
    out.reserve(in.size());
    for (long long v : in) {
      if (v < 0 || v > std::numeric_limits<Component>::max()) {
        throw ArgumentError("minutia coordinate " + std::to_string(v) + " outside [0, 65535]");
      }
      out.push_back(static_cast<Component>(v));
    }
    return out;
  };
  return FeatureVectors(narrow(xs), narrow(ys), std::move(i1), std::move(i2));
}

Component quantize_iris_value(double v) {
  if (!std::isfinite(v)) throw ArgumentError("iris feature value is not finite");
  const double scaled = std::floor((v + 1.0) / 2.0 * 65535.0 + 0.5);
  if (scaled <= 0.0) return 0;
  if (scaled >= 65535.0) return 65535;
  return static_cast<Component>(scaled);
}

std::pair<Sequence, Sequence> quantize_iris(std::span<const double> real, std::span<const double> imag) {
  if (real.size() != imag.size()) throw ArgumentError("real and imaginary parts differ in length");
  Sequence a, b;
  a.reserve(real.size());
  b.reserve(imag.size());
  for (double v : real) a.push_back(quantize_iris_value(v));
  for (double v : imag) b.push_back(quantize_iris_value(v));
  return {std::move(a), std::move(b)};
}

PrngStep prng_next(std::uint64_t state) noexcept {
  const std::uint64_t next = kLcgMultiplier * state + kLcgIncrement;
  return {next, next};
}

std::vector<std::uint64_t> random_vector(std::uint64_t seed, std::size_t count) {
  std::vector<std::uint64_t> out;
  out.reserve(count);
  std::uint64_t state = seed;
  for (std::size_t i = 0; i < count; ++i) {
    const auto step = prng_next(state);
    out.push_back(step.value);
    state = step.state;
  }
  return out;
}

Sequence shuffle(std::span<const Component> v, std::span<const std::uint64_t> randoms) {
  return shuffle_impl(v, randoms);
}

Sequence shuffle(std::span<const Component> v, std::span<const Component> randoms) { return shuffle_impl(v, randoms); }

ShuffledVectors shuffle_chain(const FeatureVectors& f, ShuffleSeed seed) {
  const auto r = random_vector(seed.value, f.n());
  ShuffledVectors s;
  s.s1 = shuffle(f.f1(), std::span<const std::uint64_t>(r));
  s.s2 = shuffle(f.f2(), std::span<const Component>(s.s1));
  s.s3 = shuffle(f.i1(), std::span<const Component>(s.s2));
  s.s4 = shuffle(f.i2(), std::span<const Component>(s.s3));
  return s;
}

Sequence concatenate(std::span<const Component> head, std::span<const Component> tail) {
  if (head.empty() || tail.empty()) throw ArgumentError("concatenation operands must be non-empty");
  Sequence out(head.size() + tail.size());
  std::copy(tail.begin(), tail.end(), out.begin());
  std::size_t filled = tail.size();
  for (std::size_t i = 0; i < head.size(); ++i) {
    const std::size_t t = std::min(i, filled);
    std::copy_backward(out.begin() + static_cast<std::ptrdiff_t>(t), out.begin() + static_cast<std::ptrdiff_t>(filled),
                       out.begin() + static_cast<std::ptrdiff_t>(filled + 1));
    out[t] = head[i];
    ++filled;
  }
  return out;
}

TemplateVector merge_nor(std::span<const Component> a, std::span<const Component> b) {
  if (a.size() != b.size()) throw ArgumentError("NOR operands differ in length");
  Sequence out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = static_cast<Component>(~(a[i] | b[i]) & 0xFFFFu);
  return TemplateVector{std::move(out)};
}

TemplateVector fuse(const FeatureVectors& f, ShuffleSeed seed) {
  const auto s = shuffle_chain(f, seed);
  const auto m1 = concatenate(s.s1, s.s3);
  const auto m2 = concatenate(s.s2, s.s4);
  return merge_nor(m1, m2);
}

}  // namespace biokey::fusion
