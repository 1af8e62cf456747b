#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "biokey/error.hpp"
#include "biokey/fusion.hpp"

using namespace biokey;
using namespace biokey::fusion;

namespace {

Sequence sorted(Sequence v) {
  std::sort(v.begin(), v.end());
  return v;
}

Sequence random_sequence(std::mt19937_64& rng, std::size_t n) {
  std::uniform_int_distribution<int> value(0, 65535);
  Sequence v(n);
  for (auto& x : v) x = static_cast<Component>(value(rng));
  return v;
}

// Golden values below come from an independent script of the same rules.
const Sequence kF1{12, 40, 7, 99, 3};
const Sequence kF2{5, 5, 80, 1, 64};
const Sequence kI1{100, 65535, 0, 32768, 17, 17, 900};
const Sequence kI2{1, 2, 3, 4, 5, 6, 7};

}  // namespace

TEST(QuantizeIris, EndpointsMidpointAndClamp) {
  EXPECT_EQ(quantize_iris_value(-1.0), 0);
  EXPECT_EQ(quantize_iris_value(1.0), 65535);
  EXPECT_EQ(quantize_iris_value(0.0), 32768);
  EXPECT_EQ(quantize_iris_value(3.7), 65535);
  EXPECT_EQ(quantize_iris_value(-12.0), 0);
  EXPECT_THROW(quantize_iris_value(std::numeric_limits<double>::quiet_NaN()), ArgumentError);
  EXPECT_THROW(quantize_iris_value(std::numeric_limits<double>::infinity()), ArgumentError);
}

TEST(QuantizeIris, PairsStayAligned) {
  const std::vector<double> re{-1.0, 0.0}, im{1.0, -1.0};
  const auto [i1, i2] = quantize_iris(re, im);
  EXPECT_EQ(i1, (Sequence{0, 32768}));
  EXPECT_EQ(i2, (Sequence{65535, 0}));
  EXPECT_THROW(quantize_iris(re, std::vector<double>{1.0}), ArgumentError);
}

TEST(Prng, KnownSteps) {
  EXPECT_EQ(prng_next(0).value, 1442695040888963407ULL);
  EXPECT_EQ(prng_next(1).value, 7806831264735756412ULL);
  EXPECT_EQ(prng_next(1).state, 7806831264735756412ULL);
  EXPECT_EQ(random_vector(1, 3),
            (std::vector<std::uint64_t>{7806831264735756412ULL, 9396908728118811419ULL, 11960119808228829710ULL}));
  EXPECT_EQ(random_vector(99, 50), random_vector(99, 50));
}

TEST(Shuffle, SingleElementUnchanged) {
  const Sequence v{42};
  EXPECT_EQ(shuffle(v, std::vector<std::uint64_t>{123456789}), v);
}

TEST(Shuffle, HandTracedSwaps) {
  EXPECT_EQ(shuffle(Sequence{10, 20, 30}, std::vector<std::uint64_t>{0, 0, 0}), (Sequence{30, 10, 20}));
}

TEST(Shuffle, RejectsEmptyInputs) {
  EXPECT_THROW(shuffle(Sequence{}, std::vector<std::uint64_t>{1}), ArgumentError);
  EXPECT_THROW(shuffle(Sequence{1}, std::vector<std::uint64_t>{}), ArgumentError);
}

TEST(Shuffle, AlwaysPermutes) {
  std::mt19937_64 rng(1000);
  std::uniform_int_distribution<std::size_t> len(1, 64);
  for (int trial = 0; trial < 1000; ++trial) {
    const auto v = random_sequence(rng, len(rng));
    std::vector<std::uint64_t> randoms(len(rng));
    for (auto& r : randoms) r = rng();
    const auto out = shuffle(v, randoms);
    ASSERT_EQ(sorted(out), sorted(v)) << trial;
  }
}

TEST(ShuffleChain, GoldenTrace) {
  const FeatureVectors f(kF1, kF2, kI1, kI2);
  const auto s = shuffle_chain(f, ShuffleSeed{1});
  EXPECT_EQ(s.s1, (Sequence{12, 7, 99, 40, 3}));
  EXPECT_EQ(s.s2, (Sequence{5, 80, 64, 1, 5}));
  EXPECT_EQ(s.s3, (Sequence{32768, 900, 100, 17, 0, 17, 65535}));
  EXPECT_EQ(s.s4, (Sequence{1, 2, 6, 7, 3, 4, 5}));
}

TEST(ShuffleChain, SingletonsPassThrough) {
  const FeatureVectors f({3}, {4}, {5}, {6});
  const auto s = shuffle_chain(f, ShuffleSeed{777});
  EXPECT_EQ(s.s1, Sequence{3});
  EXPECT_EQ(s.s2, Sequence{4});
  EXPECT_EQ(s.s3, Sequence{5});
  EXPECT_EQ(s.s4, Sequence{6});
}

TEST(ShuffleChain, SeedChangesFirstVector) {
  const FeatureVectors f(kF1, kF2, kI1, kI2);
  EXPECT_NE(shuffle_chain(f, ShuffleSeed{1}).s1, shuffle_chain(f, ShuffleSeed{42}).s1);
}

TEST(Concatenate, HandTraces) {
  EXPECT_EQ(concatenate(Sequence{1}, Sequence{2}), (Sequence{1, 2}));
  EXPECT_EQ(concatenate(Sequence{1, 2}, Sequence{3, 4}), (Sequence{1, 2, 3, 4}));
  EXPECT_EQ(concatenate(Sequence{1, 2, 3, 4, 5}, Sequence{9}), (Sequence{1, 2, 3, 4, 5, 9}));
  EXPECT_THROW(concatenate(Sequence{}, Sequence{1}), ArgumentError);
}

TEST(Concatenate, MultisetUnionAndLength) {
  std::mt19937_64 rng(31);
  std::uniform_int_distribution<std::size_t> len(1, 40);
  for (int trial = 0; trial < 500; ++trial) {
    const auto a = random_sequence(rng, len(rng));
    const auto b = random_sequence(rng, len(rng));
    const auto out = concatenate(a, b);
    ASSERT_EQ(out.size(), a.size() + b.size());
    Sequence both = a;
    both.insert(both.end(), b.begin(), b.end());
    ASSERT_EQ(sorted(out), sorted(both));
  }
}

TEST(MergeNor, BitwiseExamples) {
  EXPECT_EQ(merge_nor(Sequence{0}, Sequence{0}).components, Sequence{65535});
  EXPECT_EQ(merge_nor(Sequence{65535, 65535}, Sequence{0, 1234}).components, (Sequence{0, 0}));
  EXPECT_EQ(merge_nor(Sequence{5}, Sequence{3}).components, Sequence{65528});
  EXPECT_THROW(merge_nor(Sequence{1, 2}, Sequence{1}), ArgumentError);
}

TEST(MergeNor, IsCommutative) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 200; ++trial) {
    const auto a = random_sequence(rng, 30);
    const auto b = random_sequence(rng, 30);
    ASSERT_EQ(merge_nor(a, b), merge_nor(b, a));
  }
}

TEST(Fuse, GoldenTemplates) {
  const FeatureVectors f(kF1, kF2, kI1, kI2);
  EXPECT_EQ(fuse(f, ShuffleSeed{1}).components,
            (Sequence{65522, 65448, 65436, 65494, 65528, 32766, 64633, 65433, 65512, 65532, 65514, 0}));
  EXPECT_EQ(fuse(f, ShuffleSeed{42}).components,
            (Sequence{65528, 65490, 65452, 65436, 65522, 32763, 65433, 65516, 65532, 0, 64634, 65518}));
}

TEST(Fuse, AllZeroSingletonsSaturate) {
  // n = m = 1 gives n + m = 2 components, both NOR(0, 0).
  for (std::uint64_t seed : {0ULL, 1ULL, 0xFFFFFFFFFFFFFFFFULL}) {
    EXPECT_EQ(fuse(FeatureVectors({0}, {0}, {0}, {0}), ShuffleSeed{seed}).components, (Sequence{65535, 65535}));
  }
}

TEST(Fuse, LengthIsNPlusMAndDeterministic) {
  std::mt19937_64 rng(64);
  std::uniform_int_distribution<std::size_t> len(1, 80);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = len(rng), m = len(rng);
    const FeatureVectors f(random_sequence(rng, n), random_sequence(rng, n), random_sequence(rng, m),
                           random_sequence(rng, m));
    const ShuffleSeed seed{rng()};
    const auto bt = fuse(f, seed);
    ASSERT_EQ(bt.size(), n + m);
    ASSERT_EQ(bt, fuse(f, seed));
  }
}

TEST(FeatureVectors, ValidatesShape) {
  EXPECT_THROW(FeatureVectors({1, 2}, {1}, {1}, {1}), ArgumentError);
  EXPECT_THROW(FeatureVectors({}, {}, {1}, {1}), ArgumentError);
  EXPECT_THROW(FeatureVectors({1}, {1}, {1}, {}), ArgumentError);
  const std::vector<long long> ok{0, 65535}, big{1, 65536}, neg{-1, 0};
  EXPECT_NO_THROW(FeatureVectors::from_coordinates(ok, ok, {1}, {1}));
  EXPECT_THROW(FeatureVectors::from_coordinates(big, ok, {1}, {1}), ArgumentError);
  EXPECT_THROW(FeatureVectors::from_coordinates(ok, neg, {1}, {1}), ArgumentError);
}
