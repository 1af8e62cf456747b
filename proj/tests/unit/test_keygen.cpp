#include <gtest/gtest.h>

#include <random>
#include <vector>

#include "biokey/error.hpp"
#include "biokey/keygen.hpp"

using namespace biokey;
using namespace biokey::keygen;
using fusion::Sequence;
using fusion::TemplateVector;

namespace {

std::string bits_of(const KeyBits& k) { return k.to_binary_string(); }

TemplateVector random_template(std::mt19937_64& rng, std::size_t n, int max_value) {
  std::uniform_int_distribution<int> value(0, max_value);
  TemplateVector bt;
  bt.components.resize(n);
  for (auto& c : bt.components) c = static_cast<std::uint16_t>(value(rng));
  return bt;
}

}  // namespace

TEST(Distinct, FirstOccurrenceOrder) {
  EXPECT_EQ(distinct_components({{3, 1, 3, 2}}).components, (Sequence{3, 1, 2}));
  EXPECT_EQ(distinct_components({{7, 7, 7}}).components, (Sequence{7}));
  EXPECT_EQ(distinct_components({{9, 4, 1}}).components, (Sequence{9, 4, 1}));
  EXPECT_THROW(distinct_components({}), ArgumentError);
}

TEST(Distinct, IsIdempotent) {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 200; ++trial) {
    const auto once = distinct_components(random_template(rng, 1 + trial % 50, 20));
    EXPECT_EQ(distinct_components({once.components}).components, once.components);
  }
}

TEST(Resize, PadsWithRoundedMeanOrTruncates) {
  EXPECT_EQ(resize({{4, 7}}, 4), (std::vector<std::uint64_t>{4, 7, 6, 6}));
  EXPECT_EQ(resize({{9, 2, 5}}, 2), (std::vector<std::uint64_t>{9, 2}));
  EXPECT_EQ(resize({{10}}, 1), (std::vector<std::uint64_t>{10}));
  EXPECT_EQ(resize({{1, 2}}, 3), (std::vector<std::uint64_t>{1, 2, 2}));  // 1.5 rounds up
  EXPECT_EQ(resize({{65535, 65534}}, 3), (std::vector<std::uint64_t>{65535, 65534, 65535}));
  EXPECT_THROW(resize({{1}}, 0), ArgumentError);
  EXPECT_THROW(resize({}, 4), ArgumentError);
}

TEST(DeriveKey, Parity) {
  EXPECT_EQ(bits_of(derive_key(std::vector<std::uint64_t>{4, 7, 6, 5})), "0101");
  EXPECT_EQ(bits_of(derive_key(std::vector<std::uint64_t>(12, 8))), std::string(12, '0'));
  EXPECT_EQ(bits_of(derive_key(std::vector<std::uint64_t>(256, 65535))), std::string(256, '1'));
}

TEST(DeriveKey, EachBitDependsOnlyOnItsComponent) {
  std::mt19937_64 rng(12);
  std::vector<std::uint64_t> b(64);
  for (auto& x : b) x = rng() & 0xFFFF;
  const auto base = derive_key(b);
  for (std::size_t i = 0; i < b.size(); ++i) {
    auto changed = b;
    changed[i] += 1;
    const auto key = derive_key(changed);
    for (std::size_t j = 0; j < b.size(); ++j) EXPECT_EQ(key[j] != base[j], i == j);
  }
}

TEST(GenerateKey, AlwaysHasRequestedLength) {
  std::mt19937_64 rng(3);
  for (std::size_t k : {1u, 7u, 128u, 256u, 1000u}) {
    for (int trial = 0; trial < 20; ++trial) {
      EXPECT_EQ(generate_key(random_template(rng, 1 + trial * 37, 65535), k).size(), k);
    }
  }
  EXPECT_EQ(generate_key({{5}}).size(), 256u);
}

TEST(GenerateKey, SingleZeroComponentGivesZeroKey) {
  EXPECT_EQ(bits_of(generate_key({{0}}, 256)), std::string(256, '0'));
}

TEST(GenerateKey, FillBitsAreConstant) {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 100; ++trial) {
    const auto bt = random_template(rng, 5 + trial, 40);
    const auto d = distinct_components(bt).size();
    const auto key = generate_key(bt, 256);
    ASSERT_LT(d, 256u);
    for (std::size_t i = d + 1; i < key.size(); ++i) ASSERT_EQ(key[i], key[d]);
    const auto report = entropy_report(bt, 256);
    EXPECT_EQ(report.distinct, d);
    EXPECT_EQ(report.fill_length, 256 - d);
    EXPECT_TRUE(report.padded());
  }
}

TEST(GenerateKey, Deterministic) {
  std::mt19937_64 rng(5);
  const auto bt = random_template(rng, 500, 65535);
  EXPECT_EQ(generate_key(bt), generate_key(bt));
  EXPECT_FALSE(entropy_report(bt, 256).padded());
}

TEST(KeyBits, HexIsMostSignificantFirstAndLeftPadded) {
  EXPECT_EQ(KeyBits({0, 0, 0, 0, 0, 1, 1, 0, 0, 0, 0, 0, 1, 1, 1, 1}).to_hex(), "060f");
  EXPECT_EQ(KeyBits({0, 0, 0, 0, 0, 1, 1, 0, 0, 0}).to_hex(), "018");
  EXPECT_EQ(KeyBits({1}).to_hex(), "1");
  EXPECT_EQ(KeyBits(std::vector<std::uint8_t>(256, 1)).to_hex(), std::string(64, 'f'));
  EXPECT_THROW(KeyBits({0, 2}), ArgumentError);
  EXPECT_THROW(KeyBits({}), ArgumentError);
}
