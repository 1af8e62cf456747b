#include <gtest/gtest.h>

#include <array>
#include <queue>
#include <random>
#include <vector>

#include "biokey/thinning.hpp"
#include "synthetic.hpp"

using namespace biokey;
using namespace biokey::fingerprint;

namespace {

// Reference evaluation written directly from the neighbor equations.
struct Reference {
  std::array<int, 10> x{};  // x[1..8], x[9] = x[1]

  explicit Reference(int code) {
    for (int i = 1; i <= 8; ++i) x[static_cast<std::size_t>(i)] = (code >> (i - 1)) & 1;
    x[9] = x[1];
  }
  int at(int i) const { return x[static_cast<std::size_t>(i)]; }

  int xh() const {
    int b = 0;
    for (int i = 1; i <= 4; ++i) b += (!at(2 * i - 1) && (at(2 * i) || at(2 * i + 1))) ? 1 : 0;
    return b;
  }
  int n1() const {
    return (at(1) || at(2)) + (at(3) || at(4)) + (at(5) || at(6)) + (at(7) || at(8));
  }
  int n2() const {
    return (at(2) || at(3)) + (at(4) || at(5)) + (at(6) || at(7)) + (at(8) || at(1));
  }
  bool g1() const { return xh() == 1; }
  bool g2() const {
    const int m = n1() < n2() ? n1() : n2();
    return m == 2 || m == 3;
  }
  bool g3() const { return !((at(2) || at(3) || !at(8)) && at(1)); }
  bool g3p() const { return !((at(6) || at(7) || !at(4)) && at(5)); }
};

int components(const BinaryImage& img) {
  BinaryImage seen(img.width(), img.height(), 0);
  int count = 0;
  for (int y = 0; y < img.height(); ++y) {
    for (int x = 0; x < img.width(); ++x) {
      if (!img(x, y) || seen(x, y)) continue;
      ++count;
      std::queue<std::pair<int, int>> q;
      q.emplace(x, y);
      seen(x, y) = 1;
      while (!q.empty()) {
        const auto [cx, cy] = q.front();
        q.pop();
        for (int dy = -1; dy <= 1; ++dy) {
          for (int dx = -1; dx <= 1; ++dx) {
            const int nx = cx + dx, ny = cy + dy;
            if (img.contains(nx, ny) && img(nx, ny) && !seen(nx, ny)) {
              seen(nx, ny) = 1;
              q.emplace(nx, ny);
            }
          }
        }
      }
    }
  }
  return count;
}

std::size_t ones(const BinaryImage& img) {
  std::size_t n = 0;
  for (auto v : img.pixels()) n += v;
  return n;
}

bool has_solid_square(const BinaryImage& img) {
  for (int y = 0; y + 1 < img.height(); ++y) {
    for (int x = 0; x + 1 < img.width(); ++x) {
      if (img(x, y) && img(x + 1, y) && img(x, y + 1) && img(x + 1, y + 1)) return true;
    }
  }
  return false;
}

}  // namespace

TEST(ThinningConditions, MatchBruteForceTruthTable) {
  int mismatches = 0;
  for (int code = 0; code < 256; ++code) {
    const Reference ref(code);
    const auto n = static_cast<Neighborhood>(code);
    mismatches += condition_g1(n) != ref.g1();
    mismatches += condition_g2(n) != ref.g2();
    mismatches += condition_g3(n) != ref.g3();
    mismatches += condition_g3_prime(n) != ref.g3p();
    mismatches += crossing_count(n) != ref.xh();
    mismatches += fingerprint::n1(n) != ref.n1();
    mismatches += fingerprint::n2(n) != ref.n2();
  }
  EXPECT_EQ(mismatches, 0);
}

TEST(ThinningConditions, NeighborOrderRunsCounterClockwiseFromEast) {
  BinaryImage img(3, 3, 0);
  img(2, 1) = 1;  // east -> x1
  EXPECT_EQ(neighborhood(img, 1, 1), 0b00000001);
  img = BinaryImage(3, 3, 0);
  img(1, 0) = 1;  // north (row above) -> x3
  EXPECT_EQ(neighborhood(img, 1, 1), 0b00000100);
  img = BinaryImage(3, 3, 0);
  img(2, 2) = 1;  // south-east -> x8
  EXPECT_EQ(neighborhood(img, 1, 1), 0b10000000);
}

TEST(Thin, IsolatedPixelSurvives) {
  BinaryImage img(5, 5, 0);
  img(2, 2) = 1;
  EXPECT_EQ(thin(img), img);
}

TEST(Thin, TwoByTenBarBecomesOnePixelLine) {
  BinaryImage img(14, 6, 0);
  for (int y = 2; y < 4; ++y) {
    for (int x = 2; x < 12; ++x) img(x, y) = 1;
  }
  const auto out = thin(img);
  EXPECT_EQ(components(out), 1);
  EXPECT_FALSE(has_solid_square(out));
  int width_span = 0;
  for (int x = 0; x < out.width(); ++x) {
    int column = 0;
    for (int y = 0; y < out.height(); ++y) column += out(x, y);
    EXPECT_LE(column, 1) << "column " << x;
    width_span += column > 0;
  }
  EXPECT_GE(width_span, 8);
  EXPECT_LE(width_span, 10);
}

TEST(Thin, ThickBarCollapsesToMedialLine) {
  BinaryImage img(20, 20, 0);
  for (int y = 3; y < 17; ++y) {
    for (int x = 5; x < 11; ++x) img(x, y) = 1;
  }
  const auto out = thin(img);
  EXPECT_EQ(components(out), 1);
  EXPECT_FALSE(has_solid_square(out));
  for (int y = 6; y < 14; ++y) {
    int row = 0;
    for (int x = 0; x < 20; ++x) row += out(x, y);
    EXPECT_EQ(row, 1) << "row " << y;
  }
}

TEST(Thin, RandomBlobsReachFixedPointAndKeepComponents) {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 50; ++trial) {
    const auto blob = synth::random_blob(rng, 48, 40);
    const auto once = thin(blob);
    EXPECT_EQ(thin(once), once) << "trial " << trial;
    EXPECT_EQ(components(once), components(blob)) << "trial " << trial;
    EXPECT_FALSE(has_solid_square(once)) << "trial " << trial;
    for (std::size_t i = 0; i < once.size(); ++i) ASSERT_LE(once.pixels()[i], blob.pixels()[i]);
  }
}

TEST(Thin, NeverErasesAComponent) {
  std::mt19937_64 rng(43);
  std::bernoulli_distribution on(0.45);
  for (int trial = 0; trial < 200; ++trial) {
    BinaryImage img(12, 12, 0);
    for (auto& v : img.pixels()) v = on(rng);
    const auto out = thin(img);
    EXPECT_EQ(thin(out), out);
    EXPECT_GT(ones(out), 0u);
    EXPECT_EQ(components(out), components(img)) << "trial " << trial;
  }
}

TEST(CrossingNumber, EndpointLinePointAndBranch) {
  EXPECT_EQ(crossing_number(0b00000001), 1);
  EXPECT_EQ(crossing_number(0b00010001), 2);
  EXPECT_EQ(crossing_number(0b01010001), 3);
  EXPECT_EQ(crossing_number(0), 0);
  EXPECT_EQ(crossing_number(0xFF), 0);
}
