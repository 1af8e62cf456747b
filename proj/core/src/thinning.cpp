#include "biokey/thinning.hpp"

#include <algorithm>
#include <array>
#include <utility>
#include <vector>

namespace biokey::fingerprint {

namespace {

// x_i for i in 1..9, with x_9 = x_1.
constexpr int bit(Neighborhood n, int i) noexcept { return (n >> ((i - 1) % 8)) & 1; }

struct ConditionTable {
  std::array<std::uint8_t, 256> first{};   // G1 & G2 & G3
  std::array<std::uint8_t, 256> second{};  // G1 & G2 & G3'
};

const ConditionTable& condition_table() {
  static const ConditionTable table = [] {
    ConditionTable t;
    for (int code = 0; code < 256; ++code) {
      const auto n = static_cast<Neighborhood>(code);
      const bool base = condition_g1(n) && condition_g2(n);
      t.first[static_cast<std::size_t>(code)] = base && condition_g3(n);
      t.second[static_cast<std::size_t>(code)] = base && condition_g3_prime(n);
    }
    return t;
  }();
  return table;
}

constexpr std::array<std::pair<int, int>, 8> kOffsets{{
    {1, 0}, {1, -1}, {0, -1}, {-1, -1}, {-1, 0}, {-1, 1}, {0, 1}, {1, 1},
}};

}  // namespace

Neighborhood neighborhood(const BinaryImage& img, int x, int y) noexcept {
  Neighborhood n = 0;
  for (std::size_t i = 0; i < kOffsets.size(); ++i) {
    const int nx = x + kOffsets[i].first;
    const int ny = y + kOffsets[i].second;
    if (img.contains(nx, ny) && img(nx, ny) != 0) n = static_cast<Neighborhood>(n | (1u << i));
  }
  return n;
}

int crossing_count(Neighborhood n) noexcept {
  int count = 0;
  for (int i = 1; i <= 4; ++i) {
    if (bit(n, 2 * i - 1) == 0 && (bit(n, 2 * i) == 1 || bit(n, 2 * i + 1) == 1)) ++count;
  }
  return count;
}

int n1(Neighborhood n) noexcept {
  int count = 0;
  for (int k = 1; k <= 4; ++k) count += bit(n, 2 * k - 1) | bit(n, 2 * k);
  return count;
}

int n2(Neighborhood n) noexcept {
  int count = 0;
  for (int k = 1; k <= 4; ++k) count += bit(n, 2 * k) | bit(n, 2 * k + 1);
  return count;
}

bool condition_g1(Neighborhood n) noexcept { return crossing_count(n) == 1; }

bool condition_g2(Neighborhood n) noexcept {
  const int m = std::min(n1(n), n2(n));
  return m >= 2 && m <= 3;
}

bool condition_g3(Neighborhood n) noexcept {
  return ((bit(n, 2) | bit(n, 3) | (1 - bit(n, 8))) & bit(n, 1)) == 0;
}

bool condition_g3_prime(Neighborhood n) noexcept {
  return ((bit(n, 6) | bit(n, 7) | (1 - bit(n, 4))) & bit(n, 5)) == 0;
}

int crossing_number(Neighborhood n) noexcept {
  int sum = 0;
  for (int i = 1; i <= 8; ++i) sum += bit(n, i) != bit(n, i + 1) ? 1 : 0;
  return sum / 2;
}

BinaryImage thin(const BinaryImage& img) {
  const auto& table = condition_table();
  BinaryImage out = img;
  std::vector<std::pair<int, int>> erase;
  bool changed = true;
  while (changed) {
    changed = false;
    for (int step = 0; step < 2; ++step) {
      const auto& rule = step == 0 ? table.first : table.second;
      for (int parity = 0; parity < 2; ++parity) {
        erase.clear();
        for (int y = 0; y < out.height(); ++y) {
          for (int x = (y + parity) % 2; x < out.width(); x += 2) {
            if (out(x, y) != 0 && rule[neighborhood(out, x, y)] != 0) erase.emplace_back(x, y);
          }
        }
        for (const auto& [x, y] : erase) out(x, y) = 0;
        if (!erase.empty()) changed = true;
      }
    }
  }
  return out;
}

}  // namespace biokey::fingerprint
