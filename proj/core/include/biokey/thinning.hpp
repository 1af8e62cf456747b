#pragma once

#include <cstdint>

#include "biokey/image.hpp"

namespace biokey::fingerprint {

/// Eight-neighborhood packed as bits: bit (i-1) holds x_i, where x_1 is the
/// east neighbor and x_2..x_8 follow counter-clockwise (NE, N, NW, W, SW, S, SE).
using Neighborhood = std::uint8_t;

Neighborhood neighborhood(const BinaryImage& img, int x, int y) noexcept;

int crossing_count(Neighborhood n) noexcept;       // X_H(p)
int n1(Neighborhood n) noexcept;
int n2(Neighborhood n) noexcept;
bool condition_g1(Neighborhood n) noexcept;        // X_H(p) == 1
bool condition_g2(Neighborhood n) noexcept;        // 2 <= min(n1, n2) <= 3
bool condition_g3(Neighborhood n) noexcept;        // (x2 | x3 | !x8) & x1 == 0
bool condition_g3_prime(Neighborhood n) noexcept;  // (x6 | x7 | !x4) & x5 == 0

/// Crossing number CN = 1/2 sum |x_i - x_{i+1}|, x_9 = x_1.
int crossing_number(Neighborhood n) noexcept;

/// Two-subiteration parallel thinning over checkerboard subfields: pixels
/// with (x + y) even are tested with G1, G2, G3, odd ones with G1, G2, G3'.
/// Passes repeat until nothing is erased.
BinaryImage thin(const BinaryImage& img);

}  // namespace biokey::fingerprint
