#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "biokey/fusion.hpp"

namespace biokey::keygen {

inline constexpr std::size_t kDefaultKeyBits = 256;

/// Template components with duplicates dropped, first occurrences kept in order.
struct DistinctVector {
  std::vector<std::uint16_t> components;

  std::size_t size() const noexcept { return components.size(); }
};

class KeyBits {
 public:
  explicit KeyBits(std::vector<std::uint8_t> bits);

  std::size_t size() const noexcept { return bits_.size(); }
  std::span<const std::uint8_t> bits() const noexcept { return bits_; }
  std::uint8_t operator[](std::size_t i) const noexcept { return bits_[i]; }

  /// '0'/'1' characters, first bit first.
  std::string to_binary_string() const;
  /// Lowercase hex of the bit string read as a big-endian number (first bit
  /// most significant), zero-padded on the left to a whole nibble.
  std::string to_hex() const;

  friend bool operator==(const KeyBits&, const KeyBits&) = default;

 private:
  std::vector<std::uint8_t> bits_;
};

DistinctVector distinct_components(const fusion::TemplateVector& bt);

/// First k components when d >= k; otherwise the d components padded with
/// round-half-up(mean) up to length k.
std::vector<std::uint64_t> resize(const DistinctVector& u, std::size_t k);

KeyBits derive_key(std::span<const std::uint64_t> b);

KeyBits generate_key(const fusion::TemplateVector& bt, std::size_t k = kDefaultKeyBits);

/// How much of a key is constant padding.
struct EntropyReport {
  std::size_t distinct = 0;     // d
  std::size_t key_bits = 0;     // k
  std::size_t fill_length = 0;  // k - d when d < k, else 0

  bool padded() const noexcept { return fill_length > 0; }
};

EntropyReport entropy_report(const fusion::TemplateVector& bt, std::size_t k);

}  // namespace biokey::keygen
