#include "biokey/keygen.hpp"

#include <numeric>
#include <unordered_set>

namespace biokey::keygen {

KeyBits::KeyBits(std::vector<std::uint8_t> bits) : bits_(std::move(bits)) {
  if (bits_.empty()) throw ArgumentError("key must have at least one bit");
  for (auto b : bits_) {
    if (b > 1) throw ArgumentError("key bits must be 0 or 1");
  }
}

std::string KeyBits::to_binary_string() const {
  std::string out;
  out.reserve(bits_.size());
  for (auto b : bits_) out.push_back(b ? '1' : '0');
  return out;
}

std::string KeyBits::to_hex() const {
  static constexpr char kDigits[] = "0123456789abcdef";
  const std::size_t pad = (4 - bits_.size() % 4) % 4;
  std::string out;
  unsigned nibble = 0;
  std::size_t filled = pad;
  for (auto b : bits_) {
    nibble = (nibble << 1) | b;
    if (++filled == 4) {
      out.push_back(kDigits[nibble]);
      nibble = 0;
      filled = 0;
    }
  }
  return out;
}

DistinctVector distinct_components(const fusion::TemplateVector& bt) {
  if (bt.components.empty()) throw ArgumentError("template vector is empty");
  DistinctVector out;
  std::unordered_set<std::uint16_t> seen;
  for (auto v : bt.components) {
    if (seen.insert(v).second) out.components.push_back(v);
  }
  return out;
}

std::vector<std::uint64_t> resize(const DistinctVector& u, std::size_t k) {
  if (u.components.empty()) throw ArgumentError("cannot resize an empty distinct vector");
  if (k == 0) throw ArgumentError("key length must be at least 1");
  const std::size_t d = u.size();
  std::vector<std::uint64_t> out(u.components.begin(), u.components.begin() + static_cast<std::ptrdiff_t>(std::min(d, k)));
  if (d < k) {
    const std::uint64_t sum = std::accumulate(u.components.begin(), u.components.end(), std::uint64_t{0});
    // round-half-up of sum / d in integer arithmetic
    const std::uint64_t mean = (2 * sum + d) / (2 * d);
    out.resize(k, mean);
  }
  return out;
}

KeyBits derive_key(std::span<const std::uint64_t> b) {
  std::vector<std::uint8_t> bits;
  bits.reserve(b.size());
  for (auto v : b) bits.push_back(static_cast<std::uint8_t>(v % 2));
  return KeyBits(std::move(bits));
}

KeyBits generate_key(const fusion::TemplateVector& bt, std::size_t k) {
  const auto resized = resize(distinct_components(bt), k);
  return derive_key(resized);
}

EntropyReport entropy_report(const fusion::TemplateVector& bt, std::size_t k) {
  const auto d = distinct_components(bt).size();
  return {d, k, d < k ? k - d : 0};
}

}  // namespace biokey::keygen
