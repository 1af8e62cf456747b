#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "biokey/fingerprint.hpp"
#include "biokey/fusion.hpp"
#include "biokey/keygen.hpp"

// Line-oriented text formats, LF line endings throughout.
namespace biokey::formats {

/// "x y K" per minutia, K in {E, B}, in (y, x) order.
std::string format_minutiae(const fingerprint::MinutiaeSet& set);
fingerprint::MinutiaeSet parse_minutiae(std::string_view text);

/// "i1 i2" per quantized iris sample.
std::string format_iris_features(const fusion::Sequence& i1, const fusion::Sequence& i2);
std::pair<fusion::Sequence, fusion::Sequence> parse_iris_features(std::string_view text);

/// One decimal component per line.
std::string format_template(const fusion::TemplateVector& bt);
fusion::TemplateVector parse_template(std::string_view text);

/// Bit string followed by LF.
std::string format_key_binary(const keygen::KeyBits& key);
/// Lowercase hex followed by LF.
std::string format_key_hex(const keygen::KeyBits& key);

std::string read_text(const std::filesystem::path& path);
void write_text(const std::filesystem::path& path, std::string_view text);

}  // namespace biokey::formats
