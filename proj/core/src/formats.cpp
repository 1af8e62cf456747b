#include "biokey/formats.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <vector>

namespace biokey::formats {

namespace {

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    auto line = text.substr(0, nl);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (!line.empty()) lines.push_back(line);
    if (nl == std::string_view::npos) break;
    text.remove_prefix(nl + 1);
  }
  return lines;
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
    if (i > start) fields.push_back(line.substr(start, i - start));
  }
  return fields;
}

template <typename T>
T parse_number(std::string_view field, std::size_t line_no) {
  T value{};
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc{} || ptr != field.data() + field.size()) {
    throw FormatError("line " + std::to_string(line_no) + ": invalid number '" + std::string(field) + "'");
  }
  return value;
}

}  // namespace

std::string format_minutiae(const fingerprint::MinutiaeSet& set) {
  std::string out;
  for (const auto& m : set) {
    out += std::to_string(m.x) + ' ' + std::to_string(m.y) + ' ' +
           (m.kind == fingerprint::MinutiaKind::RidgeEnding ? 'E' : 'B') + '\n';
  }
  return out;
}

fingerprint::MinutiaeSet parse_minutiae(std::string_view text) {
  std::vector<fingerprint::Minutia> points;
  std::size_t line_no = 0;
  for (auto line : split_lines(text)) {
    ++line_no;
    const auto f = split_fields(line);
    if (f.size() != 3 || (f[2] != "E" && f[2] != "B")) {
      throw FormatError("line " + std::to_string(line_no) + ": expected 'x y E|B'");
    }
    points.push_back({parse_number<int>(f[0], line_no), parse_number<int>(f[1], line_no),
                      f[2] == "E" ? fingerprint::MinutiaKind::RidgeEnding : fingerprint::MinutiaKind::Bifurcation});
  }
  return fingerprint::MinutiaeSet(std::move(points));
}

std::string format_iris_features(const fusion::Sequence& i1, const fusion::Sequence& i2) {
  if (i1.size() != i2.size()) throw ArgumentError("iris feature vectors differ in length");
  std::string out;
  for (std::size_t i = 0; i < i1.size(); ++i) out += std::to_string(i1[i]) + ' ' + std::to_string(i2[i]) + '\n';
  return out;
}

std::pair<fusion::Sequence, fusion::Sequence> parse_iris_features(std::string_view text) {
  fusion::Sequence a, b;
  std::size_t line_no = 0;
  for (auto line : split_lines(text)) {
    ++line_no;
    const auto f = split_fields(line);
    if (f.size() != 2) throw FormatError("line " + std::to_string(line_no) + ": expected 'i1 i2'");
    a.push_back(parse_number<std::uint16_t>(f[0], line_no));
    b.push_back(parse_number<std::uint16_t>(f[1], line_no));
  }
  return {std::move(a), std::move(b)};
}

std::string format_template(const fusion::TemplateVector& bt) {
  std::string out;
  for (auto v : bt.components) out += std::to_string(v) + '\n';
  return out;
}

fusion::TemplateVector parse_template(std::string_view text) {
  fusion::TemplateVector bt;
  std::size_t line_no = 0;
  for (auto line : split_lines(text)) {
    ++line_no;
    const auto f = split_fields(line);
    if (f.size() != 1) throw FormatError("line " + std::to_string(line_no) + ": expected one integer");
    bt.components.push_back(parse_number<std::uint16_t>(f[0], line_no));
  }
  if (bt.components.empty()) throw FormatError("template has no components");
  return bt;
}

std::string format_key_binary(const keygen::KeyBits& key) { return key.to_binary_string() + '\n'; }

std::string format_key_hex(const keygen::KeyBits& key) { return key.to_hex() + '\n'; }

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw IoError("write failure on " + path.string());
}

}  // namespace biokey::formats
