#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace fsgrid {

/// Ordered "key: value" text block, the one dialect shared by grid headers,
/// run configs and manifests. Lines starting with '#' and blank lines are
/// ignored on parse; duplicate keys are kept in order.
class KvBlock {
 public:
  static KvBlock parse(std::string_view text);               // ParseError
  static KvBlock load(const std::filesystem::path& path);    // IoError / ParseError

  void add(std::string key, std::string value);
  bool has(std::string_view key) const;
  const std::string* find(std::string_view key) const;       // first match or nullptr

  // Typed getters; SchemaError when the key is absent, ParseError on bad values.
  const std::string& get(std::string_view key) const;
  double get_double(std::string_view key) const;
  std::int64_t get_int(std::string_view key) const;
  bool get_bool(std::string_view key) const;

  std::string serialize() const;  // canonical "key: value\n" lines, insertion order
  const std::vector<std::pair<std::string, std::string>>& entries() const { return entries_; }

 private:
  std::vector<std::pair<std::string, std::string>> entries_;
};

// Shortest-round-trip decimal formatting; parse accepts what format emits
// (including "nan", "inf", "-inf").
std::string format_double(double v);
double parse_double(std::string_view s);       // ParseError
std::int64_t parse_int(std::string_view s);    // ParseError
bool parse_bool(std::string_view s);           // "true" / "false"

std::vector<std::string> split_ws(std::string_view s);
std::string_view trim(std::string_view s);

}  // namespace fsgrid
