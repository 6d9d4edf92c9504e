#include "fsgrid/kv.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "fsgrid/errors.hpp"

namespace fsgrid {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<std::string> split_ws(std::string_view s) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    std::size_t start = i;
    while (i < s.size() && !std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    if (i > start) out.emplace_back(s.substr(start, i - start));
  }
  return out;
}

KvBlock KvBlock::parse(std::string_view text) {
  KvBlock block;
  std::size_t pos = 0;
  std::size_t lineno = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    std::string_view line =
        text.substr(pos, eol == std::string_view::npos ? std::string_view::npos : eol - pos);
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
    ++lineno;
    std::string_view stripped = trim(line);
    if (stripped.empty() || stripped.front() == '#') continue;
    std::size_t colon = stripped.find(':');
    if (colon == std::string_view::npos) {
      throw ParseError("line " + std::to_string(lineno) + ": expected 'key: value', got '" +
                       std::string(stripped) + "'");
    }
    block.add(std::string(trim(stripped.substr(0, colon))),
              std::string(trim(stripped.substr(colon + 1))));
  }
  return block;
}

KvBlock KvBlock::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError("read failure on '" + path.string() + "'");
  try {
    return parse(buf.str());
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

void KvBlock::add(std::string key, std::string value) {
  entries_.emplace_back(std::move(key), std::move(value));
}

bool KvBlock::has(std::string_view key) const { return find(key) != nullptr; }

const std::string* KvBlock::find(std::string_view key) const {
  for (const auto& [k, v] : entries_) {
    if (k == key) return &v;
  }
  return nullptr;
}

const std::string& KvBlock::get(std::string_view key) const {
  const std::string* v = find(key);
  if (!v) throw SchemaError("missing key '" + std::string(key) + "'");
  return *v;
}

double KvBlock::get_double(std::string_view key) const { return parse_double(get(key)); }
std::int64_t KvBlock::get_int(std::string_view key) const { return parse_int(get(key)); }
bool KvBlock::get_bool(std::string_view key) const { return parse_bool(get(key)); }

std::string KvBlock::serialize() const {
  std::string out;
  for (const auto& [k, v] : entries_) {
    out += k;
    out += ": ";
    out += v;
    out += '\n';
  }
  return out;
}

std::string format_double(double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  (void)ec;
  return std::string(buf, ptr);
}

double parse_double(std::string_view s) {
  s = trim(s);
  if (s == "nan") return std::nan("");
  if (s == "inf") return INFINITY;
  if (s == "-inf") return -INFINITY;
  double v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    throw ParseError("not a number: '" + std::string(s) + "'");
  }
  return v;
}

std::int64_t parse_int(std::string_view s) {
  s = trim(s);
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    throw ParseError("not an integer: '" + std::string(s) + "'");
  }
  return v;
}

bool parse_bool(std::string_view s) {
  s = trim(s);
  if (s == "true") return true;
  if (s == "false") return false;
  throw ParseError("not a boolean: '" + std::string(s) + "'");
}

}  // namespace fsgrid
