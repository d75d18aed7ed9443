#include "greenran/csv.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <system_error>

#include "greenran/error.hpp"

namespace greenran::csv {

std::string num(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc()) return "nan";
  return std::string(buf, ptr);
}

Reader::Reader(std::istream& in, std::string label) : in_(in), label_(std::move(label)) {}

namespace {

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur += c;
    }
  }
  out.push_back(cur);
  for (auto& f : out) {
    auto b = f.find_first_not_of(" \t");
    auto e = f.find_last_not_of(" \t");
    f = b == std::string::npos ? std::string() : f.substr(b, e - b + 1);
  }
  return out;
}

}  // namespace

void Reader::expect_header(std::initializer_list<std::string_view> columns) {
  std::string line;
  while (std::getline(in_, line)) {
    ++line_;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    auto fields = split(line);
    bool ok = fields.size() == columns.size();
    std::size_t i = 0;
    for (auto c : columns) {
      if (!ok) break;
      ok = fields[i++] == c;
    }
    if (!ok) {
      std::string want;
      for (auto c : columns) want += (want.empty() ? "" : ",") + std::string(c);
      fail("expected header '" + want + "'");
    }
    width_ = columns.size();
    return;
  }
  fail("missing header");
}

std::optional<std::vector<std::string>> Reader::next() {
  std::string line;
  while (std::getline(in_, line)) {
    ++line_;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    ++row_;
    auto fields = split(line);
    if (width_ != 0 && fields.size() != width_) {
      fail("malformed row " + std::to_string(row_) + ": expected " + std::to_string(width_) + " fields");
    }
    return fields;
  }
  return std::nullopt;
}

double Reader::to_double(const std::string& field) const {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
  if (ec != std::errc() || ptr != field.data() + field.size() || !std::isfinite(v)) {
    fail("malformed row " + std::to_string(row_) + ": '" + field + "' is not a number");
  }
  return v;
}

std::size_t Reader::to_index(const std::string& field) const {
  std::size_t v = 0;
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
  if (ec != std::errc() || ptr != field.data() + field.size()) {
    fail("malformed row " + std::to_string(row_) + ": '" + field + "' is not an index");
  }
  return v;
}

void Reader::fail(const std::string& what) const {
  throw DataError(label_ + ":" + std::to_string(line_) + ": " + what);
}

void write_file_atomic(const std::filesystem::path& path, const std::string& contents) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw DataError("cannot write " + tmp.string());
    out << contents;
    if (!out) throw DataError("short write to " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace greenran::csv
