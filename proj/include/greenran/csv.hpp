#pragma once

#include <cstddef>
#include <filesystem>
#include <initializer_list>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace greenran::csv {

/// Shortest decimal text that parses back to the same double.
std::string num(double v);

/// Line-oriented reader for the simple comma-separated files used here
/// (no quoting). Errors are DataError with the file label and 1-based line.
class Reader {
 public:
  Reader(std::istream& in, std::string label);

  void expect_header(std::initializer_list<std::string_view> columns);
  /// Next non-empty data row, split on commas; nullopt at end of input.
  std::optional<std::vector<std::string>> next();

  double to_double(const std::string& field) const;
  std::size_t to_index(const std::string& field) const;
  [[noreturn]] void fail(const std::string& what) const;

  std::size_t line() const { return line_; }
  std::size_t row() const { return row_; }

 private:
  std::istream& in_;
  std::string label_;
  std::size_t line_ = 0;
  std::size_t row_ = 0;
  std::size_t width_ = 0;
};

/// Writes `contents` to `path` through a sibling temporary file and a rename.
void write_file_atomic(const std::filesystem::path& path, const std::string& contents);

}  // namespace greenran::csv
