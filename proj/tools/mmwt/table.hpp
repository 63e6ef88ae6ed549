#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "mmwt/params.hpp"

namespace mmwt::cli {

/// CSV with a commented header block: command line, units, config hash and the resolved config.
class Table {
 public:
  explicit Table(std::vector<std::string> columns) : columns_(std::move(columns)) {}

  void comment(const std::string& line) { comments_.push_back(line); }
  /// Adds "key=value" lines for every config entry plus the hash.
  void describe(const NetworkParams& p);

  void add_row(std::vector<std::string> cells);
  std::size_t size() const { return rows_.size(); }
  const std::vector<std::string>& columns() const { return columns_; }

  void write(std::ostream& os) const;
  /// Writes to `path`, or to stdout when `path` is empty or "-".
  void save(const std::string& path) const;

 private:
  std::vector<std::string> columns_;
  std::vector<std::string> comments_;
  std::vector<std::vector<std::string>> rows_;
};

std::string num(double v);

/// Self-contained matplotlib script plotting every numeric column of `csv_path` against the first.
std::string plot_script(const std::string& csv_path, const std::string& title);

}  // namespace mmwt::cli
