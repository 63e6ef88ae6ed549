#include "table.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include "mmwt/config.hpp"

namespace mmwt::cli {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

void Table::describe(const NetworkParams& p) {
  comments_.push_back("units: thresholds dB, gains dB, angles deg, distances m, powers W, densities 1/m^2, "
                      "ee bits/s/Hz/W");
  comments_.push_back("config_hash=" + config_hash(p));
  std::istringstream text(to_config_text(p));
  std::string section, line;
  while (std::getline(text, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (line.front() == '[') {
      section = line.substr(1, line.find(']') - 1);
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(' '), e = s.find_last_not_of(' ');
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    comments_.push_back(section + "." + trim(line.substr(0, eq)) + "=" + trim(line.substr(eq + 1)));
  }
}

void Table::add_row(std::vector<std::string> cells) {
  if (cells.size() != columns_.size()) throw std::logic_error("row width does not match the header");
  rows_.push_back(std::move(cells));
}

void Table::write(std::ostream& os) const {
  for (const auto& c : comments_) os << "# " << c << '\n';
  for (std::size_t i = 0; i < columns_.size(); ++i) os << (i ? "," : "") << columns_[i];
  os << '\n';
  for (const auto& row : rows_) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      const bool quote = row[i].find_first_of(",\"") != std::string::npos;
      if (i) os << ',';
      if (quote) {
        os << '"';
        for (char ch : row[i]) os << (ch == '"' ? "\"\"" : std::string(1, ch));
        os << '"';
      } else {
        os << row[i];
      }
    }
    os << '\n';
  }
}

void Table::save(const std::string& path) const {
  if (path.empty() || path == "-") {
    write(std::cout);
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  write(out);
}

std::string plot_script(const std::string& csv_path, const std::string& title) {
  std::ostringstream s;
  s << R"(#!/usr/bin/env python3
# Plots every numeric column of the CSV against the first column.
import csv
import sys

import matplotlib.pyplot as plt

path = sys.argv[1] if len(sys.argv) > 1 else ")" << csv_path << R"("
with open(path) as f:
    rows = list(csv.reader(line for line in f if not line.startswith("#")))
header, data = rows[0], rows[1:]


def numeric(col):
    try:
        return [float(r[col]) for r in data]
    except ValueError:
        return None


x = numeric(0)
fig, ax = plt.subplots()
for col in range(1, len(header)):
    if header[col] == "config_hash":
        continue
    y = numeric(col)
    if y is not None:
        ax.plot(x, y, marker="o", label=header[col])
ax.set_xlabel(header[0])
ax.set_title(")" << title << R"(")
ax.grid(True)
ax.legend()
out = path.rsplit(".", 1)[0] + ".png"
fig.savefig(out, dpi=150)
print(out)
)";
  return s.str();
}

}  // namespace mmwt::cli
