#include "arfs/csv.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string_view>
#include <vector>

#include "arfs/error.hpp"

namespace arfs {

namespace {

std::vector<std::string_view> split_line(std::string_view line) {
  std::vector<std::string_view> cells;
  std::size_t start = 0;
  for (;;) {
    const auto comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      cells.push_back(line.substr(start));
      return cells;
    }
    cells.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

} // namespace

Dataset load_csv(const std::filesystem::path& path, const std::string& target_column, Task task) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path.string() + "'");

  std::string line;
  if (!std::getline(in, line)) throw ParseError("'" + path.string() + "' is empty");
  // Tolerate a UTF-8 byte order mark.
  if (line.rfind("\xEF\xBB\xBF", 0) == 0) line.erase(0, 3);

  std::vector<std::string> header;
  for (auto cell : split_line(line)) header.emplace_back(trim(cell));

  std::size_t target_pos = header.size();
  for (std::size_t c = 0; c < header.size(); ++c) {
    if (header[c] != target_column) continue;
    if (target_pos != header.size()) {
      throw ParseError("target column '" + target_column + "' appears more than once");
    }
    target_pos = c;
  }
  if (target_pos == header.size()) {
    throw ParseError("target column '" + target_column + "' not found in header");
  }

  std::vector<std::vector<double>> columns(header.size() - 1);
  std::vector<double> target;
  std::vector<std::string> names;
  for (std::size_t c = 0; c < header.size(); ++c) {
    if (c != target_pos) names.push_back(header[c]);
  }

  std::size_t row = 0;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto cells = split_line(line);
    if (cells.size() != header.size()) {
      throw ParseError("line " + std::to_string(line_no) + ": expected " +
                       std::to_string(header.size()) + " cells, got " +
                       std::to_string(cells.size()));
    }
    for (std::size_t c = 0; c < cells.size(); ++c) {
      const auto cell = trim(cells[c]);
      double value = 0.0;
      const char* first = cell.data();
      const char* last = cell.data() + cell.size();
      if (!cell.empty() && *first == '+') ++first;
      const auto [ptr, ec] = std::from_chars(first, last, value);
      if (cell.empty() || ec != std::errc{} || ptr != last || !std::isfinite(value)) {
        throw ParseError("row " + std::to_string(row + 1) + " (line " + std::to_string(line_no) +
                         "), column '" + header[c] + "': cannot parse '" + std::string(cell) +
                         "' as a finite number");
      }
      if (c == target_pos) {
        if (task == Task::classification && value != 0.0 && value != 1.0) {
          throw ParseError("row " + std::to_string(row + 1) + " (line " +
                           std::to_string(line_no) + "), column '" + header[c] +
                           "': classification target must be 0 or 1, got '" + std::string(cell) +
                           "'");
        }
        target.push_back(value);
      } else {
        columns[c < target_pos ? c : c - 1].push_back(value);
      }
    }
    ++row;
  }

  if (columns.empty()) throw ParseError("'" + path.string() + "' has no feature columns");
  return Dataset(std::move(columns), std::move(target), task, std::move(names));
}

void write_csv(const Dataset& ds, const std::filesystem::path& path,
               const std::string& target_column) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write '" + path.string() + "'");

  for (const auto& name : ds.names()) out << name << ',';
  out << target_column << '\n';

  // Shortest round-trip representation keeps files byte-stable and lossless.
  char buf[64];
  auto emit = [&](double v) {
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    out.write(buf, res.ptr - buf);
  };
  for (std::size_t i = 0; i < ds.rows(); ++i) {
    for (std::size_t j = 0; j < ds.features(); ++j) {
      emit(ds.at(i, j));
      out << ',';
    }
    emit(ds.target()[i]);
    out << '\n';
  }
  if (!out) throw Error("failed writing '" + path.string() + "'");
}

} // namespace arfs
