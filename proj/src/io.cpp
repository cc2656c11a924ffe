#include "scld/io.hpp"

#include <cerrno>
#include <charconv>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <system_error>

namespace scld {

namespace {

std::string load_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError("read failure on '" + path + "'");
  return std::move(buf).str();
}

// Splits on '\n', tolerating a trailing newline and CRLF endings.
std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string::npos) end = text.size();
    std::size_t len = end - start;
    if (len > 0 && text[start + len - 1] == '\r') --len;
    lines.emplace_back(text, start, len);
    start = end + 1;
  }
  while (!lines.empty() && lines.back().empty()) lines.pop_back();
  return lines;
}

double parse_cell(const std::string& cell, int line, int column) {
  const char* first = cell.data();
  const char* last = first + cell.size();
  while (first < last && (*first == ' ' || *first == '\t')) ++first;
  while (last > first && (last[-1] == ' ' || last[-1] == '\t')) --last;
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || first == last) {
    throw ParseError("row " + std::to_string(line) + ", column " +
                         std::to_string(column) + ": '" + cell +
                         "' is not a number",
                     line, column);
  }
  return value;
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

DenseMatrix read_matrix_csv(const std::string& path) {
  const std::vector<std::string> lines = split_lines(load_text(path));
  if (lines.empty()) throw ParseError("'" + path + "' contains no data", 1);

  std::vector<std::vector<double>> rows;
  rows.reserve(lines.size());
  std::size_t cols = 0;
  for (std::size_t li = 0; li < lines.size(); ++li) {
    const int line_no = static_cast<int>(li) + 1;
    std::vector<double> row;
    std::size_t start = 0;
    const std::string& line = lines[li];
    while (true) {
      std::size_t comma = line.find(',', start);
      const std::string cell =
          line.substr(start, comma == std::string::npos ? comma : comma - start);
      row.push_back(parse_cell(cell, line_no, static_cast<int>(row.size()) + 1));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    if (li == 0) {
      cols = row.size();
    } else if (row.size() != cols) {
      throw ParseError("row " + std::to_string(line_no) + " has " +
                           std::to_string(row.size()) + " cells, expected " +
                           std::to_string(cols),
                       line_no);
    }
    rows.push_back(std::move(row));
  }

  DenseMatrix m(static_cast<Eigen::Index>(rows.size()),
                static_cast<Eigen::Index>(cols));
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      m(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    }
  }
  return m;
}

void write_matrix_csv(const std::string& path, const DenseMatrix& m) {
  std::string out;
  out.reserve(static_cast<std::size_t>(m.size()) * 12);
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j > 0) out += ',';
      out += format_double(m(i, j));
    }
    out += '\n';
  }
  atomic_write_text(path, out);
}

std::vector<int> read_labels_file(const std::string& path) {
  const std::vector<std::string> lines = split_lines(load_text(path));
  if (lines.empty()) throw ParseError("'" + path + "' contains no labels", 1);
  std::vector<int> labels;
  labels.reserve(lines.size());
  for (std::size_t li = 0; li < lines.size(); ++li) {
    const int line_no = static_cast<int>(li) + 1;
    const std::string& line = lines[li];
    const char* first = line.data();
    const char* last = first + line.size();
    while (first < last && (*first == ' ' || *first == '\t')) ++first;
    while (last > first && (last[-1] == ' ' || last[-1] == '\t')) --last;
    int value = 0;
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last || first == last || value < 0) {
      throw ParseError("row " + std::to_string(line_no) + ": '" + line +
                           "' is not a nonnegative integer label",
                       line_no);
    }
    labels.push_back(value);
  }
  return labels;
}

void write_labels_file(const std::string& path, const std::vector<int>& labels) {
  std::string out;
  out.reserve(labels.size() * 4);
  for (int l : labels) {
    out += std::to_string(l);
    out += '\n';
  }
  atomic_write_text(path, out);
}

void atomic_write_text(const std::string& path, const std::string& contents) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + tmp.string() + "' for writing");
    out.write(contents.data(),
              static_cast<std::streamsize>(contents.size()));
    out.flush();
    if (!out) throw IoError("write failure on '" + tmp.string() + "'");
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp);
    throw IoError("cannot rename '" + tmp.string() + "' to '" + path +
                  "': " + ec.message());
  }
}

}  // namespace scld
