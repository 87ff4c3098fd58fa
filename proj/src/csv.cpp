#include "duo/data_model.hpp"
#include "duo/error.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string_view>

namespace duo {

namespace {

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("read failed: " + path.string());
  return ss.str();
}

std::vector<std::string_view> split_lines(std::string_view text) {
  if (text.starts_with("\xEF\xBB\xBF")) text.remove_prefix(3);
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    start = end + 1;
  }
  while (!lines.empty() && lines.back().find_first_not_of(" \t") == std::string_view::npos)
    lines.pop_back();
  return lines;
}

std::string_view trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t");
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

std::vector<std::string_view> split_cells(std::string_view line) {
  std::vector<std::string_view> cells;
  std::size_t start = 0;
  while (true) {
    std::size_t end = line.find(',', start);
    if (end == std::string_view::npos) {
      cells.push_back(trim(line.substr(start)));
      break;
    }
    cells.push_back(trim(line.substr(start, end - start)));
    start = end + 1;
  }
  return cells;
}

template <class T>
bool parse_number(std::string_view cell, T& out) {
  if (cell.starts_with('+')) cell.remove_prefix(1);
  if (cell.empty()) return false;
  auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), out);
  return ec == std::errc() && ptr == cell.data() + cell.size();
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  return out;
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  if (ec != std::errc()) throw DomainError("cannot format value");
  return std::string(buf, ptr);
}

DataMatrix load_csv(const std::filesystem::path& path, bool has_header) {
  std::string text = read_file(path);
  auto lines = split_lines(text);
  std::size_t first = has_header ? 1 : 0;
  if (lines.size() <= first) throw ShapeError("no data rows in " + path.string());

  std::size_t rows = lines.size() - first;
  std::size_t cols = split_cells(lines[first]).size();
  Eigen::MatrixXd values(static_cast<Index>(rows), static_cast<Index>(cols));
  for (std::size_t r = 0; r < rows; ++r) {
    auto cells = split_cells(lines[first + r]);
    std::size_t line_no = first + r + 1;
    if (cells.size() != cols)
      throw ShapeError("line " + std::to_string(line_no) + " has " + std::to_string(cells.size()) +
                       " cells, expected " + std::to_string(cols));
    for (std::size_t c = 0; c < cols; ++c) {
      double v = 0.0;
      if (!parse_number(cells[c], v) || !std::isfinite(v))
        throw ParseError(line_no, c + 1,
                         "cannot parse '" + std::string(cells[c]) + "' at line " +
                             std::to_string(line_no) + ", column " + std::to_string(c + 1));
      values(static_cast<Index>(r), static_cast<Index>(c)) = v;
    }
  }
  return DataMatrix(std::move(values), path.stem().string(), false);
}

void save_csv(const std::filesystem::path& path, const Eigen::MatrixXd& values,
              const std::vector<std::string>& header) {
  auto out = open_out(path);
  std::string line;
  if (!header.empty()) {
    for (std::size_t c = 0; c < header.size(); ++c) {
      if (c) line += ',';
      line += header[c];
    }
    out << line << '\n';
  }
  for (Index i = 0; i < values.rows(); ++i) {
    line.clear();
    for (Index j = 0; j < values.cols(); ++j) {
      if (j) line += ',';
      line += format_double(values(i, j));
    }
    out << line << '\n';
  }
  if (!out) throw IoError("write failed: " + path.string());
}

std::vector<int> load_labels(const std::filesystem::path& path, bool has_header) {
  std::string text = read_file(path);
  auto lines = split_lines(text);
  std::size_t first = has_header ? 1 : 0;
  if (lines.size() <= first) throw ShapeError("no labels in " + path.string());
  std::vector<int> labels;
  for (std::size_t r = first; r < lines.size(); ++r) {
    auto cells = split_cells(lines[r]);
    if (cells.size() != 1) throw ShapeError("label file rows must have one cell");
    int v = 0;
    if (!parse_number(cells[0], v)) throw ParseError(r + 1, 1, "bad label at line " + std::to_string(r + 1));
    labels.push_back(v);
  }
  return labels;
}

void save_labels(const std::filesystem::path& path, const std::vector<int>& labels) {
  auto out = open_out(path);
  out << "label\n";
  for (int l : labels) out << l << '\n';
  if (!out) throw IoError("write failed: " + path.string());
}

}  // namespace duo
