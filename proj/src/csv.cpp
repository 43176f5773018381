#include "decon2d/csv.hpp"

#include <charconv>
#include <fstream>
#include <stdexcept>
#include <system_error>

namespace decon2d {

namespace {

[[noreturn]] void fail(const std::string& path, std::size_t line,
                       const std::string& what) {
  throw std::invalid_argument(path + ":" + std::to_string(line) + ": " + what);
}

std::vector<std::string> split_fields(const std::string& line) {
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
  return out;
}

double parse_field(const std::string& path, std::size_t line,
                   const std::string& field) {
  double v = 0.0;
  const char* first = field.data();
  const char* last = field.data() + field.size();
  const auto res = std::from_chars(first, last, v);
  if (res.ec != std::errc{} || res.ptr != last)
    fail(path, line, "cannot parse number '" + field + "'");
  return v;
}

long parse_int_field(const std::string& path, std::size_t line,
                     const std::string& field) {
  long v = 0;
  const char* first = field.data();
  const char* last = field.data() + field.size();
  const auto res = std::from_chars(first, last, v);
  if (res.ec != std::errc{} || res.ptr != last)
    fail(path, line, "cannot parse integer '" + field + "'");
  return v;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot open for writing: " + path);
  return f;
}

std::vector<std::string> read_lines(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::invalid_argument("cannot open: " + path);
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(f, line)) lines.push_back(line);
  return lines;
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

double parse_double(const std::string& s) {
  return parse_field("<string>", 0, s);
}

void write_sample_csv(const std::string& path, const PairedSample& sample,
                      bool with_truth) {
  std::ofstream f = open_out(path);
  f << (with_truth ? "x1,x2,y1,y2\n" : "x1,x2\n");
  for (std::size_t k = 0; k < sample.x.size(); ++k) {
    f << format_double(sample.x[k].x1) << ',' << format_double(sample.x[k].x2);
    if (with_truth)
      f << ',' << format_double(sample.y[k].x1) << ','
        << format_double(sample.y[k].x2);
    f << '\n';
  }
}

void write_points_csv(const std::string& path, const Sample2D& points) {
  std::ofstream f = open_out(path);
  f << "x1,x2\n";
  for (const Point2& p : points)
    f << format_double(p.x1) << ',' << format_double(p.x2) << '\n';
}

Sample2D read_points_csv(const std::string& path) {
  const std::vector<std::string> lines = read_lines(path);
  if (lines.empty()) throw std::invalid_argument(path + ": no data");
  const std::vector<std::string> header = split_fields(lines[0]);
  std::size_t c1 = header.size(), c2 = header.size();
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == "x1") c1 = i;
    if (header[i] == "x2") c2 = i;
  }
  if (c1 >= header.size() || c2 >= header.size())
    fail(path, 1, "header must contain columns x1 and x2");
  Sample2D out;
  out.reserve(lines.size() - 1);
  for (std::size_t li = 1; li < lines.size(); ++li) {
    if (lines[li].empty() || lines[li] == "\r") continue;
    const std::vector<std::string> fields = split_fields(lines[li]);
    if (fields.size() != header.size())
      fail(path, li + 1, "expected " + std::to_string(header.size()) +
                             " fields, got " + std::to_string(fields.size()));
    out.push_back({parse_field(path, li + 1, fields[c1]),
                   parse_field(path, li + 1, fields[c2])});
  }
  if (out.empty()) throw std::invalid_argument(path + ": no data");
  return out;
}

void write_censored_csv(const std::string& path,
                        const std::vector<CensoredRow>& rows) {
  std::ofstream f = open_out(path);
  f << "t1,t2,delta\n";
  for (const CensoredRow& r : rows)
    f << format_double(r.t1) << ',' << format_double(r.t2) << ','
      << r.delta << '\n';
}

std::vector<CensoredRow> read_censored_csv(const std::string& path) {
  const std::vector<std::string> lines = read_lines(path);
  if (lines.empty()) throw std::invalid_argument(path + ": no data");
  const std::vector<std::string> header = split_fields(lines[0]);
  std::size_t ct1 = header.size(), ct2 = header.size(), cd = header.size();
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == "t1") ct1 = i;
    if (header[i] == "t2") ct2 = i;
    if (header[i] == "delta") cd = i;
  }
  if (ct1 >= header.size() || ct2 >= header.size() || cd >= header.size())
    fail(path, 1, "header must contain columns t1, t2 and delta");
  std::vector<CensoredRow> out;
  out.reserve(lines.size() - 1);
  for (std::size_t li = 1; li < lines.size(); ++li) {
    if (lines[li].empty() || lines[li] == "\r") continue;
    const std::vector<std::string> fields = split_fields(lines[li]);
    if (fields.size() != header.size())
      fail(path, li + 1, "expected " + std::to_string(header.size()) +
                             " fields, got " + std::to_string(fields.size()));
    CensoredRow row;
    row.t1 = parse_field(path, li + 1, fields[ct1]);
    row.t2 = parse_field(path, li + 1, fields[ct2]);
    row.delta = static_cast<int>(parse_int_field(path, li + 1, fields[cd]));
    if (row.delta < 1 || row.delta > 4)
      fail(path, li + 1, "censoring label must be 1..4, got " +
                             std::to_string(row.delta));
    out.push_back(row);
  }
  if (out.empty()) throw std::invalid_argument(path + ": no data");
  return out;
}

void write_grid_csv(const std::string& path, const GridResult& grid) {
  std::ofstream f = open_out(path);
  f << "x1,x2,value\n";
  for (std::size_t i = 0; i < grid.nodes; ++i) {
    const std::string s1 = format_double(grid.spec.node(i));
    for (std::size_t j = 0; j < grid.nodes; ++j)
      f << s1 << ',' << format_double(grid.spec.node(j)) << ','
        << format_double(grid.at(i, j)) << '\n';
  }
}

}  // namespace decon2d
