#include "maternpar/csv.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace maternpar {

void write_csv(std::ostream& os, const std::string& schema,
               const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows) {
  os << "# maternpar-csv v1 " << schema << "\n";
  for (std::size_t i = 0; i < header.size(); ++i)
    os << header[i] << (i + 1 < header.size() ? "," : "");
  os << "\n";
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i)
      os << row[i] << (i + 1 < row.size() ? "," : "");
    os << "\n";
  }
}

void write_csv_file(const std::string& path, const std::string& schema,
                    const std::vector<std::string>& header,
                    const std::vector<std::vector<std::string>>& rows) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open '" + path + "' for writing");
  write_csv(os, schema, header, rows);
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

namespace {

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::stringstream ss(line);
  while (std::getline(ss, field, ',')) out.push_back(field);
  return out;
}

double parse_field(const std::string& s, int line_no, const char* name) {
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  while (pos < s.size() && (s[pos] == ' ' || s[pos] == '\r')) ++pos;
  if (pos == 0 || pos != s.size())
    throw std::invalid_argument("row " + std::to_string(line_no) +
                                ": non-numeric value '" + s + "' in column " +
                                name);
  return v;
}

} // namespace

XyzData read_xyz(const std::string& path, bool rescale) {
  std::ifstream is(path);
  if (!is) throw std::invalid_argument("cannot open data file '" + path + "'");
  std::string line;
  int line_no = 0;
  bool have_header = false;
  std::vector<double> xs, ys, zs;
  while (std::getline(is, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    if (!have_header) {
      auto cols = split_line(line);
      if (cols.size() < 3 || cols[0] != "x" || cols[1] != "y" || cols[2] != "z")
        throw std::invalid_argument("data file must start with header x,y,z");
      have_header = true;
      continue;
    }
    auto cols = split_line(line);
    if (cols.size() != 3)
      throw std::invalid_argument("row " + std::to_string(line_no) +
                                  ": expected 3 fields, got " +
                                  std::to_string(cols.size()));
    xs.push_back(parse_field(cols[0], line_no, "x"));
    ys.push_back(parse_field(cols[1], line_no, "y"));
    zs.push_back(parse_field(cols[2], line_no, "z"));
  }
  if (xs.empty()) throw std::invalid_argument("data file holds no rows");

  XyzData data;
  data.locs.pts.resize(int(xs.size()), 2);
  data.z.resize(int(xs.size()));
  for (std::size_t i = 0; i < xs.size(); ++i) {
    data.locs.pts(int(i), 0) = xs[i];
    data.locs.pts(int(i), 1) = ys[i];
    data.z[int(i)] = zs[i];
  }
  if (rescale) {
    for (int c = 0; c < 2; ++c) {
      const double mn = data.locs.pts.col(c).minCoeff();
      const double mx = data.locs.pts.col(c).maxCoeff();
      const double span = mx > mn ? mx - mn : 1.0;
      data.locs.pts.col(c) = (data.locs.pts.col(c).array() - mn) / span;
    }
  }
  return data;
}

void write_xyz(const std::string& path, const LocationSet& locs,
               const Eigen::VectorXd& z) {
  std::vector<std::vector<std::string>> rows;
  rows.reserve(std::size_t(locs.n()));
  for (int i = 0; i < locs.n(); ++i)
    rows.push_back({fmt(locs.pts(i, 0)), fmt(locs.pts(i, 1)), fmt(z[i])});
  write_csv_file(path, "field", {"x", "y", "z"}, rows);
}

} // namespace maternpar
