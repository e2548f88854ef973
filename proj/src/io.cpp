#include "scalocal/io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

#include "scalocal/errors.hpp"

namespace scalocal {

namespace {

constexpr std::string_view kMagic = "# scalocal-points v1";

bool parse_double(std::string_view s, double& out) {
  if (s.empty()) return false;
  const char* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, out);
  return ec == std::errc() && ptr == end;
}

template <class T>
bool parse_unsigned(std::string_view s, T& out) {
  if (s.empty()) return false;
  const char* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, out);
  return ec == std::errc() && ptr == end;
}

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

std::vector<std::string_view> split_csv(std::string_view line) {
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= line.size(); ++i) {
    if (i == line.size() || line[i] == ',') {
      out.push_back(line.substr(start, i - start));
      start = i + 1;
    }
  }
  return out;
}

}  // namespace

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_points(std::ostream& os, const PointSet& points) {
  os << kMagic << " d=" << points.dim() << " n=" << points.size()
     << " L=" << format_double(points.side()) << '\n';
  const std::size_t d = points.dim();
  std::string row;
  for (std::size_t i = 0; i < points.size(); ++i) {
    row.clear();
    for (std::size_t a = 0; a < d; ++a) {
      if (a) row += ' ';
      row += format_double(points.coord(i, a));
    }
    row += '\n';
    os << row;
  }
}

PointSet read_points(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw ParseError(1, "missing point-set header");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line.rfind(kMagic, 0) != 0) throw ParseError(1, "expected '# scalocal-points v1' header");

  std::size_t d = 0;
  std::size_t n = 0;
  double side = 0.0;
  bool has_d = false, has_n = false, has_l = false;
  for (auto tok : split_ws(std::string_view(line).substr(kMagic.size()))) {
    const auto eq = tok.find('=');
    if (eq == std::string_view::npos) throw ParseError(1, "bad header field '" + std::string(tok) + "'");
    const auto key = tok.substr(0, eq);
    const auto val = tok.substr(eq + 1);
    bool ok = false;
    if (key == "d") ok = has_d = parse_unsigned(val, d);
    else if (key == "n") ok = has_n = parse_unsigned(val, n);
    else if (key == "L") ok = has_l = parse_double(val, side);
    if (!ok) throw ParseError(1, "bad header field '" + std::string(tok) + "'");
  }
  if (!has_d || !has_n || !has_l) throw ParseError(1, "header must define d, n and L");
  if (d == 0 || n == 0 || !(side > 0.0)) throw ParseError(1, "header requires d >= 1, n >= 1, L > 0");

  std::vector<double> coords;
  coords.reserve(n * d);
  std::size_t lineno = 1;
  std::size_t rows = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const auto fields = split_ws(line);
    if (fields.empty() || fields.front().starts_with('#')) continue;
    if (rows == n) throw ParseError(lineno, "more rows than n=" + std::to_string(n));
    if (fields.size() != d)
      throw ParseError(lineno, "expected " + std::to_string(d) + " coordinates, found " +
                                   std::to_string(fields.size()));
    for (auto f : fields) {
      double x = 0.0;
      if (!parse_double(f, x)) throw ParseError(lineno, "bad number '" + std::string(f) + "'");
      if (!(x >= 0.0 && x <= side)) throw ParseError(lineno, "coordinate outside [0, L]");
      coords.push_back(x);
    }
    ++rows;
  }
  if (rows != n)
    throw ParseError(lineno + 1, "expected " + std::to_string(n) + " rows, found " +
                                     std::to_string(rows));
  return PointSet(d, side, std::move(coords));
}

void save_points(const std::filesystem::path& path, const PointSet& points) {
  std::ofstream os(path);
  if (!os) throw IoError("cannot open '" + path.string() + "' for writing");
  write_points(os, points);
  os.flush();
  if (!os) throw IoError("failed writing '" + path.string() + "'");
}

PointSet load_points(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw IoError("cannot open '" + path.string() + "'");
  return read_points(is);
}

std::vector<Curve> read_entropy_csv(std::istream& is, double to_natural) {
  std::string line;
  if (!std::getline(is, line)) throw ParseError(1, "missing CSV header");
  const auto header = split_csv(line);
  int col_scale = -1, col_q = -1, col_s = -1;
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == "scale") col_scale = static_cast<int>(i);
    else if (header[i] == "q") col_q = static_cast<int>(i);
    else if (header[i] == "S") col_s = static_cast<int>(i);
  }
  if (col_scale < 0 || col_q < 0 || col_s < 0)
    throw ParseError(1, "CSV header needs scale, q and S columns");

  // Ranks in first-seen order.
  std::vector<double> order;
  std::map<double, std::pair<std::vector<double>, std::vector<double>>> rows;
  std::size_t lineno = 1;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty() || line == "\r") continue;
    const auto f = split_csv(line);
    if (f.size() != header.size())
      throw ParseError(lineno, "expected " + std::to_string(header.size()) + " fields");
    double e = 0.0, q = 0.0, s = 0.0;
    if (!parse_double(f[static_cast<std::size_t>(col_scale)], e) ||
        !parse_double(f[static_cast<std::size_t>(col_q)], q) ||
        !parse_double(f[static_cast<std::size_t>(col_s)], s))
      throw ParseError(lineno, "bad numeric field");
    auto [it, inserted] = rows.try_emplace(q);
    if (inserted) order.push_back(q);
    it->second.first.push_back(e);
    it->second.second.push_back(s * to_natural);
  }
  if (order.empty()) throw ParseError(lineno, "CSV holds no rows");

  std::vector<Curve> out;
  for (double q : order) {
    auto& [scales, values] = rows.at(q);
    ScaleGrid grid = ScaleGrid::from_scales(scales);
    out.push_back(Curve{.q = q,
                        .grid = std::move(grid),
                        .values = std::move(values),
                        .kind = CurveKind::entropy,
                        .source = CurveSource::analytic});
  }
  return out;
}

}  // namespace scalocal
