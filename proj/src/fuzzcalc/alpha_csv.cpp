#include "fuzzcalc/alpha_csv.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <vector>

#include "fuzzcalc/error.hpp"
#include "fuzzcalc/number_format.hpp"

namespace fuzzcalc {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

double parse_field(std::string_view field, std::size_t line) {
  field = trim(field);
  double v = 0.0;
  const auto res = std::from_chars(field.data(), field.data() + field.size(), v);
  if (res.ec != std::errc() || res.ptr != field.data() + field.size()) {
    throw Error(ErrorKind::InvalidArgument,
                "line " + std::to_string(line) + ": bad number '" + std::string(field) + "'");
  }
  return v;
}

}  // namespace

std::string format_alpha_csv(const FuzzyNumber& a, std::span<const std::string> metadata) {
  require_proper(a, "write_alpha_csv");
  std::string out;
  for (const std::string& m : metadata) {
    out += "# ";
    out += m;
    out += '\n';
  }
  out += "alpha,lower,upper\n";
  for (std::size_t i = 0; i < a.size(); ++i) {
    out += format_double(a.grid()[i]);
    out += ',';
    out += format_double(a.lower()[i]);
    out += ',';
    out += format_double(a.upper()[i]);
    out += '\n';
  }
  return out;
}

void write_alpha_csv(const FuzzyNumber& a, const std::string& path,
                     std::span<const std::string> metadata) {
  const std::string text = format_alpha_csv(a, metadata);
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw Error(ErrorKind::Io, "cannot open '" + path + "' for writing");
  f.write(text.data(), static_cast<std::streamsize>(text.size()));
  f.close();
  if (!f) throw Error(ErrorKind::Io, "write to '" + path + "' failed");
}

FuzzyNumber parse_alpha_csv(std::string_view text) {
  std::vector<double> alpha, lo, hi;
  bool header = false;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const std::size_t nl = text.find('\n');
    std::string_view line = trim(text.substr(0, nl));
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    if (line.empty() || line.front() == '#') continue;
    if (!header) {
      if (line != "alpha,lower,upper") {
        throw Error(ErrorKind::InvalidArgument, "expected header 'alpha,lower,upper'");
      }
      header = true;
      continue;
    }
    const std::size_t c1 = line.find(',');
    const std::size_t c2 = c1 == std::string_view::npos ? c1 : line.find(',', c1 + 1);
    if (c2 == std::string_view::npos || line.find(',', c2 + 1) != std::string_view::npos) {
      throw Error(ErrorKind::InvalidArgument, "line " + std::to_string(line_no) + ": expected 3 fields");
    }
    alpha.push_back(parse_field(line.substr(0, c1), line_no));
    lo.push_back(parse_field(line.substr(c1 + 1, c2 - c1 - 1), line_no));
    hi.push_back(parse_field(line.substr(c2 + 1), line_no));
  }
  if (!header) throw Error(ErrorKind::InvalidArgument, "missing header 'alpha,lower,upper'");

  AlphaGrid grid;
  if (!std::equal(alpha.begin(), alpha.end(), grid.levels().begin(), grid.levels().end())) {
    grid = AlphaGrid::from_levels(alpha);
  }
  return from_alpha_grid(lo, hi, grid);
}

FuzzyNumber read_alpha_csv(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorKind::Io, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << f.rdbuf();
  return parse_alpha_csv(ss.str());
}

}  // namespace fuzzcalc
