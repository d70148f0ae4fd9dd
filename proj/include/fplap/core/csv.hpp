#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "fplap/common/errors.hpp"
#include "fplap/core/field.hpp"
#include "fplap/core/format.hpp"

namespace fplap {

/// Field CSV layout: one header row
///   # dim, h, origin..., counts..., r_trunc, exterior_rule
/// then one row per node: index..., value.  All reals carry 17 significant
/// digits so the round trip is bit exact.
inline void write_field_csv(std::ostream& os, const Field& field) {
  const Grid& g = field.grid();
  os << "# " << g.dim << ", " << format_double(g.h);
  for (int a = 0; a < g.dim; ++a) os << ", " << format_double(g.origin[static_cast<std::size_t>(a)]);
  for (int a = 0; a < g.dim; ++a) os << ", " << g.counts[static_cast<std::size_t>(a)];
  os << ", " << format_double(g.truncation_radius());
  os << ", " << field.rule().serialize() << "\n";
  for (int i1 = 0; i1 < (g.dim == 2 ? g.counts[1] : 1); ++i1) {
    for (int i0 = 0; i0 < g.counts[0]; ++i0) {
      os << i0;
      if (g.dim == 2) os << ", " << i1;
      os << ", " << format_double(field[g.flat(i0, i1)]) << "\n";
    }
  }
}

inline void write_field_csv(const std::string& path, const Field& field) {
  std::ofstream os(path);
  if (!os) throw invalid_argument_error("cannot open for writing: " + path);
  write_field_csv(os, field);
}

namespace detail {

inline std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  for (auto& s : out) {
    std::size_t b = s.find_first_not_of(" \t\r");
    std::size_t e = s.find_last_not_of(" \t\r");
    s = b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
  }
  return out;
}

}  // namespace detail

inline Field read_field_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line.empty() || line[0] != '#')
    throw invalid_argument_error("field csv: missing header row");
  auto head = detail::split_csv_line(line.substr(1));
  auto want = [&](std::size_t i) -> const std::string& {
    if (i >= head.size()) throw invalid_argument_error("field csv: truncated header");
    return head[i];
  };
  bool ok = false;
  Grid g;
  g.dim = static_cast<int>(parse_double(want(0), &ok));
  if (!ok || (g.dim != 1 && g.dim != 2)) throw invalid_argument_error("field csv: bad dim");
  std::size_t pos = 1;
  g.h = parse_double(want(pos++), &ok);
  for (int a = 0; a < g.dim; ++a) g.origin[static_cast<std::size_t>(a)] = parse_double(want(pos++), &ok);
  for (int a = 0; a < g.dim; ++a) g.counts[static_cast<std::size_t>(a)] = static_cast<int>(parse_double(want(pos++), &ok));
  g.r_trunc = parse_double(want(pos++), &ok);
  std::string rule_text;
  for (std::size_t i = pos; i < head.size(); ++i) {
    if (!rule_text.empty()) rule_text += ", ";
    rule_text += head[i];
  }
  ExteriorRule rule = ExteriorRule::deserialize(rule_text);

  std::vector<double> values(g.size(), 0.0);
  std::vector<char> seen(g.size(), 0);
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    auto tok = detail::split_csv_line(line);
    std::size_t need = static_cast<std::size_t>(g.dim) + 1;
    if (tok.size() != need) throw invalid_argument_error("field csv: bad row: " + line);
    int i0 = static_cast<int>(parse_double(tok[0], &ok));
    int i1 = g.dim == 2 ? static_cast<int>(parse_double(tok[1], &ok)) : 0;
    if (i0 < 0 || i0 >= g.counts[0] || i1 < 0 || (g.dim == 2 && i1 >= g.counts[1]))
      throw invalid_argument_error("field csv: node index out of range: " + line);
    std::size_t idx = g.flat(i0, i1);
    values[idx] = parse_double(tok[static_cast<std::size_t>(g.dim)], &ok);
    if (!ok) throw invalid_argument_error("field csv: bad value: " + line);
    seen[idx] = 1;
  }
  for (std::size_t i = 0; i < seen.size(); ++i) {
    if (!seen[i]) throw invalid_argument_error("field csv: missing node row");
  }
  return Field(g, std::move(values), rule);
}

inline Field read_field_csv(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw invalid_argument_error("cannot open for reading: " + path);
  return read_field_csv(is);
}

/// Two-column convenience writer (iteration traces and similar).
inline void write_pairs_csv(const std::string& path, const std::string& col_a,
                            const std::string& col_b, const std::vector<double>& values) {
  std::ofstream os(path);
  if (!os) throw invalid_argument_error("cannot open for writing: " + path);
  os << "# " << col_a << ", " << col_b << "\n";
  for (std::size_t i = 0; i < values.size(); ++i)
    os << i << ", " << format_double(values[i]) << "\n";
}

}  // namespace fplap
