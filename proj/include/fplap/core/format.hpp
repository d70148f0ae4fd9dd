#pragma once

#include <cstdio>
#include <cstdlib>
#include <string>

namespace fplap {

/// 17 significant digits: the shortest fixed width that round-trips every
/// double exactly through decimal.
inline std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.16e", v);
  return buf;
}

inline double parse_double(const std::string& tok, bool* ok = nullptr) {
  char* end = nullptr;
  double v = std::strtod(tok.c_str(), &end);
  bool good = end != tok.c_str() && *end == '\0';
  if (ok) *ok = good;
  return v;
}

}  // namespace fplap
