#ifndef FRAMESCHED_CSV_HPP
#define FRAMESCHED_CSV_HPP

#include <cstdio>
#include <string>

namespace framesched {

/// Numeric cell format shared by all CSV emitters: 12 significant digits,
/// '.' decimal separator, locale independent.
inline std::string fmt12(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", value);
  return buf;
}

}  // namespace framesched

#endif
