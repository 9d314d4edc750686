#include "fdrbench/format.hpp"

#include <cstdio>
#include <cstdlib>

namespace fdrbench {

std::string format_number(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", value);
  return buf;
}

double round_sig6(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", value);
  return std::strtod(buf, nullptr);
}

}  // namespace fdrbench
