#pragma once

#include <string>

namespace fdrbench {

// Fixed CSV number format: 6 significant digits, '.' separator, no locale.
std::string format_number(double value);

// The double that format_number would print, read back. Aggregates are
// computed from these so means recomputed from the CSV match exactly.
double round_sig6(double value);

}  // namespace fdrbench
