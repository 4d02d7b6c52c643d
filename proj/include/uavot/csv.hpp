#pragma once

#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>

namespace uavot::csv {

/// Fixed textual form for every float written to CSV: 9 significant digits.
inline std::string real(double v) {
  std::ostringstream os;
  os.imbue(std::locale::classic());
  os << std::setprecision(9) << v;
  return os.str();
}

}  // namespace uavot::csv
