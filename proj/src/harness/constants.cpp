#include "streopt/harness/constants.hpp"

#include <cmath>

namespace streopt {

std::vector<PriorRatio> table1_constants() {
  const double s = std::log(4.0);
  return {
      {"terminal-add / terminal-remove", "(10s-7)/(7s-4)", (10 * s - 7) / (7 * s - 4), 1.204},
      {"edge-inc", "(7s-4)/(4s-1)", (7 * s - 4) / (4 * s - 1), 1.256},
      {"edge-dec", "(5s-3)/(3s-1)", (5 * s - 3) / (3 * s - 1), 1.246},
  };
}

}  // namespace streopt
