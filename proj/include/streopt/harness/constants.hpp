#pragma once

#include <string>
#include <vector>

namespace streopt {

struct PriorRatio {
  std::string scenario;
  std::string formula;
  double value = 0;     // evaluated at sigma = ln 4
  double reported = 0;  // published three-digit value
};

// Ratios of the earlier reoptimization results, evaluated at sigma = ln 4.
std::vector<PriorRatio> table1_constants();

}  // namespace streopt
