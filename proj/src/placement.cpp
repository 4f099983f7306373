#include "edgecache/placement.hpp"

#include <stdexcept>
#include <string>

namespace edgecache {

bool Placement::feasible(double tol) const {
  if (static_cast<int>(capacities.size()) != eta.rows) return false;
  for (int j = 0; j < eta.rows; ++j) {
    double sum = 0.0;
    for (int k = 0; k < eta.cols; ++k) {
      double v = eta.at(j, k);
      if (!(v >= -tol && v <= 1.0 + tol)) return false;
      sum += v;
    }
    if (sum > capacities[j] + tol) return false;
  }
  return true;
}

void Placement::validate(double tol) const {
  if (static_cast<int>(capacities.size()) != eta.rows)
    throw std::invalid_argument("Placement: capacities size does not match rows");
  for (int j = 0; j < eta.rows; ++j) {
    double sum = 0.0;
    for (int k = 0; k < eta.cols; ++k) {
      double v = eta.at(j, k);
      if (!(v >= -tol && v <= 1.0 + tol))
        throw std::invalid_argument("Placement: eta out of [0,1] at row " + std::to_string(j) +
                                    " col " + std::to_string(k));
      sum += v;
    }
    if (sum > capacities[j] + tol)
      throw std::invalid_argument("Placement: row " + std::to_string(j) +
                                  " exceeds capacity: sum=" + std::to_string(sum));
  }
}

}  // namespace edgecache
