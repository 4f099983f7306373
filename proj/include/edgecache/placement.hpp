#pragma once

#include <vector>

#include "edgecache/common.hpp"

namespace edgecache {

// Probabilistic cache placement: eta[j][k] is the probability that node j
// stores content k. Rows follow the shared node ordering (all users, then all
// sBSs, then all MBSs); capacities[j] is the storage budget of row j in
// content units, which bounds the expected number of stored contents.
struct Placement {
  Matrix eta;
  std::vector<int> capacities;

  Placement() = default;
  Placement(int rows, int cols) : eta(rows, cols), capacities(rows, 0) {}

  int rows() const { return eta.rows; }
  int cols() const { return eta.cols; }

  bool feasible(double tol = 1e-9) const;
  // Throws std::invalid_argument naming the first violated constraint.
  void validate(double tol = 1e-9) const;
};

}  // namespace edgecache
