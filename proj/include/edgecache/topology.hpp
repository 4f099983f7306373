#pragma once

#include <optional>
#include <vector>

#include "edgecache/common.hpp"

namespace edgecache {

// Intensities and geometry of the two-tier network.
// Node classes: D2D users, small base stations (sBS), macro base stations (MBS).
struct NetworkParams {
  double lambda_u = 1e-4;  // users per m^2
  double lambda_b = 1e-5;  // sBS per m^2
  double lambda_m = 1.5e-7;  // MBS per m^2
  double r_u = 15.0;   // D2D range (m)
  double r_b = 150.0;  // sBS range (m)
  double r_m = 500.0;  // MBS range (m)
  double alpha = 0.2;  // fraction of users that request content
  double region_side = 1500.0;  // square window side (m)
  bool torus = false;  // wrap distances around the window edges
  int min_mbs = 0;     // if > 0, MBS count drawn conditioned on >= min_mbs

  void validate() const;
};

// One sampled network realization plus the association structure of every
// requester: tagged sBS (nearest in range, if any), serving MBS (nearest),
// D2D neighbor set and the neighbor set of the tagged sBS.
//
// Per-requester vectors are indexed by requester ordinal; requesters[i] is the
// user index of ordinal i.
struct Topology {
  std::vector<Point> users;
  std::vector<Point> sbs;
  std::vector<Point> mbs;

  std::vector<int> requesters;
  std::vector<std::optional<int>> tagged_sbs;
  std::vector<int> serving_mbs;
  std::vector<std::vector<int>> d2d_neighbors;
  std::vector<std::vector<int>> sbs_neighbors;
  std::vector<bool> indicator_s;
  std::vector<bool> indicator_m;

  // user index -> requester ordinal, -1 for non-requesters
  std::vector<int> requester_ordinal;

  int n_users() const { return static_cast<int>(users.size()); }
  int n_sbs() const { return static_cast<int>(sbs.size()); }
  int n_mbs() const { return static_cast<int>(mbs.size()); }
  int n_nodes() const { return n_users() + n_sbs() + n_mbs(); }
  int n_requesters() const { return static_cast<int>(requesters.size()); }

  // Row indices in the node ordering shared with Placement: users, sBSs, MBSs.
  int row_of_user(int i) const { return i; }
  int row_of_sbs(int j) const { return n_users() + j; }
  int row_of_mbs(int l) const { return n_users() + n_sbs() + l; }
};

// Samples a homogeneous Poisson point process on the square window:
// Poisson-distributed count with mean intensity * side^2, i.i.d. uniform
// positions. Throws std::invalid_argument on non-positive inputs.
std::vector<Point> sample_hppp(double intensity, double region_side, Rng& rng);

// Samples the three node processes and derives the association structure.
// Throws std::runtime_error if no MBS falls in the window (every requester
// needs a serving MBS).
Topology build_topology(const NetworkParams& params, Rng& rng);

double distance(const Point& a, const Point& b, double region_side, bool torus);

}  // namespace edgecache
