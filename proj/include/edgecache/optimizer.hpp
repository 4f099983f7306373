#pragma once

#include <functional>
#include <iosfwd>
#include <vector>

#include "edgecache/common.hpp"
#include "edgecache/content.hpp"
#include "edgecache/hitmodel.hpp"
#include "edgecache/placement.hpp"

namespace edgecache {

struct PsoConfig {
  int n_particles = 40;
  double inertia = 0.9;  // a
  double psi1 = 0.4;     // cognitive acceleration
  double psi2 = 0.4;     // social acceleration
  int max_iters = 100;
  std::uint64_t seed = 1;
  int stall_iters = 0;  // early stop after this many iterations without improvement; 0 disables

  void validate() const;
};

// Shape of the decision variable: one row per node, one column per content,
// with a per-row storage capacity in content units.
struct ProblemDims {
  int rows = 0;
  int cols = 0;
  std::vector<int> capacities;

  void validate() const;  // also enforces cols >= capacity for every row
};

using Objective = std::function<double(const Placement&)>;

// Swarm state. Positions, velocities and personal bests are stored in
// normalized form (each row sums to 1 with entries in [0, 1/capacity]); the
// placements handed to the objective are the capacity-scaled views.
struct Swarm {
  ProblemDims dims;
  std::vector<Matrix> positions;
  std::vector<Matrix> velocities;
  std::vector<Matrix> personal_best;
  std::vector<double> sigma_position;
  std::vector<double> sigma_personal_best;
  Matrix global_best;
  double sigma_global_best = 0.0;

  struct HistoryEntry {
    double best_sigma = 0.0;
    double mean_sigma = 0.0;
  };
  std::vector<HistoryEntry> history;
  int stall_count = 0;

  Placement scaled(int particle) const;
  Placement scaled_global_best() const;
};

// Initializes positions and velocities row-wise on the simplex intersected
// with the box [0, 1/capacity]^cols, sets personal bests to the initial
// positions and the global best to the highest-objective particle.
Swarm init_swarm(const ProblemDims& dims, const PsoConfig& config, Rng& rng,
                 const Objective& objective);

// One M-PSO iteration: velocity update with fresh uniform random matrices,
// intermediate position, per-row random hike, clamp, renormalize, rescale,
// then strict-improvement personal/global best updates.
void step(Swarm& swarm, const Objective& objective, const PsoConfig& config, Rng& rng);

struct OptimizeResult {
  Placement best_placement;
  double best_sigma = 0.0;
  std::vector<Swarm::HistoryEntry> history;
  int iterations_run = 0;
};

struct CachingProblem {
  const Topology* topology = nullptr;
  const PreferenceProfile* prefs = nullptr;
  SuccessProbs succ;
  int c_d = 2, c_b = 4, c_m = 8;

  ProblemDims dims() const;
};

// Runs init + at most max_iters steps of M-PSO on the average cache hit
// ratio and returns the scaled global best.
OptimizeResult optimize(const CachingProblem& problem, const PsoConfig& config);

// Generic-objective variant used by tests and custom problems.
OptimizeResult optimize(const ProblemDims& dims, const Objective& objective,
                        const PsoConfig& config);

// Baseline schemes.
Placement baseline_random(const ProblemDims& dims, Rng& rng);
Placement baseline_equal(const ProblemDims& dims);

// Objective history CSV with header iteration,best_sigma,mean_sigma.
void write_history_csv(const std::vector<Swarm::HistoryEntry>& history, std::ostream& out);

}  // namespace edgecache
