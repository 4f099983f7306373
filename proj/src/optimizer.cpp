#include "edgecache/optimizer.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>

namespace edgecache {

void PsoConfig::validate() const {
  if (n_particles < 2) throw std::invalid_argument("PsoConfig: need at least 2 particles");
  if (!(inertia > 0.0 && inertia <= 1.0))
    throw std::invalid_argument("PsoConfig: inertia must be in (0,1]");
  if (!(psi1 >= 0.0) || !(psi2 >= 0.0))
    throw std::invalid_argument("PsoConfig: acceleration coefficients must be >= 0");
  if (max_iters < 1) throw std::invalid_argument("PsoConfig: max_iters must be >= 1");
  if (stall_iters < 0) throw std::invalid_argument("PsoConfig: stall_iters must be >= 0");
}

void ProblemDims::validate() const {
  if (rows < 1 || cols < 1) throw std::invalid_argument("ProblemDims: empty problem");
  if (static_cast<int>(capacities.size()) != rows)
    throw std::invalid_argument("ProblemDims: capacities size does not match rows");
  for (int c : capacities) {
    if (c < 0) throw std::invalid_argument("ProblemDims: negative capacity");
    if (c > cols)
      throw std::invalid_argument(
          "ProblemDims: capacity exceeds catalog size; row cannot satisfy both the "
          "sum and the per-entry bound");
  }
}

namespace {

// Moves per-entry excess over `bound` to the entries below it, proportionally
// to their current values; preserves the row sum. Needs bound * size >= 1.
void repair_row(std::span<double> row, double bound) {
  const int n = static_cast<int>(row.size());
  for (int pass = 0; pass < n + 2; ++pass) {
    double excess = 0.0;
    double receiver_weight = 0.0;
    int n_receivers = 0;
    for (double v : row) {
      if (v > bound) {
        excess += v - bound;
      } else if (v < bound) {
        receiver_weight += v;
        ++n_receivers;
      }
    }
    if (excess <= 1e-15) return;
    for (double& v : row)
      if (v > bound) v = bound;
    if (n_receivers == 0) return;  // fully saturated row (bound * size == 1)
    if (receiver_weight > 0.0) {
      const double scale = excess / receiver_weight;
      for (double& v : row)
        if (v < bound) v += v * scale;
    } else {
      const double share = excess / n_receivers;
      for (double& v : row)
        if (v < bound) v += share;
    }
  }
}

// Uniform sample on the simplex intersected with [0, 1/capacity]^n:
// Dirichlet(1,..,1) with rejection, falling back to redistribution repair if
// the box is too tight to hit by chance.
void sample_box_simplex_row(std::span<double> row, int capacity, Rng& rng) {
  const double bound = capacity > 0 ? 1.0 / capacity : std::numeric_limits<double>::infinity();
  std::exponential_distribution<double> expo(1.0);
  for (int attempt = 0; attempt < 100; ++attempt) {
    double sum = 0.0;
    for (double& v : row) {
      v = expo(rng);
      sum += v;
    }
    double max_v = 0.0;
    for (double& v : row) {
      v /= sum;
      max_v = std::max(max_v, v);
    }
    if (max_v <= bound) return;
  }
  repair_row(row, bound);
}

void scale_into(const Matrix& normalized, const ProblemDims& dims, Placement& out) {
  for (int j = 0; j < dims.rows; ++j) {
    const double cap = dims.capacities[j];
    for (int k = 0; k < dims.cols; ++k) out.eta.at(j, k) = cap * normalized.at(j, k);
  }
}

double evaluate(const Objective& objective, const Matrix& normalized, const ProblemDims& dims,
                Placement& scratch, const char* where, int particle) {
  scale_into(normalized, dims, scratch);
  assert(scratch.feasible(1e-9));
  const double s = objective(scratch);
  if (std::isnan(s))
    throw std::runtime_error(std::string("M-PSO: objective returned NaN during ") + where +
                             " for particle " + std::to_string(particle));
  return s;
}

}  // namespace

Placement Swarm::scaled(int particle) const {
  Placement p(dims.rows, dims.cols);
  p.capacities = dims.capacities;
  scale_into(positions[particle], dims, p);
  return p;
}

Placement Swarm::scaled_global_best() const {
  Placement p(dims.rows, dims.cols);
  p.capacities = dims.capacities;
  scale_into(global_best, dims, p);
  return p;
}

Swarm init_swarm(const ProblemDims& dims, const PsoConfig& config, Rng& rng,
                 const Objective& objective) {
  dims.validate();
  config.validate();

  Swarm swarm;
  swarm.dims = dims;
  swarm.positions.assign(config.n_particles, Matrix(dims.rows, dims.cols));
  swarm.velocities.assign(config.n_particles, Matrix(dims.rows, dims.cols));
  swarm.sigma_position.assign(config.n_particles, 0.0);

  Placement scratch(dims.rows, dims.cols);
  scratch.capacities = dims.capacities;

  for (int i = 0; i < config.n_particles; ++i) {
    for (int j = 0; j < dims.rows; ++j) {
      sample_box_simplex_row(swarm.positions[i].row(j), dims.capacities[j], rng);
      sample_box_simplex_row(swarm.velocities[i].row(j), dims.capacities[j], rng);
    }
    swarm.sigma_position[i] = evaluate(objective, swarm.positions[i], dims, scratch, "init", i);
  }

  swarm.personal_best = swarm.positions;
  swarm.sigma_personal_best = swarm.sigma_position;

  int best = 0;
  for (int i = 1; i < config.n_particles; ++i)
    if (swarm.sigma_personal_best[i] > swarm.sigma_personal_best[best]) best = i;
  swarm.global_best = swarm.personal_best[best];
  swarm.sigma_global_best = swarm.sigma_personal_best[best];
  return swarm;
}

void step(Swarm& swarm, const Objective& objective, const PsoConfig& config, Rng& rng) {
  const ProblemDims& dims = swarm.dims;
  const int n_particles = static_cast<int>(swarm.positions.size());
  std::uniform_real_distribution<double> uni(0.0, 1.0);

  Placement scratch(dims.rows, dims.cols);
  scratch.capacities = dims.capacities;
  const double before = swarm.sigma_global_best;

  for (int i = 0; i < n_particles; ++i) {
    Matrix& x = swarm.positions[i];
    Matrix& v = swarm.velocities[i];
    const Matrix& pb = swarm.personal_best[i];

    // velocity with per-entry uniform random weights, then the intermediate
    // position x + v
    for (int j = 0; j < dims.rows; ++j) {
      for (int k = 0; k < dims.cols; ++k) {
        const double e1 = uni(rng);
        const double e2 = uni(rng);
        v.at(j, k) = config.inertia * v.at(j, k) +
                     config.psi1 * e1 * (pb.at(j, k) - x.at(j, k)) +
                     config.psi2 * e2 * (swarm.global_best.at(j, k) - x.at(j, k));
        x.at(j, k) += v.at(j, k);
      }
    }

    for (int j = 0; j < dims.rows; ++j) {
      auto row = x.row(j);
      const int cap = dims.capacities[j];

      // random hike: a random number of columns get boosted to rowsum/capacity,
      // biasing the row toward a few strongly cached contents
      if (cap >= 1) {
        std::uniform_int_distribution<int> hike_count(1, cap);
        std::uniform_int_distribution<int> column(0, dims.cols - 1);
        const int hikes = hike_count(rng);
        for (int h = 0; h < hikes; ++h) {
          const double rowsum = std::accumulate(row.begin(), row.end(), 0.0);
          row[column(rng)] = rowsum / cap;
        }
      }

      for (double& val : row) val = std::max(val, 0.0);
      double sum = std::accumulate(row.begin(), row.end(), 0.0);
      if (sum < 1e-12) {
        std::fill(row.begin(), row.end(), 1.0 / dims.cols);
        sum = 1.0;
      } else {
        for (double& val : row) val /= sum;
      }
      if (cap >= 1) repair_row(row, 1.0 / cap);
    }

    swarm.sigma_position[i] = evaluate(objective, x, dims, scratch, "step", i);

    if (swarm.sigma_position[i] > swarm.sigma_personal_best[i]) {
      swarm.personal_best[i] = x;
      swarm.sigma_personal_best[i] = swarm.sigma_position[i];
      if (swarm.sigma_personal_best[i] > swarm.sigma_global_best) {
        swarm.global_best = swarm.personal_best[i];
        swarm.sigma_global_best = swarm.sigma_personal_best[i];
      }
    }
  }

  const double mean =
      std::accumulate(swarm.sigma_position.begin(), swarm.sigma_position.end(), 0.0) /
      n_particles;
  swarm.history.push_back({swarm.sigma_global_best, mean});
  swarm.stall_count = swarm.sigma_global_best > before ? 0 : swarm.stall_count + 1;
}

OptimizeResult optimize(const ProblemDims& dims, const Objective& objective,
                        const PsoConfig& config) {
  Rng rng = make_rng(config.seed);
  Swarm swarm = init_swarm(dims, config, rng, objective);

  int iters = 0;
  while (iters < config.max_iters) {
    step(swarm, objective, config, rng);
    ++iters;
    if (config.stall_iters > 0 && swarm.stall_count >= config.stall_iters) break;
  }

  OptimizeResult result;
  result.best_placement = swarm.scaled_global_best();
  result.best_sigma = swarm.sigma_global_best;
  result.history = swarm.history;
  result.iterations_run = iters;
  return result;
}

ProblemDims CachingProblem::dims() const {
  ProblemDims d;
  d.rows = topology->n_nodes();
  d.cols = prefs->catalog_size;
  d.capacities.reserve(d.rows);
  for (int i = 0; i < topology->n_users(); ++i) d.capacities.push_back(c_d);
  for (int j = 0; j < topology->n_sbs(); ++j) d.capacities.push_back(c_b);
  for (int l = 0; l < topology->n_mbs(); ++l) d.capacities.push_back(c_m);
  return d;
}

OptimizeResult optimize(const CachingProblem& problem, const PsoConfig& config) {
  const Topology& topo = *problem.topology;
  const PreferenceProfile& prefs = *problem.prefs;
  const SuccessProbs succ = problem.succ;
  Objective objective = [&topo, &prefs, succ](const Placement& placement) {
    return sigma(placement, topo, prefs, succ);
  };
  return optimize(problem.dims(), objective, config);
}

Placement baseline_random(const ProblemDims& dims, Rng& rng) {
  dims.validate();
  Placement p(dims.rows, dims.cols);
  p.capacities = dims.capacities;
  Matrix normalized(dims.rows, dims.cols);
  for (int j = 0; j < dims.rows; ++j)
    sample_box_simplex_row(normalized.row(j), dims.capacities[j], rng);
  scale_into(normalized, dims, p);
  return p;
}

Placement baseline_equal(const ProblemDims& dims) {
  dims.validate();
  Placement p(dims.rows, dims.cols);
  p.capacities = dims.capacities;
  for (int j = 0; j < dims.rows; ++j) {
    const double v = static_cast<double>(dims.capacities[j]) / dims.cols;
    for (int k = 0; k < dims.cols; ++k) p.eta.at(j, k) = v;
  }
  return p;
}

void write_history_csv(const std::vector<Swarm::HistoryEntry>& history, std::ostream& out) {
  out << "iteration,best_sigma,mean_sigma\n";
  char buf[96];
  for (std::size_t t = 0; t < history.size(); ++t) {
    std::snprintf(buf, sizeof(buf), "%zu,%.12g,%.12g\n", t + 1, history[t].best_sigma,
                  history[t].mean_sigma);
    out << buf;
  }
}

}  // namespace edgecache
