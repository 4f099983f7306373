#include "edgecache/topology.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace edgecache {

void NetworkParams::validate() const {
  if (!(lambda_u > 0.0) || !(lambda_b > 0.0) || !(lambda_m > 0.0))
    throw std::invalid_argument("NetworkParams: intensities must be > 0");
  if (!(r_u > 0.0) || !(r_b > 0.0) || !(r_m > 0.0))
    throw std::invalid_argument("NetworkParams: radii must be > 0");
  if (!(r_u < r_b && r_b < r_m))
    throw std::invalid_argument("NetworkParams: two-tier ordering requires r_u < r_b < r_m");
  if (!(alpha >= 0.0 && alpha <= 1.0))
    throw std::invalid_argument("NetworkParams: alpha must be in [0,1]");
  if (!(region_side > 0.0))
    throw std::invalid_argument("NetworkParams: region_side must be > 0");
  if (min_mbs < 0)
    throw std::invalid_argument("NetworkParams: min_mbs must be >= 0");
}

double distance(const Point& a, const Point& b, double region_side, bool torus) {
  double dx = std::fabs(a.x - b.x);
  double dy = std::fabs(a.y - b.y);
  if (torus) {
    dx = std::min(dx, region_side - dx);
    dy = std::min(dy, region_side - dy);
  }
  return std::hypot(dx, dy);
}

std::vector<Point> sample_hppp(double intensity, double region_side, Rng& rng) {
  if (!(intensity > 0.0)) throw std::invalid_argument("sample_hppp: intensity must be > 0");
  if (!(region_side > 0.0)) throw std::invalid_argument("sample_hppp: region_side must be > 0");

  std::poisson_distribution<long> count_dist(intensity * region_side * region_side);
  std::uniform_real_distribution<double> coord(0.0, region_side);

  long n = count_dist(rng);
  std::vector<Point> pts;
  pts.reserve(static_cast<std::size_t>(n));
  for (long i = 0; i < n; ++i) {
    double x = coord(rng);
    double y = coord(rng);
    pts.push_back({x, y});
  }
  return pts;
}

namespace {

// Poisson count conditioned on >= min_count, by redrawing the count only.
std::vector<Point> sample_hppp_min_count(double intensity, double region_side, int min_count,
                                         Rng& rng) {
  std::poisson_distribution<long> count_dist(intensity * region_side * region_side);
  std::uniform_real_distribution<double> coord(0.0, region_side);

  long n = count_dist(rng);
  long attempts = 0;
  while (n < min_count) {
    if (++attempts > 1000000)
      throw std::runtime_error("sample_hppp_min_count: conditioning did not terminate");
    n = count_dist(rng);
  }
  std::vector<Point> pts;
  pts.reserve(static_cast<std::size_t>(n));
  for (long i = 0; i < n; ++i) {
    double x = coord(rng);
    double y = coord(rng);
    pts.push_back({x, y});
  }
  return pts;
}

// First k entries of a uniformly shuffled index set, returned sorted.
std::vector<int> sample_without_replacement(int n, int k, Rng& rng) {
  std::vector<int> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  for (int i = 0; i < k; ++i) {
    std::uniform_int_distribution<int> pick(i, n - 1);
    std::swap(idx[i], idx[pick(rng)]);
  }
  idx.resize(k);
  std::sort(idx.begin(), idx.end());
  return idx;
}

}  // namespace

Topology build_topology(const NetworkParams& params, Rng& rng) {
  params.validate();

  Topology topo;
  topo.users = sample_hppp(params.lambda_u, params.region_side, rng);
  topo.sbs = sample_hppp(params.lambda_b, params.region_side, rng);
  topo.mbs = params.min_mbs > 0
                 ? sample_hppp_min_count(params.lambda_m, params.region_side, params.min_mbs, rng)
                 : sample_hppp(params.lambda_m, params.region_side, rng);

  if (topo.mbs.empty())
    throw std::runtime_error("build_topology: no MBS in window; every user needs a serving MBS");

  const int n_users = topo.n_users();
  const int n_req = static_cast<int>(std::lround(params.alpha * n_users));
  topo.requesters = sample_without_replacement(n_users, n_req, rng);

  topo.requester_ordinal.assign(n_users, -1);
  for (int ord = 0; ord < n_req; ++ord) topo.requester_ordinal[topo.requesters[ord]] = ord;

  topo.tagged_sbs.resize(n_req);
  topo.serving_mbs.resize(n_req);
  topo.d2d_neighbors.resize(n_req);
  topo.sbs_neighbors.resize(n_req);
  topo.indicator_s.resize(n_req);
  topo.indicator_m.resize(n_req);

  const double side = params.region_side;
  const bool torus = params.torus;

  for (int ord = 0; ord < n_req; ++ord) {
    const int u0 = topo.requesters[ord];
    const Point pos = topo.users[u0];

    // Tagged sBS: best mean received power p_b * d^-beta within r_b, i.e. the
    // nearest in-range sBS; ties broken by lowest index.
    int tagged = -1;
    double best = std::numeric_limits<double>::infinity();
    for (int j = 0; j < topo.n_sbs(); ++j) {
      double d = distance(pos, topo.sbs[j], side, torus);
      if (d <= params.r_b && d < best) {
        best = d;
        tagged = j;
      }
    }
    if (tagged >= 0) topo.tagged_sbs[ord] = tagged;
    topo.indicator_s[ord] = tagged >= 0;
    topo.indicator_m[ord] = tagged < 0;

    // Serving MBS: nearest, no range cutoff.
    int serving = 0;
    double best_m = std::numeric_limits<double>::infinity();
    for (int l = 0; l < topo.n_mbs(); ++l) {
      double d = distance(pos, topo.mbs[l], side, torus);
      if (d < best_m) {
        best_m = d;
        serving = l;
      }
    }
    topo.serving_mbs[ord] = serving;

    for (int i = 0; i < n_users; ++i) {
      if (i == u0) continue;
      if (distance(pos, topo.users[i], side, torus) <= params.r_u)
        topo.d2d_neighbors[ord].push_back(i);
    }

    if (tagged >= 0) {
      const Point bpos = topo.sbs[tagged];
      for (int j = 0; j < topo.n_sbs(); ++j) {
        if (j == tagged) continue;
        if (distance(bpos, topo.sbs[j], side, torus) <= params.r_b)
          topo.sbs_neighbors[ord].push_back(j);
      }
    }
  }

  return topo;
}

}  // namespace edgecache
