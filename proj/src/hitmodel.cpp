#include "edgecache/hitmodel.hpp"

#include <cassert>
#include <cmath>
#include <stdexcept>
#include <string>

namespace edgecache {

namespace {

int requester_ordinal_checked(const Topology& topo, int requester) {
  if (requester < 0 || requester >= topo.n_users())
    throw std::invalid_argument("hitmodel: user index out of range");
  const int ord = topo.requester_ordinal[requester];
  if (ord < 0) throw std::invalid_argument("hitmodel: user is not a requester");
  return ord;
}

void check_content(const Placement& placement, int content) {
  if (content < 0 || content >= placement.cols())
    throw std::invalid_argument("hitmodel: content index out of range");
}

}  // namespace

HitBreakdown hit_breakdown(const Placement& placement, const Topology& topo, int requester,
                           int content) {
  const int ord = requester_ordinal_checked(topo, requester);
  check_content(placement, content);
  if (placement.rows() != topo.n_nodes())
    throw std::invalid_argument("hitmodel: placement rows do not match topology nodes");

  const double eta_self = placement.eta.at(topo.row_of_user(requester), content);

  // Products over empty neighbor sets are 1 (an isolated requester).
  double prod_users = 1.0;
  for (int u : topo.d2d_neighbors[ord])
    prod_users *= 1.0 - placement.eta.at(topo.row_of_user(u), content);

  const double eta_mbs = placement.eta.at(topo.row_of_mbs(topo.serving_mbs[ord]), content);

  HitBreakdown out;
  out.p_self = eta_self;
  out.p_d2d = (1.0 - eta_self) * (1.0 - prod_users);

  if (topo.indicator_s[ord]) {
    const double eta_tagged = placement.eta.at(topo.row_of_sbs(*topo.tagged_sbs[ord]), content);
    double prod_sbs = 1.0;
    for (int b : topo.sbs_neighbors[ord])
      prod_sbs *= 1.0 - placement.eta.at(topo.row_of_sbs(b), content);

    const double base = (1.0 - eta_self) * prod_users;
    out.p_tagged_sbs = base * eta_tagged;
    out.p_neighbor_sbs = base * (1.0 - eta_tagged) * (1.0 - prod_sbs);
    out.p_mbs_via_sbs = base * (1.0 - eta_tagged) * prod_sbs * eta_mbs;
    out.p_miss_s = base * (1.0 - eta_tagged) * prod_sbs * (1.0 - eta_mbs);
    assert(std::fabs((1.0 - out.p_miss_s) -
                     (out.p_self + out.p_d2d + out.p_tagged_sbs + out.p_neighbor_sbs +
                      out.p_mbs_via_sbs)) < 1e-12);
  } else {
    const double base = (1.0 - eta_self) * prod_users;
    out.p_mbs_direct = base * eta_mbs;
    out.p_miss_m = base * (1.0 - eta_mbs);
    assert(std::fabs((1.0 - out.p_miss_m) - (out.p_self + out.p_d2d + out.p_mbs_direct)) < 1e-12);
  }
  return out;
}

double chr_user(const Placement& placement, const Topology& topo, const PreferenceProfile& prefs,
                const SuccessProbs& succ, int requester) {
  succ.validate();
  const int ord = requester_ordinal_checked(topo, requester);
  if (prefs.catalog_size != placement.cols())
    throw std::invalid_argument("chr_user: preference catalog does not match placement");
  if (prefs.n_users() != topo.n_users())
    throw std::invalid_argument("chr_user: preference users do not match topology");

  const bool covered = topo.indicator_s[ord];
  double chr = 0.0;
  for (int k = 0; k < placement.cols(); ++k) {
    const HitBreakdown hb = hit_breakdown(placement, topo, requester, k);
    double served = hb.p_self + hb.p_d2d * succ.p_s_d2d;
    if (covered) {
      served += hb.p_tagged_sbs * succ.p_s_tagged_sbs + hb.p_neighbor_sbs * succ.p_s_neighbor_sbs +
                hb.p_mbs_via_sbs * succ.p_s_mbs_via_sbs;
    } else {
      served += hb.p_mbs_direct * succ.p_s_mbs_direct;
    }
    chr += prefs.request_prob[requester][k] * served;
  }
  return chr;
}

double sigma(const Placement& placement, const Topology& topo, const PreferenceProfile& prefs,
             const SuccessProbs& succ) {
  if (topo.n_requesters() == 0) throw std::invalid_argument("sigma: no requesters in topology");
  double acc = 0.0;
  for (int u0 : topo.requesters) acc += chr_user(placement, topo, prefs, succ, u0);
  return acc / topo.n_requesters();
}

HitBreakdown mc_hit_oracle(const Placement& placement, const Topology& topo, int requester,
                           int content, long trials, Rng& rng) {
  const int ord = requester_ordinal_checked(topo, requester);
  check_content(placement, content);
  if (trials < 1) throw std::invalid_argument("mc_hit_oracle: trials must be >= 1");

  std::uniform_real_distribution<double> uni(0.0, 1.0);
  auto cached = [&](int row) { return uni(rng) < placement.eta.at(row, content); };

  long n_self = 0, n_d2d = 0, n_tagged = 0, n_neighbor = 0, n_mbs_via = 0, n_miss_s = 0;
  long n_mbs_direct = 0, n_miss_m = 0;
  const bool covered = topo.indicator_s[ord];

  for (long t = 0; t < trials; ++t) {
    if (cached(topo.row_of_user(requester))) {
      ++n_self;
      continue;
    }
    bool d2d_hit = false;
    for (int u : topo.d2d_neighbors[ord]) {
      // every neighbor's cache realization is sampled so the draw count per
      // trial stays fixed per outcome path
      if (cached(topo.row_of_user(u))) d2d_hit = true;
    }
    if (d2d_hit) {
      ++n_d2d;
      continue;
    }
    if (covered) {
      if (cached(topo.row_of_sbs(*topo.tagged_sbs[ord]))) {
        ++n_tagged;
        continue;
      }
      bool neighbor_hit = false;
      for (int b : topo.sbs_neighbors[ord])
        if (cached(topo.row_of_sbs(b))) neighbor_hit = true;
      if (neighbor_hit) {
        ++n_neighbor;
        continue;
      }
      if (cached(topo.row_of_mbs(topo.serving_mbs[ord]))) {
        ++n_mbs_via;
        continue;
      }
      ++n_miss_s;
    } else {
      if (cached(topo.row_of_mbs(topo.serving_mbs[ord]))) {
        ++n_mbs_direct;
        continue;
      }
      ++n_miss_m;
    }
  }

  const double n = static_cast<double>(trials);
  HitBreakdown out;
  out.p_self = n_self / n;
  out.p_d2d = n_d2d / n;
  out.p_tagged_sbs = n_tagged / n;
  out.p_neighbor_sbs = n_neighbor / n;
  out.p_mbs_via_sbs = n_mbs_via / n;
  out.p_miss_s = n_miss_s / n;
  out.p_mbs_direct = n_mbs_direct / n;
  out.p_miss_m = n_miss_m / n;
  return out;
}

}  // namespace edgecache
