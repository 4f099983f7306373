#pragma once

#include "edgecache/common.hpp"
#include "edgecache/content.hpp"
#include "edgecache/phy.hpp"
#include "edgecache/placement.hpp"
#include "edgecache/topology.hpp"

namespace edgecache {

// Probabilities of the mutually exclusive outcomes of one content request
// under the access protocol. Exactly one coverage branch applies: with sBS
// coverage the six s-branch fields sum to 1, otherwise the four m-branch
// fields do; fields of the inactive branch are 0.
struct HitBreakdown {
  double p_self = 0.0;          // content already in the requester's cache
  double p_d2d = 0.0;           // served by a D2D neighbor
  double p_tagged_sbs = 0.0;    // served by the tagged sBS
  double p_neighbor_sbs = 0.0;  // served by a neighbor of the tagged sBS
  double p_mbs_via_sbs = 0.0;   // served by the MBS through the tagged sBS
  double p_miss_s = 0.0;        // miss with sBS coverage (cloud fetch)
  double p_mbs_direct = 0.0;    // served directly by the MBS (no sBS coverage)
  double p_miss_m = 0.0;        // miss without sBS coverage

  double total_hit() const {
    return p_self + p_d2d + p_tagged_sbs + p_neighbor_sbs + p_mbs_via_sbs + p_mbs_direct;
  }
};

// Analytic outcome probabilities for one (requester, content) pair. The
// requester argument is a user index that must be in topo.requesters.
HitBreakdown hit_breakdown(const Placement& placement, const Topology& topo, int requester,
                           int content);

// Cache hit ratio of one requester: request-probability-weighted hit terms,
// each remote tier discounted by its transmission success probability
// (self hits need no transmission).
double chr_user(const Placement& placement, const Topology& topo, const PreferenceProfile& prefs,
                const SuccessProbs& succ, int requester);

// Average cache hit ratio over all requesters; the optimization objective.
double sigma(const Placement& placement, const Topology& topo, const PreferenceProfile& prefs,
             const SuccessProbs& succ);

// Empirical HitBreakdown: samples Bernoulli cache contents per (node, content)
// with probabilities eta and walks the access protocol.
HitBreakdown mc_hit_oracle(const Placement& placement, const Topology& topo, int requester,
                           int content, long trials, Rng& rng);

}  // namespace edgecache
