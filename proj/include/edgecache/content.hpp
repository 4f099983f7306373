#pragma once

#include <iosfwd>
#include <vector>

#include "edgecache/common.hpp"

namespace edgecache {

struct CatalogParams {
  int catalog_size = 30;   // F
  double gamma_min = 0.1;  // Zipf skewness lower bound
  double gamma_max = 2.5;  // Zipf skewness upper bound

  void validate() const;
};

// Per-user content preferences: a rank permutation, a Zipf skewness, and the
// induced request probabilities. Contents are equal-sized, so only the
// request distribution matters.
struct PreferenceProfile {
  int catalog_size = 0;
  std::vector<std::vector<int>> rank_of_content;  // per user; rank in 1..F of content k
  std::vector<double> gamma;                      // per user
  std::vector<std::vector<double>> request_prob;  // per user; rho over contents

  int n_users() const { return static_cast<int>(gamma.size()); }
};

// Zipf pmf over ranks 1..F: entry k-1 proportional to k^-gamma.
std::vector<double> zipf_pmf(int catalog_size, double gamma);

// Per-user uniform skewness in [gamma_min, gamma_max] and a uniform random
// rank permutation; request_prob composes zipf_pmf with the permutation.
PreferenceProfile generate_preferences(int n_users, const CatalogParams& params, Rng& rng);

// CSV with header user_id,content_id,rank,rho.
void write_preferences_csv(const PreferenceProfile& profile, std::ostream& out);
PreferenceProfile read_preferences_csv(std::istream& in);

}  // namespace edgecache
