#include "edgecache/content.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace edgecache {

void CatalogParams::validate() const {
  if (catalog_size < 1) throw std::invalid_argument("CatalogParams: catalog_size must be >= 1");
  if (!(gamma_min >= 0.0) || !(gamma_max >= gamma_min))
    throw std::invalid_argument("CatalogParams: need 0 <= gamma_min <= gamma_max");
}

std::vector<double> zipf_pmf(int catalog_size, double gamma) {
  if (catalog_size < 1) throw std::invalid_argument("zipf_pmf: catalog_size must be >= 1");
  if (!(gamma >= 0.0)) throw std::invalid_argument("zipf_pmf: gamma must be >= 0");

  std::vector<double> p(catalog_size);
  double norm = 0.0;
  for (int k = 1; k <= catalog_size; ++k) {
    p[k - 1] = std::pow(static_cast<double>(k), -gamma);
    norm += p[k - 1];
  }
  for (double& v : p) v /= norm;
  return p;
}

PreferenceProfile generate_preferences(int n_users, const CatalogParams& params, Rng& rng) {
  params.validate();
  if (n_users < 0) throw std::invalid_argument("generate_preferences: n_users must be >= 0");

  const int f = params.catalog_size;
  PreferenceProfile profile;
  profile.catalog_size = f;
  profile.rank_of_content.resize(n_users);
  profile.gamma.resize(n_users);
  profile.request_prob.resize(n_users);

  std::uniform_real_distribution<double> skew(params.gamma_min, params.gamma_max);

  for (int u = 0; u < n_users; ++u) {
    // Fisher-Yates permutation of ranks 1..F.
    std::vector<int> ranks(f);
    std::iota(ranks.begin(), ranks.end(), 1);
    for (int i = f - 1; i > 0; --i) {
      std::uniform_int_distribution<int> pick(0, i);
      std::swap(ranks[i], ranks[pick(rng)]);
    }
    double g = params.gamma_min == params.gamma_max ? params.gamma_min : skew(rng);

    std::vector<double> by_rank = zipf_pmf(f, g);
    std::vector<double> rho(f);
    for (int k = 0; k < f; ++k) rho[k] = by_rank[ranks[k] - 1];

    profile.rank_of_content[u] = std::move(ranks);
    profile.gamma[u] = g;
    profile.request_prob[u] = std::move(rho);
  }
  return profile;
}

void write_preferences_csv(const PreferenceProfile& profile, std::ostream& out) {
  out << "user_id,content_id,rank,rho\n";
  char buf[64];
  for (int u = 0; u < profile.n_users(); ++u) {
    for (int k = 0; k < profile.catalog_size; ++k) {
      std::snprintf(buf, sizeof(buf), "%.17g", profile.request_prob[u][k]);
      out << u << ',' << k << ',' << profile.rank_of_content[u][k] << ',' << buf << '\n';
    }
  }
}

PreferenceProfile read_preferences_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line.rfind("user_id,", 0) != 0)
    throw std::invalid_argument("read_preferences_csv: missing header");

  PreferenceProfile profile;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ss(line);
    std::string tok;
    long vals_user, vals_content, vals_rank;
    double rho;
    std::getline(ss, tok, ',');
    vals_user = std::stol(tok);
    std::getline(ss, tok, ',');
    vals_content = std::stol(tok);
    std::getline(ss, tok, ',');
    vals_rank = std::stol(tok);
    std::getline(ss, tok, ',');
    rho = std::stod(tok);

    if (vals_user == static_cast<long>(profile.rank_of_content.size())) {
      profile.rank_of_content.emplace_back();
      profile.request_prob.emplace_back();
      profile.gamma.push_back(0.0);
    }
    if (vals_user + 1 != static_cast<long>(profile.rank_of_content.size()))
      throw std::invalid_argument("read_preferences_csv: rows out of order");
    if (vals_content != static_cast<long>(profile.rank_of_content.back().size()))
      throw std::invalid_argument("read_preferences_csv: rows out of order");
    profile.rank_of_content.back().push_back(static_cast<int>(vals_rank));
    profile.request_prob.back().push_back(rho);
  }
  if (!profile.rank_of_content.empty())
    profile.catalog_size = static_cast<int>(profile.rank_of_content.front().size());

  // gamma is not part of the CSV schema; recover it from the rank-1/rank-2
  // probability ratio (rho_1/rho_2 = 2^gamma). Single-content profiles keep 0.
  for (int u = 0; u < profile.n_users(); ++u) {
    double rho1 = -1.0, rho2 = -1.0;
    for (int k = 0; k < profile.catalog_size; ++k) {
      if (profile.rank_of_content[u][k] == 1) rho1 = profile.request_prob[u][k];
      if (profile.rank_of_content[u][k] == 2) rho2 = profile.request_prob[u][k];
    }
    if (rho1 > 0.0 && rho2 > 0.0) profile.gamma[u] = std::log2(rho1 / rho2);
  }
  return profile;
}

}  // namespace edgecache
