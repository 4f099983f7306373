#include <cmath>
#include <sstream>

#include "doctest.h"
#include "edgecache/content.hpp"

using namespace edgecache;

TEST_CASE("zipf_pmf closed values") {
  // F=3, gamma=1: normalizer 1 + 1/2 + 1/3 = 11/6
  auto p = zipf_pmf(3, 1.0);
  CHECK(p[0] == doctest::Approx(6.0 / 11.0).epsilon(1e-14));
  CHECK(p[1] == doctest::Approx(3.0 / 11.0).epsilon(1e-14));
  CHECK(p[2] == doctest::Approx(2.0 / 11.0).epsilon(1e-14));

  auto uniform = zipf_pmf(5, 0.0);
  for (double v : uniform) CHECK(v == doctest::Approx(0.2).epsilon(1e-14));

  auto single = zipf_pmf(1, 2.5);
  CHECK(single[0] == doctest::Approx(1.0));

  CHECK_THROWS_AS(zipf_pmf(0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(zipf_pmf(3, -0.1), std::invalid_argument);
}

TEST_CASE("request probabilities are distributions composed with the permutation") {
  CatalogParams params;
  params.catalog_size = 17;
  params.gamma_min = 0.1;
  params.gamma_max = 2.5;
  Rng rng = make_rng(11);
  PreferenceProfile prof = generate_preferences(50, params, rng);

  for (int u = 0; u < prof.n_users(); ++u) {
    double sum = 0.0;
    std::vector<bool> seen(params.catalog_size, false);
    auto by_rank = zipf_pmf(params.catalog_size, prof.gamma[u]);
    for (int k = 0; k < params.catalog_size; ++k) {
      const int rank = prof.rank_of_content[u][k];
      REQUIRE(rank >= 1);
      REQUIRE(rank <= params.catalog_size);
      CHECK(!seen[rank - 1]);
      seen[rank - 1] = true;
      CHECK(prof.request_prob[u][k] == doctest::Approx(by_rank[rank - 1]).epsilon(1e-14));
      CHECK(prof.request_prob[u][k] >= 0.0);
      sum += prof.request_prob[u][k];
    }
    CHECK(std::fabs(sum - 1.0) < 1e-12);
    CHECK(prof.gamma[u] >= params.gamma_min);
    CHECK(prof.gamma[u] <= params.gamma_max);
  }
}

TEST_CASE("request probability decreases strictly with rank for positive skew") {
  CatalogParams params;
  params.catalog_size = 12;
  params.gamma_min = 0.5;
  params.gamma_max = 0.5;
  Rng rng = make_rng(2);
  PreferenceProfile prof = generate_preferences(5, params, rng);
  for (int u = 0; u < prof.n_users(); ++u) {
    std::vector<double> by_rank(params.catalog_size);
    for (int k = 0; k < params.catalog_size; ++k)
      by_rank[prof.rank_of_content[u][k] - 1] = prof.request_prob[u][k];
    for (int r = 1; r < params.catalog_size; ++r) CHECK(by_rank[r] < by_rank[r - 1]);
  }
}

TEST_CASE("zero skew range gives uniform request probabilities") {
  CatalogParams params;
  params.catalog_size = 8;
  params.gamma_min = 0.0;
  params.gamma_max = 0.0;
  Rng rng = make_rng(3);
  PreferenceProfile prof = generate_preferences(4, params, rng);
  for (int u = 0; u < 4; ++u)
    for (int k = 0; k < 8; ++k)
      CHECK(prof.request_prob[u][k] == doctest::Approx(1.0 / 8.0).epsilon(1e-14));
}

TEST_CASE("skewness sample mean matches the uniform mean") {
  CatalogParams params;
  params.catalog_size = 2;
  params.gamma_min = 0.1;
  params.gamma_max = 2.5;
  Rng rng = make_rng(4);
  const int n = 10000;
  PreferenceProfile prof = generate_preferences(n, params, rng);
  double mean = 0.0;
  for (double g : prof.gamma) mean += g;
  mean /= n;
  const double expect = 0.5 * (params.gamma_min + params.gamma_max);
  const double se = (params.gamma_max - params.gamma_min) / std::sqrt(12.0 * n);
  CHECK(std::fabs(mean - expect) <= 3.0 * se);
}

TEST_CASE("generate_preferences is deterministic per seed") {
  CatalogParams params;
  Rng a = make_rng(8), b = make_rng(8);
  PreferenceProfile pa = generate_preferences(2, params, a);
  PreferenceProfile pb = generate_preferences(2, params, b);
  CHECK(pa.rank_of_content == pb.rank_of_content);
  CHECK(pa.gamma == pb.gamma);
  CHECK(pa.request_prob == pb.request_prob);
}

TEST_CASE("preference CSV round trip") {
  CatalogParams params;
  params.catalog_size = 6;
  Rng rng = make_rng(15);
  PreferenceProfile prof = generate_preferences(3, params, rng);

  std::stringstream buffer;
  write_preferences_csv(prof, buffer);
  PreferenceProfile back = read_preferences_csv(buffer);

  CHECK(back.catalog_size == prof.catalog_size);
  CHECK(back.rank_of_content == prof.rank_of_content);
  REQUIRE(back.n_users() == prof.n_users());
  for (int u = 0; u < prof.n_users(); ++u) {
    for (int k = 0; k < prof.catalog_size; ++k)
      CHECK(back.request_prob[u][k] == prof.request_prob[u][k]);  // %.17g is lossless
    CHECK(back.gamma[u] == doctest::Approx(prof.gamma[u]).epsilon(1e-9));
  }

  std::stringstream bad("not,a,header\n");
  CHECK_THROWS_AS(read_preferences_csv(bad), std::invalid_argument);
}
