#include <cmath>

#include "doctest.h"
#include "edgecache/topology.hpp"

using namespace edgecache;

namespace {

NetworkParams small_params() {
  NetworkParams p;
  p.lambda_u = 3e-4;
  p.lambda_b = 4e-5;
  p.lambda_m = 5e-6;
  p.r_u = 15.0;
  p.r_b = 150.0;
  p.r_m = 500.0;
  p.alpha = 0.4;
  p.region_side = 600.0;
  p.min_mbs = 1;  // the sparse MBS tier leaves some windows empty otherwise
  return p;
}

}  // namespace

TEST_CASE("sample_hppp mean count matches intensity times area") {
  // law of large numbers: 1e4 draws at mean 400 pin the sample mean within 1%
  Rng rng = make_rng(7);
  const int draws = 10000;
  double total = 0.0;
  for (int i = 0; i < draws; ++i) total += sample_hppp(1e-4, 2000.0, rng).size();
  const double mean = total / draws;
  CHECK(mean == doctest::Approx(400.0).epsilon(0.01));
}

TEST_CASE("sample_hppp rejects bad parameters") {
  Rng rng = make_rng(1);
  CHECK_THROWS_AS(sample_hppp(1e-4, 0.0, rng), std::invalid_argument);
  CHECK_THROWS_AS(sample_hppp(0.0, 100.0, rng), std::invalid_argument);
  CHECK_THROWS_AS(sample_hppp(-1e-4, 100.0, rng), std::invalid_argument);
}

TEST_CASE("sample_hppp is deterministic per seed") {
  Rng a = make_rng(42), b = make_rng(42);
  auto pa = sample_hppp(2e-4, 500.0, a);
  auto pb = sample_hppp(2e-4, 500.0, b);
  REQUIRE(pa.size() == pb.size());
  for (std::size_t i = 0; i < pa.size(); ++i) {
    CHECK(pa[i].x == pb[i].x);
    CHECK(pa[i].y == pb[i].y);
  }
}

TEST_CASE("NetworkParams validation") {
  NetworkParams p = small_params();
  CHECK_NOTHROW(p.validate());
  p.r_u = 200.0;  // violates r_u < r_b
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
  p = small_params();
  p.alpha = 1.5;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
  p = small_params();
  p.lambda_b = 0.0;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
}

TEST_CASE("build_topology determinism and requester count") {
  NetworkParams p = small_params();
  Rng a = make_rng(5), b = make_rng(5);
  Topology ta = build_topology(p, a);
  Topology tb = build_topology(p, b);
  CHECK(ta.n_users() == tb.n_users());
  CHECK(ta.requesters == tb.requesters);
  CHECK(ta.n_requesters() == std::lround(p.alpha * ta.n_users()));
  for (int ord = 0; ord < ta.n_requesters(); ++ord) {
    CHECK(ta.tagged_sbs[ord] == tb.tagged_sbs[ord]);
    CHECK(ta.d2d_neighbors[ord] == tb.d2d_neighbors[ord]);
  }
}

TEST_CASE("alpha=1 makes every user a requester") {
  NetworkParams p = small_params();
  p.alpha = 1.0;
  Rng rng = make_rng(9);
  Topology t = build_topology(p, rng);
  CHECK(t.n_requesters() == t.n_users());
}

TEST_CASE("indicator_s XOR indicator_m and tagged presence") {
  NetworkParams p = small_params();
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Rng rng = make_rng(seed);
    Topology t = build_topology(p, rng);
    for (int ord = 0; ord < t.n_requesters(); ++ord) {
      CHECK(t.indicator_s[ord] != t.indicator_m[ord]);
      CHECK(t.indicator_s[ord] == t.tagged_sbs[ord].has_value());
    }
  }
}

TEST_CASE("tagged sBS is the nearest in-range one") {
  NetworkParams p = small_params();
  Rng rng = make_rng(31);
  Topology t = build_topology(p, rng);
  for (int ord = 0; ord < t.n_requesters(); ++ord) {
    const Point pos = t.users[t.requesters[ord]];
    int nearest = -1;
    double best = 1e18;
    for (int j = 0; j < t.n_sbs(); ++j) {
      double d = distance(pos, t.sbs[j], p.region_side, false);
      if (d <= p.r_b && d < best) {
        best = d;
        nearest = j;
      }
    }
    if (nearest < 0) {
      CHECK(!t.tagged_sbs[ord].has_value());
    } else {
      REQUIRE(t.tagged_sbs[ord].has_value());
      CHECK(*t.tagged_sbs[ord] == nearest);
    }
  }
}

TEST_CASE("neighbor sets match the distance definition") {
  NetworkParams p = small_params();
  Rng rng = make_rng(77);
  Topology t = build_topology(p, rng);
  for (int ord = 0; ord < t.n_requesters(); ++ord) {
    const int u0 = t.requesters[ord];
    const Point pos = t.users[u0];
    std::size_t seen = 0;
    for (int i = 0; i < t.n_users(); ++i) {
      if (i == u0) continue;
      const bool in_range = distance(pos, t.users[i], p.region_side, false) <= p.r_u;
      const bool listed = std::find(t.d2d_neighbors[ord].begin(), t.d2d_neighbors[ord].end(),
                                    i) != t.d2d_neighbors[ord].end();
      CHECK(in_range == listed);
      if (listed) ++seen;
    }
    CHECK(seen == t.d2d_neighbors[ord].size());
  }
}

TEST_CASE("empirical Poisson counts over many realizations") {
  // unconditioned point processes: sample mean count per class within 3
  // standard errors of intensity * area
  NetworkParams p = small_params();
  const int reps = 1000;
  double users = 0.0, sbs = 0.0, mbs = 0.0;
  for (int i = 0; i < reps; ++i) {
    Rng rng = make_rng(1000 + i);
    users += sample_hppp(p.lambda_u, p.region_side, rng).size();
    sbs += sample_hppp(p.lambda_b, p.region_side, rng).size();
    mbs += sample_hppp(p.lambda_m, p.region_side, rng).size();
  }
  const double area = p.region_side * p.region_side;
  const auto within = [&](double sum, double lambda) {
    const double expect = lambda * area;
    const double se = std::sqrt(expect / reps);
    return std::fabs(sum / reps - expect) <= 3.0 * se;
  };
  CHECK(within(users, p.lambda_u));
  CHECK(within(sbs, p.lambda_b));
  CHECK(within(mbs, p.lambda_m));
}

TEST_CASE("no MBS in window is a topology error") {
  NetworkParams p = small_params();
  p.lambda_m = 1e-9;  // empty with overwhelming probability
  p.region_side = 300.0;
  p.min_mbs = 0;
  Rng rng = make_rng(3);
  CHECK_THROWS_AS(build_topology(p, rng), std::runtime_error);
}

TEST_CASE("min_mbs conditions the MBS draw") {
  NetworkParams p = small_params();
  p.lambda_m = 1e-9;
  p.region_side = 300.0;
  p.min_mbs = 1;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    Rng rng = make_rng(seed);
    Topology t = build_topology(p, rng);
    CHECK(t.n_mbs() >= 1);
  }
}

TEST_CASE("torus wrap shortens cross-boundary distances") {
  const Point a{1.0, 1.0};
  const Point b{599.0, 599.0};
  CHECK(distance(a, b, 600.0, false) == doctest::Approx(std::hypot(598.0, 598.0)));
  CHECK(distance(a, b, 600.0, true) == doctest::Approx(std::hypot(2.0, 2.0)));
}
