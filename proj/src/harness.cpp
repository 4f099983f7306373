#include "edgecache/harness.hpp"

#include <chrono>
#include <cmath>
#include <map>
#include <ostream>
#include <stdexcept>

#include "edgecache/hitmodel.hpp"

namespace edgecache {

namespace {

struct SweepPoint {
  std::string param = "none";
  double value = 0.0;
};

void apply_sweep(const SweepPoint& point, NetworkParams& net, CatalogParams& cat,
                 Capacities& caps) {
  if (point.param == "none") return;
  if (point.param == "F")
    cat.catalog_size = static_cast<int>(std::lround(point.value));
  else if (point.param == "alpha")
    net.alpha = point.value;
  else if (point.param == "cd")
    caps.c_d = static_cast<int>(std::lround(point.value));
  else if (point.param == "cb")
    caps.c_b = static_cast<int>(std::lround(point.value));
  else if (point.param == "cm")
    caps.c_m = static_cast<int>(std::lround(point.value));
  else
    throw std::invalid_argument("unknown sweep parameter: " + point.param);
}

ProblemDims dims_for(const Topology& topo, int cols, const Capacities& caps) {
  ProblemDims dims;
  dims.rows = topo.n_nodes();
  dims.cols = cols;
  dims.capacities.reserve(dims.rows);
  for (int i = 0; i < topo.n_users(); ++i) dims.capacities.push_back(caps.c_d);
  for (int j = 0; j < topo.n_sbs(); ++j) dims.capacities.push_back(caps.c_b);
  for (int l = 0; l < topo.n_mbs(); ++l) dims.capacities.push_back(caps.c_m);
  return dims;
}

// Seed streams for the independent random draws of one (seed, scheme) cell.
constexpr std::uint64_t kTopologyStream = 101;
constexpr std::uint64_t kPreferenceStream = 202;
constexpr std::uint64_t kSwarmStream = 303;
constexpr std::uint64_t kRandomSchemeStream = 404;

}  // namespace

std::vector<Aggregate> aggregate_rows(const std::vector<ResultRow>& rows) {
  std::vector<Aggregate> out;
  std::map<std::pair<std::string, double>, std::map<std::string, std::vector<double>>> groups;
  for (const ResultRow& row : rows) {
    if (!row.error.empty()) continue;
    groups[{row.sweep_param, row.sweep_value}][row.scheme].push_back(row.sigma);
  }
  for (const auto& [point, by_scheme] : groups) {
    for (const auto& [scheme, values] : by_scheme) {
      Aggregate agg;
      agg.scheme = scheme;
      agg.sweep_param = point.first;
      agg.sweep_value = point.second;
      agg.count = static_cast<int>(values.size());
      double mean = 0.0;
      for (double v : values) mean += v;
      mean /= agg.count;
      double var = 0.0;
      for (double v : values) var += (v - mean) * (v - mean);
      agg.mean = mean;
      agg.stddev = agg.count > 1 ? std::sqrt(var / (agg.count - 1)) : 0.0;
      out.push_back(agg);
    }
  }
  return out;
}

std::vector<Aggregate> ExperimentResult::aggregates() const { return aggregate_rows(rows); }

ExperimentResult run(const ExperimentSpec& spec) {
  spec.validate();

  std::vector<SweepPoint> points;
  if (spec.sweep) {
    for (double v : spec.sweep->values) points.push_back({spec.sweep->param, v});
  } else {
    points.push_back({});
  }

  ExperimentResult result;
  bool have_first_mpso = false;

  for (std::size_t pi = 0; pi < points.size(); ++pi) {
    NetworkParams net = spec.network;
    CatalogParams cat = spec.catalog;
    Capacities caps = spec.capacities;
    PsoConfig pso = spec.pso;
    apply_sweep(points[pi], net, cat, caps);
    if (!spec.iter_schedule.empty() && spec.sweep) pso.max_iters = spec.iter_schedule[pi];

    // Success probabilities depend on intensities only, so one evaluation
    // covers every seed of this sweep point.
    const SuccessProbs succ = closed_form_success(spec.phy, net);

    for (std::uint64_t seed : spec.seeds) {
      Rng topo_rng = make_rng(seed, kTopologyStream);
      Rng pref_rng = make_rng(seed, kPreferenceStream);

      Topology topo;
      PreferenceProfile prefs;
      std::string scene_error;
      try {
        topo = build_topology(net, topo_rng);
        prefs = generate_preferences(topo.n_users(), cat, pref_rng);
      } catch (const std::exception& e) {
        scene_error = e.what();
      }

      for (Scheme scheme : spec.schemes) {
        ResultRow row;
        row.scheme = scheme_name(scheme);
        row.sweep_param = points[pi].param;
        row.sweep_value = points[pi].value;
        row.seed = seed;

        if (!scene_error.empty()) {
          row.sigma = std::nan("");
          row.error = scene_error;
          result.rows.push_back(row);
          continue;
        }

        const auto t0 = std::chrono::steady_clock::now();
        try {
          const ProblemDims dims = dims_for(topo, cat.catalog_size, caps);
          switch (scheme) {
            case Scheme::mpso: {
              CachingProblem problem;
              problem.topology = &topo;
              problem.prefs = &prefs;
              problem.succ = succ;
              problem.c_d = caps.c_d;
              problem.c_b = caps.c_b;
              problem.c_m = caps.c_m;
              PsoConfig pc = pso;
              pc.seed = mix_seed(seed, kSwarmStream);
              OptimizeResult opt = optimize(problem, pc);
              row.sigma = opt.best_sigma;
              if (!have_first_mpso) {
                have_first_mpso = true;
                result.first_mpso_history = opt.history;
                result.first_mpso_placement = opt.best_placement;
                result.placement_users = topo.n_users();
                result.placement_sbs = topo.n_sbs();
                result.placement_mbs = topo.n_mbs();
              }
              break;
            }
            case Scheme::random_scheme: {
              Rng rng = make_rng(seed, kRandomSchemeStream);
              const Placement placement = baseline_random(dims, rng);
              row.sigma = sigma(placement, topo, prefs, succ);
              break;
            }
            case Scheme::equal: {
              const Placement placement = baseline_equal(dims);
              row.sigma = sigma(placement, topo, prefs, succ);
              break;
            }
          }
        } catch (const std::exception& e) {
          row.sigma = std::nan("");
          row.error = e.what();
        }
        const auto t1 = std::chrono::steady_clock::now();
        row.runtime_s =
            spec.report_runtime ? std::chrono::duration<double>(t1 - t0).count() : 0.0;
        result.rows.push_back(row);
      }
    }
  }
  return result;
}

bool VerificationReport::all_pass() const {
  for (const VerificationCheck& c : checks)
    if (!c.pass) return false;
  return true;
}

VerificationReport verify(const ExperimentSpec& spec, long trials, std::uint64_t seed) {
  spec.validate();
  if (trials < 1) throw std::invalid_argument("verify: trials must be >= 1");

  VerificationReport report;

  // Analytic hit probabilities vs the Bernoulli cache oracle on one sampled
  // scene with a random feasible placement: every outcome frequency must sit
  // within 4 binomial standard errors of its analytic value.
  Rng topo_rng = make_rng(seed, kTopologyStream);
  const Topology topo = build_topology(spec.network, topo_rng);
  const ProblemDims dims = dims_for(topo, spec.catalog.catalog_size, spec.capacities);
  Rng placement_rng = make_rng(seed, 11);
  const Placement placement = baseline_random(dims, placement_rng);

  const int n_pairs = std::min(3, topo.n_requesters());
  for (int i = 0; i < n_pairs; ++i) {
    const int requester = topo.requesters[i];
    for (int content : {0, spec.catalog.catalog_size - 1}) {
      const HitBreakdown analytic = hit_breakdown(placement, topo, requester, content);
      Rng oracle_rng = make_rng(seed, 1000 + i * 2 + (content != 0));
      const HitBreakdown empirical =
          mc_hit_oracle(placement, topo, requester, content, trials, oracle_rng);

      const struct {
        const char* name;
        double a, e;
      } fields[] = {
          {"self", analytic.p_self, empirical.p_self},
          {"d2d", analytic.p_d2d, empirical.p_d2d},
          {"tagged_sbs", analytic.p_tagged_sbs, empirical.p_tagged_sbs},
          {"neighbor_sbs", analytic.p_neighbor_sbs, empirical.p_neighbor_sbs},
          {"mbs_via_sbs", analytic.p_mbs_via_sbs, empirical.p_mbs_via_sbs},
          {"miss_s", analytic.p_miss_s, empirical.p_miss_s},
          {"mbs_direct", analytic.p_mbs_direct, empirical.p_mbs_direct},
          {"miss_m", analytic.p_miss_m, empirical.p_miss_m},
      };
      for (const auto& f : fields) {
        VerificationCheck check;
        check.name = "hit." + std::string(f.name) + "[u" + std::to_string(requester) + ",f" +
                     std::to_string(content) + "]";
        check.expected = f.a;
        check.observed = f.e;
        check.tolerance = 4.0 * std::sqrt(f.a * (1.0 - f.a) / static_cast<double>(trials));
        check.pass = std::fabs(f.e - f.a) <= check.tolerance;
        report.checks.push_back(check);
      }
    }
  }

  // Closed-form link success probabilities vs the SINR oracle. The relative
  // deviation is measured against the oracle estimate.
  const SuccessProbs closed = closed_form_success(spec.phy, spec.network);
  const struct {
    const char* name;
    LinkKind link;
    double closed_value;
  } links[] = {
      {"d2d", LinkKind::d2d, closed.p_s_d2d},
      {"tagged_sbs", LinkKind::tagged_sbs, closed.p_s_tagged_sbs},
      {"mbs_direct", LinkKind::mbs_direct, closed.p_s_mbs_direct},
  };
  for (const auto& l : links) {
    Rng oracle_rng = make_rng(seed, 2000 + static_cast<int>(l.link));
    const double oracle = mc_success_oracle(l.link, spec.phy, spec.network, trials, oracle_rng);
    VerificationCheck check;
    check.name = "success." + std::string(l.name);
    check.expected = l.closed_value;
    check.observed = oracle;
    check.tolerance = 0.15 * std::max(oracle, 1e-12);
    check.pass = std::fabs(l.closed_value - oracle) <= check.tolerance;
    report.checks.push_back(check);
  }

  return report;
}

void write_verification_report(const VerificationReport& report, std::ostream& out) {
  for (const VerificationCheck& c : report.checks) {
    const double dev = std::fabs(c.observed - c.expected);
    out << (c.pass ? "PASS" : "FAIL") << ' ' << c.name << " observed=" << c.observed
        << " expected=" << c.expected << " |dev|=" << dev << " tol=" << c.tolerance << '\n';
  }
  out << (report.all_pass() ? "VERIFY OVERALL: PASS" : "VERIFY OVERALL: FAIL") << '\n';
}

}  // namespace edgecache
