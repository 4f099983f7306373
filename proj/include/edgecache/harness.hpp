#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "edgecache/common.hpp"
#include "edgecache/content.hpp"
#include "edgecache/optimizer.hpp"
#include "edgecache/phy.hpp"
#include "edgecache/topology.hpp"

namespace edgecache {

enum class Scheme { mpso, random_scheme, equal };

std::string scheme_name(Scheme s);
Scheme scheme_from_name(const std::string& name);

// One sweepable parameter: catalog size F, requester fraction alpha, or a
// cache capacity (cd, cb, cm).
struct SweepSpec {
  std::string param;
  std::vector<double> values;
};

struct Capacities {
  int c_d = 2;
  int c_b = 4;
  int c_m = 8;
};

struct ExperimentSpec {
  NetworkParams network;
  CatalogParams catalog;
  PhyParams phy;
  Capacities capacities;
  PsoConfig pso;
  std::vector<Scheme> schemes = {Scheme::mpso, Scheme::random_scheme, Scheme::equal};
  std::vector<std::uint64_t> seeds = {1};
  std::optional<SweepSpec> sweep;
  std::vector<int> iter_schedule;  // optional per-sweep-point max_iters
  bool report_runtime = true;      // false writes runtime_s as 0 for byte-stable output

  void validate() const;
};

// Built-in configuration with the default experiment parameters; also the
// base other config files can start from (preset = paper-sec5).
ExperimentSpec preset_paper_sec5();

// Loads a spec from a flat key/value config file, or returns the named preset
// when the argument is a known preset name.
ExperimentSpec load_spec(const std::string& path_or_preset);
ExperimentSpec parse_spec(const std::string& text);

struct ResultRow {
  std::string scheme;
  std::string sweep_param;  // "none" when not sweeping
  double sweep_value = 0.0;
  std::uint64_t seed = 0;
  double sigma = 0.0;  // NaN when the combination failed
  double runtime_s = 0.0;
  std::string error;  // empty on success
};

struct Aggregate {
  std::string scheme;
  std::string sweep_param;
  double sweep_value = 0.0;
  double mean = 0.0;
  double stddev = 0.0;
  int count = 0;
};

std::vector<Aggregate> aggregate_rows(const std::vector<ResultRow>& rows);

struct ExperimentResult {
  std::vector<ResultRow> rows;
  std::vector<Swarm::HistoryEntry> first_mpso_history;
  std::optional<Placement> first_mpso_placement;
  int placement_users = 0, placement_sbs = 0, placement_mbs = 0;

  std::vector<Aggregate> aggregates() const;
};

// Runs every (sweep point, seed, scheme) combination. Within a seed all
// schemes share one topology and preference draw; sweep points reuse the same
// seed list, so comparisons are paired.
ExperimentResult run(const ExperimentSpec& spec);

struct VerificationCheck {
  std::string name;
  bool pass = false;
  double observed = 0.0;
  double expected = 0.0;
  double tolerance = 0.0;
};

struct VerificationReport {
  std::vector<VerificationCheck> checks;
  bool all_pass() const;
};

// Cross-checks the analytic hit probabilities against the Bernoulli cache
// oracle (4 binomial standard errors) and the closed-form link success
// probabilities against the SINR oracle (15% relative, deviations reported).
VerificationReport verify(const ExperimentSpec& spec, long trials, std::uint64_t seed);

// CSV with header scheme,sweep_param,sweep_value,seed,sigma,runtime_s.
void export_csv(const ExperimentResult& result, const std::string& path);
std::vector<ResultRow> read_results_csv(const std::string& path);
void export_results_svg(const std::vector<ResultRow>& rows, const std::string& path);
void export_placement_csv(const Placement& placement, int n_users, int n_sbs, int n_mbs,
                          const std::string& path);
void export_placement_svg(const Placement& placement, int n_users, int n_sbs, int n_mbs,
                          const std::string& path);
void write_verification_report(const VerificationReport& report, std::ostream& out);

}  // namespace edgecache
