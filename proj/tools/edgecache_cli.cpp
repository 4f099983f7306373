// Command line front end: optimize / baseline / verify / sweep / export.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "edgecache/harness.hpp"
#include "edgecache/hitmodel.hpp"

namespace fs = std::filesystem;
using namespace edgecache;

namespace {

void write_artifacts(const ExperimentResult& result, const std::string& out_dir) {
  fs::create_directories(out_dir);
  export_csv(result, out_dir + "/results.csv");
  export_results_svg(result.rows, out_dir + "/results.svg");
  if (!result.first_mpso_history.empty()) {
    std::ofstream hist(out_dir + "/history.csv", std::ios::binary);
    write_history_csv(result.first_mpso_history, hist);
  }
  if (result.first_mpso_placement) {
    export_placement_csv(*result.first_mpso_placement, result.placement_users,
                         result.placement_sbs, result.placement_mbs,
                         out_dir + "/placement.csv");
    export_placement_svg(*result.first_mpso_placement, result.placement_users,
                         result.placement_sbs, result.placement_mbs,
                         out_dir + "/placement.svg");
  }
  std::cout << "wrote " << out_dir << "/results.csv\n";
}

void print_summary(const ExperimentResult& result) {
  for (const Aggregate& agg : result.aggregates()) {
    std::cout << agg.scheme;
    if (agg.sweep_param != "none") std::cout << " @ " << agg.sweep_param << '=' << agg.sweep_value;
    std::cout << ": mean sigma " << agg.mean << " +/- " << agg.stddev << " over " << agg.count
              << " seeds\n";
  }
  for (const ResultRow& row : result.rows)
    if (!row.error.empty())
      std::cout << "error: " << row.scheme << " seed " << row.seed << ": " << row.error << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"collaborative edge caching: hit-ratio model, M-PSO placement optimizer"};
  app.require_subcommand(1);

  auto* cmd_optimize = app.add_subcommand("optimize", "run the M-PSO placement optimizer");
  std::string opt_config, opt_out = "out";
  cmd_optimize->add_option("config", opt_config, "config file or preset name")->required();
  cmd_optimize->add_option("--out", opt_out, "output directory");

  auto* cmd_baseline = app.add_subcommand("baseline", "run a baseline caching scheme");
  std::string base_config, base_out = "out", base_scheme;
  cmd_baseline->add_option("config", base_config, "config file or preset name")->required();
  cmd_baseline->add_option("--scheme", base_scheme, "random|equal")->required();
  cmd_baseline->add_option("--out", base_out, "output directory");

  auto* cmd_verify = app.add_subcommand("verify", "cross-check analytic model vs Monte Carlo");
  std::string ver_config;
  long ver_trials = 100000;
  std::uint64_t ver_seed = 1;
  cmd_verify->add_option("config", ver_config, "config file or preset name")->required();
  cmd_verify->add_option("--trials", ver_trials, "Monte Carlo trials per check")->required();
  cmd_verify->add_option("--seed", ver_seed, "oracle seed");

  auto* cmd_sweep = app.add_subcommand("sweep", "sweep one parameter over a value list");
  std::string sweep_config, sweep_out = "out", sweep_param;
  std::vector<double> sweep_values;
  cmd_sweep->add_option("config", sweep_config, "config file or preset name")->required();
  cmd_sweep->add_option("--param", sweep_param, "F|alpha|cd|cb|cm")->required();
  cmd_sweep->add_option("--values", sweep_values, "sweep values")->required()->delimiter(',');
  cmd_sweep->add_option("--out", sweep_out, "output directory");

  auto* cmd_export = app.add_subcommand("export", "re-export a results CSV");
  std::string exp_in, exp_format = "svg", exp_out;
  cmd_export->add_option("--in", exp_in, "results.csv produced by a run")->required();
  cmd_export->add_option("--format", exp_format, "csv|svg")->required();
  cmd_export->add_option("--out", exp_out, "output path")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*cmd_optimize) {
      ExperimentSpec spec = load_spec(opt_config);
      spec.schemes = {Scheme::mpso};
      ExperimentResult result = run(spec);
      write_artifacts(result, opt_out);
      print_summary(result);
    } else if (*cmd_baseline) {
      ExperimentSpec spec = load_spec(base_config);
      spec.schemes = {scheme_from_name(base_scheme)};
      ExperimentResult result = run(spec);
      write_artifacts(result, base_out);
      print_summary(result);
    } else if (*cmd_verify) {
      ExperimentSpec spec = load_spec(ver_config);
      VerificationReport report = verify(spec, ver_trials, ver_seed);
      write_verification_report(report, std::cout);
    } else if (*cmd_sweep) {
      ExperimentSpec spec = load_spec(sweep_config);
      spec.sweep = SweepSpec{sweep_param, sweep_values};
      if (spec.iter_schedule.size() != sweep_values.size()) spec.iter_schedule.clear();
      ExperimentResult result = run(spec);
      write_artifacts(result, sweep_out);
      print_summary(result);
    } else if (*cmd_export) {
      const std::vector<ResultRow> rows = read_results_csv(exp_in);
      if (exp_format == "svg") {
        export_results_svg(rows, exp_out);
      } else if (exp_format == "csv") {
        ExperimentResult result;
        result.rows = rows;
        export_csv(result, exp_out);
      } else {
        throw std::invalid_argument("export format must be csv or svg");
      }
      std::cout << "wrote " << exp_out << '\n';
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
