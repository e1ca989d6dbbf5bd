#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "decolab/figures.hpp"
#include "decolab/io.hpp"
#include "decolab/scenario.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw decolab::Error("cannot open '" + path + "'");
  std::ostringstream os;
  os << f.rdbuf();
  return os.str();
}

std::ofstream open_output(const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw decolab::Error("cannot open '" + path + "' for writing");
  return f;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"decolab: engineered decoherence in a two-qubit system-environment model"};
  app.require_subcommand(1);

  unsigned threads = 1;
  app.add_option("--threads", threads, "Worker threads (0 = all cores)");

  auto* run = app.add_subcommand("run", "Simulate one scenario file and write its time series");
  std::string scenario_path, run_out;
  std::optional<std::uint64_t> run_seed;
  std::optional<std::size_t> run_realizations;
  run->add_option("scenario", scenario_path, "Scenario file")->required()->check(CLI::ExistingFile);
  run->add_option("-o,--output", run_out, "Output CSV")->required();
  run->add_option("--seed", run_seed, "Override the scenario seed");
  run->add_option("--realizations", run_realizations, "Override the realization count");

  auto* fig = app.add_subcommand("figure", "Write the data of one built-in figure, one CSV per curve");
  std::string fig_id, fig_dir;
  decolab::FigureOptions fig_opts;
  std::optional<double> fig_horizon;
  fig->add_option("id", fig_id, "Figure id")->required()->check(CLI::IsMember(decolab::figure_ids()));
  fig->add_option("-o,--output", fig_dir, "Output directory")->required();
  fig->add_option("--seed", fig_opts.seed, "Master seed");
  fig->add_option("--realizations", fig_opts.realizations, "Realizations per curve");
  fig->add_option("--horizon", fig_horizon, "Total time T in seconds");

  auto* scan = app.add_subcommand("scan", "Parameter scans: gamma-scan, integer-check, strategy-compare");
  std::string scan_kind, scan_config, scan_out;
  scan->add_option("kind", scan_kind, "Scan kind")
      ->required()
      ->check(CLI::IsMember({"gamma-scan", "integer-check", "strategy-compare"}));
  scan->add_option("config", scan_config, "Scenario file with scan keys")->required()->check(CLI::ExistingFile);
  scan->add_option("-o,--output", scan_out, "Output CSV")->required();

  CLI11_PARSE(app, argc, argv);

  const decolab::EnsembleOptions ens{threads};
  try {
    if (*run) {
      auto s = decolab::parse_scenario(read_file(scenario_path));
      if (run_seed) s.seed = *run_seed;
      if (run_realizations) s.realizations = *run_realizations;
      const auto result = decolab::average(s, ens);
      auto f = open_output(run_out);
      decolab::write_series_csv(f, result, s);
      std::cout << decolab::summary_line(result) << '\n';
      return 0;
    }
    if (*fig) {
      fig_opts.horizon = fig_horizon;
      for (const auto& out : decolab::reproduce_figure(fig_id, fig_dir, fig_opts, ens)) {
        std::cout << out.curve.name << ": " << decolab::summary_line(out.result) << '\n';
      }
      return 0;
    }
    if (*scan) {
      auto f = open_output(scan_out);
      const int failed = decolab::run_scan(decolab::parse_scan_kind(scan_kind), read_file(scan_config), f, ens);
      std::cout << "wrote " << scan_out << '\n';
      return failed == 0 ? 0 : 2;
    }
  } catch (const decolab::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
