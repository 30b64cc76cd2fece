// zeno.cpp — command-line front end.
//
// Exit codes: 0 success, 2 bad configuration or arguments, 3 model outside
// the solvable manifold, 4 solver failure, 5 cross-check failure.
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "zeno/commands.hpp"
#include "zeno/version.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw zeno::config_error("cannot open config file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_output(const zeno::ResultTable& table, const zeno::RunConfig& cfg) {
  const auto emit = [&](std::ostream& os) {
    if (cfg.format == zeno::OutFormat::csv)
      table.write_csv(os, cfg.precision);
    else
      table.write_json(os, cfg.precision);
  };
  if (cfg.out_path == "-") {
    emit(std::cout);
    return;
  }
  std::ofstream out(cfg.out_path, std::ios::binary);
  if (!out) throw zeno::config_error("cannot open output file: " + cfg.out_path);
  emit(out);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact spectra, gaps and steady states of a dissipative lattice model"};
  app.set_version_flag("--version", std::string("zeno ") + zeno::version_string);
  app.require_subcommand(1);

  std::string config_path;
  std::string sector_spec;
  std::string out_path;
  std::string format;
  int precision = -1;
  int workers = 1;

  app.add_option("-c,--config", config_path, "JSON run configuration")->required();
  app.add_option("--workers", workers, "worker threads (results are independent of this)")
      ->check(CLI::PositiveNumber);
  app.add_option("-o,--output", out_path, "output path; '-' for stdout (overrides config)");
  app.add_option("--format", format, "csv or json (overrides config)");
  app.add_option("--precision", precision, "significant digits (overrides config)");

  auto* solve = app.add_subcommand("solve-sector", "diagonalize one dissipation sector");
  solve->add_option("--sector", sector_spec,
                    "uniform | flips:3,5 | segment:4 | block:2x2 (default uniform)");
  auto* scan = app.add_subcommand("zeno-scan", "Liouvillian gap across a gamma grid");
  auto* crossing = app.add_subcommand("crossing-report", "slowest sector per gamma, crossings");
  auto* oracle = app.add_subcommand("oracle-check", "brute-force cross-validation on a small lattice");
  auto* steady = app.add_subcommand("steady-state", "steady-state construction and positivity");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    zeno::RunConfig cfg = zeno::parse_config(read_file(config_path));
    cfg.workers = workers;
    if (!sector_spec.empty()) cfg.sector_spec = sector_spec;
    if (!out_path.empty()) cfg.out_path = out_path;
    if (!format.empty()) {
      if (format == "csv")
        cfg.format = zeno::OutFormat::csv;
      else if (format == "json")
        cfg.format = zeno::OutFormat::json;
      else
        throw zeno::config_error("--format must be csv or json");
    }
    if (precision > 0) {
      if (precision < 2 || precision > 17) throw zeno::config_error("--precision must be in 2..17");
      cfg.precision = precision;
    }

    zeno::CommandResult result;
    if (solve->parsed())
      result = zeno::cmd_solve_sector(cfg);
    else if (scan->parsed())
      result = zeno::cmd_zeno_scan(cfg);
    else if (crossing->parsed())
      result = zeno::cmd_crossing_report(cfg);
    else if (oracle->parsed())
      result = zeno::cmd_oracle_check(cfg);
    else if (steady->parsed())
      result = zeno::cmd_steady_state(cfg);

    write_output(result.table, cfg);
    if (!result.pass) {
      std::cerr << "zeno: checks failed\n";
      return 5;
    }
    return 0;
  } catch (const zeno::config_error& e) {
    std::cerr << "zeno: " << e.what() << '\n';
    return 2;
  } catch (const zeno::non_solvable_error& e) {
    std::cerr << "zeno: " << e.what() << '\n';
    return 3;
  } catch (const zeno::check_failure& e) {
    std::cerr << "zeno: " << e.what() << '\n';
    return 5;
  } catch (const zeno::solver_error& e) {
    std::cerr << "zeno: " << e.what() << '\n';
    return 4;
  } catch (const std::invalid_argument& e) {
    std::cerr << "zeno: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "zeno: " << e.what() << '\n';
    return 4;
  }
}
