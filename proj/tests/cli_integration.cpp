// cli_integration.cpp — end-to-end checks of the command-line binary: exit
// codes, output determinism, worker independence, and format overrides.
// Usage: cli_integration <path-to-zeno-binary>
#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace fs = std::filesystem;

namespace {

int failures = 0;

void check(bool ok, const std::string& label) {
  std::cout << (ok ? "[ok] " : "[FAIL] ") << label << '\n';
  if (!ok) ++failures;
}

fs::path tmp_dir;

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const fs::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  out << text;
}

struct RunResult {
  int code = -1;
  std::string out;
  std::string err;
};

RunResult run(const std::string& bin, const std::string& args) {
  const fs::path out = tmp_dir / "stdout.txt";
  const fs::path err = tmp_dir / "stderr.txt";
  const std::string cmd =
      "\"" + bin + "\" " + args + " > " + out.string() + " 2> " + err.string();
  const int status = std::system(cmd.c_str());
  RunResult r;
  if (status >= 0 && WIFEXITED(status)) r.code = WEXITSTATUS(status);
  r.out = slurp(out);
  r.err = slurp(err);
  return r;
}

bool contains(const std::string& hay, const std::string& needle) {
  return hay.find(needle) != std::string::npos;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: cli_integration <zeno-binary>\n";
    return 2;
  }
  const std::string bin = argv[1];
  tmp_dir = fs::current_path() / "cli_integration_tmp";
  fs::remove_all(tmp_dir);
  fs::create_directories(tmp_dir);

  const fs::path chain8 = tmp_dir / "chain8.json";
  write_file(chain8, R"({
    "lattice": {"dims": [8]},
    "model": {"gamma": 0.7}
  })");

  // Deterministic solve-sector output on stdout.
  {
    RunResult a = run(bin, "-c " + chain8.string() + " solve-sector");
    RunResult b = run(bin, "-c " + chain8.string() + " solve-sector");
    check(a.code == 0, "solve-sector exits 0");
    check(contains(a.out, "# subcommand: solve-sector"), "solve-sector stamps its subcommand");
    check(contains(a.out, "alpha,re,im"), "solve-sector prints the mode table header");
    check(contains(a.out, "sector_max"), "solve-sector reports the slowest nonzero mode");
    check(a.out == b.out, "repeated runs are byte-identical");
  }

  // Sector selection through the command line.
  {
    RunResult r = run(bin, "-c " + chain8.string() + " solve-sector --sector flips:0,2");
    check(r.code == 0, "sector override exits 0");
    check(contains(r.out, "# sector: 2-flipped"), "sector override reaches the report");
  }

  // Output file plus JSON format override.
  {
    const fs::path out_file = tmp_dir / "modes.json";
    RunResult r = run(bin, "-c " + chain8.string() + " -o " + out_file.string() +
                               " --format json solve-sector");
    check(r.code == 0, "file output exits 0");
    check(r.out.empty(), "file output leaves stdout empty");
    const std::string text = slurp(out_file);
    bool parsed = false;
    std::size_t rows = 0;
    try {
      auto j = nlohmann::json::parse(text);
      parsed = j.is_array();
      rows = j.size();
    } catch (...) {
    }
    check(parsed, "json output parses as an array");
    check(rows == 10, "json output has one object per mode plus the two summary rows");
  }

  // Precision override changes the rendered digits.
  {
    const fs::path third = tmp_dir / "third.json";
    write_file(third, R"({
      "lattice": {"dims": [8]},
      "model": {"t": 0.3333333333333333, "delta": 0.3333333333333333, "gamma": 0.7}
    })");
    RunResult coarse = run(bin, "-c " + third.string() + " --precision 4 solve-sector");
    RunResult fine = run(bin, "-c " + third.string() + " solve-sector");
    check(coarse.code == 0 && fine.code == 0, "precision override exits 0");
    check(contains(coarse.out, ",1.333,"), "four significant digits appear when asked");
    check(contains(fine.out, ",1.33333333333,"), "default precision keeps twelve digits");
  }

  // Worker count must not influence scan output.
  {
    const fs::path scan = tmp_dir / "scan12.json";
    write_file(scan, R"({
      "lattice": {"dims": [12]},
      "model": {"gamma_grid": {"min": 0.5, "max": 40, "points": 7}}
    })");
    RunResult one = run(bin, "-c " + scan.string() + " --workers 1 zeno-scan");
    RunResult three = run(bin, "-c " + scan.string() + " --workers 3 zeno-scan");
    check(one.code == 0, "zeno-scan exits 0");
    check(contains(one.out, "gamma,gap,argmax_label,argmax_flips"), "scan prints its header");
    check(contains(one.out, "# gamma_star:"), "scan reports the crossover");
    check(one.out == three.out, "scan output is independent of --workers");
  }

  // Crossing report annotates argmax changes.
  {
    const fs::path cross = tmp_dir / "cross.json";
    write_file(cross, R"({
      "lattice": {"dims": [8]},
      "model": {"gamma_grid": {"min": 2, "max": 40, "points": 5}}
    })");
    RunResult r = run(bin, "-c " + cross.string() + " crossing-report");
    check(r.code == 0, "crossing-report exits 0");
    check(contains(r.out, "# crossing"), "crossing-report lists crossings");
    check(contains(r.out, "wall_length"), "crossing-report includes wall lengths");
  }

  // Oracle battery on a two-site chain.
  {
    const fs::path pair = tmp_dir / "pair.json";
    write_file(pair, R"({
      "lattice": {"dims": [2], "boundary": "open"},
      "model": {"gamma": 0.7}
    })");
    RunResult r = run(bin, "-c " + pair.string() + " oracle-check");
    check(r.code == 0, "oracle-check exits 0");
    check(contains(r.out, "fermionic_vs_direct,pass"), "construction cross-check passes");
    check(contains(r.out, "sector_partition,pass"), "partition check passes");
    check(contains(r.out, "kernel_dimension,pass"), "kernel dimension check passes");

    RunResult s = run(bin, "-c " + pair.string() + " steady-state");
    check(s.code == 0, "steady-state exits 0");
    check(contains(s.out, "psd_q=1,pass"), "mixing family is positive at q=1");
  }

  // Exit code contract.
  {
    RunResult r = run(bin, "-c " + (tmp_dir / "missing.json").string() + " solve-sector");
    check(r.code == 2, "missing config file exits 2");
  }
  {
    const fs::path bad = tmp_dir / "bad.json";
    write_file(bad, "{not json");
    RunResult r = run(bin, "-c " + bad.string() + " solve-sector");
    check(r.code == 2, "malformed JSON exits 2");
  }
  {
    const fs::path unknown = tmp_dir / "unknown.json";
    write_file(unknown, R"({"lattice": {"dims": [4]}, "model": {"gamma": 1}, "fast": true})");
    RunResult r = run(bin, "-c " + unknown.string() + " solve-sector");
    check(r.code == 2, "unknown config key exits 2");
    check(contains(r.err, "unknown key"), "stderr names the offending key");
  }
  {
    const fs::path detuned = tmp_dir / "detuned.json";
    write_file(detuned, R"({
      "lattice": {"dims": [4]},
      "model": {"t": 1.0, "delta": 0.5, "gamma": 1.0}
    })");
    RunResult r = run(bin, "-c " + detuned.string() + " solve-sector");
    check(r.code == 3, "detuned couplings exit 3");
  }
  {
    const fs::path closed = tmp_dir / "closed.json";
    write_file(closed, R"({
      "lattice": {"dims": [2], "boundary": "open"},
      "model": {"gamma": 0}
    })");
    RunResult r = run(bin, "-c " + closed.string() + " steady-state");
    check(r.code == 5, "failed cross-checks exit 5");
    check(contains(r.err, "checks failed"), "stderr flags the failure");
  }
  {
    RunResult r = run(bin, "-c " + chain8.string() + " warp-drive");
    check(r.code == 2, "unknown subcommand exits 2");
    RunResult n = run(bin, "-c " + chain8.string());
    check(n.code == 2, "missing subcommand exits 2");
    RunResult h = run(bin, "--help");
    check(h.code == 0, "--help exits 0");
    RunResult v = run(bin, "--version");
    check(v.code == 0 && contains(v.out, "zeno"), "--version exits 0 and names the tool");
  }

  std::cout << (failures == 0 ? "cli integration: all checks passed\n"
                              : "cli integration: FAILURES\n");
  return failures == 0 ? 0 : 1;
}
