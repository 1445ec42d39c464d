// rdc-sim: experiment runner for the duty-cycle MAC simulator.
//
//   rdc-sim run --scenario FILE [--runs K] [--seed S] [--out DIR] [--format csv|table]
//   rdc-sim calc --preset sec423 --protocol contikimac --hops 2
//   rdc-sim validate-timing --preset table3

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "rdcsim/harness.hpp"
#include "rdcsim/latency_model.hpp"
#include "rdcsim/scenario.hpp"

namespace fs = std::filesystem;
using namespace rdcsim;

namespace {

int cmd_run(const std::string& scenario_path, int runs_override, std::uint64_t seed_override,
            bool seed_set, const std::string& out_dir, const std::string& format, int threads) {
  std::ifstream f(scenario_path);
  if (!f) {
    std::cerr << "error: cannot open scenario file: " << scenario_path << "\n";
    return 2;
  }
  std::stringstream ss;
  ss << f.rdbuf();
  Scenario sc = parse_scenario(ss.str());
  if (runs_override > 0) sc.runs = runs_override;
  if (seed_set) sc.seed_base = seed_override;

  const auto results = run_experiment(sc, threads);

  if (!out_dir.empty()) {
    fs::create_directories(out_dir);
    for (const auto& r : results) {
      const std::string name =
          "runs_" + r.aggregate.scenario + "_" + r.aggregate.protocol + ".csv";
      std::ofstream rf(fs::path(out_dir) / name);
      rf << runs_to_csv(r.rows);
    }
    std::ofstream af(fs::path(out_dir) / "aggregate.csv");
    af << aggregates_to_csv(results);
    std::ofstream tf(fs::path(out_dir) / "aggregate.txt");
    tf << aggregates_to_table(results);
  }
  if (format == "table") {
    std::cout << aggregates_to_table(results);
  } else {
    std::cout << aggregates_to_csv(results);
  }
  return 0;
}

int cmd_calc(const std::string& preset, const std::string& protocol, int hops) {
  auto timing = timing_preset(preset);
  if (!timing) {
    std::cerr << "error: unknown preset '" << preset << "' (table3|sec423)\n";
    return 2;
  }
  auto p = parse_protocol(protocol);
  if (!p) {
    std::cerr << "error: unknown protocol '" << protocol << "'\n";
    return 2;
  }
  try {
    const SimTime t = min_e2e_latency(*timing, *p, hops);
    std::printf("%.1f ms\n", to_ms(t));
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}

int cmd_validate(const std::string& preset) {
  auto timing = timing_preset(preset);
  if (!timing) {
    std::cerr << "error: unknown preset '" << preset << "' (table3|sec423)\n";
    return 2;
  }
  const auto violations = validate_timing(*timing);
  if (violations.empty()) {
    std::cout << "ok: Ta+Td < Ti < Tc < Tc+2Tr < Ts holds\n";
    return 0;
  }
  for (const auto& v : violations) {
    std::cout << "violated: " << v.name << " (" << v.detail << ")\n";
  }
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Radio-duty-cycle MAC protocol simulator"};
  app.require_subcommand(1);

  std::string scenario_path, out_dir, format = "csv", preset = "table3",
              protocol = "contikimac";
  int runs = 0, hops = 2, threads = 0;
  std::uint64_t seed = 0;

  auto* run = app.add_subcommand("run", "run a scenario campaign");
  run->add_option("--scenario", scenario_path, "scenario file (key = value lines)")->required();
  run->add_option("--runs", runs, "override run count");
  auto* seed_opt = run->add_option("--seed", seed, "override base seed");
  run->add_option("--out", out_dir, "directory for per-run and aggregate CSV files");
  run->add_option("--format", format, "stdout format: csv|table")
      ->check(CLI::IsMember({"csv", "table"}));
  run->add_option("--threads", threads, "worker threads (0 = hardware)");

  auto* calc = app.add_subcommand("calc", "analytic minimum end-to-end latency");
  calc->add_option("--preset", preset, "timing preset (table3|sec423)");
  calc->add_option("--protocol", protocol, "contikimac|xmac-cp");
  calc->add_option("--hops", hops, "hop count");

  auto* validate = app.add_subcommand("validate-timing", "check the timing constraint chain");
  validate->add_option("--preset", preset, "timing preset (table3|sec423)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) {
      return cmd_run(scenario_path, runs, seed, seed_opt->count() > 0, out_dir, format, threads);
    }
    if (calc->parsed()) return cmd_calc(preset, protocol, hops);
    if (validate->parsed()) return cmd_validate(preset);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
