#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "rdcsim/metrics.hpp"
#include "rdcsim/routing.hpp"
#include "rdcsim/scenario.hpp"
#include "rdcsim/world.hpp"

namespace rdcsim {

/// One row of the per-run CSV.
struct RunRow {
  int run = 0;
  std::uint64_t seed = 0;
  std::string protocol;
  std::string scenario;
  double pdr = 0;
  double etx = 0;
  LatencyStats latency;
  double retx_postponed_pct = 0, retx_collision_pct = 0, retx_noack_pct = 0;
  double listen_pct = 0, tx_pct = 0, rx_pct = 0;
  double csma_dropped_pct = 0;
  int topology_regens = 0;
};

inline const char* run_csv_header() {
  return "run,seed,protocol,scenario,pdr,etx,latency_mean_ms,latency_sd_ms,latency_p10_ms,"
         "latency_p25_ms,latency_p50_ms,latency_p75_ms,latency_p90_ms,latency_max_ms,"
         "retx_postponed_pct,retx_collision_pct,retx_noack_pct,listen_pct,tx_pct,rx_pct,"
         "csma_dropped_pct";
}

inline std::string to_csv(const RunRow& r) {
  char buf[512];
  std::snprintf(buf, sizeof buf,
                "%d,%llu,%s,%s,%.6f,%.6f,%.3f,%.3f,%.3f,%.3f,%.3f,%.3f,%.3f,%.3f,"
                "%.4f,%.4f,%.4f,%.6f,%.6f,%.6f,%.6f",
                r.run, static_cast<unsigned long long>(r.seed), r.protocol.c_str(),
                r.scenario.c_str(), r.pdr, r.etx, r.latency.mean_ms, r.latency.sd_ms,
                r.latency.p10_ms, r.latency.p25_ms, r.latency.median_ms, r.latency.p75_ms,
                r.latency.p90_ms, r.latency.max_ms, r.retx_postponed_pct, r.retx_collision_pct,
                r.retx_noack_pct, r.listen_pct, r.tx_pct, r.rx_pct, r.csma_dropped_pct);
  return buf;
}

struct MetricAggregate {
  double mean = 0, sd = 0;
};

/// Cross-run aggregate: mean and standard deviation over run-level values.
struct AggregateReport {
  std::string protocol;
  std::string scenario;
  int runs = 0;
  MetricAggregate pdr, etx, latency_mean_ms, latency_p90_ms, listen_pct, tx_pct, rx_pct,
      csma_dropped_pct, retx_postponed_pct, retx_collision_pct, retx_noack_pct;
};

namespace detail {

inline MetricAggregate aggregate(const std::vector<double>& v) {
  MetricAggregate a;
  if (v.empty()) return a;
  double sum = 0;
  for (double x : v) sum += x;
  a.mean = sum / static_cast<double>(v.size());
  if (v.size() > 1) {
    double ss = 0;
    for (double x : v) ss += (x - a.mean) * (x - a.mean);
    a.sd = std::sqrt(ss / static_cast<double>(v.size() - 1));
  }
  return a;
}

}  // namespace detail

struct ExperimentResult {
  std::vector<RunRow> rows;
  AggregateReport aggregate;
};

/// Resolves one scenario point (protocol, size, rate) and run index into a
/// fully-specified world.
inline RunSetup make_run_setup(const Scenario& sc, Protocol protocol, int star_n,
                               SimTime interval, int run_index, int* topology_regens) {
  RunSetup rs;
  rs.protocol = protocol;
  rs.timing = sc.timing();
  rs.geometry = RadioGeometry{sc.tx_range, sc.interference_range};
  rs.duration = sc.duration;
  rs.csma.max_retx = sc.effective_max_retx();
  rs.csma.queue_capacity = sc.queue_capacity;
  rs.csma.backoff_jitter = sc.backoff_jitter;
  rs.seed = sc.seed_base + static_cast<std::uint64_t>(run_index);

  if (sc.kind == ScenarioKind::Star) {
    rs.routing = RunSetup::Routing::Star;
    rs.star = StarTopology::build(star_n, rs.geometry);
    rs.nodes = rs.star.nodes;
    rs.traffic_start = 0;
    rs.beacons = false;
    for (const auto& [from, to] : rs.star.pairs) {
      rs.flows.push_back({from, to, interval});
    }
  } else {
    rs.routing = RunSetup::Routing::Collect;
    rs.traffic_start = sc.effective_warmup();
    rs.beacons = sc.beacons;
    rs.beacon_window = sc.effective_warmup() > 0 ? sc.effective_warmup() : seconds(30);

    if (!sc.topology_file.empty()) {
      std::ifstream f(sc.topology_file);
      if (!f) throw std::runtime_error("cannot open topology file: " + sc.topology_file);
      rs.nodes = read_topology(f);
      auto tree = CollectTree::build(rs.nodes, rs.geometry, 1);
      if (!tree) throw std::runtime_error("topology file is disconnected");
      rs.tree = *tree;
    } else {
      // Fresh random deployment per run; disconnected draws are regenerated
      // with the next sub-seed and counted.
      int attempt = 0;
      for (;; ++attempt) {
        if (attempt > 512) throw std::runtime_error("could not draw a connected topology");
        RngStream topo_rng(rs.seed, substream::kTopology + static_cast<std::uint64_t>(attempt));
        rs.nodes = random_deployment(topo_rng, sc.node_count, sc.grid_side);
        auto tree = CollectTree::build(rs.nodes, rs.geometry, 1);
        if (tree) {
          rs.tree = *tree;
          break;
        }
      }
      if (topology_regens) *topology_regens = attempt;
    }
    RngStream control(rs.seed, substream::kTrafficControl);
    auto picks = control.sample_distinct(static_cast<std::uint32_t>(sc.node_count - 1),
                                         static_cast<std::uint32_t>(sc.active_senders));
    for (auto p : picks) {
      rs.flows.push_back({static_cast<NodeId>(p + 2), 1, interval});
    }
  }
  return rs;
}

inline RunRow run_row_from_ledger(const MetricLedger& ledger, int run_index, std::uint64_t seed,
                                  Protocol protocol, const std::string& label) {
  RunRow row;
  row.run = run_index;
  row.seed = seed;
  row.protocol = to_string(protocol);
  row.scenario = label;
  row.pdr = ledger.pdr().value_or(0.0);
  row.etx = ledger.etx().value_or(0.0);
  row.latency = ledger.latency_stats();
  const auto& bd = ledger.retx_breakdown();
  row.retx_postponed_pct = bd.postponed_pct();
  row.retx_collision_pct = bd.collision_pct();
  row.retx_noack_pct = bd.noack_pct();
  const auto duty = ledger.duty_cycle_report();
  row.listen_pct = duty.listen_pct;
  row.tx_pct = duty.tx_pct;
  row.rx_pct = duty.rx_pct;
  row.csma_dropped_pct = ledger.csma_dropped_pct();
  return row;
}

/// Runs one scenario point over its seeds. Runs are independent worlds; they
/// may execute on several threads, rows are assembled in run order.
inline ExperimentResult run_experiment_point(const Scenario& sc, Protocol protocol, int star_n,
                                             SimTime interval, int threads = 0) {
  const int runs = sc.effective_runs();
  const std::string label = scenario_point_label(sc, star_n, interval);
  std::vector<RunRow> rows(runs);

  auto one_run = [&](int i) {
    int regens = 0;
    RunSetup rs = make_run_setup(sc, protocol, star_n, interval, i, &regens);
    World world(std::move(rs));
    MetricLedger& ledger = world.run();
    rows[i] = run_row_from_ledger(ledger, i, sc.seed_base + i, protocol, label);
    rows[i].topology_regens = regens;
  };

  int hw = threads > 0 ? threads : static_cast<int>(std::thread::hardware_concurrency());
  if (hw < 1) hw = 1;
  if (hw == 1 || runs == 1) {
    for (int i = 0; i < runs; ++i) one_run(i);
  } else {
    std::vector<std::thread> pool;
    std::atomic<int> next{0};
    for (int t = 0; t < std::min(hw, runs); ++t) {
      pool.emplace_back([&] {
        for (int i = next.fetch_add(1); i < runs; i = next.fetch_add(1)) one_run(i);
      });
    }
    for (auto& th : pool) th.join();
  }

  ExperimentResult result;
  result.rows = std::move(rows);
  AggregateReport& ag = result.aggregate;
  ag.protocol = to_string(protocol);
  ag.scenario = label;
  ag.runs = runs;
  std::vector<double> v;
  auto collect = [&](auto get) {
    v.clear();
    for (const auto& r : result.rows) v.push_back(get(r));
    return detail::aggregate(v);
  };
  ag.pdr = collect([](const RunRow& r) { return r.pdr; });
  ag.etx = collect([](const RunRow& r) { return r.etx; });
  ag.latency_mean_ms = collect([](const RunRow& r) { return r.latency.mean_ms; });
  ag.latency_p90_ms = collect([](const RunRow& r) { return r.latency.p90_ms; });
  ag.listen_pct = collect([](const RunRow& r) { return r.listen_pct; });
  ag.tx_pct = collect([](const RunRow& r) { return r.tx_pct; });
  ag.rx_pct = collect([](const RunRow& r) { return r.rx_pct; });
  ag.csma_dropped_pct = collect([](const RunRow& r) { return r.csma_dropped_pct; });
  ag.retx_postponed_pct = collect([](const RunRow& r) { return r.retx_postponed_pct; });
  ag.retx_collision_pct = collect([](const RunRow& r) { return r.retx_collision_pct; });
  ag.retx_noack_pct = collect([](const RunRow& r) { return r.retx_noack_pct; });
  return result;
}

/// Full sweep over the scenario's protocol x size x rate lists.
inline std::vector<ExperimentResult> run_experiment(const Scenario& sc, int threads = 0) {
  std::vector<ExperimentResult> out;
  for (Protocol p : sc.protocols) {
    if (sc.kind == ScenarioKind::Star) {
      for (int n : sc.star_sizes) {
        for (SimTime interval : sc.send_intervals) {
          out.push_back(run_experiment_point(sc, p, n, interval, threads));
        }
      }
    } else {
      for (SimTime interval : sc.send_intervals) {
        out.push_back(run_experiment_point(sc, p, 0, interval, threads));
      }
    }
  }
  return out;
}

inline std::string runs_to_csv(const std::vector<RunRow>& rows) {
  std::string out = run_csv_header();
  out.push_back('\n');
  for (const auto& r : rows) {
    out += to_csv(r);
    out.push_back('\n');
  }
  return out;
}

inline const char* aggregate_csv_header() {
  return "protocol,scenario,runs,pdr_mean,pdr_sd,etx_mean,etx_sd,latency_mean_ms,latency_sd_ms,"
         "latency_p90_ms,listen_pct_mean,listen_pct_sd,tx_pct_mean,rx_pct_mean,"
         "csma_dropped_pct_mean,retx_postponed_pct,retx_collision_pct,retx_noack_pct";
}

inline std::string to_csv(const AggregateReport& a) {
  char buf[512];
  std::snprintf(buf, sizeof buf,
                "%s,%s,%d,%.6f,%.6f,%.6f,%.6f,%.3f,%.3f,%.3f,%.6f,%.6f,%.6f,%.6f,%.6f,%.4f,%.4f,"
                "%.4f",
                a.protocol.c_str(), a.scenario.c_str(), a.runs, a.pdr.mean, a.pdr.sd, a.etx.mean,
                a.etx.sd, a.latency_mean_ms.mean, a.latency_mean_ms.sd, a.latency_p90_ms.mean,
                a.listen_pct.mean, a.listen_pct.sd, a.tx_pct.mean, a.rx_pct.mean,
                a.csma_dropped_pct.mean, a.retx_postponed_pct.mean, a.retx_collision_pct.mean,
                a.retx_noack_pct.mean);
  return buf;
}

inline std::string aggregates_to_csv(const std::vector<ExperimentResult>& results) {
  std::string out = aggregate_csv_header();
  out.push_back('\n');
  for (const auto& r : results) {
    out += to_csv(r.aggregate);
    out.push_back('\n');
  }
  return out;
}

/// Plain-text table in the layout of the paper-style summary tables:
/// PDR / ETX / latency with run-level standard deviations, plus duty cycle.
inline std::string aggregates_to_table(const std::vector<ExperimentResult>& results) {
  std::ostringstream os;
  char buf[256];
  std::snprintf(buf, sizeof buf, "%-12s %-18s %14s %16s %20s %10s\n", "Protocol", "Scenario",
                "PDR(%)", "ETX (#)", "Latency (s)", "LISTEN(%)");
  os << buf;
  for (const auto& r : results) {
    const auto& a = r.aggregate;
    std::snprintf(buf, sizeof buf, "%-12s %-18s %6.1f (+-%4.1f) %6.2f (+-%4.2f) %8.2f (+-%5.2f) %10.2f\n",
                  a.protocol.c_str(), a.scenario.c_str(), 100.0 * a.pdr.mean, 100.0 * a.pdr.sd,
                  a.etx.mean, a.etx.sd, a.latency_mean_ms.mean / 1000.0,
                  a.latency_mean_ms.sd / 1000.0, a.listen_pct.mean);
    os << buf;
  }
  return os.str();
}

}  // namespace rdcsim
