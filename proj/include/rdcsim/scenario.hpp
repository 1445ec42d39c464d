#pragma once

#include <cstdint>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "rdcsim/protocol.hpp"
#include "rdcsim/time.hpp"
#include "rdcsim/timing.hpp"

namespace rdcsim {

enum class ScenarioKind { Star, Collect };

/// One experiment description. Star campaigns default to 25 runs of 4
/// simulated minutes with up to 5 retransmissions; collect campaigns to 50
/// runs, 49 nodes, 10 active senders and 4 retransmissions.
struct Scenario {
  ScenarioKind kind = ScenarioKind::Star;
  std::vector<Protocol> protocols{Protocol::ContikiMac};
  std::vector<int> star_sizes{14};          // N, even, in [2, 14]
  std::vector<SimTime> send_intervals{seconds(5)};
  int runs = 0;                              // 0: kind default
  SimTime duration = seconds(240);
  SimTime warmup = seconds(30);              // collect only
  std::uint64_t seed_base = 1;
  int max_retx = -1;                         // -1: kind default
  int node_count = 49;                       // collect
  int active_senders = 10;                   // collect
  bool beacons = true;                       // collect warm-up broadcasts
  // Square side calibrated so connected 49-node deployments average ~6 hops
  // to the corner sink with 50 m radios.
  double grid_side = 240.0;
  double tx_range = 50.0;
  double interference_range = 100.0;
  int queue_capacity = 8;
  bool backoff_jitter = false;
  // Application-timer slop as a fraction of the send interval, uniform per
  // transmission. Strictly periodic senders re-create the same collision
  // pattern every cycle, which no real timer does.
  double jitter = 0.05;
  SimTime send_slop = 500;  // firmware scheduling slop per MAC attempt
  std::string timing_preset = "table3";
  std::string topology_file;                 // optional fixed collect layout

  int effective_runs() const {
    if (runs > 0) return runs;
    return kind == ScenarioKind::Star ? 25 : 50;
  }
  int effective_max_retx() const {
    if (max_retx >= 0) return max_retx;
    return kind == ScenarioKind::Star ? 5 : 4;
  }
  SimTime effective_warmup() const { return kind == ScenarioKind::Collect ? warmup : 0; }
  MacTiming timing() const {
    if (timing_preset.empty()) return table3_timing();
    auto t = ::rdcsim::timing_preset(timing_preset);
    if (!t) throw std::invalid_argument("unknown timing preset: " + timing_preset);
    return *t;
  }
};

namespace detail {

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

inline SimTime parse_interval_s(const std::string& v) {
  const double s = std::stod(v);
  if (s <= 0) throw std::invalid_argument("interval must be positive");
  return static_cast<SimTime>(s * kSecond);
}

inline SimTime rate_to_interval(const std::string& r) {
  if (r == "high") return seconds(5);
  if (r == "moderate") return seconds(10);
  if (r == "low") return seconds(15);
  throw std::invalid_argument("unknown rate: " + r + " (high|moderate|low)");
}

}  // namespace detail

/// Parses `key = value` scenario text (whitespace around '=' optional,
/// several pairs per line allowed, '#' starts a comment). Unknown keys and
/// malformed values are rejected. Comma-separated lists of protocol, N and
/// rate expand to a campaign sweep.
inline Scenario parse_scenario(const std::string& text) {
  // Normalize "key = value" to "key=value" tokens.
  std::string norm;
  norm.reserve(text.size());
  bool comment = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    if (c == '#') comment = true;
    if (c == '\n') comment = false;
    if (comment) continue;
    if (c == '=') {
      while (!norm.empty() && (norm.back() == ' ' || norm.back() == '\t')) norm.pop_back();
      norm.push_back('=');
      std::size_t j = i + 1;
      while (j < text.size() && (text[j] == ' ' || text[j] == '\t')) ++j;
      i = j - 1;
    } else {
      norm.push_back(c);
    }
  }

  Scenario sc;
  bool kind_set = false;
  bool protocol_set = false;
  std::istringstream is(norm);
  std::string tok;
  while (is >> tok) {
    const auto eq = tok.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 > tok.size()) {
      throw std::invalid_argument("scenario: malformed token '" + tok + "'");
    }
    const std::string key = tok.substr(0, eq);
    const std::string val = tok.substr(eq + 1);
    if (val.empty()) throw std::invalid_argument("scenario: empty value for '" + key + "'");

    if (key == "kind") {
      if (val == "star") {
        sc.kind = ScenarioKind::Star;
      } else if (val == "collect") {
        sc.kind = ScenarioKind::Collect;
      } else {
        throw std::invalid_argument("scenario: unknown kind '" + val + "'");
      }
      kind_set = true;
    } else if (key == "protocol") {
      sc.protocols.clear();
      for (const auto& p : detail::split(val, ',')) {
        auto parsed = parse_protocol(p);
        if (!parsed) throw std::invalid_argument("scenario: unknown protocol '" + p + "'");
        sc.protocols.push_back(*parsed);
      }
      protocol_set = true;
    } else if (key == "N") {
      sc.star_sizes.clear();
      for (const auto& n : detail::split(val, ',')) {
        const int v = std::stoi(n);
        if (v < 2 || v > 14 || v % 2 != 0) {
          throw std::invalid_argument("scenario: N must be even in [2,14], got " + n);
        }
        sc.star_sizes.push_back(v);
      }
    } else if (key == "rate") {
      sc.send_intervals.clear();
      for (const auto& r : detail::split(val, ','))
        sc.send_intervals.push_back(detail::rate_to_interval(r));
    } else if (key == "interval") {
      sc.send_intervals = {detail::parse_interval_s(val)};
    } else if (key == "runs") {
      sc.runs = std::stoi(val);
    } else if (key == "duration") {
      sc.duration = detail::parse_interval_s(val);
    } else if (key == "warmup") {
      sc.warmup = static_cast<SimTime>(std::stod(val) * kSecond);
    } else if (key == "seed") {
      sc.seed_base = std::stoull(val);
    } else if (key == "max_retx") {
      sc.max_retx = std::stoi(val);
      if (sc.max_retx < 0) throw std::invalid_argument("scenario: max_retx must be >= 0");
    } else if (key == "node_count") {
      sc.node_count = std::stoi(val);
    } else if (key == "active") {
      sc.active_senders = std::stoi(val);
    } else if (key == "beacons") {
      sc.beacons = val == "on" || val == "true" || val == "1";
    } else if (key == "grid") {
      sc.grid_side = std::stod(val);
    } else if (key == "tx_range") {
      sc.tx_range = std::stod(val);
    } else if (key == "interference_range") {
      sc.interference_range = std::stod(val);
    } else if (key == "queue") {
      sc.queue_capacity = std::stoi(val);
    } else if (key == "backoff_jitter") {
      sc.backoff_jitter = val == "on" || val == "true" || val == "1";
    } else if (key == "jitter") {
      sc.jitter = std::stod(val);
      if (sc.jitter < 0 || sc.jitter >= 1) {
        throw std::invalid_argument("scenario: jitter must be a fraction in [0, 1)");
      }
    } else if (key == "slop") {
      sc.send_slop = static_cast<SimTime>(std::stod(val) * kMillisecond);
    } else if (key == "preset") {
      sc.timing_preset = val;
    } else if (key == "topology") {
      sc.topology_file = val;
    } else {
      throw std::invalid_argument("scenario: unknown key '" + key + "'");
    }
  }
  if (!kind_set) throw std::invalid_argument("scenario: missing 'kind'");
  if (!protocol_set) throw std::invalid_argument("scenario: missing 'protocol'");
  if (sc.kind == ScenarioKind::Collect) {
    if (sc.active_senders > sc.node_count - 1) {
      throw std::invalid_argument("scenario: active senders exceed node count - 1");
    }
  }
  return sc;
}

inline std::string scenario_point_label(const Scenario& sc, int star_n, SimTime interval) {
  std::ostringstream os;
  if (sc.kind == ScenarioKind::Star) {
    os << "star-N" << star_n << "-i" << interval / kSecond << "s";
  } else {
    os << "collect-" << sc.node_count << "n-" << sc.active_senders << "a";
  }
  return os.str();
}

}  // namespace rdcsim
