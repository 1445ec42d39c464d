#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rdcsim/time.hpp"

namespace rdcsim {

/// Radio-duty-cycle timing parameters. All durations in integer microseconds.
///
/// The constraint chain  Ta + Td < Ti < Tc < Tc + 2*Tr < Ts  is validated by
/// validate_timing(), never assumed. Note that ack_detect (Td) and
/// data_duration are distinct quantities and must not be conflated.
struct MacTiming {
  SimTime wake_interval = 125 * kMillisecond;
  SimTime inter_frame = 400;        // Ti: gap between repeated frames
  SimTime cca_duration = 100;       // Tr: one clear-channel assessment
  SimTime inter_cca = 500;          // Tc: gap between two successive CCAs
  SimTime ack_duration = 100;       // Ta: time to send an ACK
  SimTime ack_detect = 100;         // Td: time to detect an ACK
  SimTime shortest_packet = 3500;   // Ts: shortest legal packet duration
  SimTime data_duration = 3500;
  SimTime strobe_duration = 700;
  SimTime strobe_interval = 3900;   // gap between strobe end and next start
  SimTime strobe_to_data = 900;     // gap between acknowledged strobe and data
  double xmac_active_ratio = 0.05;  // fraction of wake_interval spent listening
  int cca_count = 2;
  SimTime max_mac_wait = 125 * kMillisecond;

  SimTime xmac_active_period() const {
    return static_cast<SimTime>(static_cast<double>(wake_interval) * xmac_active_ratio);
  }

  /// Span of one CCA probe sequence (cca_count windows, inter_cca gaps).
  SimTime cca_probe_span() const {
    return cca_count * cca_duration + (cca_count - 1) * inter_cca;
  }
};

struct TimingViolation {
  std::string name;
  std::string detail;
};

/// Checks the four inequalities of the chain independently; an empty result
/// means the configuration is legal.
inline std::vector<TimingViolation> validate_timing(const MacTiming& t) {
  std::vector<TimingViolation> out;
  if (!(t.ack_duration + t.ack_detect < t.inter_frame)) {
    out.push_back({"Space for ACKs",
                   "Ta + Td must be smaller than the inter-frame interval Ti"});
  }
  if (!(t.inter_frame < t.inter_cca)) {
    out.push_back({"Detect frame with only 2 CCAs",
                   "the inter-CCA interval Tc must be longer than Ti"});
  }
  if (!(t.inter_cca < t.inter_cca + 2 * t.cca_duration)) {
    out.push_back({"Positive CCA duration", "Tr must be positive"});
  }
  if (!(t.inter_cca + 2 * t.cca_duration < t.shortest_packet)) {
    out.push_back({"Minimum frame duration",
                   "the shortest packet must not fit between two CCAs (Ts > Tc + 2*Tr)"});
  }
  return out;
}

/// Simulation defaults: Ti = 0.4 ms, Tc = 0.5 ms.
inline MacTiming table3_timing() { return MacTiming{}; }

/// Latency-arithmetic preset: Ti = 0.9 ms. Tc is raised to 1.0 ms so the
/// constraint chain still holds (Ti < Tc); everything else matches table3.
inline MacTiming sec423_timing() {
  MacTiming t;
  t.inter_frame = 900;
  t.inter_cca = 1000;
  return t;
}

inline std::optional<MacTiming> timing_preset(const std::string& name) {
  if (name == "table3" || name == "config-table3") return table3_timing();
  if (name == "sec423" || name == "config-sec423") return sec423_timing();
  return std::nullopt;
}

}  // namespace rdcsim
