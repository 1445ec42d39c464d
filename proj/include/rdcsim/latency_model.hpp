#pragma once

#include <stdexcept>

#include "rdcsim/protocol.hpp"
#include "rdcsim/time.hpp"
#include "rdcsim/timing.hpp"

namespace rdcsim {

/// Ideal single-hop transmission time with an accurate phase estimate and no
/// retransmission: two data frames for ContikiMAC, two strobes plus the data
/// frame for X-MAC-CP.
inline SimTime min_hop_tx_time(const MacTiming& t, Protocol p) {
  switch (p) {
    case Protocol::ContikiMac:
      return t.data_duration + t.inter_frame + t.data_duration;
    case Protocol::XMacCp:
      return t.strobe_duration + t.strobe_interval + t.strobe_duration + t.strobe_to_data +
             t.data_duration;
    default:
      throw std::invalid_argument("min_hop_tx_time: model defined for contikimac and xmac-cp");
  }
}

/// Theoretical minimum average end-to-end latency over `hops` links, assuming
/// uniformly distributed wake-up schedules: hops x (wake_interval/2 + T_tx).
inline SimTime min_e2e_latency(const MacTiming& t, Protocol p, int hops) {
  if (hops < 0) throw std::invalid_argument("min_e2e_latency: negative hop count");
  if (hops == 0) return 0;
  const SimTime avg_wait = t.wake_interval / 2;
  return static_cast<SimTime>(hops) * (avg_wait + min_hop_tx_time(t, p));
}

}  // namespace rdcsim
