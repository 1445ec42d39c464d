#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <string>
#include <vector>

#include "rdcsim/csma.hpp"
#include "rdcsim/frame.hpp"
#include "rdcsim/time.hpp"

namespace rdcsim {

/// Radio accounting states. Per node, the four accumulators always sum to
/// the total simulated time, exactly, in integer microseconds.
enum class RadioAcc : std::uint8_t { Sleep = 0, Listen = 1, Tx = 2, Rx = 3 };

struct LatencyStats {
  double mean_ms = 0, sd_ms = 0, p10_ms = 0, p25_ms = 0, median_ms = 0, p75_ms = 0, p90_ms = 0,
         max_ms = 0;
  std::size_t count = 0;
};

struct RetxBreakdown {
  std::uint64_t postponed = 0, collision = 0, noack = 0;
  std::uint64_t total() const { return postponed + collision + noack; }
  double postponed_pct() const { return pct(postponed); }
  double collision_pct() const { return pct(collision); }
  double noack_pct() const { return pct(noack); }

 private:
  double pct(std::uint64_t c) const {
    const auto t = total();
    return t == 0 ? 0.0 : 100.0 * static_cast<double>(c) / static_cast<double>(t);
  }
};

struct DutyCycleReport {
  double listen_pct = 0, tx_pct = 0, rx_pct = 0;
  double total_active_pct() const { return listen_pct + tx_pct + rx_pct; }
};

/// Per-run ledger: packet fates, hop-level attempt counters by cause,
/// per-node radio-state time, and CSMA drop counters.
class MetricLedger {
 public:
  void reset(std::size_t node_count) {
    node_time_.assign(node_count, {});
    node_state_.assign(node_count, RadioAcc::Sleep);
    node_state_since_.assign(node_count, 0);
    packets_.clear();
    attempts_tx_ = hop_deliveries_ = 0;
    retx_ = {};
    drops_limit_ = drops_queue_ = enqueue_attempts_ = 0;
    finalized_at_ = -1;
  }

  // ---- packets -------------------------------------------------------

  PacketId packet_created(NodeId origin, NodeId dest, SimTime at, bool control) {
    packets_.push_back(PacketRecord{origin, dest, at, -1, 0, control});
    return static_cast<PacketId>(packets_.size());  // ids start at 1
  }

  void copy_spawned(PacketId id) { rec(id).live_copies += 1; }
  void copy_retired(PacketId id) { rec(id).live_copies -= 1; }

  void packet_delivered(PacketId id, SimTime at) {
    PacketRecord& r = rec(id);
    if (r.delivered_at < 0) r.delivered_at = at;
  }

  bool already_delivered(PacketId id) const { return packets_[id - 1].delivered_at >= 0; }

  // ---- hop-level counters ---------------------------------------------

  void note_enqueue_attempt(bool accepted, bool control) {
    if (control) return;
    enqueue_attempts_ += 1;
    if (!accepted) drops_queue_ += 1;
  }
  void note_tx_attempt(bool control) {
    if (!control) attempts_tx_ += 1;
  }
  void note_hop_delivery(bool control) {
    if (!control) hop_deliveries_ += 1;
  }
  void note_retry(RetxCause cause, bool control) {
    if (control) return;
    switch (cause) {
      case RetxCause::Postponed: retx_.postponed += 1; break;
      case RetxCause::Collision: retx_.collision += 1; break;
      case RetxCause::NoAck: retx_.noack += 1; break;
    }
  }
  void note_drop_limit(bool control) {
    if (!control) drops_limit_ += 1;
  }

  // ---- radio accounting ------------------------------------------------

  void radio_state(NodeId n, RadioAcc s, SimTime at) {
    if (node_state_[n] == s) return;
    node_time_[n].acc[static_cast<int>(node_state_[n])] += at - node_state_since_[n];
    node_state_[n] = s;
    node_state_since_[n] = at;
  }

  void finalize(SimTime run_end) {
    for (std::size_t n = 0; n < node_time_.size(); ++n) {
      node_time_[n].acc[static_cast<int>(node_state_[n])] += run_end - node_state_since_[n];
      node_state_since_[n] = run_end;
    }
    finalized_at_ = run_end;
  }

  // ---- queries ---------------------------------------------------------

  struct Conservation {
    std::uint64_t originated = 0, delivered = 0, dropped = 0, queued = 0;
    bool holds() const { return originated == delivered + dropped + queued; }
  };

  Conservation conservation() const {
    Conservation c;
    for (const auto& p : packets_) {
      if (p.control) continue;
      c.originated += 1;
      if (p.delivered_at >= 0) {
        c.delivered += 1;
      } else if (p.live_copies > 0) {
        c.queued += 1;
      } else {
        c.dropped += 1;
      }
    }
    return c;
  }

  /// Delivered / originated; absent when nothing was originated.
  std::optional<double> pdr() const {
    const auto c = conservation();
    if (c.originated == 0) return std::nullopt;
    return static_cast<double>(c.delivered) / static_cast<double>(c.originated);
  }

  /// Transmitting MAC attempts per successful hop delivery. Postponed
  /// attempts transmit nothing and are excluded from the numerator.
  std::optional<double> etx() const {
    if (hop_deliveries_ == 0) return std::nullopt;
    return static_cast<double>(attempts_tx_) / static_cast<double>(hop_deliveries_);
  }

  const RetxBreakdown& retx_breakdown() const { return retx_; }

  LatencyStats latency_stats() const {
    std::vector<SimTime> lat;
    for (const auto& p : packets_) {
      if (!p.control && p.delivered_at >= 0) lat.push_back(p.delivered_at - p.created);
    }
    LatencyStats st;
    st.count = lat.size();
    if (lat.empty()) return st;
    std::sort(lat.begin(), lat.end());
    double sum = 0, sum2 = 0;
    for (SimTime v : lat) {
      sum += to_ms(v);
      sum2 += to_ms(v) * to_ms(v);
    }
    const double n = static_cast<double>(lat.size());
    st.mean_ms = sum / n;
    st.sd_ms = lat.size() > 1 ? std::sqrt(std::max(0.0, (sum2 - sum * sum / n) / (n - 1))) : 0.0;
    st.p10_ms = percentile(lat, 0.10);
    st.p25_ms = percentile(lat, 0.25);
    st.median_ms = percentile(lat, 0.50);
    st.p75_ms = percentile(lat, 0.75);
    st.p90_ms = percentile(lat, 0.90);
    st.max_ms = to_ms(lat.back());
    return st;
  }

  DutyCycleReport duty_cycle_report() const {
    DutyCycleReport r;
    if (node_time_.empty() || finalized_at_ <= 0) return r;
    for (const auto& t : node_time_) {
      const double total = static_cast<double>(finalized_at_);
      r.listen_pct += 100.0 * static_cast<double>(t.acc[1]) / total;
      r.tx_pct += 100.0 * static_cast<double>(t.acc[2]) / total;
      r.rx_pct += 100.0 * static_cast<double>(t.acc[3]) / total;
    }
    const double n = static_cast<double>(node_time_.size());
    r.listen_pct /= n;
    r.tx_pct /= n;
    r.rx_pct /= n;
    return r;
  }

  /// Dropped link-layer packets (retry limit + full queues) as a percentage
  /// of enqueued packets.
  double csma_dropped_pct() const {
    if (enqueue_attempts_ == 0) return 0.0;
    return 100.0 * static_cast<double>(drops_limit_ + drops_queue_) /
           static_cast<double>(enqueue_attempts_);
  }

  SimTime node_state_time(NodeId n, RadioAcc s) const {
    return node_time_[n].acc[static_cast<int>(s)];
  }

  std::uint64_t attempts_tx() const { return attempts_tx_; }
  std::uint64_t hop_deliveries() const { return hop_deliveries_; }
  std::uint64_t drops_limit() const { return drops_limit_; }
  std::uint64_t drops_queue() const { return drops_queue_; }

  struct PacketInfo {
    NodeId origin;
    NodeId dest;
    SimTime created;
    SimTime delivered_at;
    bool control;
  };
  PacketInfo packet_info(PacketId id) const {
    const auto& p = packets_[id - 1];
    return {p.origin, p.dest, p.created, p.delivered_at, p.control};
  }
  std::size_t packet_count() const { return packets_.size(); }

 private:
  struct PacketRecord {
    NodeId origin;
    NodeId dest;
    SimTime created;
    SimTime delivered_at;  // -1 while undelivered
    int live_copies;
    bool control;  // warm-up traffic: excluded from traffic metrics
  };

  struct NodeTime {
    SimTime acc[4] = {0, 0, 0, 0};
  };

  PacketRecord& rec(PacketId id) { return packets_[id - 1]; }

  static double percentile(const std::vector<SimTime>& sorted, double q) {
    if (sorted.empty()) return 0.0;
    if (sorted.size() == 1) return to_ms(sorted[0]);
    const double pos = q * static_cast<double>(sorted.size() - 1);
    const auto lo = static_cast<std::size_t>(pos);
    const double frac = pos - static_cast<double>(lo);
    if (lo + 1 >= sorted.size()) return to_ms(sorted.back());
    return to_ms(sorted[lo]) + frac * (to_ms(sorted[lo + 1]) - to_ms(sorted[lo]));
  }

  std::vector<NodeTime> node_time_;
  std::vector<RadioAcc> node_state_;
  std::vector<SimTime> node_state_since_;
  std::vector<PacketRecord> packets_;
  std::uint64_t attempts_tx_ = 0;
  std::uint64_t hop_deliveries_ = 0;
  RetxBreakdown retx_;
  std::uint64_t drops_limit_ = 0;
  std::uint64_t drops_queue_ = 0;
  std::uint64_t enqueue_attempts_ = 0;
  SimTime finalized_at_ = -1;
};

}  // namespace rdcsim
