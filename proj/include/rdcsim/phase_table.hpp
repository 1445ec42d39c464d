#pragma once

#include <vector>

#include "rdcsim/frame.hpp"
#include "rdcsim/time.hpp"

namespace rdcsim {

/// Per-neighbor estimate of the wake-up phase, learned from ACK reception
/// times. An entry goes invalid after a configurable number of consecutive
/// no-ACK failures so a dead estimate cannot be locked onto forever.
class PhaseTable {
 public:
  PhaseTable(std::size_t node_count, SimTime wake_interval, int invalidate_after = 3)
      : entries_(node_count), wake_interval_(wake_interval), invalidate_after_(invalidate_after) {}

  void update(NodeId neighbor, SimTime ack_rx_time) {
    Entry& e = entries_[neighbor];
    e.phase = ack_rx_time % wake_interval_;
    e.valid = true;
    e.last_update = ack_rx_time;
    e.consecutive_noack = 0;
  }

  void note_noack(NodeId neighbor) {
    Entry& e = entries_[neighbor];
    if (!e.valid) return;
    if (++e.consecutive_noack >= invalidate_after_) e.valid = false;
  }

  bool valid(NodeId neighbor) const { return entries_[neighbor].valid; }
  SimTime phase(NodeId neighbor) const { return entries_[neighbor].phase; }

  /// Smallest non-negative delay from `now` to the next (estimated wake-up
  /// minus guard) instant; -1 when no valid estimate exists.
  SimTime wait_delay(NodeId neighbor, SimTime now, SimTime guard) const {
    const Entry& e = entries_[neighbor];
    if (!e.valid) return -1;
    const SimTime target_phase = mod(e.phase - guard);
    const SimTime now_phase = now % wake_interval_;
    return mod(target_phase - now_phase);
  }

 private:
  struct Entry {
    SimTime phase = 0;
    SimTime last_update = 0;
    int consecutive_noack = 0;
    bool valid = false;
  };

  SimTime mod(SimTime v) const {
    v %= wake_interval_;
    return v < 0 ? v + wake_interval_ : v;
  }

  std::vector<Entry> entries_;
  SimTime wake_interval_;
  int invalidate_after_;
};

}  // namespace rdcsim
