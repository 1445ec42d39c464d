#pragma once

#include <cstdint>
#include <deque>
#include <stdexcept>
#include <vector>

#include "rdcsim/frame.hpp"
#include "rdcsim/rng.hpp"
#include "rdcsim/time.hpp"

namespace rdcsim {

enum class MacStatus { Ok, Postponed, Collision, NoAck };

struct MacResult {
  MacStatus status = MacStatus::Ok;
  int tx_frames_sent = 0;
  SimTime finished_at = 0;
};

enum class RetxCause { Postponed, Collision, NoAck };

struct CsmaConfig {
  int max_retx = 5;        // no-ACK attempts beyond the first transmission
  int queue_capacity = 8;
  // Optional uniform jitter on no-ACK retry times. Off by default: the
  // deterministic reschedule is what produces the repeated-collision runs
  // the drop statistics depend on.
  bool backoff_jitter = false;
};

struct PendingPacket {
  PacketId packet_id = kNoPacket;
  NodeId dest = kBroadcast;
  SimTime enqueue_time = 0;
  int attempts_noack = 0;
  int attempts_total = 0;
  std::vector<RetxCause> cause_history;
};

struct CsmaAction {
  enum class Kind { RetryAt, Drop, Done } kind = Kind::Done;
  SimTime at = 0;
  RetxCause cause = RetxCause::NoAck;
};

/// Retransmission policy layered above the MAC.
///
/// Postponed and collision outcomes always retry, at the node's next own
/// wake-up, and never count toward the drop limit. Only no-ACK outcomes
/// consume retry budget; their delay grows linearly with the attempt count.
inline CsmaAction csma_decide(PendingPacket& p, const MacResult& result, SimTime now,
                              SimTime next_own_wake, SimTime wake_interval,
                              const CsmaConfig& cfg, RngStream* jitter_rng) {
  switch (result.status) {
    case MacStatus::Ok:
      return {CsmaAction::Kind::Done, now, RetxCause::NoAck};
    case MacStatus::Postponed:
      p.cause_history.push_back(RetxCause::Postponed);
      return {CsmaAction::Kind::RetryAt, next_own_wake, RetxCause::Postponed};
    case MacStatus::Collision:
      p.cause_history.push_back(RetxCause::Collision);
      return {CsmaAction::Kind::RetryAt, next_own_wake, RetxCause::Collision};
    case MacStatus::NoAck: {
      p.attempts_noack += 1;
      if (p.attempts_noack > cfg.max_retx) {
        return {CsmaAction::Kind::Drop, now, RetxCause::NoAck};
      }
      p.cause_history.push_back(RetxCause::NoAck);
      SimTime delay = static_cast<SimTime>(p.attempts_noack) * wake_interval;
      if (cfg.backoff_jitter && jitter_rng != nullptr) {
        delay += jitter_rng->uniform_time(wake_interval / 10);
      }
      return {CsmaAction::Kind::RetryAt, now + delay, RetxCause::NoAck};
    }
  }
  throw std::logic_error("csma: unreachable");
}

/// FIFO transmit queue with bounded capacity.
class CsmaQueue {
 public:
  explicit CsmaQueue(int capacity) : capacity_(capacity) {}

  bool enqueue(PacketId id, NodeId dest, SimTime now) {
    if (static_cast<int>(queue_.size()) >= capacity_) return false;
    PendingPacket p;
    p.packet_id = id;
    p.dest = dest;
    p.enqueue_time = now;
    queue_.push_back(std::move(p));
    return true;
  }

  bool empty() const { return queue_.empty(); }
  std::size_t size() const { return queue_.size(); }
  PendingPacket& head() { return queue_.front(); }
  void pop_head() { queue_.pop_front(); }

 private:
  int capacity_;
  std::deque<PendingPacket> queue_;
};

}  // namespace rdcsim
