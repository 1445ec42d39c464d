#pragma once

#include <cstdint>
#include <functional>
#include <queue>
#include <stdexcept>
#include <utility>
#include <vector>

#include "rdcsim/time.hpp"

namespace rdcsim {

/// Handle to a scheduled event; permits cancellation. Default-constructed
/// handles are inert.
struct EventHandle {
  std::uint32_t slot = 0;
  std::uint32_t generation = 0;
  bool valid() const { return generation != 0; }
};

/// Deterministic discrete-event queue: virtual clock plus ordered callbacks.
/// Events with equal fire time run in insertion order (FIFO tie-break), which
/// pins a total order the protocol timings never have to rely on by accident.
class EventQueue {
 public:
  EventQueue() = default;
  EventQueue(const EventQueue&) = delete;
  EventQueue& operator=(const EventQueue&) = delete;

  SimTime now() const { return now_; }

  EventHandle schedule(SimTime fire_at, std::function<void()> action) {
    if (fire_at < now_) throw std::logic_error("EventQueue: scheduling in the past");
    std::uint32_t slot;
    if (!free_.empty()) {
      slot = free_.back();
      free_.pop_back();
    } else {
      slot = static_cast<std::uint32_t>(slots_.size());
      slots_.push_back({});
    }
    Slot& s = slots_[slot];
    s.action = std::move(action);
    s.armed = true;
    queue_.push(Entry{fire_at, next_seq_++, slot, s.generation});
    return EventHandle{slot, s.generation};
  }

  EventHandle schedule_in(SimTime delay, std::function<void()> action) {
    return schedule(now_ + delay, std::move(action));
  }

  /// True iff the event had not yet fired (and was not already cancelled).
  bool cancel(EventHandle h) {
    if (!h.valid() || h.slot >= slots_.size()) return false;
    Slot& s = slots_[h.slot];
    if (!s.armed || s.generation != h.generation) return false;
    s.armed = false;
    return true;
  }

  bool pending(EventHandle h) const {
    return h.valid() && h.slot < slots_.size() && slots_[h.slot].armed &&
           slots_[h.slot].generation == h.generation;
  }

  /// Executes every event with fire_at <= t_end in order; clock ends at t_end.
  std::uint64_t run_until(SimTime t_end) {
    if (t_end < now_) throw std::logic_error("EventQueue: run_until into the past");
    std::uint64_t executed = 0;
    while (!queue_.empty()) {
      const Entry top = queue_.top();
      if (top.fire_at > t_end) break;
      queue_.pop();
      Slot& s = slots_[top.slot];
      if (s.generation != top.generation) continue;  // slot already recycled
      if (!s.armed) {
        release(top.slot);
        continue;
      }
      now_ = top.fire_at;
      s.armed = false;
      auto action = std::move(s.action);
      release(top.slot);
      action();
      ++executed;
    }
    now_ = t_end;
    return executed;
  }

  bool empty() const { return queue_.empty(); }

 private:
  struct Slot {
    std::function<void()> action;
    std::uint32_t generation = 1;
    bool armed = false;
  };

  struct Entry {
    SimTime fire_at;
    std::uint64_t seq;
    std::uint32_t slot;
    std::uint32_t generation;
    bool operator>(const Entry& o) const {
      if (fire_at != o.fire_at) return fire_at > o.fire_at;
      return seq > o.seq;
    }
  };

  void release(std::uint32_t slot) {
    Slot& s = slots_[slot];
    s.action = nullptr;
    ++s.generation;
    free_.push_back(slot);
  }

  std::vector<Slot> slots_;
  std::vector<std::uint32_t> free_;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<Entry>> queue_;
  SimTime now_ = 0;
  std::uint64_t next_seq_ = 0;
};

}  // namespace rdcsim
