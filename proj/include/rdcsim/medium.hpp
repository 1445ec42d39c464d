#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "rdcsim/event_queue.hpp"
#include "rdcsim/frame.hpp"
#include "rdcsim/geometry.hpp"

namespace rdcsim {

enum class DeliveryStatus { Received, Corrupted, NotListening, OutOfRange };

/// Callbacks a node registers with the medium. All fire from within the
/// event-driven run, at integer-microsecond instants.
class MediumListener {
 public:
  virtual ~MediumListener() = default;
  /// A decodable frame started while this node was listening; the radio is
  /// committed to it until it ends or the lock breaks.
  virtual void on_lock_start(const Frame& frame, NodeId transmitter) = 0;
  /// Full clean reception of the locked frame.
  virtual void on_frame_received(const Frame& frame, NodeId transmitter) = 0;
  /// The locked frame was destroyed by an overlapping transmission.
  virtual void on_lock_corrupted(const Frame& frame, NodeId transmitter) = 0;
  /// Channel energy appeared / disappeared at this node's position while its
  /// radio was on. Not emitted for state present when the radio turned on.
  virtual void on_activity_start() = 0;
  virtual void on_activity_end() = 0;
};

/// Unit Disk Graph Medium with constant loss.
///
/// A frame reaches every radio-on node inside the transmitter's interference
/// disk; only nodes inside the transmission disk can decode it. A receiver
/// decodes a frame iff it was listening at the frame's start instant and no
/// overlapping transmission from any interfering node touched the frame (no
/// capture). A node that starts listening mid-frame never receives that
/// frame. Half-duplex: a transmitting node neither senses nor receives.
class Medium {
 public:
  Medium(EventQueue& eq, RadioGeometry geometry) : eq_(eq), geometry_(geometry) {}

  NodeId add_node(const Position& pos, MediumListener* listener) {
    const NodeId id = static_cast<NodeId>(nodes_.size());
    nodes_.push_back(NodeState{});
    nodes_.back().pos = pos;
    nodes_.back().listener = listener;
    return id;
  }

  /// Call once all nodes are added; precomputes reachability.
  void finalize() {
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
      auto& ni = nodes_[i];
      ni.coverage.clear();
      for (std::size_t j = 0; j < nodes_.size(); ++j) {
        if (i == j) continue;
        const double d = distance(ni.pos, nodes_[j].pos);
        if (d <= geometry_.interference_range) {
          ni.coverage.push_back(Covered{static_cast<NodeId>(j), d <= geometry_.tx_range});
        }
      }
    }
  }

  const RadioGeometry& geometry() const { return geometry_; }
  const Position& position(NodeId n) const { return nodes_[n].pos; }
  std::size_t node_count() const { return nodes_.size(); }

  bool radio_on(NodeId n) const { return nodes_[n].on; }
  bool transmitting(NodeId n) const { return nodes_[n].tx_frame >= 0; }
  bool locked(NodeId n) const { return nodes_[n].lock_frame >= 0; }

  void set_listening(NodeId n, bool on) {
    NodeState& s = nodes_[n];
    if (s.tx_frame >= 0) throw std::logic_error("medium: radio busy transmitting");
    if (s.on == on) return;
    s.on = on;
    if (on) {
      s.busy_count = count_covering(n);
    } else {
      s.lock_frame = -1;
      s.lock_corrupted = false;
      s.busy_count = 0;
      s.cca_active = false;
    }
  }

  /// True iff some in-flight frame from an interfering transmitter covers
  /// this node right now. The radio must be on.
  bool channel_busy(NodeId n) const {
    if (!nodes_[n].on) throw std::logic_error("medium: channel_busy with radio off");
    return nodes_[n].busy_count > 0;
  }

  // A CCA window is BUSY iff the channel is busy at any instant within
  // [begin, end): begin_cca samples the current state, frame starts during
  // the window are latched as they happen.
  void begin_cca(NodeId n) {
    NodeState& s = nodes_[n];
    if (!s.on) throw std::logic_error("medium: CCA with radio off");
    s.cca_active = true;
    s.cca_busy = s.busy_count > 0;
  }

  bool end_cca(NodeId n) {
    NodeState& s = nodes_[n];
    s.cca_active = false;
    return s.cca_busy;
  }

  /// Puts a frame on the air for its full duration. End-of-frame bookkeeping
  /// (transmitter back to listen, then deliveries) runs before events the
  /// caller schedules at the end instant afterwards.
  void begin_transmission(NodeId tx, const Frame& frame) {
    NodeState& s = nodes_[tx];
    if (s.tx_frame >= 0) throw std::logic_error("medium: concurrent transmit by one node");
    if (frame.duration <= 0) throw std::logic_error("medium: frame duration must be positive");

    const std::int32_t af_id = alloc_airframe(frame, tx);
    s.lock_frame = -1;
    s.lock_corrupted = false;
    s.tx_frame = af_id;
    s.on = false;
    s.busy_count = 0;
    s.cca_active = false;

    for (const Covered& c : nodes_[tx].coverage) {
      NodeState& r = nodes_[c.node];
      if (r.tx_frame >= 0) continue;  // transmitting: deaf
      if (!r.on) continue;
      if (r.lock_frame >= 0) {
        // Overlap destroys whatever that receiver was decoding.
        r.lock_corrupted = true;
      } else if (c.decodable) {
        r.lock_frame = af_id;
        r.lock_corrupted = false;
        r.listener->on_lock_start(frame, tx);
      }
      if (++r.busy_count == 1) r.listener->on_activity_start();
      if (r.cca_active) r.cca_busy = true;
    }

    eq_.schedule(eq_.now() + frame.duration, [this, af_id] { end_transmission(af_id); });
  }

  /// Test hook: per-receiver outcome of every completed frame.
  using DeliveryProbe = std::function<void(NodeId receiver, DeliveryStatus, const Frame&)>;
  void set_delivery_probe(DeliveryProbe probe) { probe_ = std::move(probe); }

 private:
  struct Covered {
    NodeId node;
    bool decodable;
  };

  struct NodeState {
    Position pos;
    MediumListener* listener = nullptr;
    std::vector<Covered> coverage;
    bool on = false;
    int busy_count = 0;
    bool cca_active = false;
    bool cca_busy = false;
    std::int32_t tx_frame = -1;
    std::int32_t lock_frame = -1;
    bool lock_corrupted = false;
  };

  struct AirFrame {
    Frame frame;
    NodeId transmitter = 0;
    bool live = false;
  };

  std::int32_t alloc_airframe(const Frame& f, NodeId tx) {
    std::int32_t id;
    if (!free_airframes_.empty()) {
      id = free_airframes_.back();
      free_airframes_.pop_back();
    } else {
      id = static_cast<std::int32_t>(airframes_.size());
      airframes_.push_back({});
    }
    airframes_[id] = AirFrame{f, tx, true};
    return id;
  }

  void end_transmission(std::int32_t af_id) {
    const AirFrame af = airframes_[af_id];
    NodeState& s = nodes_[af.transmitter];
    s.tx_frame = -1;
    s.on = true;  // fall back to listening; the sender's MAC decides what next
    s.busy_count = count_covering(af.transmitter);

    struct Delivery {
      NodeId node;
      bool clean;
    };
    std::vector<Delivery> deliveries;
    for (const Covered& c : s.coverage) {
      NodeState& r = nodes_[c.node];
      const bool had_lock = r.lock_frame == af_id;
      if (had_lock) {
        deliveries.push_back({c.node, !r.lock_corrupted});
        r.lock_frame = -1;
        r.lock_corrupted = false;
      }
      if (r.on && r.busy_count > 0 && --r.busy_count == 0) r.listener->on_activity_end();
      if (probe_ && !had_lock && r.tx_frame < 0) {
        probe_(c.node, c.decodable ? DeliveryStatus::NotListening : DeliveryStatus::OutOfRange,
               af.frame);
      }
    }
    airframes_[af_id].live = false;
    free_airframes_.push_back(af_id);
    // Callbacks last: they may start new transmissions (ACKs) re-entrantly.
    for (const Delivery& d : deliveries) {
      if (probe_) {
        probe_(d.node, d.clean ? DeliveryStatus::Received : DeliveryStatus::Corrupted, af.frame);
      }
      if (d.clean) {
        nodes_[d.node].listener->on_frame_received(af.frame, af.transmitter);
      } else {
        nodes_[d.node].listener->on_lock_corrupted(af.frame, af.transmitter);
      }
    }
  }

  int count_covering(NodeId n) const {
    int count = 0;
    for (const Covered& c : nodes_[n].coverage) {
      if (nodes_[c.node].tx_frame >= 0) ++count;
    }
    return count;
  }

  EventQueue& eq_;
  RadioGeometry geometry_;
  std::vector<NodeState> nodes_;
  std::vector<AirFrame> airframes_;
  std::vector<std::int32_t> free_airframes_;
  DeliveryProbe probe_;
};

}  // namespace rdcsim
