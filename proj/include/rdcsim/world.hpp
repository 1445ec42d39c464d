#pragma once

#include <memory>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "rdcsim/csma.hpp"
#include "rdcsim/event_queue.hpp"
#include "rdcsim/mac.hpp"
#include "rdcsim/medium.hpp"
#include "rdcsim/metrics.hpp"
#include "rdcsim/routing.hpp"
#include "rdcsim/rng.hpp"

namespace rdcsim {

/// Everything one run needs, resolved. Node ids must be dense 1..n.
struct RunSetup {
  Protocol protocol = Protocol::ContikiMac;
  MacTiming timing;
  RadioGeometry geometry;
  std::vector<TopologyNode> nodes;

  enum class Routing { Star, Collect } routing = Routing::Star;
  StarTopology star;
  CollectTree tree;

  struct Flow {
    NodeId origin;
    NodeId dest;
    SimTime interval;
  };
  std::vector<Flow> flows;
  double send_jitter = 0.0;  // fraction of the interval, uniform, per send

  SimTime traffic_start = 0;
  SimTime duration = seconds(240);
  bool beacons = false;
  SimTime beacon_window = seconds(30);

  CsmaConfig csma;
  SimTime phase_guard = 0;   // 0: protocol-derived default
  SimTime turnaround = 200;
  SimTime send_slop = 500;
  std::uint64_t seed = 1;
  std::vector<NodeId> dead_nodes;
};

/// One simulation run: a single-threaded world of duty-cycled nodes wired to
/// one medium, a CSMA queue per node, static routes and periodic traffic.
class World {
 public:
  explicit World(RunSetup setup) : setup_(std::move(setup)) { build(); }

  World(const World&) = delete;
  World& operator=(const World&) = delete;

  /// Runs to completion and returns the finalized ledger.
  MetricLedger& run() {
    run_until(setup_.duration);
    ledger_.finalize(setup_.duration);
    return ledger_;
  }

  void run_until(SimTime t) { eq_.run_until(t); }

  EventQueue& event_queue() { return eq_; }
  Medium& medium() { return *medium_; }
  MetricLedger& ledger() { return ledger_; }
  NodeMac& mac(NodeId ext_id) { return *stations_[index_of(ext_id)]->mac; }
  const RunSetup& setup() const { return setup_; }

  /// Creates an application packet at `origin` bound for `dest` right now;
  /// used by tests and by the scheduled traffic events.
  PacketId inject_packet(NodeId origin, NodeId dest, bool control = false) {
    const PacketId pkt = ledger_.packet_created(origin, dest, eq_.now(), control);
    if (origin == dest && !control) {
      ledger_.packet_delivered(pkt, eq_.now());
      return pkt;
    }
    const NodeId hop = control ? kBroadcast : route_next_hop(origin, dest);
    enqueue(origin, pkt, hop, control);
    return pkt;
  }

 private:
  struct Station {
    std::unique_ptr<NodeMac> mac;
    std::unique_ptr<CsmaQueue> queue;
    SimTime head_ready_at = 0;
    bool head_control = false;
    std::unordered_set<PacketId> seen;
    bool dead = false;
  };

  std::size_t index_of(NodeId ext_id) const {
    auto it = ext_to_idx_.find(ext_id);
    if (it == ext_to_idx_.end()) throw std::logic_error("world: unknown node id");
    return it->second;
  }

  void build() {
    medium_ = std::make_unique<Medium>(eq_, setup_.geometry);
    ledger_.reset(setup_.nodes.size());

    MacConfig mac_cfg;
    mac_cfg.timing = setup_.timing;
    mac_cfg.protocol = protocol_config(setup_.protocol);
    mac_cfg.phase_guard = setup_.phase_guard;
    mac_cfg.turnaround = setup_.turnaround;
    mac_cfg.send_slop = setup_.send_slop;

    std::unordered_set<NodeId> dead(setup_.dead_nodes.begin(), setup_.dead_nodes.end());

    stations_.reserve(setup_.nodes.size());
    for (std::size_t i = 0; i < setup_.nodes.size(); ++i) {
      const auto& tn = setup_.nodes[i];
      ext_to_idx_[tn.id] = i;
      idx_to_ext_.push_back(tn.id);
      auto st = std::make_unique<Station>();
      st->queue = std::make_unique<CsmaQueue>(setup_.csma.queue_capacity);
      st->dead = dead.count(tn.id) > 0;
      stations_.push_back(std::move(st));
    }
    for (std::size_t i = 0; i < setup_.nodes.size(); ++i) {
      auto st = stations_[i].get();
      st->mac = std::make_unique<NodeMac>(
          static_cast<NodeId>(i), eq_, *medium_, ledger_, mac_cfg, setup_.nodes.size(),
          RngStream(setup_.seed, substream::kMacBase + i));
      const NodeId internal = medium_->add_node(setup_.nodes[i].pos, st->mac.get());
      if (internal != static_cast<NodeId>(i)) throw std::logic_error("world: id mismatch");
      st->mac->set_app_receive(
          [this, i](const Frame& f, NodeId from) { on_app_receive(i, f, from); });
    }
    medium_->finalize();

    // Fixed per-node draw order keeps runs reproducible: wake phase first,
    // beacon slot second, then traffic times.
    jitter_rng_ = RngStream(setup_.seed, substream::kTrafficControl);
    for (std::size_t i = 0; i < stations_.size(); ++i) {
      RngStream rng(setup_.seed, substream::kNodeBase + i);
      const SimTime phase = rng.uniform_time(setup_.timing.wake_interval);
      if (!stations_[i]->dead) stations_[i]->mac->start(phase);

      if (setup_.beacons && !stations_[i]->dead) {
        const SimTime at = rng.uniform_time(setup_.beacon_window);
        const NodeId ext = idx_to_ext_[i];
        eq_.schedule(at, [this, ext] { inject_packet(ext, kBroadcast, true); });
      }
      for (const auto& flow : setup_.flows) {
        if (flow.origin != idx_to_ext_[i] || stations_[i]->dead) continue;
        const SimTime phase0 = rng.uniform_time(flow.interval);
        for (SimTime t = setup_.traffic_start + phase0; t < setup_.duration; t += flow.interval) {
          SimTime at = t;
          if (setup_.send_jitter > 0) {
            at += rng.uniform_time(
                static_cast<SimTime>(setup_.send_jitter * static_cast<double>(flow.interval)));
          }
          if (at >= setup_.duration) continue;
          const NodeId origin = flow.origin, dest = flow.dest;
          eq_.schedule(at, [this, origin, dest] { inject_packet(origin, dest); });
        }
      }
    }
  }

  NodeId route_next_hop(NodeId node, NodeId dest) const {
    if (setup_.routing == RunSetup::Routing::Star) return setup_.star.next_hop(node, dest);
    return setup_.tree.next_hop(node);
  }

  void enqueue(NodeId ext_node, PacketId pkt, NodeId hop_dest, bool control) {
    Station& st = *stations_[index_of(ext_node)];
    if (st.dead) return;
    const bool ok = st.queue->enqueue(pkt, hop_dest, eq_.now());
    ledger_.note_enqueue_attempt(ok, control);
    if (ok) {
      ledger_.copy_spawned(pkt);
      if (st.queue->size() == 1) {
        st.head_ready_at = eq_.now();
        st.head_control = control;
      }
      kick(ext_node);
    }
  }

  void kick(NodeId ext_node) {
    const std::size_t i = index_of(ext_node);
    Station& st = *stations_[i];
    if (st.queue->empty() || !st.mac->send_idle()) return;
    const SimTime now = eq_.now();
    if (now < st.head_ready_at) {
      eq_.schedule(st.head_ready_at, [this, ext_node] { kick(ext_node); });
      return;
    }
    PendingPacket& head = st.queue->head();
    head.attempts_total += 1;
    const bool control = st.head_control;
    st.mac->rdc_send(head.packet_id, head.dest == kBroadcast ? kBroadcast : internal_id(head.dest),
                     control, [this, ext_node](const MacResult& r) { on_mac_result(ext_node, r); });
  }

  NodeId internal_id(NodeId ext) const { return static_cast<NodeId>(index_of(ext)); }

  void on_mac_result(NodeId ext_node, const MacResult& result) {
    const std::size_t i = index_of(ext_node);
    Station& st = *stations_[i];
    PendingPacket& head = st.queue->head();
    const bool control = st.head_control;
    const SimTime next_wake = st.mac->next_wake_after(eq_.now());
    CsmaAction act = csma_decide(head, result, eq_.now(), next_wake,
                                 setup_.timing.wake_interval, setup_.csma,
                                 setup_.csma.backoff_jitter ? &jitter_rng_ : nullptr);
    switch (act.kind) {
      case CsmaAction::Kind::Done:
        ledger_.copy_retired(head.packet_id);
        pop_head(st);
        break;
      case CsmaAction::Kind::Drop:
        ledger_.note_drop_limit(control);
        ledger_.copy_retired(head.packet_id);
        pop_head(st);
        break;
      case CsmaAction::Kind::RetryAt:
        ledger_.note_retry(act.cause, control);
        st.head_ready_at = act.at;
        break;
    }
    kick(ext_node);
  }

  void pop_head(Station& st) {
    st.queue->pop_head();
    st.head_ready_at = eq_.now();
    if (!st.queue->empty()) {
      const PacketId pkt = st.queue->head().packet_id;
      st.head_control = ledger_.packet_info(pkt).control;
    }
  }

  void on_app_receive(std::size_t idx, const Frame& f, NodeId /*from*/) {
    if (f.packet_id == kNoPacket) return;
    Station& st = *stations_[idx];
    const NodeId ext = idx_to_ext_[idx];
    const auto info = ledger_.packet_info(f.packet_id);
    if (info.control) return;  // warm-up beacons stop at one hop
    if (st.seen.count(f.packet_id)) return;
    st.seen.insert(f.packet_id);
    ledger_.note_hop_delivery(info.control);
    if (ext == info.dest) {
      ledger_.packet_delivered(f.packet_id, eq_.now());
      return;
    }
    const NodeId hop = route_next_hop(ext, info.dest);
    enqueue(ext, f.packet_id, hop, false);
  }

  RunSetup setup_;
  EventQueue eq_;
  std::unique_ptr<Medium> medium_;
  MetricLedger ledger_;
  std::vector<std::unique_ptr<Station>> stations_;
  std::unordered_map<NodeId, std::size_t> ext_to_idx_;
  std::vector<NodeId> idx_to_ext_;
  RngStream jitter_rng_;
};

}  // namespace rdcsim
