#pragma once

#include <functional>
#include <stdexcept>
#include <utility>

#include "rdcsim/csma.hpp"
#include "rdcsim/event_queue.hpp"
#include "rdcsim/frame.hpp"
#include "rdcsim/medium.hpp"
#include "rdcsim/metrics.hpp"
#include "rdcsim/phase_table.hpp"
#include "rdcsim/protocol.hpp"
#include "rdcsim/rng.hpp"
#include "rdcsim/timing.hpp"

namespace rdcsim {

/// Worst-case lag of the phase anchor (ACK reception time) behind the true
/// wake-up instant, plus the pre-stream procedure (collision-avoidance CCAs
/// and the radio turnaround). Starting transmissions this far before the
/// estimate guarantees the first frames are already on the air when the
/// receiver probes; a smaller guard makes phase-locked streams start after
/// the receiver's probe and miss a whole cycle.
inline SimTime default_phase_guard(const MacTiming& t, const ProtocolConfig& p,
                                   SimTime turnaround) {
  const SimTime anchor_lag = p.base == ProtocolConfig::Base::ContikiMac
                                 ? 2 * t.data_duration + t.inter_frame + t.ack_duration
                                 : 2 * t.strobe_duration + t.strobe_interval + t.ack_duration;
  const SimTime pre_stream =
      turnaround + (p.cca_collision_avoidance ? t.cca_probe_span() : 0);
  return anchor_lag + pre_stream;
}

struct MacConfig {
  MacTiming timing;
  ProtocolConfig protocol;
  SimTime phase_guard = 0;    // 0: derive from default_phase_guard()
  SimTime turnaround = 200;   // radio switch between a clear CCA and TX start
  // Scheduling slop of the firmware: every transmission attempt starts up to
  // this much later than commanded. Phase-locked rivals therefore drift in
  // and out of each other's blind window instead of staying frozen, and a
  // slightly late phase-locked stream occasionally misses the wake-up probe
  // outright (the inaccuracy cost reported for phase estimation).
  SimTime send_slop = 500;
  int phase_invalidate_after = 3;
  bool unicast_wants_data_ack = true;

  SimTime guard() const {
    return phase_guard > 0 ? phase_guard : default_phase_guard(timing, protocol, turnaround);
  }
};

/// Per-node radio-duty-cycle MAC: periodic wake-ups (X-MAC active window or
/// ContikiMAC dual-CCA probe with fast-sleep), the unicast/broadcast
/// transmission procedures, CCA collision avoidance and phase-lock.
///
/// The node state machine is event-driven and single-threaded; cross-node
/// interaction happens only through the medium.
class NodeMac final : public MediumListener {
 public:
  using CompletionFn = std::function<void(const MacResult&)>;
  using AppRxFn = std::function<void(const Frame&, NodeId from)>;

  NodeMac(NodeId id, EventQueue& eq, Medium& medium, MetricLedger& ledger, MacConfig cfg,
          std::size_t node_count, RngStream rng = RngStream())
      : id_(id),
        eq_(eq),
        medium_(medium),
        ledger_(ledger),
        cfg_(std::move(cfg)),
        rng_(rng),
        phase_table_(node_count, cfg_.timing.wake_interval, cfg_.phase_invalidate_after) {}

  NodeMac(const NodeMac&) = delete;
  NodeMac& operator=(const NodeMac&) = delete;

  void set_app_receive(AppRxFn fn) { app_rx_ = std::move(fn); }

  /// Begin duty cycling with the first wake-up at `wake_phase`.
  void start(SimTime wake_phase) {
    wake_phase_ = wake_phase;
    eq_.schedule(wake_phase, [this] { on_wake(); });
  }

  NodeId id() const { return id_; }
  const MacConfig& config() const { return cfg_; }
  PhaseTable& phase_table() { return phase_table_; }

  /// First duty-cycle wake-up instant strictly after t.
  SimTime next_wake_after(SimTime t) const {
    const SimTime w = cfg_.timing.wake_interval;
    if (t < wake_phase_) return wake_phase_;
    const SimTime k = (t - wake_phase_) / w + 1;
    return wake_phase_ + k * w;
  }

  bool send_idle() const { return !send_.active; }

  // Wake-probe statistics (also used by tests).
  std::uint64_t probe_count() const { return probes_; }
  std::uint64_t probe_commit_count() const { return commits_; }

  /// Asynchronous transmission procedure; exactly one in flight per node.
  /// Completion fires from the event loop with the MacResult.
  void rdc_send(PacketId pkt, NodeId dest, bool control, CompletionFn done) {
    if (send_.active) throw std::logic_error("mac: rdc_send while a send is in progress");
    send_ = SendOp{};
    send_.active = true;
    send_.pkt = pkt;
    send_.dest = dest;
    send_.broadcast = dest == kBroadcast;
    send_.control = control;
    send_.wants_data_ack = !send_.broadcast && cfg_.unicast_wants_data_ack;
    send_.done = std::move(done);
    send_.started = now();

    // Postpone immediately when a reception is already claiming the radio.
    if (medium_.locked(id_)) {
      complete(MacStatus::Postponed);
      return;
    }
    // Contiki X-MAC without CCA: hold off when a strobe was heard recently.
    if (is_xmac() && !cfg_.protocol.cca_collision_avoidance && last_foreign_strobe_ >= 0 &&
        now() - last_foreign_strobe_ <= cfg_.timing.xmac_active_period()) {
      complete(MacStatus::Postponed);
      return;
    }
    SimTime delay = 0;
    if (!send_.broadcast && cfg_.protocol.phaselock && phase_table_.valid(dest)) {
      delay = phase_table_.wait_delay(dest, now(), cfg_.guard());
      if (delay < 0) delay = 0;
    }
    if (cfg_.send_slop > 0) delay += rng_.uniform_time(cfg_.send_slop);
    if (delay > 0) {
      send_.step = eq_.schedule_in(delay, [this] { begin_channel_check(); });
      return;
    }
    begin_channel_check();
  }

  // ---- MediumListener -------------------------------------------------

  void on_lock_start(const Frame&, NodeId) override {
    account(RadioAcc::Rx);
    if (session_ == Session::Monitor) {
      monitor_.got_lock = true;
      cancel(monitor_.noise_check);
      cancel(monitor_.silence_check);
    }
  }

  void on_frame_received(const Frame& f, NodeId from) override {
    account(RadioAcc::Listen);
    dispatch_frame(f, from);
    maybe_sleep_idle();
  }

  void on_lock_corrupted(const Frame&, NodeId) override {
    account(RadioAcc::Listen);
    if (session_ == Session::Monitor) {
      if (monitor_.expired) {
        end_session_sleep();
        return;
      }
      rearm_monitor_checks();
    }
    maybe_sleep_idle();
  }

  void on_activity_start() override {
    if (session_ == Session::Monitor) {
      cancel(monitor_.silence_check);
      if (!medium_.locked(id_)) {
        schedule_noise_check(now());
      }
    }
  }

  void on_activity_end() override {
    if (session_ == Session::Monitor) {
      cancel(monitor_.noise_check);
      if (!medium_.locked(id_)) {
        monitor_.silence_check =
            eq_.schedule_in(cfg_.timing.inter_frame + 1, [this] { silence_check(); });
      }
    }
  }

 private:
  enum class Session { None, Probe, Monitor, XWindow };

  struct SendOp {
    bool active = false;
    bool radio_active = false;
    PacketId pkt = kNoPacket;
    NodeId dest = kBroadcast;
    bool broadcast = false;
    bool control = false;
    bool wants_data_ack = false;
    CompletionFn done;
    SimTime started = 0;
    SimTime stream_start = -1;
    int frames_sent = 0;
    bool foreign_decoded = false;
    bool awaiting_data_ack = false;
    bool strobe_phase = false;  // X-MAC: still strobing (strobe-ACK not yet seen)
    int cca_index = 0;
    EventHandle step;
  };

  struct MonitorState {
    SimTime commit_time = 0;
    bool got_lock = false;
    bool expired = false;
    EventHandle noise_check;
    EventHandle silence_check;
    EventHandle cap_check;
  };

  struct XWindowState {
    SimTime window_start = 0;
    EventHandle end_check;
  };

  SimTime now() const { return eq_.now(); }
  bool is_xmac() const { return cfg_.protocol.base == ProtocolConfig::Base::XMac; }

  void account(RadioAcc s) { ledger_.radio_state(id_, s, now()); }

  void cancel(EventHandle& h) {
    eq_.cancel(h);
    h = EventHandle{};
  }

  // ---- duty-cycle wake-ups ---------------------------------------------

  void on_wake() {
    eq_.schedule_in(cfg_.timing.wake_interval, [this] { on_wake(); });
    if (send_.radio_active || session_ != Session::None || medium_.locked(id_) ||
        medium_.transmitting(id_)) {
      return;  // radio already engaged this cycle
    }
    if (is_xmac()) {
      begin_xwindow();
    } else {
      begin_probe();
    }
  }

  void begin_xwindow() {
    session_ = Session::XWindow;
    xwindow_ = XWindowState{};
    xwindow_.window_start = now();
    medium_.set_listening(id_, true);
    account(RadioAcc::Listen);
    xwindow_.end_check =
        eq_.schedule_in(cfg_.timing.xmac_active_period(), [this] { xwindow_end_check(); });
  }

  void xwindow_end_check() {
    if (session_ != Session::XWindow) return;
    const bool involved = medium_.locked(id_) || awaiting_data_until_ > now() ||
                          awaiting_bcast_until_ > now();
    const SimTime cap = xwindow_.window_start + 2 * cfg_.timing.wake_interval;
    if (involved && now() < cap) {
      xwindow_.end_check =
          eq_.schedule_in(cfg_.timing.xmac_active_period(), [this] { xwindow_end_check(); });
      return;
    }
    end_session_sleep();
  }

  void begin_probe() {
    session_ = Session::Probe;
    probes_ += 1;
    probe_index_ = 0;
    medium_.set_listening(id_, true);
    account(RadioAcc::Listen);
    medium_.begin_cca(id_);
    probe_eval_ = eq_.schedule_in(cfg_.timing.cca_duration, [this] { probe_eval(); });
  }

  void probe_eval() {
    if (session_ != Session::Probe) return;
    const bool busy = medium_.end_cca(id_);
    if (busy || medium_.locked(id_)) {
      commit_monitor();
      return;
    }
    probe_index_ += 1;
    if (probe_index_ >= cfg_.timing.cca_count) {
      end_session_sleep();
      return;
    }
    probe_eval_ = eq_.schedule_in(cfg_.timing.inter_cca, [this] { probe_begin_next(); });
  }

  void probe_begin_next() {
    if (session_ != Session::Probe) return;
    if (medium_.locked(id_)) {  // a frame arrived during the inter-CCA gap
      commit_monitor();
      return;
    }
    medium_.begin_cca(id_);
    probe_eval_ = eq_.schedule_in(cfg_.timing.cca_duration, [this] { probe_eval(); });
  }

  /// Channel activity seen at wake-up: stay awake and let the fast-sleep
  /// rules decide whether this is a decodable stream or noise.
  void commit_monitor() {
    session_ = Session::Monitor;
    commits_ += 1;
    monitor_ = MonitorState{};
    monitor_.commit_time = now();
    monitor_.got_lock = medium_.locked(id_);
    monitor_.cap_check =
        eq_.schedule_in(cfg_.timing.wake_interval, [this] { monitor_cap_check(); });
    if (!monitor_.got_lock) rearm_monitor_checks();
  }

  void rearm_monitor_checks() {
    cancel(monitor_.noise_check);
    cancel(monitor_.silence_check);
    if (medium_.channel_busy(id_)) {
      schedule_noise_check(now());
    } else {
      monitor_.silence_check =
          eq_.schedule_in(cfg_.timing.inter_frame + 1, [this] { silence_check(); });
    }
  }

  void schedule_noise_check(SimTime episode_start) {
    cancel(monitor_.noise_check);
    const SimTime horizon = cfg_.timing.data_duration + cfg_.timing.inter_frame;
    monitor_.noise_check = eq_.schedule(episode_start + horizon, [this] { noise_check(); });
  }

  void noise_check() {
    if (session_ != Session::Monitor || medium_.transmitting(id_) || medium_.locked(id_)) return;
    if (medium_.channel_busy(id_)) end_session_sleep();  // busy too long, no frame: noise
  }

  void silence_check() {
    if (session_ != Session::Monitor || medium_.transmitting(id_) || medium_.locked(id_)) return;
    if (!medium_.channel_busy(id_)) end_session_sleep();  // gap longer than any legal stream's
  }

  void monitor_cap_check() {
    if (session_ != Session::Monitor || medium_.transmitting(id_)) return;
    if (!monitor_.got_lock) {
      // Nothing decodable within a whole wake interval (e.g. a stream heard
      // only through the interference ring).
      if (!medium_.locked(id_)) {
        end_session_sleep();
        return;
      }
    }
    monitor_.expired = true;
    monitor_.cap_check =
        eq_.schedule_in(cfg_.timing.wake_interval, [this] { monitor_hard_stop(); });
  }

  void monitor_hard_stop() {
    if (session_ != Session::Monitor || medium_.transmitting(id_)) return;
    if (!medium_.locked(id_)) end_session_sleep();
    // else: the pending lock's end handler sees `expired` and sleeps.
  }

  /// Radio left on with nothing owning it: back to sleep.
  void maybe_sleep_idle() {
    if (send_.active || session_ != Session::None) return;
    if (medium_.transmitting(id_) || medium_.locked(id_) || !medium_.radio_on(id_)) return;
    medium_.set_listening(id_, false);
    account(RadioAcc::Sleep);
  }

  void settle_listen_account() {
    if (!medium_.transmitting(id_) && !medium_.locked(id_) && medium_.radio_on(id_)) {
      account(RadioAcc::Listen);
    }
  }

  void end_session_sleep() {
    cancel_session_events();
    session_ = Session::None;
    if (!send_.radio_active && !medium_.transmitting(id_)) {
      medium_.set_listening(id_, false);
      account(RadioAcc::Sleep);
    }
  }

  void cancel_session_events() {
    cancel(probe_eval_);
    cancel(monitor_.noise_check);
    cancel(monitor_.silence_check);
    cancel(monitor_.cap_check);
    cancel(xwindow_.end_check);
  }

  // ---- transmission procedure -------------------------------------------

  void begin_channel_check() {
    send_.step = EventHandle{};
    if (medium_.locked(id_)) {
      complete(MacStatus::Postponed);
      return;
    }
    if (session_ != Session::None) {
      cancel_session_events();
      session_ = Session::None;
    }
    send_.radio_active = true;
    if (!medium_.radio_on(id_)) {
      medium_.set_listening(id_, true);
    }
    account(RadioAcc::Listen);
    if (cfg_.protocol.cca_collision_avoidance) {
      send_.cca_index = 0;
      medium_.begin_cca(id_);
      send_.step = eq_.schedule_in(cfg_.timing.cca_duration, [this] { send_cca_eval(); });
    } else {
      send_.step = eq_.schedule_in(cfg_.turnaround, [this] { stream_begin(); });
    }
  }

  void send_cca_eval() {
    if (medium_.end_cca(id_) || medium_.locked(id_)) {
      complete(MacStatus::Postponed);
      return;
    }
    send_.cca_index += 1;
    if (send_.cca_index >= cfg_.timing.cca_count) {
      send_.step = eq_.schedule_in(cfg_.turnaround, [this] { stream_begin(); });
      return;
    }
    send_.step = eq_.schedule_in(cfg_.timing.inter_cca, [this] { send_cca_begin(); });
  }

  void send_cca_begin() {
    if (medium_.locked(id_)) {
      complete(MacStatus::Postponed);
      return;
    }
    medium_.begin_cca(id_);
    send_.step = eq_.schedule_in(cfg_.timing.cca_duration, [this] { send_cca_eval(); });
  }

  void stream_begin() {
    send_.stream_start = now();
    if (is_xmac()) {
      send_.strobe_phase = true;
      tx_strobe();
    } else {
      tx_data_repetition();
    }
  }

  void tx_frame(const Frame& f) {
    if (send_.frames_sent == 0) ledger_.note_tx_attempt(send_.control);
    send_.frames_sent += 1;
    medium_.begin_transmission(id_, f);
    account(RadioAcc::Tx);
    // The sender listens between repetitions; book the switch at frame end.
    eq_.schedule_in(f.duration, [this] { settle_listen_account(); });
  }

  // ContikiMAC: repeated full data frames with Ti gaps; the data-ACK arrives
  // inside a gap and stops the loop.
  void tx_data_repetition() {
    Frame f;
    f.kind = FrameKind::Data;
    f.source = id_;
    f.destination = send_.dest;
    f.duration = cfg_.timing.data_duration;
    f.packet_id = send_.pkt;
    f.wants_data_ack = send_.wants_data_ack;
    tx_frame(f);
    send_.awaiting_data_ack = !send_.broadcast;
    const SimTime frame_end = now() + cfg_.timing.data_duration;
    const SimTime next_start = frame_end + cfg_.timing.inter_frame;
    send_.step = eq_.schedule(next_start, [this] { data_repetition_step(); });
  }

  void data_repetition_step() {
    if (now() - send_.stream_start < cfg_.timing.max_mac_wait) {
      tx_data_repetition();
      return;
    }
    if (send_.broadcast) {
      complete(MacStatus::Ok);
      return;
    }
    fail_after_wait();
  }

  // X-MAC: strobe / gap loop until a strobe-ACK (unicast) or for slightly
  // longer than a wake interval (broadcast), then the data frame.
  void tx_strobe() {
    Frame f;
    f.kind = FrameKind::Strobe;
    f.source = id_;
    f.destination = send_.dest;  // broadcast strobes carry no unicast address
    f.duration = cfg_.timing.strobe_duration;
    f.packet_id = send_.pkt;
    tx_frame(f);
    const SimTime next_start = now() + cfg_.timing.strobe_duration + cfg_.timing.strobe_interval;
    send_.step = eq_.schedule(next_start, [this] { strobe_step(); });
  }

  void strobe_step() {
    const SimTime bound = send_.broadcast
                              ? cfg_.timing.max_mac_wait + 2 * cfg_.timing.strobe_interval
                              : cfg_.timing.max_mac_wait;
    if (now() - send_.stream_start < bound) {
      tx_strobe();
      return;
    }
    if (send_.broadcast) {
      tx_send_data();
      return;
    }
    fail_after_wait();
  }

  void on_strobe_ack(SimTime ack_rx) {
    cancel(send_.step);
    send_.strobe_phase = false;
    if (cfg_.protocol.phaselock) phase_table_.update(send_.dest, ack_rx);
    if (cfg_.protocol.cca_collision_avoidance) {
      // One more CCA between the strobe-ACK and the data frame.
      medium_.begin_cca(id_);
      send_.step = eq_.schedule_in(cfg_.timing.cca_duration, [this] { pre_data_cca_eval(); });
      return;
    }
    send_.step = eq_.schedule_in(cfg_.timing.strobe_to_data, [this] { tx_send_data(); });
  }

  void pre_data_cca_eval() {
    if (medium_.end_cca(id_) || medium_.locked(id_)) {
      complete(MacStatus::Postponed);
      return;
    }
    const SimTime ack_rx = now() - cfg_.timing.cca_duration;
    send_.step = eq_.schedule(ack_rx + cfg_.timing.strobe_to_data, [this] { tx_send_data(); });
  }

  void tx_send_data() {
    Frame f;
    f.kind = FrameKind::Data;
    f.source = id_;
    f.destination = send_.dest;
    f.duration = cfg_.timing.data_duration;
    f.packet_id = send_.pkt;
    f.wants_data_ack = send_.wants_data_ack;
    tx_frame(f);
    const SimTime frame_end = now() + cfg_.timing.data_duration;
    if (send_.wants_data_ack) {
      send_.awaiting_data_ack = true;
      send_.step = eq_.schedule(frame_end + cfg_.timing.inter_frame, [this] { fail_after_wait(); });
    } else {
      send_.step = eq_.schedule(frame_end, [this] { complete(MacStatus::Ok); });
    }
  }

  /// No acknowledgement inside the wait budget: channel activity decoded
  /// where the ACK was expected means a collision, pure silence means the
  /// receiver never heard us.
  void fail_after_wait() {
    const MacStatus st = send_.foreign_decoded ? MacStatus::Collision : MacStatus::NoAck;
    if (st == MacStatus::NoAck && cfg_.protocol.phaselock && !send_.broadcast) {
      phase_table_.note_noack(send_.dest);
    }
    complete(st);
  }

  void complete(MacStatus status) {
    MacResult r;
    r.status = status;
    r.tx_frames_sent = send_.frames_sent;
    r.finished_at = now();
    cancel(send_.step);
    const bool had_radio = send_.radio_active;
    CompletionFn done = std::move(send_.done);
    send_ = SendOp{};
    if (had_radio && session_ == Session::None && !medium_.transmitting(id_) &&
        !medium_.locked(id_)) {
      medium_.set_listening(id_, false);
      account(RadioAcc::Sleep);
    }
    if (done) done(r);
  }

  // ---- reception --------------------------------------------------------

  void dispatch_frame(const Frame& f, NodeId from) {
    switch (f.kind) {
      case FrameKind::Data: handle_data(f, from); break;
      case FrameKind::Strobe: handle_strobe(f, from); break;
      case FrameKind::StrobeAck: handle_strobe_ack(f, from); break;
      case FrameKind::DataAck: handle_data_ack(f, from); break;
    }
  }

  void handle_data(const Frame& f, NodeId from) {
    const bool for_me = f.destination == id_ || f.broadcast();
    if (send_.active && send_.radio_active) {
      if (!for_me) {
        send_.foreign_decoded = true;
      }
      if (for_me && app_rx_) app_rx_(f, from);  // no ACK while transmitting
      return;
    }
    if (!for_me) {
      // Overheard unicast: nothing here for us.
      if (!is_xmac() && session_ == Session::Monitor) end_session_sleep();
      return;
    }
    if (app_rx_) app_rx_(f, from);
    if (!f.broadcast() && f.wants_data_ack) {
      tx_ack(FrameKind::DataAck, from, f.packet_id);
      return;  // disposition after the ACK finishes
    }
    if (f.broadcast()) awaiting_bcast_until_ = 0;
    after_service_disposition();
  }

  void handle_strobe(const Frame& f, NodeId from) {
    if (f.destination == id_) {
      if (send_.active && send_.radio_active) {
        send_.foreign_decoded = true;  // cannot service a wake-up while sending
        return;
      }
      tx_ack(FrameKind::StrobeAck, from, f.packet_id);
      awaiting_data_until_ =
          now() + cfg_.timing.ack_duration + cfg_.timing.strobe_to_data +
          cfg_.timing.strobe_interval + cfg_.timing.data_duration + cfg_.timing.inter_frame;
      return;
    }
    if (f.broadcast()) {
      awaiting_bcast_until_ = now() + cfg_.timing.max_mac_wait +
                              2 * cfg_.timing.strobe_interval + cfg_.timing.data_duration;
      if (send_.active && send_.radio_active) send_.foreign_decoded = true;
      return;
    }
    // Strobe for someone else.
    last_foreign_strobe_ = now();
    if (send_.active && send_.radio_active) {
      send_.foreign_decoded = true;
      return;
    }
    if (is_xmac()) {
      if (session_ == Session::XWindow && awaiting_data_until_ <= now() &&
          awaiting_bcast_until_ <= now()) {
        end_session_sleep();  // overhearing reduction: back to sleep at once
      }
    } else if (session_ == Session::Monitor) {
      end_session_sleep();
    }
  }

  void handle_strobe_ack(const Frame& f, NodeId from) {
    if (send_.active && send_.radio_active) {
      if (f.destination == id_ && from == send_.dest && send_.strobe_phase) {
        on_strobe_ack(now());
      } else {
        send_.foreign_decoded = true;
      }
    }
  }

  void handle_data_ack(const Frame& f, NodeId from) {
    if (send_.active && send_.radio_active) {
      if (f.destination == id_ && from == send_.dest && send_.awaiting_data_ack &&
          f.packet_id == send_.pkt) {
        cancel(send_.step);
        if (cfg_.protocol.phaselock && !is_xmac()) phase_table_.update(send_.dest, now());
        complete(MacStatus::Ok);
      } else {
        send_.foreign_decoded = true;
      }
    }
  }

  void tx_ack(FrameKind kind, NodeId to, PacketId pkt) {
    Frame ack;
    ack.kind = kind;
    ack.source = id_;
    ack.destination = to;
    ack.duration = cfg_.timing.ack_duration;
    ack.packet_id = pkt;
    medium_.begin_transmission(id_, ack);
    account(RadioAcc::Tx);
    eq_.schedule_in(cfg_.timing.ack_duration, [this, kind] {
      settle_listen_account();
      if (kind == FrameKind::DataAck) after_service_disposition();
    });
  }

  /// After fully servicing a reception: ContikiMAC nodes go straight back to
  /// sleep, X-MAC nodes sit out the rest of their active window.
  void after_service_disposition() {
    awaiting_data_until_ = 0;
    if (send_.active && send_.radio_active) return;
    if (!is_xmac()) {
      if (session_ == Session::Monitor || session_ == Session::Probe) {
        end_session_sleep();
      } else if (session_ == Session::None && !medium_.transmitting(id_)) {
        medium_.set_listening(id_, false);
        account(RadioAcc::Sleep);
      }
    }
  }

  NodeId id_;
  EventQueue& eq_;
  Medium& medium_;
  MetricLedger& ledger_;
  MacConfig cfg_;
  RngStream rng_;
  PhaseTable phase_table_;
  AppRxFn app_rx_;

  SimTime wake_phase_ = 0;
  Session session_ = Session::None;
  int probe_index_ = 0;
  EventHandle probe_eval_;
  MonitorState monitor_;
  XWindowState xwindow_;
  SendOp send_;
  SimTime awaiting_data_until_ = 0;
  SimTime awaiting_bcast_until_ = 0;
  SimTime last_foreign_strobe_ = -1;
  std::uint64_t probes_ = 0;
  std::uint64_t commits_ = 0;
};

}  // namespace rdcsim
