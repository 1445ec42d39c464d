#include <catch2/catch_amalgamated.hpp>

#include "rdcsim/metrics.hpp"

using namespace rdcsim;

TEST_CASE("pdr is delivered over originated") {
  MetricLedger l;
  l.reset(2);
  for (int i = 0; i < 100; ++i) {
    const PacketId id = l.packet_created(1, 2, 0, false);
    if (i < 97) l.packet_delivered(id, 1000);
  }
  l.finalize(10000);
  REQUIRE(l.pdr().has_value());
  REQUIRE(*l.pdr() == Catch::Approx(0.97));
}

TEST_CASE("pdr of an all-delivered run is exactly 1") {
  MetricLedger l;
  l.reset(1);
  const PacketId id = l.packet_created(1, 2, 0, false);
  l.packet_delivered(id, 5);
  l.finalize(10);
  REQUIRE(*l.pdr() == 1.0);
}

TEST_CASE("pdr is absent when nothing was originated") {
  MetricLedger l;
  l.reset(1);
  l.finalize(10);
  REQUIRE_FALSE(l.pdr().has_value());
}

TEST_CASE("etx counts transmitting attempts per successful hop delivery") {
  MetricLedger l;
  l.reset(2);
  SECTION("no retries: exactly one") {
    for (int i = 0; i < 5; ++i) {
      l.note_tx_attempt(false);
      l.note_hop_delivery(false);
    }
    REQUIRE(*l.etx() == 1.0);
  }
  SECTION("one extra attempt per hop: two") {
    for (int i = 0; i < 5; ++i) {
      l.note_tx_attempt(false);
      l.note_tx_attempt(false);
      l.note_hop_delivery(false);
    }
    REQUIRE(*l.etx() == 2.0);
  }
  SECTION("undefined without deliveries") {
    l.note_tx_attempt(false);
    REQUIRE_FALSE(l.etx().has_value());
  }
}

TEST_CASE("retransmission-cause breakdown percentages") {
  MetricLedger l;
  l.reset(1);
  l.note_retry(RetxCause::Postponed, false);
  l.note_retry(RetxCause::Postponed, false);
  l.note_retry(RetxCause::Collision, false);
  l.note_retry(RetxCause::NoAck, false);
  const auto& bd = l.retx_breakdown();
  REQUIRE(bd.total() == 4);
  REQUIRE(bd.postponed + bd.collision + bd.noack == bd.total());  // exact counts
  REQUIRE(bd.postponed_pct() == Catch::Approx(50.0));
  REQUIRE(bd.collision_pct() == Catch::Approx(25.0));
  REQUIRE(bd.noack_pct() == Catch::Approx(25.0));
  REQUIRE(bd.postponed_pct() + bd.collision_pct() + bd.noack_pct() ==
          Catch::Approx(100.0).margin(1e-9));
}

TEST_CASE("empty breakdown when nothing was retransmitted") {
  MetricLedger l;
  l.reset(1);
  REQUIRE(l.retx_breakdown().total() == 0);
  REQUIRE(l.retx_breakdown().postponed_pct() == 0.0);
}

TEST_CASE("latency statistics of a single delivery collapse to that value") {
  MetricLedger l;
  l.reset(2);
  const PacketId id = l.packet_created(1, 2, 0, false);
  l.packet_delivered(id, 140 * kMillisecond);
  l.finalize(kSecond);
  const auto st = l.latency_stats();
  REQUIRE(st.count == 1);
  REQUIRE(st.mean_ms == Catch::Approx(140.0));
  REQUIRE(st.median_ms == Catch::Approx(140.0));
  REQUIRE(st.p10_ms == Catch::Approx(140.0));
  REQUIRE(st.p90_ms == Catch::Approx(140.0));
  REQUIRE(st.max_ms == Catch::Approx(140.0));
  REQUIRE(st.sd_ms == 0.0);
}

TEST_CASE("latency is recorded only for delivered packets and only once") {
  MetricLedger l;
  l.reset(2);
  const PacketId a = l.packet_created(1, 2, 0, false);
  l.packet_created(1, 2, 0, false);  // never delivered
  l.packet_delivered(a, 100);
  l.packet_delivered(a, 900);  // duplicate delivery: first one wins
  l.finalize(1000);
  const auto st = l.latency_stats();
  REQUIRE(st.count == 1);
  REQUIRE(st.max_ms == Catch::Approx(0.1));
}

TEST_CASE("radio-state accounting sums exactly to the run duration") {
  MetricLedger l;
  l.reset(1);
  l.radio_state(0, RadioAcc::Listen, 100);
  l.radio_state(0, RadioAcc::Tx, 250);
  l.radio_state(0, RadioAcc::Rx, 400);
  l.radio_state(0, RadioAcc::Sleep, 1000);
  l.finalize(5000);
  REQUIRE(l.node_state_time(0, RadioAcc::Sleep) == 100 + 4000);
  REQUIRE(l.node_state_time(0, RadioAcc::Listen) == 150);
  REQUIRE(l.node_state_time(0, RadioAcc::Tx) == 150);
  REQUIRE(l.node_state_time(0, RadioAcc::Rx) == 600);
  const SimTime sum = l.node_state_time(0, RadioAcc::Sleep) +
                      l.node_state_time(0, RadioAcc::Listen) +
                      l.node_state_time(0, RadioAcc::Tx) + l.node_state_time(0, RadioAcc::Rx);
  REQUIRE(sum == 5000);
}

TEST_CASE("conservation partitions originated packets") {
  MetricLedger l;
  l.reset(3);
  const PacketId a = l.packet_created(1, 3, 0, false);  // delivered
  l.copy_spawned(a);
  l.packet_delivered(a, 50);
  l.copy_retired(a);
  const PacketId b = l.packet_created(1, 3, 0, false);  // dropped
  l.copy_spawned(b);
  l.copy_retired(b);
  const PacketId c = l.packet_created(1, 3, 0, false);  // still queued
  l.copy_spawned(c);
  l.packet_created(9, 9, 0, true);  // control traffic is excluded
  const auto cons = l.conservation();
  REQUIRE(cons.originated == 3);
  REQUIRE(cons.delivered == 1);
  REQUIRE(cons.dropped == 1);
  REQUIRE(cons.queued == 1);
  REQUIRE(cons.holds());
}

TEST_CASE("csma drop percentage covers limit drops and queue rejections") {
  MetricLedger l;
  l.reset(1);
  for (int i = 0; i < 8; ++i) l.note_enqueue_attempt(true, false);
  l.note_enqueue_attempt(false, false);  // full queue
  l.note_enqueue_attempt(true, false);
  l.note_drop_limit(false);
  REQUIRE(l.csma_dropped_pct() == Catch::Approx(20.0));
}
