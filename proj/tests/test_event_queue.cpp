#include <catch2/catch_amalgamated.hpp>

#include <vector>

#include "rdcsim/event_queue.hpp"

using namespace rdcsim;

TEST_CASE("events run in time order") {
  EventQueue eq;
  std::vector<int> order;
  eq.schedule(10, [&] { order.push_back(1); });
  eq.schedule(5, [&] { order.push_back(0); });
  eq.schedule(11, [&] { order.push_back(2); });
  eq.run_until(100);
  REQUIRE(order == std::vector<int>{0, 1, 2});
  REQUIRE(eq.now() == 100);
}

TEST_CASE("equal timestamps execute in insertion order") {
  // Exhaust a few permutations of insertion at the same instant.
  for (int perm = 0; perm < 6; ++perm) {
    EventQueue eq;
    std::vector<int> inserted;
    std::vector<int> fired;
    int vals[3] = {perm % 3, (perm / 2 + 1) % 3, 3 - perm % 3 - (perm / 2 + 1) % 3};
    for (int v : vals) {
      inserted.push_back(v);
      eq.schedule(42, [&fired, v] { fired.push_back(v); });
    }
    eq.run_until(42);
    REQUIRE(fired == inserted);
  }
}

TEST_CASE("event at now precedes event at now+1") {
  EventQueue eq;
  std::vector<int> order;
  eq.schedule(1, [&] { order.push_back(1); });
  eq.schedule(0, [&] { order.push_back(0); });
  eq.run_until(1);
  REQUIRE(order == std::vector<int>{0, 1});
}

TEST_CASE("scheduling in the past is a contract violation") {
  EventQueue eq;
  eq.schedule(5, [] {});
  eq.run_until(10);
  REQUIRE_THROWS_AS(eq.schedule(9, [] {}), std::logic_error);
}

TEST_CASE("cancel semantics") {
  EventQueue eq;
  int fired = 0;
  auto h = eq.schedule(10, [&] { ++fired; });
  SECTION("cancelling a pending event skips it") {
    REQUIRE(eq.cancel(h));
    eq.run_until(20);
    REQUIRE(fired == 0);
  }
  SECTION("cancelling an already-fired event returns false") {
    eq.run_until(20);
    REQUIRE(fired == 1);
    REQUIRE_FALSE(eq.cancel(h));
  }
  SECTION("cancelling twice returns false the second time") {
    REQUIRE(eq.cancel(h));
    REQUIRE_FALSE(eq.cancel(h));
  }
}

TEST_CASE("run_until on an empty queue just advances the clock") {
  EventQueue eq;
  REQUIRE(eq.run_until(240 * kSecond) == 0);
  REQUIRE(eq.now() == 240 * kSecond);
}

TEST_CASE("run_until executes only events at or before t_end") {
  EventQueue eq;
  int fired = 0;
  eq.schedule(1, [&] { ++fired; });
  eq.schedule(2, [&] { ++fired; });
  eq.schedule(3, [&] { ++fired; });
  eq.schedule(4, [&] { ++fired; });
  REQUIRE(eq.run_until(3) == 3);
  REQUIRE(fired == 3);
  REQUIRE(eq.now() == 3);
  REQUIRE(eq.run_until(10) == 1);
}

TEST_CASE("events scheduled while running are honored") {
  EventQueue eq;
  std::vector<int> order;
  eq.schedule(10, [&] {
    order.push_back(0);
    eq.schedule(10, [&] { order.push_back(1); });  // same instant, later insertion
    eq.schedule(12, [&] { order.push_back(2); });
  });
  eq.run_until(20);
  REQUIRE(order == std::vector<int>{0, 1, 2});
}

TEST_CASE("handles are not confused by slot reuse") {
  EventQueue eq;
  int a = 0, b = 0;
  auto h1 = eq.schedule(1, [&] { ++a; });
  eq.run_until(2);
  auto h2 = eq.schedule(3, [&] { ++b; });
  REQUIRE_FALSE(eq.cancel(h1));  // stale handle, slot may be recycled
  REQUIRE(eq.cancel(h2));
  eq.run_until(5);
  REQUIRE(a == 1);
  REQUIRE(b == 0);
}
