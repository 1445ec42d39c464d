#pragma once

#include <cstdint>

namespace rdcsim {

/// Simulation time in integer microseconds since run start.
/// Integer arithmetic keeps repeated 0.4/0.5 ms interval math drift-free.
using SimTime = std::int64_t;

constexpr SimTime kMicrosecond = 1;
constexpr SimTime kMillisecond = 1000;
constexpr SimTime kSecond = 1000000;

constexpr double to_ms(SimTime t) { return static_cast<double>(t) / 1000.0; }
constexpr double to_s(SimTime t) { return static_cast<double>(t) / 1000000.0; }

constexpr SimTime ms(std::int64_t v) { return v * kMillisecond; }
constexpr SimTime seconds(std::int64_t v) { return v * kSecond; }

}  // namespace rdcsim
