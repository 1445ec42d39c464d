#pragma once

#include <cstdint>

#include "rdcsim/time.hpp"

namespace rdcsim {

using NodeId = std::int32_t;
using PacketId = std::uint64_t;

/// Link-layer broadcast address. Broadcast strobes carry no unicast
/// destination; every nearby receiver is concerned.
constexpr NodeId kBroadcast = -1;
constexpr PacketId kNoPacket = 0;

enum class FrameKind : std::uint8_t { Strobe, StrobeAck, Data, DataAck };

struct Frame {
  FrameKind kind = FrameKind::Data;
  NodeId source = 0;
  NodeId destination = kBroadcast;
  SimTime duration = 0;
  PacketId packet_id = kNoPacket;
  bool wants_data_ack = false;

  bool broadcast() const { return destination == kBroadcast; }
};

inline const char* to_string(FrameKind k) {
  switch (k) {
    case FrameKind::Strobe: return "strobe";
    case FrameKind::StrobeAck: return "strobe-ack";
    case FrameKind::Data: return "data";
    case FrameKind::DataAck: return "data-ack";
  }
  return "?";
}

}  // namespace rdcsim
