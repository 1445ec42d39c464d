#pragma once

#include <optional>
#include <string>

namespace rdcsim {

enum class Protocol { ContikiMac, XMac, XMacC, XMacP, XMacCp };

/// Mechanism matrix row: base transmission procedure plus the two optional
/// mechanisms. ContikiMAC always carries both.
struct ProtocolConfig {
  enum class Base { XMac, ContikiMac };
  Base base = Base::ContikiMac;
  bool cca_collision_avoidance = true;
  bool phaselock = true;
};

inline ProtocolConfig protocol_config(Protocol p) {
  switch (p) {
    case Protocol::ContikiMac:
      return {ProtocolConfig::Base::ContikiMac, true, true};
    case Protocol::XMac:
      return {ProtocolConfig::Base::XMac, false, false};
    case Protocol::XMacC:
      return {ProtocolConfig::Base::XMac, true, false};
    case Protocol::XMacP:
      return {ProtocolConfig::Base::XMac, false, true};
    case Protocol::XMacCp:
      return {ProtocolConfig::Base::XMac, true, true};
  }
  return {};
}

inline const char* to_string(Protocol p) {
  switch (p) {
    case Protocol::ContikiMac: return "contikimac";
    case Protocol::XMac: return "xmac";
    case Protocol::XMacC: return "xmac-c";
    case Protocol::XMacP: return "xmac-p";
    case Protocol::XMacCp: return "xmac-cp";
  }
  return "?";
}

inline std::optional<Protocol> parse_protocol(const std::string& s) {
  if (s == "contikimac") return Protocol::ContikiMac;
  if (s == "xmac") return Protocol::XMac;
  if (s == "xmac-c") return Protocol::XMacC;
  if (s == "xmac-p") return Protocol::XMacP;
  if (s == "xmac-cp") return Protocol::XMacCp;
  return std::nullopt;
}

constexpr Protocol kAllProtocols[] = {Protocol::ContikiMac, Protocol::XMac, Protocol::XMacC,
                                      Protocol::XMacP, Protocol::XMacCp};

}  // namespace rdcsim
