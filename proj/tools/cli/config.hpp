#pragma once

#include "diqsdc/protocol.hpp"

#include <json.hpp>

namespace diqsdc::cli {

/// Strict parse of a run configuration: unknown keys anywhere in the
/// document are ConfigError (typos must not silently fall back to defaults).
ProtocolConfig parse_protocol_config(const nlohmann::json& j);
ProtocolConfig load_protocol_config(const std::string& path);

nlohmann::json emit_protocol_config(const ProtocolConfig& cfg);

bool config_equal(const ProtocolConfig& a, const ProtocolConfig& b);

nlohmann::json report_stats(const TranscriptStats& stats);

}  // namespace diqsdc::cli
