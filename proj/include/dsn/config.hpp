#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dsn/coopgraph.hpp"
#include "dsn/topology.hpp"

namespace dsn {

/// A parsed configuration document: topology, optional field choice and cycles.
struct Config {
  std::optional<unsigned> theta;
  std::optional<std::uint32_t> modulus;
  std::shared_ptr<const DsnTopology> topology;
  std::vector<Cycle> cycles;
};

/// Parses and validates a JSON configuration document. Unknown keys are rejected.
Config load_config(const std::string& text);
Config load_config_file(const std::string& path);
DsnTopology load_topology(const std::string& text);

/// Canonical JSON (sorted keys, explicit per-row gamma, latencies as exact strings when not integral).
std::string serialize_config(const Config& cfg);

/// Parses "3", "0.6", "3/5" into an exact rational.
Time parse_time(const std::string& text);
std::string format_time(const Time& t);

}  // namespace dsn
