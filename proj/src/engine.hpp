#pragma once

// Shared machinery for the round-based decoder and the event-driven simulation.

#include <functional>
#include <optional>
#include <vector>

#include "dsn/codec.hpp"

namespace dsn::detail {

struct Facts {
  explicit Facts(int p) : m(p), m_time(p), s(p), s_time(p) {}

  std::vector<std::optional<Message>> m;
  std::vector<Time> m_time;
  std::vector<std::map<int, std::vector<Symbol>>> s;
  std::vector<std::map<int, Time>> s_time;

  bool knows_m(NodeId i) const { return m[i - 1].has_value(); }
  bool knows_s(NodeId i, int l) const { return s[i - 1].count(l) > 0; }
};

/// Latency between two nodes; an empty function means zero.
using DistFn = std::function<Time(NodeId, NodeId)>;

struct Item {
  HelperLink link;
  int tag = 0;                     // smallest cooperation level at which the item may be used
  Time available{0};               // arrival time at the node
  int sum_level = 0;               // > 0: value is s_{i;sum_level}
  std::vector<Symbol> value;
  const Matrix* factor = nullptr;  // otherwise: m_i * factor = value
};

std::vector<Item> gather_items(const CodeInstance& code, NodeId i, const Facts& facts, const DistFn& dist);

SideInfo side_info(const std::vector<const Item*>& items);

/// Fills status, level, helpers and message per node from the final facts.
void finalize(const CodeInstance& code, const CodewordSet& received, const ErasurePattern& pattern,
              const Facts& facts, RecoveryReport& report);

}  // namespace dsn::detail
