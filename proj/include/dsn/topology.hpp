#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include <boost/rational.hpp>

#include "dsn/error.hpp"

namespace dsn {

/// Node indices are 1-based everywhere in the public interface.
using NodeId = int;
using NodeSet = std::set<NodeId>;

/// Exact time / latency value.
using Time = boost::rational<std::int64_t>;

struct NodeParams {
  int k = 0;
  int r = 0;
  int delta = 0;

  int n() const noexcept { return k + r; }
  friend bool operator==(const NodeParams&, const NodeParams&) = default;
};

struct Edge {
  NodeId a = 0;
  NodeId b = 0;
  Time t{1};

  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Storage network graph with per-node code parameters and cooperation sets M_i.
class DsnTopology {
 public:
  /// `coop` overrides M_i for the listed nodes; unlisted nodes default to their neighborhood.
  DsnTopology(std::vector<NodeParams> nodes, std::vector<Edge> edges,
              std::map<NodeId, NodeSet> coop = {});

  int size() const noexcept { return static_cast<int>(nodes_.size()); }
  bool contains(NodeId i) const noexcept { return i >= 1 && i <= size(); }

  const NodeParams& node(NodeId i) const;
  const std::vector<NodeParams>& nodes() const noexcept { return nodes_; }
  const std::vector<Edge>& edges() const noexcept { return edges_; }

  const NodeSet& neighborhood(NodeId i) const;
  const NodeSet& coop(NodeId i) const;
  /// Nodes whose M-set was given explicitly rather than defaulted.
  const std::map<NodeId, NodeSet>& explicit_coop() const noexcept { return explicit_coop_; }

  std::optional<Time> latency(NodeId i, NodeId j) const;

  /// Minimum total latency between i and j; throws unreachable when disconnected.
  Time shortest_path_time(NodeId i, NodeId j) const;
  /// All-pairs shortest latencies, indexed [i-1][j-1]; nullopt when disconnected.
  std::vector<std::vector<std::optional<Time>>> all_pairs_times() const;

  friend bool operator==(const DsnTopology& a, const DsnTopology& b);

 private:
  void check_index(NodeId i) const;
  std::vector<std::optional<Time>> dijkstra(NodeId src) const;

  std::vector<NodeParams> nodes_;
  std::vector<Edge> edges_;
  std::map<NodeId, NodeSet> explicit_coop_;
  std::vector<NodeSet> neighbors_;
  std::vector<NodeSet> coop_;
  std::vector<std::map<NodeId, Time>> adj_;
};

}  // namespace dsn
