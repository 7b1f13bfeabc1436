#pragma once

#include <array>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "dsn/topology.hpp"

namespace dsn {

/// One cooperation cycle: rows X (nodes whose messages are spread), columns Y (nodes storing them).
struct Cycle {
  int id = 0;                                   // 1-based position in the config
  NodeSet X;
  NodeSet Y;
  std::map<NodeId, std::array<NodeId, 2>> row_cols;  // Y_{t;i}, ascending
  std::map<NodeId, std::array<NodeId, 2>> col_rows;  // X_{t;j}, ascending
  int level = 2;
  std::map<NodeId, int> gamma;                  // gamma_{i;t} for i in X

  friend bool operator==(const Cycle&, const Cycle&) = default;
};

/// Builds a cycle from its row -> columns pairs; validates shape and derives col_rows.
Cycle make_cycle(int id, const NodeSet& X, const NodeSet& Y,
                 const std::map<NodeId, std::array<NodeId, 2>>& row_cols, int level,
                 const std::map<NodeId, int>& gamma);

struct Violation {
  int condition = 0;   // 1 or 2
  NodeId node = 0;
  int level = 0;
  std::string detail;
};

struct CompatibilityReport {
  std::vector<Violation> violations;          // verdict-relevant
  std::vector<Violation> literal;  // both conditions read verbatim, informational only
  bool compatible() const noexcept { return violations.empty(); }
};

class CooperationGraph {
 public:
  CooperationGraph(std::shared_ptr<const DsnTopology> topology, std::vector<Cycle> cycles);

  const DsnTopology& topology() const noexcept { return *topology_; }
  std::shared_ptr<const DsnTopology> topology_ptr() const noexcept { return topology_; }
  const std::vector<Cycle>& cycles() const noexcept { return cycles_; }
  const Cycle& cycle(std::size_t idx) const { return cycles_.at(idx); }

  int size() const noexcept { return topology_->size(); }
  int depth(NodeId i) const;     // L_i
  int max_depth() const noexcept;

  /// I_i^l; empty beyond L_i.
  const NodeSet& helpers(NodeId i, int l) const;
  /// A_i^l = union of I_i^{l'} for l' <= l.
  NodeSet cumulative(NodeId i, int l) const;
  /// B_i^l over helpers j in I_i^l.
  NodeSet booster(NodeId i, int l) const;
  /// B_i^l over column partners: t in T_{i;l}, j in Y_{t;i}.
  NodeSet booster_partners(NodeId i, int l) const;

  /// Cycle indices (0-based) with i as column / row at level l.
  const std::vector<std::size_t>& R(NodeId i, int l) const;
  const std::vector<std::size_t>& T(NodeId i, int l) const;
  NodeSet V(NodeId i, int l) const;
  int eta(NodeId i, int l) const;

  /// Columns connected to i through level-l cycle column sets (includes i when R_{i;l} is non-empty).
  NodeSet column_component(NodeId i, int l) const;

  /// Level of the cycle position (row i, column j), or 0.
  int cycle_level(NodeId i, NodeId j) const;

 private:
  struct PerNode {
    int depth = 1;
    std::vector<NodeSet> I;                         // [level], index 0 unused
    std::vector<std::vector<std::size_t>> R, T;     // [level]
    std::vector<int> eta;                           // [level]
  };
  const PerNode& per(NodeId i) const;

  std::shared_ptr<const DsnTopology> topology_;
  std::vector<Cycle> cycles_;
  std::vector<PerNode> per_;
  int max_depth_ = 1;
  std::map<std::pair<NodeId, NodeId>, std::size_t> vertex_;  // (row, col) -> cycle index
};

/// D with D(i, j) = l iff j in I_i^l; row-major p x p, 0-based storage.
std::vector<std::vector<int>> cooperation_matrix(const CooperationGraph& g);

CompatibilityReport check_compatible(const CooperationGraph& g);

}  // namespace dsn
