#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "dsn/coopgraph.hpp"
#include "dsn/linalg.hpp"

namespace dsn {

enum class ConstructionKind { single_level = 1, multi_level = 2 };

/// Blocks carved out of one node's Cauchy matrix T_i.
struct NodeCode {
  std::vector<Symbol> a;          // row parameters (u_i of them)
  std::vector<Symbol> b;          // column parameters (v_i of them)
  Matrix A;                       // k x r
  Matrix U;                       // delta x r
  std::map<int, Matrix> V;        // level -> eta x r, levels 2..L_i
  std::map<NodeId, Matrix> B;     // j in M_i -> k x delta_j
  std::map<std::size_t, Matrix> E;  // cycle index -> k x gamma
  /// [A; U; V_2; ...; V_L]: maps (m_i | s_{i;1} | s_{i;2} | ...) to the parity of c_i.
  Matrix stack;
};

/// m_from * factor is added into s_{to;level}, which enters c_to's parity through U_to or V_{to;level}.
struct CrossLink {
  NodeId from = 0;
  NodeId to = 0;
  int level = 1;
  std::optional<std::size_t> cycle;
  Matrix factor;  // k_from x width(to, level)
};

class CodeInstance {
 public:
  CodeInstance(std::shared_ptr<const CooperationGraph> graph, FieldPtr field, ConstructionKind kind,
               std::vector<NodeCode> nodes, std::vector<CrossLink> links);

  ConstructionKind kind() const noexcept { return kind_; }
  const CooperationGraph& graph() const noexcept { return *graph_; }
  std::shared_ptr<const CooperationGraph> graph_ptr() const noexcept { return graph_; }
  const DsnTopology& topology() const noexcept { return graph_->topology(); }
  const FieldPtr& field() const noexcept { return field_; }
  int size() const noexcept { return graph_->size(); }

  const NodeCode& node(NodeId i) const { return nodes_.at(i - 1); }
  const std::vector<CrossLink>& links() const noexcept { return links_; }
  /// Links into `to` at the given level (level 1: U-side, level >= 2: V-side).
  std::vector<const CrossLink*> in_links(NodeId to, int level) const;
  /// Levels carrying an interference block at node i: 1 (if delta_i > 0) and l >= 2 with eta > 0.
  std::vector<int> sum_levels(NodeId i) const;
  int width(NodeId i, int level) const;

  /// Off-diagonal or diagonal block A_{i,j} (k_i x r_j).
  Matrix block(NodeId i, NodeId j) const;
  /// Full systematic generator matrix.
  const Matrix& generator() const noexcept { return G_; }
  std::size_t row_offset(NodeId i) const { return row_off_.at(i - 1); }
  std::size_t col_offset(NodeId i) const { return col_off_.at(i - 1); }
  std::size_t total_k() const noexcept { return G_.rows(); }
  std::size_t total_n() const noexcept { return G_.cols(); }

 private:
  std::shared_ptr<const CooperationGraph> graph_;
  FieldPtr field_;
  ConstructionKind kind_;
  std::vector<NodeCode> nodes_;
  std::vector<CrossLink> links_;
  std::vector<std::size_t> row_off_, col_off_;
  Matrix G_;
};

/// Sizes of T_i: rows u_i and columns v_i.
struct NodeDims {
  int u = 0;
  int v = 0;
};
NodeDims node_dims(const CooperationGraph& g, NodeId i);

/// Smallest exponent whose field satisfies the construction's size bound; throws field_too_small.
unsigned select_theta(const CooperationGraph& g, ConstructionKind kind);

CodeInstance build_single_level(std::shared_ptr<const DsnTopology> topology, FieldPtr field);
CodeInstance build_multi_level(std::shared_ptr<const CooperationGraph> graph, FieldPtr field);

struct HierarchyFlag {
  NodeId node = 0;
  int level = 0;
  std::string kind;
  std::string detail;
};

struct NodeHierarchy {
  std::vector<int> d;                    // d_{i,0..L_i}
  std::vector<NodeSet> I, A, B, B_partner; // index 1..L_i, 0 unused
  std::optional<int> d1_example;         // alternative d_{i,1} = d_{i,0} + delta_i + sum delta_j
};

class EccHierarchy {
 public:
  explicit EccHierarchy(const CodeInstance& code);

  const NodeHierarchy& node(NodeId i) const { return nodes_.at(i - 1); }
  int depth(NodeId i) const { return static_cast<int>(node(i).d.size()) - 1; }
  /// lambda_{i,l;W}; throws domain when W is not within B_i^l.
  int lambda(NodeId i, int l, const NodeSet& W) const;
  /// All W subsets of B_i^l with their lambda; throws capacity when |B_i^l| > 16.
  std::vector<std::pair<NodeSet, int>> lambda_table(NodeId i, int l) const;
  const std::vector<HierarchyFlag>& flags() const noexcept { return flags_; }

 private:
  const CodeInstance* code_;
  std::vector<NodeHierarchy> nodes_;
  std::vector<HierarchyFlag> flags_;
};

/// Parity block columns of G, with (node, level-0 offset) map per column block.
struct NonsystematicComponent {
  Matrix matrix;
  std::vector<std::size_t> row_offsets;  // per node
  std::vector<std::size_t> col_offsets;  // per node
};
NonsystematicComponent nonsystematic_component(const CodeInstance& code);

}  // namespace dsn
