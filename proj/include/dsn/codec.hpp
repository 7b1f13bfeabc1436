#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dsn/codegen.hpp"

namespace dsn {

using Message = std::vector<Symbol>;
using Codeword = std::vector<Symbol>;
using MessageSet = std::vector<Message>;    // [node - 1]
using CodewordSet = std::vector<Codeword>;  // [node - 1]

/// Per-node erased coordinates, stored 0-based as masks.
struct ErasurePattern {
  std::vector<std::vector<bool>> erased;  // [node - 1][coordinate]

  static ErasurePattern none(const CodeInstance& code);
  static ErasurePattern all(const CodeInstance& code);
  /// `coord` is 1-based, as in files and on the command line.
  void erase(NodeId i, std::size_t coord);
  bool is_erased(NodeId i, std::size_t coord0) const { return erased.at(i - 1).at(coord0); }
  std::size_t count(NodeId i) const;
  friend bool operator==(const ErasurePattern&, const ErasurePattern&) = default;
};

CodewordSet encode(const CodeInstance& code, const MessageSet& messages);

/// Known quantities supplied to a single node's solve.
struct SideInfo {
  std::map<int, std::vector<Symbol>> sums;  // level -> s_{i;level}
  /// (factor, m_i * factor) pairs, e.g. cross parities m_i B_{i,j} or m_i E_{i;t}.
  std::vector<std::pair<Matrix, std::vector<Symbol>>> extra;
};

struct LocalResult {
  std::optional<Message> message;
  std::map<int, std::vector<Symbol>> sums;  // interference sums pinned down by this solve
};

/// Solves for m_i and the unresolved interference sums from the unerased part of c_i plus side info.
/// Throws inconsistent when the side information contradicts the received symbols.
LocalResult local_decode(const CodeInstance& code, NodeId i, std::span<const Symbol> received,
                         const std::vector<bool>& erased, const SideInfo& side = {});

enum class NodeStatus { recovered_local, recovered_coop, failed };
std::string_view status_name(NodeStatus s);

/// One piece of outside information used at a node.
struct HelperLink {
  std::string kind;   // interference, cycle_sum, cross_parity, cycle_parity
  NodeId via = 0;     // node where the quantity is formed
  NodeSet needs;      // nodes whose messages or sums it depends on
  int level = 0;      // cooperation level it belongs to
  friend bool operator==(const HelperLink&, const HelperLink&) = default;
};

struct NodeOutcome {
  NodeStatus status = NodeStatus::failed;
  int level = -1;
  std::vector<HelperLink> helpers;
  Message message;
  std::optional<Time> completion;
};

struct TraceEvent {
  Time time{0};
  NodeId node = 0;
  std::string event;
  std::string detail;
};

struct RecoveryReport {
  std::vector<NodeOutcome> nodes;
  std::vector<TraceEvent> trace;

  const NodeOutcome& node(NodeId i) const { return nodes.at(i - 1); }
  bool recovered(NodeId i) const { return node(i).status != NodeStatus::failed; }
  std::size_t failed_count() const;
};

struct DecodeOptions {
  std::vector<NodeId> order;  // sweep order; ascending when empty
};

RecoveryReport hierarchical_decode(const CodeInstance& code, const CodewordSet& received,
                                   const ErasurePattern& pattern, const DecodeOptions& options = {});

/// Event-driven recovery over the weighted topology. Each derived quantity travels from the node
/// that forms it to the node that uses it along a shortest path.
RecoveryReport simulate_recovery(const CodeInstance& code, const CodewordSet& received,
                                 const ErasurePattern& pattern);

}  // namespace dsn
