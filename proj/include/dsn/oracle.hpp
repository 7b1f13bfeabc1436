#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dsn/codec.hpp"

namespace dsn {

struct OracleVerdict {
  std::vector<bool> determined;                        // [node - 1]
  std::size_t global_rank = 0;                         // rank of the observation map
  std::vector<std::vector<std::size_t>> nullspace_support;  // [node - 1] 0-based message coordinates
};

/// Ground truth: which message blocks are pinned down by the unerased symbols of the whole network.
OracleVerdict oracle_recoverable(const CodeInstance& code, const ErasurePattern& pattern);

struct Budget {
  bool exhaustive = true;
  std::size_t samples = 10000;                 // per stratum when sampling
  std::size_t sample_threshold = 1000000;      // strata above this size are sampled
  std::optional<NodeId> node;
  std::optional<int> level;
  std::optional<std::size_t> max_erasures;
  bool empty = false;                           // zero budget
};

/// "exhaustive", "sample:N", optionally followed by ":node=I", ":level=L", ":max-erasures=E"; "0" is empty.
Budget parse_budget(const std::string& text);

struct Stratum {
  NodeId node = 0;
  int level = 0;
  NodeSet W;
  std::size_t erasures = 0;
  int lambda = 0;
  bool probe = false;      // erasures = lambda + 1; reported, not asserted
  bool sampled = false;
  std::size_t tested = 0;
  std::size_t passed = 0;   // decoder recovered the node
  std::size_t failed = 0;
  std::size_t oracle_determined = 0;
  std::size_t soundness_violations = 0;  // decoder success on an oracle-undetermined block, or wrong output
};

struct ValidationReport {
  std::vector<Stratum> strata;
  std::size_t guaranteed_failures() const;
  std::size_t soundness_violations() const;
};

/// Per stratum: nodes in A_i^l, W and the column partners of i's own cycles are intact,
/// node i loses exactly `erasures` symbols, every other node is wiped.
ValidationReport sweep_validate(const CodeInstance& code, const Budget& budget, std::uint64_t seed = 0,
                                unsigned jobs = 1);

}  // namespace dsn
