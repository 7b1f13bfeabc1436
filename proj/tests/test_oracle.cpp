#include <doctest.h>

#include "support.hpp"

using namespace dsn;
using testing::damage;
using testing::random_messages;

namespace {

// Everything outside `intact` and node i is erased; node i loses `coords`.
ErasurePattern scenario(const CodeInstance& code, NodeId i, const NodeSet& intact, const std::vector<std::size_t>& coords) {
  ErasurePattern p = ErasurePattern::all(code);
  p.erased[i - 1].assign(code.topology().node(i).n(), false);
  for (NodeId j : intact) p.erased[j - 1].assign(code.topology().node(j).n(), false);
  return testing::erase_node(p, i, coords);
}

}  // namespace

TEST_CASE("oracle on trivial patterns") {
  const CodeInstance code = testing::mesh12_gf16();
  const OracleVerdict v = oracle_recoverable(code, ErasurePattern::none(code));
  CHECK(v.global_rank == 24);
  for (int i = 0; i < 12; ++i) {
    CHECK(v.determined[i]);
    CHECK(v.nullspace_support[i].empty());
  }
  const OracleVerdict none = oracle_recoverable(code, ErasurePattern::all(code));
  CHECK(none.global_rank == 0);
  for (int i = 0; i < 12; ++i) CHECK(none.nullspace_support[i].size() == 2);
}

TEST_CASE("independent codes are judged independently") {
  auto t = std::make_shared<const DsnTopology>(std::vector<NodeParams>{{2, 4, 0}, {2, 4, 0}}, std::vector<Edge>{{1, 2}});
  const CodeInstance code = build_single_level(t, make_field(4));
  ErasurePattern p = ErasurePattern::none(code);
  p.erased[0].assign(6, true);
  const OracleVerdict v = oracle_recoverable(code, p);
  CHECK(!v.determined[0]);
  CHECK(v.determined[1]);
}

TEST_CASE("node 2 survives total loss when its level-1 helpers and boosters are intact") {
  const CodeInstance code = testing::mesh12_gf16();
  const OracleVerdict v = oracle_recoverable(code, scenario(code, 2, {1, 3, 4, 5, 6, 8}, {0, 1, 2, 3, 4, 5}));
  CHECK(v.determined[1]);
}

TEST_CASE("every claimed lambda at node 2 holds in the oracle") {
  const CodeInstance code = testing::mesh12_gf16();
  const EccHierarchy h(code);
  for (const auto& [W, lam] : h.lambda_table(2, 1)) {
    NodeSet intact = h.node(2).A[1];
    intact.insert(W.begin(), W.end());
    const std::size_t e = std::min<std::size_t>(lam, 6);
    for (const auto& coords : testing::subsets(6, e)) REQUIRE(oracle_recoverable(code, scenario(code, 2, intact, coords)).determined[1]);
  }
  // With no booster intact, losing all six symbols is ambiguous.
  CHECK(!oracle_recoverable(code, scenario(code, 2, {1, 3, 5}, {0, 1, 2, 3, 4, 5})).determined[1]);
}

TEST_CASE("multi-level lambdas at node 2 hold in the oracle") {
  const CodeInstance code = build_code(testing::config("mesh12_cycles"), ConstructionKind::multi_level);
  const EccHierarchy h(code);
  for (int l = 1; l <= h.depth(2); ++l)
    for (const auto& [W, lam] : h.lambda_table(2, l)) {
      NodeSet intact = h.node(2).A[l];
      intact.insert(W.begin(), W.end());
      for (const auto& coords : testing::subsets(6, std::min<std::size_t>(lam, 6)))
        REQUIRE(oracle_recoverable(code, scenario(code, 2, intact, coords)).determined[1]);
    }
  CHECK(!oracle_recoverable(code, scenario(code, 2, h.node(2).A[2], {0, 1, 2, 3, 4, 5})).determined[1]);
}

TEST_CASE("determined blocks are reproduced by solving the observations") {
  const CodeInstance code = build_code(testing::config("mesh12_cycles"), ConstructionKind::multi_level);
  Rng rng(1);
  for (int t = 0; t < 100; ++t) {
    const MessageSet m = random_messages(code, rng);
    const CodewordSet c = encode(code, m);
    ErasurePattern pat = ErasurePattern::none(code);
    for (int i = 1; i <= code.size(); ++i) pat = testing::erase_node(pat, i, rng.subset(6, rng.below(7)));
    std::vector<std::size_t> cols;
    std::vector<Symbol> observed;
    for (int i = 1; i <= code.size(); ++i)
      for (std::size_t x = 0; x < 6; ++x)
        if (!pat.erased[i - 1][x]) {
          cols.push_back(code.col_offset(i) + x);
          observed.push_back(c[i - 1][x]);
        }
    const PartialSolution ps = solve_partial(code.generator().select_columns(cols).transpose(), observed);
    REQUIRE(ps.consistent);
    const OracleVerdict v = oracle_recoverable(code, pat);
    bool all = true;
    for (int i = 1; i <= code.size(); ++i) {
      for (std::size_t x = 0; x < 2; ++x) {
        const std::size_t idx = code.row_offset(i) + x;
        if (v.determined[i - 1]) {
          REQUIRE(ps.determined[idx]);
          REQUIRE(ps.values[idx] == m[i - 1][x]);
        }
      }
      all = all && v.determined[i - 1];
    }
    if (all) {
      MessageSet solved;
      for (int i = 1; i <= code.size(); ++i)
        solved.push_back({ps.values[code.row_offset(i)], ps.values[code.row_offset(i) + 1]});
      const CodewordSet again = encode(code, solved);
      for (int i = 1; i <= code.size(); ++i)
        for (std::size_t x = 0; x < 6; ++x)
          if (!pat.erased[i - 1][x]) REQUIRE(again[i - 1][x] == c[i - 1][x]);
    }
  }
}

TEST_CASE("every four-node placement of five erasures is correctable") {
  const CodeInstance code = testing::mesh12_gf16();
  Rng rng(2);
  const MessageSet m = random_messages(code, rng);
  const CodewordSet c = encode(code, m);
  std::size_t count = 0;
  for (std::size_t a = 0; a < 6; ++a)
    for (std::size_t b = 0; b < 6; ++b)
      for (std::size_t d = 0; d < 6; ++d)
        for (std::size_t f = 0; f < 6; ++f) {
          ErasurePattern pat = ErasurePattern::none(code);
          const std::size_t keep[4] = {a, b, d, f};
          const NodeId nodes[4] = {2, 4, 8, 10};
          for (int k = 0; k < 4; ++k)
            for (std::size_t x = 0; x < 6; ++x)
              if (x != keep[k]) pat.erase(nodes[k], x + 1);
          const RecoveryReport rep = hierarchical_decode(code, damage(c, pat), pat);
          REQUIRE(rep.failed_count() == 0);
          ++count;
        }
  CHECK(count == 1296);
}

TEST_CASE("budget strings") {
  CHECK(parse_budget("exhaustive").exhaustive);
  CHECK(parse_budget("0").empty);
  CHECK(parse_budget("none").empty);
  CHECK(parse_budget("sample:0").empty);
  const Budget b = parse_budget("sample:25:node=2:level=1:max-erasures=4");
  CHECK(!b.exhaustive);
  CHECK(b.samples == 25);
  CHECK(b.node == 2);
  CHECK(b.level == 1);
  CHECK(b.max_erasures == 4);
  for (const char* bad : {"", "sample", "sample:x", "exhaustive:node", "exhaustive:colour=1", "all"})
    CHECK_THROWS_AS(parse_budget(bad), Error);
}

TEST_CASE("an empty budget gives an empty report") {
  const CodeInstance code = testing::mesh12_gf16();
  CHECK(sweep_validate(code, parse_budget("0")).strata.empty());
}

TEST_CASE("a pair without cross links corrects exactly r erasures") {
  auto t = std::make_shared<const DsnTopology>(std::vector<NodeParams>{{2, 4, 0}, {2, 4, 0}}, std::vector<Edge>{{1, 2}});
  const CodeInstance code = build_single_level(t, make_field(4));
  const ValidationReport rep = sweep_validate(code, parse_budget("exhaustive"), 1);
  CHECK(rep.guaranteed_failures() == 0);
  CHECK(rep.soundness_violations() == 0);
  bool probed = false;
  for (const auto& s : rep.strata) {
    CHECK(s.lambda == 4);
    if (s.probe) {
      probed = true;
      CHECK(s.erasures == 5);
      CHECK(s.failed == s.tested);
    }
  }
  CHECK(probed);
}

TEST_CASE("mesh12_cycles sweep has no guaranteed failures and does not depend on the worker count") {
  const CodeInstance code = build_code(testing::config("mesh12_cycles"), ConstructionKind::multi_level);
  const Budget b = parse_budget("sample:40");
  const ValidationReport one = sweep_validate(code, b, 9, 1);
  const ValidationReport many = sweep_validate(code, b, 9, 4);
  CHECK(one.guaranteed_failures() == 0);
  CHECK(one.soundness_violations() == 0);
  REQUIRE(one.strata.size() == many.strata.size());
  for (std::size_t s = 0; s < one.strata.size(); ++s) {
    CHECK(one.strata[s].sampled);
    CHECK(one.strata[s].passed == many.strata[s].passed);
    CHECK(one.strata[s].oracle_determined == many.strata[s].oracle_determined);
  }
}
