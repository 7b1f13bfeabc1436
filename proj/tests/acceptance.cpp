// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.
#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <string>

#include "dsn/container.hpp"
#include "dsn/linalg.hpp"
#include "dsn/oracle.hpp"
#include "dsn/rng.hpp"

#ifndef DSN_CONFIG_DIR
#define DSN_CONFIG_DIR "configs"
#endif

using namespace dsn;

namespace {

Config cfg(const std::string& name) { return load_config_file(std::string(DSN_CONFIG_DIR) + "/" + name + ".json"); }

MessageSet random_messages(const CodeInstance& code, Rng& rng) {
  MessageSet m;
  for (int i = 1; i <= code.size(); ++i) {
    Message v(code.topology().node(i).k);
    for (auto& s : v) s = static_cast<Symbol>(rng.below(code.field()->q()));
    m.push_back(std::move(v));
  }
  return m;
}

CodewordSet erase(CodewordSet cw, const ErasurePattern& pat) {
  for (std::size_t i = 0; i < cw.size(); ++i)
    for (std::size_t c = 0; c < cw[i].size(); ++c)
      if (pat.erased[i][c]) cw[i][c] = 0;
  return cw;
}

std::string set_str(const NodeSet& s) {
  std::string out = "{";
  for (NodeId x : s) out += (out.size() > 1 ? "," : "") + std::to_string(x);
  return out + "}";
}

struct Outcome {
  bool pass;
  std::string detail;
};

Outcome c1() {
  const CodeInstance code = build_code(cfg("mesh12_gf16"), ConstructionKind::single_level);
  const EccHierarchy h(code);
  const auto& d = h.node(2).d;
  if (d != std::vector<int>{3, 7}) return {false, "d_2 has wrong values"};
  const std::map<NodeSet, int> expect = {{{}, 5},     {{6}, 5},    {{8}, 5},    {{6, 8}, 5},
                                         {{4}, 6},    {{4, 6}, 6}, {{4, 8}, 6}, {{4, 6, 8}, 7}};
  const auto table = h.lambda_table(2, 1);
  if (table.size() != expect.size()) return {false, "wrong number of W subsets"};
  for (const auto& [W, lam] : table)
    if (expect.at(W) != lam) return {false, "lambda mismatch at W=" + set_str(W)};
  return {true, "d_2=(3,7), lambda classes 5/6/7"};
}

Outcome c2() {
  const CodeInstance code = build_code(cfg("mesh12_gf16"), ConstructionKind::single_level);
  const ValidationReport rep = sweep_validate(code, parse_budget("exhaustive:node=2:level=1"), 1, 4);
  std::size_t tested = 0;
  for (const auto& s : rep.strata)
    if (!s.probe) tested += s.tested;
  if (rep.strata.empty() || rep.guaranteed_failures() || rep.soundness_violations())
    return {false, std::to_string(rep.guaranteed_failures()) + " failures, " +
                       std::to_string(rep.soundness_violations()) + " soundness violations"};
  return {true, std::to_string(tested) + " guaranteed patterns over 8 W sets, 0 failures"};
}

Outcome c3() {
  const CodeInstance code = build_code(cfg("mesh12_gf16"), ConstructionKind::single_level);
  std::size_t failures = 0;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    Rng rng(seed);
    const MessageSet m = random_messages(code, rng);
    ErasurePattern pat = ErasurePattern::none(code);
    for (NodeId i : {2, 4, 8, 10})
      for (std::size_t c : rng.subset(code.topology().node(i).n(), code.topology().node(i).r + 1)) pat.erase(i, c + 1);
    const RecoveryReport rep = hierarchical_decode(code, erase(encode(code, m), pat), pat);
    for (NodeId i : {2, 4, 8, 10})
      if (!rep.recovered(i) || rep.node(i).message != m[i - 1]) ++failures;
  }
  return {failures == 0, "200 placements, " + std::to_string(failures) + " node failures"};
}

Outcome c4() {
  const Config c = cfg("mesh12_latency");
  const DsnTopology& t = *c.topology;
  const Time t12 = t.latency(1, 2).value(), t25 = t.latency(2, 5).value(), t23 = t.latency(2, 3).value(),
             t34 = t.latency(3, 4).value();
  const Time path = t23 + t34;
  const Time lo = std::max(t12, t25);
  const Time hi = t25 + std::min({t.latency(4, 5).value(), t.latency(5, 6).value(), t.latency(5, 8).value()});
  if (!(lo < path && path < hi)) return {false, "weights violate the required ordering"};
  const CodeInstance code = build_code(c, ConstructionKind::single_level);
  Rng rng(4);
  const MessageSet m = random_messages(code, rng);
  const std::size_t n = t.node(2).n();
  std::size_t checked = 0;
  for (std::size_t skip = 0; skip < n; ++skip) {
    ErasurePattern pat = ErasurePattern::none(code);
    for (std::size_t c2 = 0; c2 < n; ++c2)
      if (c2 != skip) pat.erase(2, c2 + 1);
    const RecoveryReport rep = simulate_recovery(code, erase(encode(code, m), pat), pat);
    const auto& node = rep.node(2);
    if (!node.completion || *node.completion != path || node.message != m[1])
      return {false, "placement " + std::to_string(skip) + " completes at " +
                         (node.completion ? format_time(*node.completion) : "never")};
    ++checked;
  }
  return {true, "node 2 completes at " + format_time(path) + " for all " + std::to_string(checked) + " placements"};
}

Outcome c5() {
  const Config good = cfg("mesh12_cycles");
  const auto g = std::make_shared<const CooperationGraph>(good.topology, good.cycles);
  if (!check_compatible(*g).compatible()) return {false, "mesh12_cycles configuration rejected"};
  const Config bad = cfg("mesh12_cycles_overlap");
  const auto gb = std::make_shared<const CooperationGraph>(bad.topology, bad.cycles);
  const auto rep = check_compatible(*gb);
  bool cond1 = false;
  for (const auto& v : rep.violations) cond1 = cond1 || v.condition == 1;
  if (!cond1) return {false, "overlap mutation not rejected under condition 1"};
  try {
    build_multi_level(gb, make_field(4));
    return {false, "overlap mutation built anyway"};
  } catch (const Error& e) {
    if (e.code() != ErrorCode::incompatible_graph) return {false, "wrong error on overlap build"};
  }
  return {true, "mesh12_cycles compatible, overlap rejected (condition 1)"};
}

Outcome c6() {
  const CodeInstance code = build_code(cfg("mesh12_cycles"), ConstructionKind::multi_level);
  const EccHierarchy h(code);
  const NodeHierarchy& n2 = h.node(2);
  const int gc = code.graph().cycle(1).gamma.at(2), gd = code.graph().cycle(4).gamma.at(2);
  if (n2.d.size() != 4) return {false, "node 2 depth is not 3"};
  if (n2.d[2] != n2.d[1] + gc || n2.d[3] != n2.d[2] + gd) return {false, "d_{2,l} increments wrong"};
  if (n2.I[2] != NodeSet{8, 9} || n2.I[3] != NodeSet{10, 11}) return {false, "I_2 sets wrong"};
  if (n2.B[2] != NodeSet{4, 6} || !n2.B[3].empty()) return {false, "B_2 sets wrong"};
  const NodeParams& np = code.topology().node(2);
  int sum_delta = 0;
  for (NodeId j : code.topology().coop(2)) sum_delta += code.topology().node(j).delta;
  if (n2.d[1] != np.r + sum_delta) return {false, "d_{2,1} is not r_2 plus the helper deltas"};
  bool flagged = false;
  for (const auto& f : h.flags()) flagged = flagged || (f.node == 2 && f.kind == "d1_variant");
  if (!flagged) return {false, "d_{2,1} discrepancy not flagged"};
  std::string d = "d_2=(";
  for (std::size_t l = 0; l < n2.d.size(); ++l) d += (l ? "," : "") + std::to_string(n2.d[l]);
  return {true, d + "), I^2=" + set_str(n2.I[2]) + ", I^3=" + set_str(n2.I[3]) + ", B^2=" + set_str(n2.B[2]) +
                    ", B^3={}, d1 flagged"};
}

bool invertible(const Matrix& m) { return rank(m) == m.rows(); }

Outcome c7() {
  const auto f16 = make_field(4);
  const std::vector<Symbol> a = {0, 1, 2, 3}, b = {4, 5, 6, 7};
  const Matrix y = cauchy(f16, a, b);
  std::size_t count = 0, bad = 0;
  for (unsigned rm = 1; rm < 16; ++rm)
    for (unsigned cm = 1; cm < 16; ++cm) {
      if (__builtin_popcount(rm) != __builtin_popcount(cm)) continue;
      std::vector<std::size_t> rs, cs;
      for (std::size_t i = 0; i < 4; ++i) {
        if (rm >> i & 1) rs.push_back(i);
        if (cm >> i & 1) cs.push_back(i);
      }
      ++count;
      if (!invertible(y.select_rows(rs).select_columns(cs))) ++bad;
    }
  const auto f256 = make_field(8);
  Rng rng(7);
  for (int trial = 0; trial < 1000; ++trial) {
    const auto elems = rng.subset(256, 64);
    std::vector<Symbol> all;
    for (auto e : elems) all.push_back(static_cast<Symbol>(e));
    for (std::size_t i = all.size(); i > 1; --i) std::swap(all[i - 1], all[rng.below(i)]);
    const std::vector<Symbol> aa(all.begin(), all.begin() + 32), bb(all.begin() + 32, all.end());
    const Matrix big = cauchy(f256, aa, bb);
    const std::size_t s = 1 + rng.below(32);
    if (!invertible(big.select_rows(rng.subset(32, s)).select_columns(rng.subset(32, s)))) ++bad;
  }
  if (count != 69) return {false, "enumerated " + std::to_string(count) + " submatrices, expected 69"};
  return {bad == 0, "69 + 1000 submatrices, " + std::to_string(bad) + " singular"};
}

Outcome c8() {
  const CodeInstance code = build_code(cfg("mesh12_gf16"), ConstructionKind::single_level);
  Rng rng(8);
  std::size_t violations = 0, recovered = 0;
  const std::size_t trials = 10000;
  for (std::size_t t = 0; t < trials; ++t) {
    const MessageSet m = random_messages(code, rng);
    ErasurePattern pat = ErasurePattern::none(code);
    for (int i = 1; i <= code.size(); ++i) {
      const std::size_t n = code.topology().node(i).n();
      // Mostly light damage with occasional heavy loss, so both outcomes show up.
      const std::size_t e = rng.below(4) == 0 ? rng.below(n + 1) : rng.below(6);
      for (std::size_t c : rng.subset(n, e)) pat.erase(i, c + 1);
    }
    const RecoveryReport rep = hierarchical_decode(code, erase(encode(code, m), pat), pat);
    const OracleVerdict ov = oracle_recoverable(code, pat);
    for (int i = 1; i <= code.size(); ++i) {
      if (!rep.recovered(i)) continue;
      ++recovered;
      if (!ov.determined[i - 1] || rep.node(i).message != m[i - 1]) ++violations;
    }
  }
  return {violations == 0, std::to_string(trials) + " instances, " + std::to_string(recovered) +
                               " node recoveries, " + std::to_string(violations) + " violations"};
}

Outcome c9() {
  const Config c = cfg("mesh12_gf16");
  const auto field = make_field(4);
  const CodeInstance one = build_single_level(c.topology, field);
  const CodeInstance two =
      build_multi_level(std::make_shared<const CooperationGraph>(c.topology, std::vector<Cycle>{}), field);
  if (!(one.generator() == two.generator())) return {false, "generator matrices differ"};
  for (int i = 1; i <= one.size(); ++i)
    if (one.node(i).a != two.node(i).a || one.node(i).b != two.node(i).b) return {false, "element assignments differ"};
  Rng rng(9);
  const MessageSet m = random_messages(one, rng);
  if (encode(one, m) != encode(two, m)) return {false, "codewords differ"};
  return {true, "24x48 generator and element assignments identical"};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"hierarchy reproduction", c1}, {"capability sweep", c2},     {"four-node pattern", c3},
      {"latency", c4},                {"compatibility", c5},        {"multi-level hierarchy", c6},
      {"cauchy invertibility", c7},   {"oracle consistency", c8},   {"degeneracy", c9},
  };
  int failed = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[k].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s criterion %zu (%s): %s [%.2fs]\n", o.pass ? "PASS" : "FAIL", k + 1, criteria[k].first.c_str(),
                o.detail.c_str(), secs);
    if (!o.pass) ++failed;
  }
  return failed == 0 ? 0 : 1;
}
