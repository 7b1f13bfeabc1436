#include "dsn/oracle.hpp"

#include <atomic>
#include <charconv>
#include <exception>
#include <mutex>
#include <thread>

#include "dsn/rng.hpp"

namespace dsn {

OracleVerdict oracle_recoverable(const CodeInstance& code, const ErasurePattern& pattern) {
  std::vector<std::size_t> cols;
  for (int i = 1; i <= code.size(); ++i)
    for (std::size_t c = 0; c < pattern.erased.at(i - 1).size(); ++c)
      if (!pattern.erased[i - 1][c]) cols.push_back(code.col_offset(i) + c);

  // m is determined on a block iff every m' with m' G_S = 0 vanishes there.
  const Matrix observed = code.generator().select_columns(cols);
  const Matrix kernel = null_space_basis(observed.transpose());

  OracleVerdict v;
  v.global_rank = code.total_k() - kernel.rows();
  for (int i = 1; i <= code.size(); ++i) {
    std::vector<std::size_t> support;
    const std::size_t off = code.row_offset(i);
    for (int c = 0; c < code.topology().node(i).k; ++c) {
      bool nz = false;
      for (std::size_t b = 0; b < kernel.rows() && !nz; ++b) nz = kernel(b, off + c) != 0;
      if (nz) support.push_back(c);
    }
    v.determined.push_back(support.empty());
    v.nullspace_support.push_back(std::move(support));
  }
  return v;
}

Budget parse_budget(const std::string& text) {
  auto bad = [&]() { return Error(ErrorCode::parameter, "cannot parse budget \"" + text + "\""); };
  Budget b;
  if (text == "0" || text == "none") {
    b.empty = true;
    return b;
  }
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    auto pos = text.find(':', start);
    parts.push_back(text.substr(start, pos - start));
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  auto number = [&](const std::string& s) {
    std::size_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) throw bad();
    return v;
  };
  std::size_t idx = 1;
  if (parts[0] == "exhaustive") {
    b.exhaustive = true;
  } else if (parts[0] == "sample") {
    if (parts.size() < 2) throw bad();
    b.exhaustive = false;
    b.samples = number(parts[1]);
    idx = 2;
    if (b.samples == 0) b.empty = true;
  } else {
    throw bad();
  }
  for (; idx < parts.size(); ++idx) {
    const auto eq = parts[idx].find('=');
    if (eq == std::string::npos) throw bad();
    const std::string key = parts[idx].substr(0, eq);
    const std::size_t val = number(parts[idx].substr(eq + 1));
    if (key == "node")
      b.node = static_cast<NodeId>(val);
    else if (key == "level")
      b.level = static_cast<int>(val);
    else if (key == "max-erasures")
      b.max_erasures = val;
    else
      throw bad();
  }
  return b;
}

std::size_t ValidationReport::guaranteed_failures() const {
  std::size_t n = 0;
  for (const auto& s : strata)
    if (!s.probe) n += s.failed;
  return n;
}

std::size_t ValidationReport::soundness_violations() const {
  std::size_t n = 0;
  for (const auto& s : strata) n += s.soundness_violations;
  return n;
}

namespace {

std::size_t binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  std::size_t r = 1;
  for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

void run_stratum(const CodeInstance& code, const EccHierarchy& h, Stratum& st, const Budget& budget,
                 std::uint64_t seed) {
  const DsnTopology& topo = code.topology();
  const NodeId i = st.node;
  const std::size_t n = topo.node(i).n();
  NodeSet intact = h.node(i).A.at(st.level);
  intact.insert(st.W.begin(), st.W.end());
  // Column nodes of i's own cycles carry the extra parities, so they stay up too.
  const CooperationGraph& g = code.graph();
  for (int l = 2; l <= st.level; ++l)
    for (std::size_t t : g.T(i, l))
      for (NodeId j : g.cycle(t).row_cols.at(i)) intact.insert(j);

  ErasurePattern base = ErasurePattern::all(code);
  base.erased[i - 1].assign(n, false);
  for (NodeId j : intact) base.erased[j - 1].assign(topo.node(j).n(), false);

  Rng rng(seed);
  auto evaluate = [&](const std::vector<std::size_t>& coords) {
    ErasurePattern pat = base;
    for (std::size_t c : coords) pat.erased[i - 1][c] = true;
    MessageSet msgs;
    for (int j = 1; j <= code.size(); ++j) {
      Message m(topo.node(j).k);
      for (auto& s : m) s = static_cast<Symbol>(rng.below(code.field()->q()));
      msgs.push_back(std::move(m));
    }
    CodewordSet cw = encode(code, msgs);
    for (int j = 1; j <= code.size(); ++j)
      for (std::size_t c = 0; c < cw[j - 1].size(); ++c)
        if (pat.erased[j - 1][c]) cw[j - 1][c] = 0;
    const RecoveryReport rep = hierarchical_decode(code, cw, pat);
    const OracleVerdict ov = oracle_recoverable(code, pat);
    ++st.tested;
    if (rep.recovered(i)) ++st.passed;
    else ++st.failed;
    if (ov.determined[i - 1]) ++st.oracle_determined;
    for (int j = 1; j <= code.size(); ++j)
      if (rep.recovered(j) && (!ov.determined[j - 1] || rep.node(j).message != msgs[j - 1])) ++st.soundness_violations;
  };

  const std::size_t total = binomial(n, st.erasures);
  if (!budget.exhaustive || total > budget.sample_threshold) {
    st.sampled = true;
    for (std::size_t s = 0; s < budget.samples; ++s) evaluate(rng.subset(n, st.erasures));
    return;
  }
  std::vector<bool> mask(n, false);
  std::fill(mask.begin(), mask.begin() + static_cast<std::ptrdiff_t>(st.erasures), true);
  do {
    std::vector<std::size_t> coords;
    for (std::size_t c = 0; c < n; ++c)
      if (mask[c]) coords.push_back(c);
    evaluate(coords);
  } while (std::prev_permutation(mask.begin(), mask.end()));
}

}  // namespace

ValidationReport sweep_validate(const CodeInstance& code, const Budget& budget, std::uint64_t seed, unsigned jobs) {
  ValidationReport report;
  if (budget.empty) return report;
  const EccHierarchy h(code);
  const DsnTopology& topo = code.topology();

  for (int i = 1; i <= code.size(); ++i) {
    if (budget.node && *budget.node != i) continue;
    for (int l = 1; l <= h.depth(i); ++l) {
      if (budget.level && *budget.level != l) continue;
      const NodeSet& B = h.node(i).B.at(l);
      std::vector<NodeSet> Ws;
      if (B.size() <= 16) {
        for (const auto& [W, _] : h.lambda_table(i, l)) Ws.push_back(W);
      } else {
        Ws = {NodeSet{}, B};
      }
      for (const NodeSet& W : Ws) {
        const int lam = h.lambda(i, l, W);
        const std::size_t n = topo.node(i).n();
        std::size_t top = std::min<std::size_t>(static_cast<std::size_t>(lam) + 1, n);
        if (budget.max_erasures) top = std::min(top, *budget.max_erasures);
        for (std::size_t e = 0; e <= top; ++e) {
          Stratum st;
          st.node = i;
          st.level = l;
          st.W = W;
          st.erasures = e;
          st.lambda = lam;
          st.probe = e > static_cast<std::size_t>(lam);
          report.strata.push_back(st);
        }
      }
    }
  }

  std::atomic<std::size_t> next{0};
  std::mutex err_mu;
  std::exception_ptr err;
  auto worker = [&]() {
    try {
      for (std::size_t s = next++; s < report.strata.size(); s = next++)
        run_stratum(code, h, report.strata[s], budget, seed ^ (0x9E3779B97F4A7C15ull * (s + 1)));
    } catch (...) {
      std::lock_guard lock(err_mu);
      if (!err) err = std::current_exception();
      next = report.strata.size();
    }
  };
  const unsigned n_threads = std::max(1u, jobs);
  if (n_threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < n_threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (err) std::rethrow_exception(err);
  return report;
}

}  // namespace dsn
