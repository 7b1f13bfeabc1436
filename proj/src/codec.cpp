#include "dsn/codec.hpp"

#include <algorithm>
#include <numeric>
#include <tuple>

#include "engine.hpp"

namespace dsn {

ErasurePattern ErasurePattern::none(const CodeInstance& code) {
  ErasurePattern p;
  for (int i = 1; i <= code.size(); ++i) p.erased.emplace_back(code.topology().node(i).n(), false);
  return p;
}

ErasurePattern ErasurePattern::all(const CodeInstance& code) {
  ErasurePattern p;
  for (int i = 1; i <= code.size(); ++i) p.erased.emplace_back(code.topology().node(i).n(), true);
  return p;
}

void ErasurePattern::erase(NodeId i, std::size_t coord) {
  if (i < 1 || i > static_cast<int>(erased.size())) throw Error(ErrorCode::unknown_node, "unknown node " + std::to_string(i));
  auto& row = erased[i - 1];
  if (coord < 1 || coord > row.size())
    throw Error(ErrorCode::domain, "coordinate " + std::to_string(coord) + " outside [1, " + std::to_string(row.size()) +
                                       "] at node " + std::to_string(i));
  row[coord - 1] = true;
}

std::size_t ErasurePattern::count(NodeId i) const {
  const auto& row = erased.at(i - 1);
  return static_cast<std::size_t>(std::count(row.begin(), row.end(), true));
}

std::string_view status_name(NodeStatus s) {
  switch (s) {
    case NodeStatus::recovered_local: return "recovered_local";
    case NodeStatus::recovered_coop: return "recovered_coop";
    case NodeStatus::failed: return "failed";
  }
  return "failed";
}

std::size_t RecoveryReport::failed_count() const {
  return static_cast<std::size_t>(
      std::count_if(nodes.begin(), nodes.end(), [](const NodeOutcome& o) { return o.status == NodeStatus::failed; }));
}

CodewordSet encode(const CodeInstance& code, const MessageSet& messages) {
  const DsnTopology& topo = code.topology();
  if (static_cast<int>(messages.size()) != code.size())
    throw Error(ErrorCode::dimension, "expected " + std::to_string(code.size()) + " messages");
  std::vector<Symbol> flat;
  flat.reserve(code.total_k());
  for (int i = 1; i <= code.size(); ++i) {
    const Message& m = messages[i - 1];
    if (static_cast<int>(m.size()) != topo.node(i).k)
      throw Error(ErrorCode::dimension, "message " + std::to_string(i) + " has length " + std::to_string(m.size()) +
                                            ", expected " + std::to_string(topo.node(i).k));
    for (Symbol s : m)
      if (!code.field()->contains(s)) throw Error(ErrorCode::domain, "message symbol outside the field");
    flat.insert(flat.end(), m.begin(), m.end());
  }
  const auto c = vec_mul(flat, code.generator());
  CodewordSet out;
  for (int i = 1; i <= code.size(); ++i) {
    const auto off = static_cast<std::ptrdiff_t>(code.col_offset(i));
    out.emplace_back(c.begin() + off, c.begin() + off + topo.node(i).n());
  }
  return out;
}

LocalResult local_decode(const CodeInstance& code, NodeId i, std::span<const Symbol> received,
                         const std::vector<bool>& erased, const SideInfo& side) {
  const NodeParams& np = code.topology().node(i);
  const NodeCode& nc = code.node(i);
  const std::size_t k = np.k;
  const std::size_t n = np.n();
  if (received.size() != n || erased.size() != n)
    throw Error(ErrorCode::dimension, "codeword of node " + std::to_string(i) + " must have " + std::to_string(n) + " symbols");

  // Unknowns follow the row order of the stack: m_i, s_{i;1}, s_{i;2}, ...
  const std::size_t unknowns = nc.stack.rows();
  std::map<int, std::size_t> offset;
  std::size_t off = k;
  for (int l = 1; l <= code.graph().depth(i); ++l) {
    offset[l] = off;
    off += code.width(i, l);
  }

  std::vector<std::vector<Symbol>> rows;
  std::vector<Symbol> rhs;
  auto unit_row = [&](std::size_t var, Symbol value) {
    std::vector<Symbol> row(unknowns, 0);
    row[var] = 1;
    rows.push_back(std::move(row));
    rhs.push_back(value);
  };
  for (std::size_t c = 0; c < n; ++c) {
    if (erased[c]) continue;
    if (c < k) {
      unit_row(c, received[c]);
    } else {
      std::vector<Symbol> row(unknowns);
      for (std::size_t u = 0; u < unknowns; ++u) row[u] = nc.stack(u, c - k);
      rows.push_back(std::move(row));
      rhs.push_back(received[c]);
    }
  }
  for (const auto& [l, val] : side.sums) {
    auto it = offset.find(l);
    if (it == offset.end() || static_cast<int>(val.size()) != code.width(i, l))
      throw Error(ErrorCode::dimension, "side sum for level " + std::to_string(l) + " does not fit node " + std::to_string(i));
    for (std::size_t e = 0; e < val.size(); ++e) unit_row(it->second + e, val[e]);
  }
  for (const auto& [factor, val] : side.extra) {
    if (factor.rows() != k || factor.cols() != val.size())
      throw Error(ErrorCode::dimension, "extra parity does not fit node " + std::to_string(i));
    for (std::size_t col = 0; col < factor.cols(); ++col) {
      std::vector<Symbol> row(unknowns, 0);
      for (std::size_t u = 0; u < k; ++u) row[u] = factor(u, col);
      rows.push_back(std::move(row));
      rhs.push_back(val[col]);
    }
  }

  Matrix coeff(code.field(), rows.size(), unknowns);
  for (std::size_t r = 0; r < rows.size(); ++r)
    std::copy(rows[r].begin(), rows[r].end(), coeff.row(r).begin());
  const PartialSolution sol = solve_partial(coeff, rhs);
  if (!sol.consistent)
    throw Error(ErrorCode::inconsistent, "received symbols at node " + std::to_string(i) + " contradict side information");

  LocalResult out;
  if (std::all_of(sol.determined.begin(), sol.determined.begin() + static_cast<std::ptrdiff_t>(k), [](bool b) { return b; }))
    out.message = Message(sol.values.begin(), sol.values.begin() + static_cast<std::ptrdiff_t>(k));
  for (const auto& [l, o] : offset) {
    const std::size_t w = code.width(i, l);
    if (w == 0) continue;
    bool all = true;
    for (std::size_t e = 0; e < w; ++e) all &= sol.determined[o + e];
    if (all) out.sums[l] = std::vector<Symbol>(sol.values.begin() + static_cast<std::ptrdiff_t>(o),
                                               sol.values.begin() + static_cast<std::ptrdiff_t>(o + w));
  }
  return out;
}

namespace detail {

namespace {

void add_into(std::vector<Symbol>& acc, const std::vector<Symbol>& v) {
  if (acc.size() < v.size()) acc.resize(v.size(), 0);
  for (std::size_t e = 0; e < v.size(); ++e) acc[e] ^= v[e];
}

Time at(const DistFn& dist, NodeId a, NodeId b) { return dist ? dist(a, b) : Time(0); }

}  // namespace

std::vector<Item> gather_items(const CodeInstance& code, NodeId i, const Facts& facts, const DistFn& dist) {
  const CooperationGraph& g = code.graph();
  std::vector<Item> items;

  for (int l : code.sum_levels(i)) {
    const auto links = code.in_links(i, l);
    if (std::all_of(links.begin(), links.end(), [&](const CrossLink* lk) { return facts.knows_m(lk->from); })) {
      Item it;
      it.link = {"interference", i, {}, l};
      it.sum_level = l;
      it.value.assign(code.width(i, l), 0);
      for (const CrossLink* lk : links) {
        add_into(it.value, vec_mul(*facts.m[lk->from - 1], lk->factor));
        it.link.needs.insert(lk->from);
        it.available = std::max(it.available, facts.m_time[lk->from - 1] + at(dist, lk->from, i));
      }
      it.tag = links.empty() ? 0 : l;
      items.push_back(std::move(it));
    }
    if (l >= 2) {
      NodeSet peers = g.column_component(i, l);
      peers.erase(i);
      if (!peers.empty() && std::all_of(peers.begin(), peers.end(), [&](NodeId j) { return facts.knows_s(j, l); })) {
        Item it;
        it.link = {"cycle_sum", i, peers, l};
        it.tag = 1;
        it.sum_level = l;
        std::vector<Symbol> acc;
        for (NodeId j : peers) {
          add_into(acc, facts.s[j - 1].at(l));
          it.available = std::max(it.available, facts.s_time[j - 1].at(l) + at(dist, j, i));
        }
        acc.resize(code.width(i, l), 0);
        it.value = std::move(acc);
        items.push_back(std::move(it));
      }
    }
  }

  for (const CrossLink& lk : code.links()) {
    if (lk.from != i) continue;
    const NodeId j = lk.to;
    const int l = lk.level;
    const Matrix* factor = lk.cycle ? &code.node(i).E.at(*lk.cycle) : &code.node(i).B.at(j);
    if (factor->cols() == 0 || !facts.knows_s(j, l)) continue;
    const auto others = code.in_links(j, l);
    bool ready = true;
    for (const CrossLink* o : others) ready &= o->from == i || facts.knows_m(o->from);
    if (!ready) continue;

    Item it;
    it.link = {lk.cycle ? "cycle_parity" : "cross_parity", j, {j}, l};
    it.tag = l;
    it.factor = factor;
    std::vector<Symbol> acc = facts.s[j - 1].at(l);
    Time formed = facts.s_time[j - 1].at(l);
    for (const CrossLink* o : others) {
      if (o->from == i) continue;
      add_into(acc, vec_mul(*facts.m[o->from - 1], o->factor));
      it.link.needs.insert(o->from);
      formed = std::max(formed, facts.m_time[o->from - 1] + at(dist, o->from, j));
    }
    acc.resize(factor->cols());
    it.value = std::move(acc);
    it.available = formed + at(dist, j, i);
    items.push_back(std::move(it));
  }
  return items;
}

SideInfo side_info(const std::vector<const Item*>& items) {
  SideInfo side;
  for (const Item* it : items) {
    if (it->sum_level > 0)
      side.sums[it->sum_level] = it->value;
    else
      side.extra.emplace_back(*it->factor, it->value);
  }
  return side;
}

void finalize(const CodeInstance& code, const CodewordSet& received, const ErasurePattern& pattern,
              const Facts& facts, RecoveryReport& report) {
  report.nodes.assign(code.size(), {});
  for (int i = 1; i <= code.size(); ++i) {
    NodeOutcome& out = report.nodes[i - 1];
    if (!facts.knows_m(i)) continue;
    out.message = *facts.m[i - 1];
    const auto items = gather_items(code, i, facts, {});
    const int depth = code.graph().depth(i);
    int level = depth;
    for (int L = 0; L <= depth; ++L) {
      std::vector<const Item*> use;
      for (const auto& it : items)
        if (it.tag <= L) use.push_back(&it);
      if (local_decode(code, i, received[i - 1], pattern.erased[i - 1], side_info(use)).message) {
        level = L;
        break;
      }
    }
    out.level = level;
    out.status = level == 0 ? NodeStatus::recovered_local : NodeStatus::recovered_coop;
    for (const auto& it : items)
      if (it.tag <= level && it.tag > 0) out.helpers.push_back(it.link);
    std::sort(out.helpers.begin(), out.helpers.end(), [](const HelperLink& a, const HelperLink& b) {
      return std::tie(a.level, a.kind, a.via, a.needs) < std::tie(b.level, b.kind, b.via, b.needs);
    });
  }
}

}  // namespace detail

RecoveryReport hierarchical_decode(const CodeInstance& code, const CodewordSet& received,
                                   const ErasurePattern& pattern, const DecodeOptions& options) {
  const int p = code.size();
  if (static_cast<int>(received.size()) != p || static_cast<int>(pattern.erased.size()) != p)
    throw Error(ErrorCode::dimension, "received codewords and erasure pattern must cover every node");
  std::vector<NodeId> order = options.order;
  if (order.empty()) {
    order.resize(p);
    std::iota(order.begin(), order.end(), 1);
  }

  detail::Facts facts(p);
  RecoveryReport report;
  bool changed = true;
  int round = 0;
  while (changed) {
    changed = false;
    ++round;
    for (NodeId i : order) {
      const auto levels = code.sum_levels(i);
      const bool done = facts.knows_m(i) &&
                        std::all_of(levels.begin(), levels.end(), [&](int l) { return facts.knows_s(i, l); });
      if (done) continue;
      const auto items = detail::gather_items(code, i, facts, {});
      std::vector<const detail::Item*> use;
      for (const auto& it : items) use.push_back(&it);
      const LocalResult res = local_decode(code, i, received[i - 1], pattern.erased[i - 1], detail::side_info(use));
      if (res.message && !facts.knows_m(i)) {
        facts.m[i - 1] = res.message;
        report.trace.push_back({Time(0), i, "message", "round=" + std::to_string(round)});
        changed = true;
      }
      for (const auto& [l, val] : res.sums) {
        if (facts.knows_s(i, l)) continue;
        facts.s[i - 1][l] = val;
        facts.s_time[i - 1][l] = Time(0);
        report.trace.push_back({Time(0), i, "sum", "level=" + std::to_string(l) + " round=" + std::to_string(round)});
        changed = true;
      }
    }
  }
  detail::finalize(code, received, pattern, facts, report);
  return report;
}

}  // namespace dsn
