#include "dsn/coopgraph.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace dsn {

namespace {

std::string set_str(const NodeSet& s) {
  std::ostringstream os;
  os << '{';
  bool first = true;
  for (NodeId v : s) {
    if (!first) os << ',';
    os << v;
    first = false;
  }
  os << '}';
  return os.str();
}

std::string cyc(int id) { return "cycle " + std::to_string(id); }

bool subset(const NodeSet& a, const NodeSet& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

}  // namespace

Cycle make_cycle(int id, const NodeSet& X, const NodeSet& Y,
                 const std::map<NodeId, std::array<NodeId, 2>>& row_cols, int level,
                 const std::map<NodeId, int>& gamma) {
  if (level < 2) throw Error(ErrorCode::level_too_small, cyc(id) + ": level must be at least 2");
  if (X.size() != Y.size() || X.size() < 2 || X.size() > 3)
    throw Error(ErrorCode::malformed_cycle, cyc(id) + ": |X| = |Y| must be 2 or 3");
  for (NodeId x : X)
    if (Y.count(x)) throw Error(ErrorCode::malformed_cycle, cyc(id) + ": node " + std::to_string(x) + " is both row and column");

  Cycle c;
  c.id = id;
  c.X = X;
  c.Y = Y;
  c.level = level;
  for (NodeId x : X) {
    auto it = row_cols.find(x);
    if (it == row_cols.end())
      throw Error(ErrorCode::malformed_cycle, cyc(id) + ": row " + std::to_string(x) + " has no column pair");
    auto cols = it->second;
    if (cols[0] == cols[1]) throw Error(ErrorCode::malformed_cycle, cyc(id) + ": row " + std::to_string(x) + " repeats a column");
    if (cols[0] > cols[1]) std::swap(cols[0], cols[1]);
    for (NodeId y : cols)
      if (!Y.count(y))
        throw Error(ErrorCode::malformed_cycle, cyc(id) + ": column " + std::to_string(y) + " not in Y");
    c.row_cols[x] = cols;
  }
  if (row_cols.size() != X.size())
    throw Error(ErrorCode::malformed_cycle, cyc(id) + ": pairs given for rows outside X");

  std::map<NodeId, std::vector<NodeId>> rows_of;
  for (const auto& [x, cols] : c.row_cols)
    for (NodeId y : cols) rows_of[y].push_back(x);
  for (NodeId y : Y) {
    const auto& rs = rows_of[y];
    if (rs.size() != 2)
      throw Error(ErrorCode::malformed_cycle, cyc(id) + ": column " + std::to_string(y) + " must meet exactly two rows");
    c.col_rows[y] = {std::min(rs[0], rs[1]), std::max(rs[0], rs[1])};
  }

  // Every vertex has degree two, so the graph is a union of cycles; require it to be connected.
  NodeSet seen{*X.begin()};
  std::vector<NodeId> stack{*X.begin()};
  while (!stack.empty()) {
    NodeId v = stack.back();
    stack.pop_back();
    auto visit = [&](NodeId w) {
      if (seen.insert(w).second) stack.push_back(w);
    };
    if (X.count(v))
      for (NodeId y : c.row_cols[v]) visit(y);
    else
      for (NodeId x : c.col_rows[v]) visit(x);
  }
  if (seen.size() != X.size() + Y.size())
    throw Error(ErrorCode::malformed_cycle, cyc(id) + ": vertices do not form a single closed cycle");

  for (NodeId x : X) {
    auto it = gamma.find(x);
    if (it == gamma.end())
      throw Error(ErrorCode::missing_gamma, cyc(id) + ": no gamma for row " + std::to_string(x));
    if (it->second < 1) throw Error(ErrorCode::parameter, cyc(id) + ": gamma must be at least 1");
    c.gamma[x] = it->second;
  }
  if (gamma.size() != X.size())
    throw Error(ErrorCode::malformed_cycle, cyc(id) + ": gamma given for rows outside X");
  return c;
}

CooperationGraph::CooperationGraph(std::shared_ptr<const DsnTopology> topology, std::vector<Cycle> cycles)
    : topology_(std::move(topology)), cycles_(std::move(cycles)) {
  const DsnTopology& topo = *topology_;
  const int p = topo.size();

  for (std::size_t t = 0; t < cycles_.size(); ++t) {
    const Cycle& c = cycles_[t];
    if (c.level < 2) throw Error(ErrorCode::level_too_small, cyc(c.id) + ": level must be at least 2");
    for (NodeId v : c.X)
      if (!topo.contains(v)) throw Error(ErrorCode::unknown_node, cyc(c.id) + ": unknown node " + std::to_string(v));
    for (NodeId v : c.Y)
      if (!topo.contains(v)) throw Error(ErrorCode::unknown_node, cyc(c.id) + ": unknown node " + std::to_string(v));
    for (const auto& [x, cols] : c.row_cols) {
      for (NodeId y : cols) {
        if (topo.coop(x).count(y) || topo.coop(y).count(x))
          throw Error(ErrorCode::position_conflict, cyc(c.id) + ": position (" + std::to_string(x) + "," +
                                                        std::to_string(y) + ") is already a level-1 position");
        if (!vertex_.emplace(std::make_pair(x, y), t).second)
          throw Error(ErrorCode::position_conflict, cyc(c.id) + ": position (" + std::to_string(x) + "," +
                                                        std::to_string(y) + ") belongs to two cycles");
      }
    }
    max_depth_ = std::max(max_depth_, c.level);
  }

  per_.assign(p, {});
  for (int i = 1; i <= p; ++i) {
    PerNode& pn = per_[i - 1];
    for (const Cycle& c : cycles_)
      if (c.X.count(i) || c.Y.count(i)) pn.depth = std::max(pn.depth, c.level);
    const int L = pn.depth;
    pn.I.assign(L + 1, {});
    pn.R.assign(L + 1, {});
    pn.T.assign(L + 1, {});
    pn.eta.assign(L + 1, 0);
    pn.I[1] = topo.coop(i);
    for (std::size_t t = 0; t < cycles_.size(); ++t) {
      const Cycle& c = cycles_[t];
      if (c.Y.count(i)) {
        pn.R[c.level].push_back(t);
        for (NodeId x : c.col_rows.at(i)) {
          pn.I[c.level].insert(x);
          pn.eta[c.level] = std::max(pn.eta[c.level], c.gamma.at(x));
        }
      }
      if (c.X.count(i)) pn.T[c.level].push_back(t);
    }
  }
}

const CooperationGraph::PerNode& CooperationGraph::per(NodeId i) const {
  if (i < 1 || i > size()) throw Error(ErrorCode::unknown_node, "unknown node " + std::to_string(i));
  return per_[i - 1];
}

int CooperationGraph::depth(NodeId i) const { return per(i).depth; }
int CooperationGraph::max_depth() const noexcept { return max_depth_; }

const NodeSet& CooperationGraph::helpers(NodeId i, int l) const {
  static const NodeSet empty;
  const auto& pn = per(i);
  if (l < 1 || l > pn.depth) return empty;
  return pn.I[l];
}

NodeSet CooperationGraph::cumulative(NodeId i, int l) const {
  NodeSet out;
  for (int l2 = 1; l2 <= l; ++l2) {
    const auto& h = helpers(i, l2);
    out.insert(h.begin(), h.end());
  }
  return out;
}

NodeSet CooperationGraph::booster(NodeId i, int l) const {
  NodeSet excl = cumulative(i, l);
  excl.insert(i);
  NodeSet out;
  for (NodeId j : helpers(i, l))
    for (NodeId x : helpers(j, l))
      if (!excl.count(x)) out.insert(x);
  return out;
}

NodeSet CooperationGraph::booster_partners(NodeId i, int l) const {
  if (l == 1) return booster(i, 1);
  NodeSet excl = cumulative(i, l);
  excl.insert(i);
  NodeSet out;
  for (std::size_t t : T(i, l))
    for (NodeId j : cycles_[t].row_cols.at(i))
      for (NodeId x : helpers(j, cycles_[t].level))
        if (!excl.count(x)) out.insert(x);
  return out;
}

const std::vector<std::size_t>& CooperationGraph::R(NodeId i, int l) const {
  static const std::vector<std::size_t> empty;
  const auto& pn = per(i);
  if (l < 1 || l > pn.depth) return empty;
  return pn.R[l];
}

const std::vector<std::size_t>& CooperationGraph::T(NodeId i, int l) const {
  static const std::vector<std::size_t> empty;
  const auto& pn = per(i);
  if (l < 1 || l > pn.depth) return empty;
  return pn.T[l];
}

NodeSet CooperationGraph::V(NodeId i, int l) const {
  NodeSet out;
  for (std::size_t t : R(i, l)) out.insert(cycles_[t].Y.begin(), cycles_[t].Y.end());
  return out;
}

int CooperationGraph::eta(NodeId i, int l) const {
  const auto& pn = per(i);
  if (l < 2 || l > pn.depth) return 0;
  return pn.eta[l];
}

NodeSet CooperationGraph::column_component(NodeId i, int l) const {
  NodeSet comp;
  if (R(i, l).empty()) return comp;
  comp.insert(i);
  bool grew = true;
  while (grew) {
    grew = false;
    for (const Cycle& c : cycles_) {
      if (c.level != l) continue;
      bool touches = std::any_of(c.Y.begin(), c.Y.end(), [&](NodeId y) { return comp.count(y) > 0; });
      if (!touches) continue;
      for (NodeId y : c.Y) grew |= comp.insert(y).second;
    }
  }
  return comp;
}

int CooperationGraph::cycle_level(NodeId i, NodeId j) const {
  auto it = vertex_.find({i, j});
  return it == vertex_.end() ? 0 : cycles_[it->second].level;
}

std::vector<std::vector<int>> cooperation_matrix(const CooperationGraph& g) {
  const int p = g.size();
  std::vector<std::vector<int>> D(p, std::vector<int>(p, 0));
  for (int i = 1; i <= p; ++i)
    for (int l = 1; l <= g.depth(i); ++l)
      for (NodeId j : g.helpers(i, l)) D[i - 1][j - 1] = l;
  return D;
}

CompatibilityReport check_compatible(const CooperationGraph& g) {
  CompatibilityReport rep;
  const auto& cycles = g.cycles();
  for (int i = 1; i <= g.size(); ++i) {
    // Condition 1: column sets of the cycles through column i, with i itself removed, are disjoint.
    std::vector<std::size_t> Ri;
    for (int l = 2; l <= g.depth(i); ++l) Ri.insert(Ri.end(), g.R(i, l).begin(), g.R(i, l).end());
    for (std::size_t a = 0; a < Ri.size(); ++a) {
      for (std::size_t b = a + 1; b < Ri.size(); ++b) {
        const Cycle& ca = cycles[Ri[a]];
        const Cycle& cb = cycles[Ri[b]];
        NodeSet common;
        std::set_intersection(ca.Y.begin(), ca.Y.end(), cb.Y.begin(), cb.Y.end(),
                              std::inserter(common, common.end()));
        const std::string base = "node " + std::to_string(i) + ": column sets of " + cyc(ca.id) + " " +
                                 set_str(ca.Y) + " and " + cyc(cb.id) + " " + set_str(cb.Y);
        rep.literal.push_back({1, i, std::max(ca.level, cb.level), base + " intersect in " + set_str(common)});
        common.erase(i);
        if (!common.empty())
          rep.violations.push_back(
              {1, i, std::max(ca.level, cb.level), base + " share " + set_str(common) + " besides the node itself"});
      }
    }
    // Condition 2: peers that share a level-l column set must be covered by M_i.
    const NodeSet& Mi = g.topology().coop(i);
    for (int l = 2; l <= g.depth(i); ++l) {
      NodeSet Vi = g.V(i, l);
      for (NodeId j : Vi) {
        if (j == i) continue;
        NodeSet Vj = g.V(j, l);
        if (!subset(Vj, Mi))
          rep.literal.push_back({2, i, l, "node " + std::to_string(i) + ": V_" + std::to_string(j) + " = " +
                                              set_str(Vj) + " not within M = " + set_str(Mi)});
        Vj.erase(i);
        if (!subset(Vj, Mi))
          rep.violations.push_back({2, i, l, "node " + std::to_string(i) + ": peers " + set_str(Vj) + " of column " +
                                                 std::to_string(j) + " not within M = " + set_str(Mi)});
      }
    }
  }
  return rep;
}

}  // namespace dsn
