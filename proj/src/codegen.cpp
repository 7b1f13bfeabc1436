#include "dsn/codegen.hpp"

#include <algorithm>
#include <sstream>

namespace dsn {

namespace {

std::string set_str(const NodeSet& s) {
  std::ostringstream os;
  os << '{';
  bool first = true;
  for (NodeId v : s) {
    os << (first ? "" : ",") << v;
    first = false;
  }
  os << '}';
  return os.str();
}

bool subset(const NodeSet& a, const NodeSet& b) { return std::includes(b.begin(), b.end(), a.begin(), a.end()); }

int sum_delta(const DsnTopology& t, const NodeSet& s) {
  int acc = 0;
  for (NodeId j : s) acc += t.node(j).delta;
  return acc;
}

void require_bound(const CooperationGraph& g, const FieldContext& f, ConstructionKind kind) {
  for (int i = 1; i <= g.size(); ++i) {
    const NodeDims d = node_dims(g, i);
    const auto need = static_cast<std::uint32_t>(d.u + d.v);
    const bool ok = kind == ConstructionKind::single_level ? f.q() > need : f.q() >= need;
    if (!ok)
      throw Error(ErrorCode::field_too_small,
                  "GF(" + std::to_string(f.q()) + ") too small for node " + std::to_string(i) + " (needs " +
                      (kind == ConstructionKind::single_level ? "more than " : "at least ") + std::to_string(need) +
                      " elements)");
  }
}

CodeInstance assemble(std::shared_ptr<const CooperationGraph> graph, FieldPtr field, ConstructionKind kind) {
  const CooperationGraph& g = *graph;
  const DsnTopology& topo = g.topology();
  for (int i = 1; i <= g.size(); ++i)
    if (topo.coop(i).empty())
      throw Error(ErrorCode::empty_coop, "node " + std::to_string(i) + " has an empty cooperation set");
  require_bound(g, *field, kind);

  std::vector<NodeCode> nodes;
  std::vector<CrossLink> links;
  for (int i = 1; i <= g.size(); ++i) {
    const NodeParams& np = topo.node(i);
    const NodeDims dims = node_dims(g, i);
    const auto elems = field->enumerate_elements(static_cast<std::size_t>(dims.u + dims.v));
    NodeCode nc{std::vector<Symbol>(elems.begin(), elems.begin() + dims.u),
                std::vector<Symbol>(elems.begin() + dims.u, elems.end()),
                Matrix(field, 0, 0), Matrix(field, 0, 0), {}, {}, {}, Matrix(field, 0, 0)};
    const Matrix T = cauchy(field, nc.a, nc.b);
    const std::size_t k = np.k, r = np.r, delta = np.delta;

    nc.stack = T.block(0, 0, T.rows(), r);
    nc.A = T.block(0, 0, k, r);
    nc.U = T.block(k, 0, delta, r);
    std::size_t row = k + delta;
    for (int l = 2; l <= g.depth(i); ++l) {
      const std::size_t eta = g.eta(i, l);
      nc.V.emplace(l, T.block(row, 0, eta, r));
      row += eta;
    }

    std::size_t col = r;
    for (NodeId j : topo.coop(i)) {
      const std::size_t dj = topo.node(j).delta;
      nc.B.emplace(j, T.block(0, col, k, dj));
      col += dj;
    }
    for (int l = 2; l <= g.depth(i); ++l) {
      for (std::size_t t : g.T(i, l)) {
        const std::size_t gam = g.cycle(t).gamma.at(i);
        nc.E.emplace(t, T.block(0, col, k, gam));
        col += gam;
      }
    }

    for (const auto& [j, Bij] : nc.B) links.push_back({i, j, 1, std::nullopt, Bij});
    for (int l = 2; l <= g.depth(i); ++l) {
      for (std::size_t t : g.T(i, l)) {
        const Cycle& c = g.cycle(t);
        const Matrix& E = nc.E.at(t);
        for (NodeId j : c.row_cols.at(i)) {
          const int eta = g.eta(j, c.level);
          if (c.gamma.at(i) > eta)
            throw Error(ErrorCode::padding_overflow, "cycle " + std::to_string(c.id) + ": gamma of row " +
                                                         std::to_string(i) + " exceeds eta of column " +
                                                         std::to_string(j));
          Matrix factor(field, k, eta);
          factor.set_block(0, 0, E);
          links.push_back({i, j, c.level, t, factor});
        }
      }
    }
    nodes.push_back(std::move(nc));
  }
  return CodeInstance(std::move(graph), std::move(field), kind, std::move(nodes), std::move(links));
}

}  // namespace

CodeInstance::CodeInstance(std::shared_ptr<const CooperationGraph> graph, FieldPtr field, ConstructionKind kind,
                           std::vector<NodeCode> nodes, std::vector<CrossLink> links)
    : graph_(std::move(graph)), field_(std::move(field)), kind_(kind), nodes_(std::move(nodes)),
      links_(std::move(links)), G_(field_, 0, 0) {
  const DsnTopology& topo = graph_->topology();
  std::size_t rows = 0, cols = 0;
  for (int i = 1; i <= size(); ++i) {
    row_off_.push_back(rows);
    col_off_.push_back(cols);
    rows += topo.node(i).k;
    cols += topo.node(i).n();
  }
  G_ = Matrix(field_, rows, cols);
  for (int i = 1; i <= size(); ++i) {
    const auto k = static_cast<std::size_t>(topo.node(i).k);
    G_.set_block(row_off_[i - 1], col_off_[i - 1], Matrix::identity(field_, k));
    G_.set_block(row_off_[i - 1], col_off_[i - 1] + k, nodes_[i - 1].A);
  }
  for (const CrossLink& lk : links_) {
    const NodeCode& to = nodes_[lk.to - 1];
    const Matrix& side = lk.level == 1 ? to.U : to.V.at(lk.level);
    G_.set_block(row_off_[lk.from - 1], col_off_[lk.to - 1] + topo.node(lk.to).k, mat_mul(lk.factor, side));
  }
}

std::vector<const CrossLink*> CodeInstance::in_links(NodeId to, int level) const {
  std::vector<const CrossLink*> out;
  for (const auto& lk : links_)
    if (lk.to == to && lk.level == level) out.push_back(&lk);
  return out;
}

int CodeInstance::width(NodeId i, int level) const {
  return level == 1 ? topology().node(i).delta : graph_->eta(i, level);
}

std::vector<int> CodeInstance::sum_levels(NodeId i) const {
  std::vector<int> out;
  for (int l = 1; l <= graph_->depth(i); ++l)
    if (width(i, l) > 0) out.push_back(l);
  return out;
}

Matrix CodeInstance::block(NodeId i, NodeId j) const {
  const DsnTopology& topo = topology();
  return G_.block(row_off_.at(i - 1), col_off_.at(j - 1) + topo.node(j).k, topo.node(i).k, topo.node(j).r);
}

NodeDims node_dims(const CooperationGraph& g, NodeId i) {
  const DsnTopology& topo = g.topology();
  const NodeParams& np = topo.node(i);
  NodeDims d{np.k + np.delta, np.r + sum_delta(topo, topo.coop(i))};
  for (int l = 2; l <= g.depth(i); ++l) {
    d.u += g.eta(i, l);
    for (std::size_t t : g.T(i, l)) d.v += g.cycle(t).gamma.at(i);
  }
  return d;
}

unsigned select_theta(const CooperationGraph& g, ConstructionKind kind) {
  std::uint32_t need = 0;
  for (int i = 1; i <= g.size(); ++i) {
    const NodeDims d = node_dims(g, i);
    need = std::max(need, static_cast<std::uint32_t>(d.u + d.v));
  }
  for (unsigned th = FieldContext::min_theta; th <= FieldContext::max_theta; ++th) {
    const std::uint32_t q = 1u << th;
    if (kind == ConstructionKind::single_level ? q > need : q >= need) return th;
  }
  throw Error(ErrorCode::field_too_small, "no supported field has " + std::to_string(need) + " elements");
}

CodeInstance build_single_level(std::shared_ptr<const DsnTopology> topology, FieldPtr field) {
  auto graph = std::make_shared<const CooperationGraph>(std::move(topology), std::vector<Cycle>{});
  return assemble(std::move(graph), std::move(field), ConstructionKind::single_level);
}

CodeInstance build_multi_level(std::shared_ptr<const CooperationGraph> graph, FieldPtr field) {
  const auto rep = check_compatible(*graph);
  if (!rep.compatible()) {
    std::string msg = "cooperation graph is not compatible:";
    for (const auto& v : rep.violations) msg += " [condition " + std::to_string(v.condition) + "] " + v.detail + ";";
    throw Error(ErrorCode::incompatible_graph, msg);
  }
  const DsnTopology& topo = graph->topology();
  for (int i = 1; i <= graph->size(); ++i) {
    int d0 = topo.node(i).r - topo.node(i).delta;
    for (int l = 2; l <= graph->depth(i); ++l) d0 -= graph->eta(i, l);
    if (d0 < 0)
      throw Error(ErrorCode::negative_local_capability,
                  "node " + std::to_string(i) + " would have local capability " + std::to_string(d0));
  }
  return assemble(std::move(graph), std::move(field), ConstructionKind::multi_level);
}

EccHierarchy::EccHierarchy(const CodeInstance& code) : code_(&code) {
  const CooperationGraph& g = code.graph();
  const DsnTopology& topo = g.topology();
  for (int i = 1; i <= g.size(); ++i) {
    const NodeParams& np = topo.node(i);
    const int L = g.depth(i);
    NodeHierarchy h;
    h.I.assign(L + 1, {});
    h.A.assign(L + 1, {});
    h.B.assign(L + 1, {});
    h.B_partner.assign(L + 1, {});
    int d0 = np.r - np.delta;
    for (int l = 2; l <= L; ++l) d0 -= g.eta(i, l);
    const int d1 = np.r + sum_delta(topo, topo.coop(i));
    h.d = {d0, d1};
    for (int l = 2; l <= L; ++l) {
      int dl = h.d.back();
      for (std::size_t t : g.T(i, l)) dl += g.cycle(t).gamma.at(i);
      h.d.push_back(dl);
    }
    for (int l = 1; l <= L; ++l) {
      h.I[l] = g.helpers(i, l);
      h.A[l] = g.cumulative(i, l);
      h.B[l] = g.booster(i, l);
      h.B_partner[l] = g.booster_partners(i, l);
    }
    if (code.kind() == ConstructionKind::multi_level) {
      h.d1_example = d0 + np.delta + sum_delta(topo, topo.coop(i));
      if (*h.d1_example != d1)
        flags_.push_back({i, 1, "d1_variant",
                          "d_1 = " + std::to_string(d1) + " by the general formula, " +
                              std::to_string(*h.d1_example) + " by the worked-example form"});
    }
    for (int l = 2; l <= L; ++l)
      if (h.B[l] != h.B_partner[l])
        flags_.push_back({i, l, "booster_variant",
                          "B = " + set_str(h.B[l]) + " (via helpers) vs " + set_str(h.B_partner[l]) + " (via column partners)"});
    nodes_.push_back(std::move(h));
  }
  for (int i = 1; i <= g.size(); ++i) {
    const auto& h = nodes_[i - 1];
    for (int l = 1; l < static_cast<int>(h.d.size()); ++l) {
      const int lam = lambda(i, l, h.B[l]);
      if (lam != h.d[l])
        flags_.push_back({i, l, "lambda_max",
                          "lambda at W = B is " + std::to_string(lam) + ", d is " + std::to_string(h.d[l])});
    }
  }
}

int EccHierarchy::lambda(NodeId i, int l, const NodeSet& W) const {
  const CooperationGraph& g = code_->graph();
  const DsnTopology& topo = g.topology();
  const auto& h = node(i);
  if (l < 1 || l >= static_cast<int>(h.d.size()))
    throw Error(ErrorCode::domain, "node " + std::to_string(i) + " has no level " + std::to_string(l));
  if (!subset(W, h.B[l]))
    throw Error(ErrorCode::domain, "helpers " + set_str(W) + " are not within B = " + set_str(h.B[l]));

  const NodeSet& Mi = topo.coop(i);
  NodeSet MW = Mi;
  MW.insert(W.begin(), W.end());
  int val = topo.node(i).r;
  for (NodeId j : Mi) {
    NodeSet Mj = topo.coop(j);
    Mj.erase(i);
    if (subset(Mj, MW)) val += topo.node(j).delta;
  }
  NodeSet iW = W;
  iW.insert(i);
  for (int l2 = 2; l2 <= l; ++l2) {
    const NodeSet A = g.cumulative(i, l2);
    for (std::size_t t : g.T(i, l2)) {
      const Cycle& c = g.cycle(t);
      bool ok = false;
      for (NodeId j : c.row_cols.at(i)) {
        NodeSet rest;
        for (NodeId x : g.helpers(j, c.level))
          if (!A.count(x)) rest.insert(x);
        ok |= subset(rest, iW);
      }
      if (ok) val += c.gamma.at(i);
    }
  }
  return val;
}

std::vector<std::pair<NodeSet, int>> EccHierarchy::lambda_table(NodeId i, int l) const {
  const NodeSet& B = node(i).B.at(l);
  if (B.size() > 16)
    throw Error(ErrorCode::capacity, "B has " + std::to_string(B.size()) + " members; enumerate on demand instead");
  const std::vector<NodeId> elems(B.begin(), B.end());
  std::vector<std::pair<NodeSet, int>> out;
  for (std::uint32_t mask = 0; mask < (1u << elems.size()); ++mask) {
    NodeSet W;
    for (std::size_t b = 0; b < elems.size(); ++b)
      if (mask & (1u << b)) W.insert(elems[b]);
    out.emplace_back(W, lambda(i, l, W));
  }
  return out;
}

NonsystematicComponent nonsystematic_component(const CodeInstance& code) {
  const DsnTopology& topo = code.topology();
  std::vector<std::size_t> cols;
  NonsystematicComponent out{Matrix(code.field(), 0, 0), {}, {}};
  for (int j = 1; j <= code.size(); ++j) {
    out.col_offsets.push_back(cols.size());
    out.row_offsets.push_back(code.row_offset(j));
    for (int c = 0; c < topo.node(j).r; ++c) cols.push_back(code.col_offset(j) + topo.node(j).k + c);
  }
  out.matrix = code.generator().select_columns(cols);
  return out;
}

}  // namespace dsn
