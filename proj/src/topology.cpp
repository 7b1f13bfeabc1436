#include "dsn/topology.hpp"

#include <functional>
#include <queue>
#include <string>

namespace dsn {

namespace {
std::string node_str(NodeId i) { return "node " + std::to_string(i); }
}  // namespace

DsnTopology::DsnTopology(std::vector<NodeParams> nodes, std::vector<Edge> edges,
                         std::map<NodeId, NodeSet> coop)
    : nodes_(std::move(nodes)), edges_(std::move(edges)), explicit_coop_(std::move(coop)) {
  const int p = size();
  for (int i = 1; i <= p; ++i) {
    const auto& np = nodes_[i - 1];
    if (np.k <= 0) throw Error(ErrorCode::parameter, node_str(i) + ": k must be positive");
    if (np.r <= 0) throw Error(ErrorCode::parameter, node_str(i) + ": r must be positive");
    if (np.delta < 0) throw Error(ErrorCode::parameter, node_str(i) + ": delta must be non-negative");
    if (np.delta >= np.r)
      throw Error(ErrorCode::delta_not_below_r, node_str(i) + ": delta must be strictly below r");
  }

  neighbors_.assign(p, {});
  adj_.assign(p, {});
  for (const auto& e : edges_) {
    if (!contains(e.a) || !contains(e.b))
      throw Error(ErrorCode::unknown_node, "edge " + std::to_string(e.a) + "-" + std::to_string(e.b) +
                                               " references an unknown node");
    if (e.a == e.b) throw Error(ErrorCode::self_loop, "self-loop at " + node_str(e.a));
    if (e.t <= 0)
      throw Error(ErrorCode::bad_latency, "edge " + std::to_string(e.a) + "-" + std::to_string(e.b) +
                                              " must have positive latency");
    if (neighbors_[e.a - 1].count(e.b))
      throw Error(ErrorCode::duplicate_edge, "duplicate edge " + std::to_string(e.a) + "-" + std::to_string(e.b));
    neighbors_[e.a - 1].insert(e.b);
    neighbors_[e.b - 1].insert(e.a);
    adj_[e.a - 1][e.b] = e.t;
    adj_[e.b - 1][e.a] = e.t;
  }

  coop_ = neighbors_;
  for (const auto& [i, set] : explicit_coop_) {
    if (!contains(i)) throw Error(ErrorCode::unknown_node, "coop entry for unknown " + node_str(i));
    if (set.empty()) throw Error(ErrorCode::empty_coop, node_str(i) + ": cooperation set is empty");
    for (NodeId j : set) {
      if (!contains(j)) throw Error(ErrorCode::unknown_node, node_str(i) + ": coop member " + std::to_string(j) + " unknown");
      if (!neighbors_[i - 1].count(j))
        throw Error(ErrorCode::coop_not_subset,
                    node_str(i) + ": coop member " + std::to_string(j) + " is not a neighbor");
    }
    coop_[i - 1] = set;
  }
  // An isolated node has nothing to cooperate with; any other node must end up with a non-empty M_i.
  for (int i = 1; i <= p; ++i)
    if (coop_[i - 1].empty() && !neighbors_[i - 1].empty())
      throw Error(ErrorCode::empty_coop, node_str(i) + ": cooperation set is empty");
}

void DsnTopology::check_index(NodeId i) const {
  if (!contains(i)) throw Error(ErrorCode::unknown_node, "unknown " + node_str(i));
}

const NodeParams& DsnTopology::node(NodeId i) const {
  check_index(i);
  return nodes_[i - 1];
}

const NodeSet& DsnTopology::neighborhood(NodeId i) const {
  check_index(i);
  return neighbors_[i - 1];
}

const NodeSet& DsnTopology::coop(NodeId i) const {
  check_index(i);
  return coop_[i - 1];
}

std::optional<Time> DsnTopology::latency(NodeId i, NodeId j) const {
  check_index(i);
  check_index(j);
  auto it = adj_[i - 1].find(j);
  if (it == adj_[i - 1].end()) return std::nullopt;
  return it->second;
}

std::vector<std::optional<Time>> DsnTopology::dijkstra(NodeId src) const {
  std::vector<std::optional<Time>> dist(size());
  using Item = std::pair<Time, NodeId>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
  dist[src - 1] = Time(0);
  pq.emplace(Time(0), src);
  while (!pq.empty()) {
    auto [d, u] = pq.top();
    pq.pop();
    if (*dist[u - 1] < d) continue;
    for (const auto& [v, w] : adj_[u - 1]) {
      const Time nd = d + w;
      if (!dist[v - 1] || nd < *dist[v - 1]) {
        dist[v - 1] = nd;
        pq.emplace(nd, v);
      }
    }
  }
  return dist;
}

Time DsnTopology::shortest_path_time(NodeId i, NodeId j) const {
  check_index(i);
  check_index(j);
  auto d = dijkstra(i)[j - 1];
  if (!d) throw Error(ErrorCode::unreachable, node_str(j) + " is unreachable from " + node_str(i));
  return *d;
}

std::vector<std::vector<std::optional<Time>>> DsnTopology::all_pairs_times() const {
  std::vector<std::vector<std::optional<Time>>> out;
  out.reserve(size());
  for (int i = 1; i <= size(); ++i) out.push_back(dijkstra(i));
  return out;
}

bool operator==(const DsnTopology& a, const DsnTopology& b) {
  return a.nodes_ == b.nodes_ && a.edges_ == b.edges_ && a.coop_ == b.coop_;
}

}  // namespace dsn
