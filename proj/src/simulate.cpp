#include <algorithm>
#include <limits>
#include <queue>
#include <set>

#include "dsn/codec.hpp"
#include "engine.hpp"

namespace dsn {

RecoveryReport simulate_recovery(const CodeInstance& code, const CodewordSet& received, const ErasurePattern& pattern) {
  const int p = code.size();
  if (static_cast<int>(received.size()) != p || static_cast<int>(pattern.erased.size()) != p)
    throw Error(ErrorCode::dimension, "received codewords and erasure pattern must cover every node");

  const auto times = code.topology().all_pairs_times();
  // Unreachable pairs never deliver anything; a huge sentinel keeps them out of every schedule.
  const Time never(std::numeric_limits<std::int32_t>::max());
  detail::DistFn dist = [&](NodeId a, NodeId b) {
    const auto& d = times[a - 1][b - 1];
    return d ? *d : never;
  };

  detail::Facts facts(p);
  RecoveryReport report;
  std::vector<std::optional<Time>> completion(p);

  using Event = std::pair<Time, NodeId>;
  std::priority_queue<Event, std::vector<Event>, std::greater<>> queue;
  std::set<Event> pending;
  auto schedule = [&](Time t, NodeId i) {
    if (t >= never) return;
    if (pending.insert({t, i}).second) queue.emplace(t, i);
  };
  for (int i = 1; i <= p; ++i) schedule(Time(0), i);

  while (!queue.empty()) {
    const auto [now, i] = queue.top();
    queue.pop();
    pending.erase({now, i});

    const auto items = detail::gather_items(code, i, facts, dist);
    std::vector<const detail::Item*> use;
    for (const auto& it : items)
      if (it.available <= now) use.push_back(&it);
    const LocalResult res = local_decode(code, i, received[i - 1], pattern.erased[i - 1], detail::side_info(use));

    bool learned = false;
    if (res.message && !facts.knows_m(i)) {
      facts.m[i - 1] = res.message;
      facts.m_time[i - 1] = now;
      completion[i - 1] = now;
      report.trace.push_back({now, i, "message", "recovered"});
      learned = true;
    }
    for (const auto& [l, val] : res.sums) {
      if (facts.knows_s(i, l)) continue;
      facts.s[i - 1][l] = val;
      facts.s_time[i - 1][l] = now;
      report.trace.push_back({now, i, "sum", "level=" + std::to_string(l)});
      learned = true;
    }
    if (!learned) continue;
    for (int y = 1; y <= p; ++y) {
      const auto levels = code.sum_levels(y);
      if (facts.knows_m(y) && std::all_of(levels.begin(), levels.end(), [&](int l) { return facts.knows_s(y, l); }))
        continue;
      for (const auto& it : detail::gather_items(code, y, facts, dist))
        if (it.available >= now) schedule(it.available, y);
    }
  }

  detail::finalize(code, received, pattern, facts, report);
  for (int i = 1; i <= p; ++i) report.nodes[i - 1].completion = completion[i - 1];
  return report;
}

}  // namespace dsn
