#include "line_search.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <queue>
#include <string>
#include <unordered_map>

namespace mvi::detail {

namespace {

constexpr LsCost kNot{1, 1};
constexpr LsCost kCnot{1, 14};
constexpr LsCost kToffoli{5, 54};

struct Node {
  std::vector<std::uint64_t> lines;  // modifiable lines in physical order
  std::uint64_t target = 0;
  LsCost cost;
  std::size_t parent = ~std::size_t{0};
  LsGate gate;
};

std::string state_key(const std::vector<std::uint64_t>& lines, std::uint64_t target) {
  std::vector<std::uint64_t> sorted = lines;
  std::sort(sorted.begin(), sorted.end());
  sorted.push_back(target);
  return std::string(reinterpret_cast<const char*>(sorted.data()),
                     sorted.size() * sizeof(std::uint64_t));
}

}  // namespace

std::optional<LsSolution> line_search(const LsProblem& p) {
  const std::uint64_t dom = p.domain >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << p.domain) - 1;
  const std::size_t nf = p.free_lines.size();
  const std::size_t na = p.max_ancillas;
  const std::size_t nm = nf + na;
  const std::size_t np = p.pinned_lines.size();
  const std::size_t target_index = nm + np;
  // costs are searched in rank order and swapped back on return
  auto ranked = [&](LsCost c) { return p.tqc_first ? LsCost{c.tqc, c.maslov} : c; };
  const LsCost not_cost = ranked(kNot);
  const LsCost cnot_cost = ranked(kCnot);
  const LsCost toffoli_cost = ranked(kToffoli);
  const std::optional<LsCost> bound =
      p.upper_bound ? std::optional<LsCost>(ranked(*p.upper_bound)) : std::nullopt;

  auto unsatisfied = [&](const std::vector<std::uint64_t>& lines, std::uint64_t target) {
    std::int64_t h = 0;
    for (auto g : p.present) {
      const bool held = std::find(lines.begin(), lines.end(), g) != lines.end() ||
                        std::find(p.pinned_lines.begin(), p.pinned_lines.end(), g) !=
                            p.pinned_lines.end();
      if (!held) ++h;
    }
    if (p.use_target && target != p.target_goal) ++h;
    return h;
  };

  std::vector<Node> nodes;
  std::unordered_map<std::string, LsCost> best;
  using Entry = std::tuple<LsCost, LsCost, std::size_t>;  // f, g, node
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> open;

  Node root;
  root.lines = p.free_lines;
  for (auto& l : root.lines) l &= dom;
  root.lines.resize(nm, 0);
  nodes.push_back(root);
  best.emplace(state_key(root.lines, 0), LsCost{});
  {
    const auto h = unsatisfied(root.lines, 0);
    open.emplace(LsCost{h, h}, LsCost{}, 0);
  }

  auto value = [&](const Node& n, std::size_t idx) -> std::uint64_t {
    if (idx < nm) return n.lines[idx];
    return p.pinned_lines[idx - nm] & dom;
  };

  std::size_t expanded = 0;
  while (!open.empty()) {
    auto [f, g, id] = open.top();
    open.pop();
    {
      const auto& n = nodes[id];
      auto it = best.find(state_key(n.lines, n.target));
      if (it != best.end() && it->second < g) continue;
    }
    if (unsatisfied(nodes[id].lines, nodes[id].target) == 0) {
      LsSolution sol;
      sol.cost = ranked(nodes[id].cost);
      sol.final_lines = nodes[id].lines;
      for (std::size_t cur = id; nodes[cur].parent != ~std::size_t{0}; cur = nodes[cur].parent)
        sol.gates.push_back(nodes[cur].gate);
      std::reverse(sol.gates.begin(), sol.gates.end());
      for (auto goal : p.present) {
        std::size_t where = ~std::size_t{0};
        for (std::size_t i = 0; i < nm && where == ~std::size_t{0}; ++i)
          if (sol.final_lines[i] == goal) where = i;
        for (std::size_t i = 0; i < np && where == ~std::size_t{0}; ++i)
          if ((p.pinned_lines[i] & dom) == goal) where = nm + i;
        sol.goal_line.push_back(where);
      }
      std::vector<bool> used(na, false);
      for (const auto& gt : sol.gates) {
        if (gt.target >= nf && gt.target < nm) used[gt.target - nf] = true;
        for (auto c : gt.controls)
          if (c >= nf && c < nm) used[c - nf] = true;
      }
      sol.ancillas_used = static_cast<unsigned>(std::count(used.begin(), used.end(), true));
      return sol;
    }
    if (++expanded > p.node_limit) return std::nullopt;

    // copy: nodes may reallocate while pushing children
    const Node cur = nodes[id];
    auto push = [&](std::vector<std::uint64_t> lines, std::uint64_t target, LsGate gate,
                    const LsCost& step) {
      const LsCost cost = cur.cost + step;
      if (bound && *bound < cost) return;
      auto key = state_key(lines, target);
      auto it = best.find(key);
      if (it != best.end() && !(cost < it->second)) return;
      best[key] = cost;
      const auto h = unsatisfied(lines, target);
      Node child{std::move(lines), target, cost, id, std::move(gate)};
      nodes.push_back(std::move(child));
      open.emplace(LsCost{cost.maslov + h, cost.tqc + h}, cost, nodes.size() - 1);
    };

    // first untouched ancilla only: the rest are interchangeable with it
    std::size_t fresh = nm;
    for (std::size_t a = nf; a < nm; ++a)
      if (cur.lines[a] == 0) {
        fresh = a;
        break;
      }
    auto writable = [&](std::size_t t) {
      if (t == target_index) return p.use_target;
      if (t >= nm) return false;
      if (t >= nf && cur.lines[t] == 0 && t != fresh) return false;
      return true;
    };
    auto apply = [&](std::size_t t, std::uint64_t delta, LsGate gate, const LsCost& step) {
      if (delta == 0) return;
      auto lines = cur.lines;
      std::uint64_t target = cur.target;
      if (t == target_index)
        target ^= delta;
      else
        lines[t] ^= delta;
      push(std::move(lines), target, std::move(gate), step);
    };

    const std::size_t n_ctrl = nm + np;
    for (std::size_t t = 0; t <= target_index; ++t) {
      if (!writable(t)) continue;
      apply(t, dom, LsGate{{}, t}, not_cost);
      const bool avoid = p.free_targets_avoid_ancillas && t < nf;
      auto usable = [&](std::size_t c) {
        if (c == t) return false;
        if (c < nm && c >= nf) return !avoid && cur.lines[c] != 0;
        return true;
      };
      for (std::size_t c = 0; c < n_ctrl; ++c) {
        if (!usable(c)) continue;
        apply(t, value(cur, c), LsGate{{c}, t}, cnot_cost);
      }
      for (std::size_t c1 = 0; c1 < n_ctrl; ++c1) {
        if (!usable(c1)) continue;
        for (std::size_t c2 = c1 + 1; c2 < n_ctrl; ++c2) {
          if (!usable(c2)) continue;
          apply(t, value(cur, c1) & value(cur, c2), LsGate{{c1, c2}, t}, toffoli_cost);
        }
      }
    }
  }
  return std::nullopt;
}

std::optional<LsSolution> line_search_cached(const LsProblem& p) {
  static std::mutex mu;
  static std::map<std::vector<std::uint64_t>, std::optional<LsSolution>> cache;
  std::vector<std::uint64_t> key;
  key.push_back(p.domain);
  key.push_back(p.max_ancillas);
  key.push_back(p.use_target ? 1 : 0);
  key.push_back(p.target_goal);
  key.push_back(p.node_limit);
  key.push_back(p.free_targets_avoid_ancillas ? 1 : 0);
  key.push_back(p.tqc_first ? 1 : 0);
  key.push_back(p.upper_bound ? static_cast<std::uint64_t>(p.upper_bound->maslov) : ~0ull);
  key.push_back(p.upper_bound ? static_cast<std::uint64_t>(p.upper_bound->tqc) : ~0ull);
  key.push_back(p.free_lines.size());
  key.insert(key.end(), p.free_lines.begin(), p.free_lines.end());
  key.push_back(p.pinned_lines.size());
  key.insert(key.end(), p.pinned_lines.begin(), p.pinned_lines.end());
  key.push_back(p.present.size());
  key.insert(key.end(), p.present.begin(), p.present.end());
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  auto result = line_search(p);
  std::lock_guard<std::mutex> lock(mu);
  cache.emplace(std::move(key), result);
  return result;
}

}  // namespace mvi::detail
