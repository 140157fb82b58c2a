#pragma once

#include <cstdint>
#include <vector>

namespace oblig::detail {

struct scc_result {
  /// SCC index of every vertex.  SCCs are numbered in the order Tarjan's
  /// algorithm closes them, so every edge goes from a higher or equal
  /// index to a lower or equal one (index 0 is a bottom SCC).
  std::vector<std::uint32_t> component;
  std::uint32_t count = 0;
};

/// Iterative Tarjan over vertices 0..n-1; `succ(v)` returns the successor
/// list of v.  Only vertices reachable from `roots` are visited; the
/// others get component UINT32_MAX.
template <class Succ>
scc_result tarjan(std::uint32_t n, const std::vector<std::uint32_t>& roots, Succ&& succ) {
  constexpr std::uint32_t none = UINT32_MAX;
  scc_result res;
  res.component.assign(n, none);
  std::vector<std::uint32_t> index(n, none), low(n, 0);
  std::vector<char> on_stack(n, 0);
  std::vector<std::uint32_t> stack;
  struct frame {
    std::uint32_t v;
    std::vector<std::uint32_t> out;
    std::size_t next;
  };
  std::vector<frame> call;
  std::uint32_t counter = 0;

  for (std::uint32_t root : roots) {
    if (index[root] != none) continue;
    auto enter = [&](std::uint32_t v) {
      index[v] = low[v] = counter++;
      stack.push_back(v);
      on_stack[v] = 1;
      call.push_back({v, succ(v), 0});
    };
    enter(root);
    while (!call.empty()) {
      frame& f = call.back();
      if (f.next < f.out.size()) {
        std::uint32_t w = f.out[f.next++];
        if (index[w] == none) {
          enter(w);
        } else if (on_stack[w] && index[w] < low[f.v]) {
          low[f.v] = index[w];
        }
        continue;
      }
      std::uint32_t v = f.v;
      call.pop_back();
      if (!call.empty() && low[v] < low[call.back().v]) low[call.back().v] = low[v];
      if (low[v] == index[v]) {
        std::uint32_t w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = 0;
          res.component[w] = res.count;
        } while (w != v);
        ++res.count;
      }
    }
  }
  return res;
}

}  // namespace oblig::detail
