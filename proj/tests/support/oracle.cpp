#include "oracle.hpp"

#include <set>

namespace bssd::testing {

namespace {

struct Search {
  const BehaviorGraph& graph;
  const CapabilityProfile& profile;
  VertexKey to;
  std::vector<VertexKey> path;
  std::set<VertexKey> on_path;
  std::optional<std::vector<VertexKey>> best;

  void visit(VertexKey u) {
    if (u == to) {
      if (!best || path.size() < best->size() || (path.size() == best->size() && path < *best)) best = path;
      return;
    }
    for (const Edge* e : graph.out_edges(u)) {
      if (on_path.count(e->to) || !admissible(graph, *e, profile)) continue;
      path.push_back(e->to);
      on_path.insert(e->to);
      visit(e->to);
      on_path.erase(e->to);
      path.pop_back();
    }
  }
};

}  // namespace

std::optional<std::vector<VertexKey>> brute_force_route(const BehaviorGraph& graph, VertexKey from, VertexKey to,
                                                        const CapabilityProfile& profile) {
  Search s{graph, profile, to, {from}, {from}, std::nullopt};
  s.visit(from);
  return s.best;
}

}  // namespace bssd::testing
