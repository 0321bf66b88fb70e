#include "olt/retract.hpp"

#include <string>

#include "olt/errors.hpp"

namespace olt {

void LabeledDigraph::add_edge(std::uint32_t source, std::uint32_t target, Permutation label) {
  edges.push_back({source, target, std::move(label)});
}

void LabeledDigraph::add_dummy_edge(std::uint32_t target) { edges.push_back({kDummy, target, std::nullopt}); }

RetractForest retract_forest(std::uint32_t vertex_count, std::span<const EdgeEnds> edges,
                             const RepresentativePolicy& prefer) {
  RetractForest f;
  const std::uint32_t n = vertex_count;
  for (const auto& e : edges) {
    if (e.target >= n || (e.source != kDummy && e.source >= n))
      throw DomainError("edge endpoint out of range");
  }

  // Compressed adjacency over both directions.
  std::vector<std::uint32_t> start(n + 1, 0);
  std::vector<bool> touches_dummy(n, false);
  for (const auto& e : edges) {
    if (e.source == kDummy) {
      touches_dummy[e.target] = true;
      continue;
    }
    if (e.source == e.target) continue;
    ++start[e.source + 1];
    ++start[e.target + 1];
  }
  for (std::uint32_t v = 0; v < n; ++v) start[v + 1] += start[v];
  std::vector<std::uint32_t> adj(start[n]);
  {
    std::vector<std::uint32_t> fill(start.begin(), start.end() - 1);
    for (std::uint32_t i = 0; i < edges.size(); ++i) {
      const auto& e = edges[i];
      if (e.source == kDummy) {
        continue;
      }
      if (e.source == e.target) {
        f.loops.push_back(i);
        continue;
      }
      adj[fill[e.source]++] = i;
      adj[fill[e.target]++] = i;
    }
  }

  // Components, eligibility and the preferred vertex of each.
  f.component.assign(n, kNone);
  std::vector<std::uint32_t> queue;
  queue.reserve(n);
  for (std::uint32_t s = 0; s < n; ++s) {
    if (f.component[s] != kNone) continue;
    const auto c = static_cast<std::uint32_t>(f.component_eligible.size());
    bool eligible = true;
    std::uint32_t best = s;
    queue.assign(1, s);
    f.component[s] = c;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const std::uint32_t v = queue[head];
      if (touches_dummy[v]) eligible = false;
      if (prefer && prefer(v, best)) best = v;
      for (std::uint32_t k = start[v]; k < start[v + 1]; ++k) {
        const auto& e = edges[adj[k]];
        const std::uint32_t w = e.source == v ? e.target : e.source;
        if (f.component[w] == kNone) {
          f.component[w] = c;
          queue.push_back(w);
        }
      }
    }
    f.component_eligible.push_back(eligible);
    f.representative.push_back(eligible ? best : kNone);
  }

  // Spanning forest rooted at the representatives.
  f.tree_parent.assign(n, kNone);
  f.tree_edge.assign(n, kNone);
  f.tree_forward.assign(n, false);
  std::vector<bool> reached(n, false);
  std::vector<bool> is_tree_edge(edges.size(), false);
  for (std::uint32_t rep : f.representative) {
    if (rep == kNone) continue;
    const std::size_t first = f.bfs_order.size();
    f.bfs_order.push_back(rep);
    reached[rep] = true;
    for (std::size_t head = first; head < f.bfs_order.size(); ++head) {
      const std::uint32_t v = f.bfs_order[head];
      for (std::uint32_t k = start[v]; k < start[v + 1]; ++k) {
        const auto& e = edges[adj[k]];
        const bool forward = e.source == v;
        const std::uint32_t w = forward ? e.target : e.source;
        if (reached[w]) continue;
        reached[w] = true;
        f.tree_parent[w] = v;
        f.tree_edge[w] = adj[k];
        f.tree_forward[w] = forward;
        is_tree_edge[adj[k]] = true;
        f.bfs_order.push_back(w);
      }
    }
  }
  for (std::uint32_t i = 0; i < edges.size(); ++i) {
    const auto& e = edges[i];
    if (e.source == kDummy || e.source == e.target || is_tree_edge[i]) continue;
    if (f.eligible(e.source)) f.non_tree_edges.push_back(i);
  }
  return f;
}

GroupRetract group_retract(const LabeledDigraph& graph, const RepresentativePolicy& prefer,
                           const VertexAction& action) {
  std::vector<EdgeEnds> ends;
  ends.reserve(graph.edges.size());
  for (const auto& e : graph.edges) {
    if (e.source == kDummy && e.label) throw DomainError("edges from the dummy vertex carry no label");
    if (e.source != kDummy && !e.label) throw DomainError("edge without a label");
    ends.push_back({e.source, e.target});
  }
  if (action) {
    for (const auto& e : graph.edges) {
      if (e.source == kDummy) continue;
      if (action(*e.label, e.source) != e.target)
        throw IntegrityError("edge label does not map " + std::to_string(e.source) + " to " +
                             std::to_string(e.target));
    }
  }

  GroupRetract r;
  r.forest = retract_forest(graph.vertex_count, ends, prefer);
  const auto& f = r.forest;
  const std::uint32_t n = graph.vertex_count;
  r.eligible.assign(n, false);
  r.h.assign(n, std::nullopt);
  r.rep_of.assign(n, kNone);
  r.loops = f.loops;
  for (std::uint32_t rep : f.representative)
    if (rep != kNone) r.representatives.push_back(rep);

  std::size_t degree = graph.label_degree;
  if (degree == 0)
    for (const auto& e : graph.edges)
      if (e.label) {
        degree = e.label->degree();
        break;
      }
  for (std::uint32_t v : f.bfs_order) {
    r.eligible[v] = true;
    r.rep_of[v] = f.representative[f.component[v]];
    const std::uint32_t p = f.tree_parent[v];
    if (p == kNone) {
      r.h[v] = Permutation::identity(degree);
      continue;
    }
    const Permutation& g = *graph.edges[f.tree_edge[v]].label;
    r.h[v] = f.tree_forward[v] ? g * *r.h[p] : g.inverse() * *r.h[p];
  }
  if (action) {
    for (std::uint32_t v : f.bfs_order)
      if (action(*r.h[v], r.rep_of[v]) != v)
        throw IntegrityError("retract map fails at vertex " + std::to_string(v));
  }
  return r;
}

}  // namespace olt
