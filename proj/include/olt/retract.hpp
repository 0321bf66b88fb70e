#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "olt/permutation.hpp"

namespace olt {

/// Vertex id of the dummy vertex in a LabeledDigraph.
inline constexpr std::uint32_t kDummy = 0xffffffffu;
inline constexpr std::uint32_t kNone = 0xffffffffu;

struct EdgeEnds {
  std::uint32_t source = 0;  // kDummy for edges out of the dummy vertex
  std::uint32_t target = 0;
};

/// Directed graph with loops on {0, ..., vertex_count-1} plus the dummy vertex.
/// Labels are optional only on edges out of the dummy vertex.
struct LabeledDigraph {
  struct Edge {
    std::uint32_t source = 0;
    std::uint32_t target = 0;
    std::optional<Permutation> label;
  };

  std::uint32_t vertex_count = 0;
  /// Degree of the labels; used for the identity elements of an edgeless graph.
  std::size_t label_degree = 0;
  std::vector<Edge> edges;

  void add_edge(std::uint32_t source, std::uint32_t target, Permutation label);
  void add_dummy_edge(std::uint32_t target);
};

/// Returns true when a should be preferred over b as a representative.
using RepresentativePolicy = std::function<bool(std::uint32_t a, std::uint32_t b)>;

/// Components, representatives and a breadth-first spanning forest of the
/// underlying undirected graph. Label-free, so callers that compute labels
/// lazily can reuse it.
struct RetractForest {
  std::vector<std::uint32_t> component;      // per vertex
  std::vector<bool> component_eligible;      // per component
  std::vector<std::uint32_t> representative; // per component; kNone when ineligible
  std::vector<std::uint32_t> tree_parent;    // per vertex; kNone for roots and ineligible vertices
  std::vector<std::uint32_t> tree_edge;      // per vertex; index of the edge joining it to tree_parent
  std::vector<bool> tree_forward;            // the tree edge runs tree_parent -> vertex
  std::vector<std::uint32_t> bfs_order;      // eligible vertices, parents before children
  std::vector<std::uint32_t> loops;          // edges v -> v
  std::vector<std::uint32_t> non_tree_edges; // labeled edges within eligible components, loops excluded

  std::size_t component_count() const { return component_eligible.size(); }
  bool eligible(std::uint32_t v) const { return component_eligible[component[v]]; }
  bool is_representative(std::uint32_t v) const {
    return eligible(v) && representative[component[v]] == v;
  }
};

/// Linear in vertices plus edges. The default policy picks the smallest index.
RetractForest retract_forest(std::uint32_t vertex_count, std::span<const EdgeEnds> edges,
                             const RepresentativePolicy& prefer = {});

struct GroupRetract {
  std::vector<std::uint32_t> representatives;  // V, one per eligible component
  std::vector<bool> eligible;                  // per vertex
  std::vector<std::optional<Permutation>> h;   // per vertex; empty when ineligible
  std::vector<std::uint32_t> rep_of;           // per vertex; kNone when ineligible
  std::vector<std::uint32_t> loops;            // indices of loop edges
  RetractForest forest;
};

/// Action of a permutation label on graph vertices, used by validation.
using VertexAction = std::function<std::uint32_t(const Permutation&, std::uint32_t)>;

/// Group retract via a spanning forest: h(rep) = 1 and h(v2) = g h(v1) along
/// tree edges (the inverse label when an edge is traversed backwards). When
/// `action` is given, every labeled edge is checked to satisfy g(v1) = v2 and
/// every h(v) to satisfy h(v)(rep) = v; failures raise IntegrityError.
GroupRetract group_retract(const LabeledDigraph& graph, const RepresentativePolicy& prefer = {},
                           const VertexAction& action = {});

}  // namespace olt
