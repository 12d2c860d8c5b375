#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "core/common.hpp"

namespace lhc {

// A delta-uniform hypergraph in canonical form: every edge is a strictly
// increasing vertex list of length exactly delta, and the edge list is sorted
// lexicographically. Construction canonicalizes and validates; edge ids refer
// to positions in the canonical order. Duplicate edges are permitted
// (generators may repeat a set); they are kept as distinct ids.
class Hypergraph {
public:
    Hypergraph(std::uint32_t n_vertices, std::uint32_t delta,
               std::vector<std::vector<VertexId>> edges);

    // Shrinks each raw edge to its delta smallest distinct vertices, then
    // builds the canonical hypergraph. Throws EdgeTooSmall if a raw edge has
    // fewer than delta distinct vertices.
    static Hypergraph truncate_to_uniform(std::uint32_t n_vertices, std::uint32_t delta,
                                          const std::vector<std::vector<VertexId>>& raw_edges);

    std::uint32_t n_vertices() const { return n_vertices_; }
    std::uint32_t delta() const { return delta_; }
    std::uint32_t n_edges() const { return static_cast<std::uint32_t>(edges_.size()); }
    const std::vector<VertexId>& edge(EdgeId e) const { return edges_[e]; }
    const std::vector<std::vector<VertexId>>& edges() const { return edges_; }
    // Edge ids containing v, ascending.
    const std::vector<EdgeId>& edges_of(VertexId v) const { return incidence_[v]; }
    // The regime the end-to-end algorithm is stated for: #edges == #vertices.
    bool admissible() const { return n_edges() == n_vertices_; }
    bool shares_vertex(EdgeId a, EdgeId b) const;

private:
    std::uint32_t n_vertices_ = 0;
    std::uint32_t delta_ = 0;
    std::vector<std::vector<VertexId>> edges_;
    std::vector<std::vector<EdgeId>> incidence_;
};

// Intersection graph over edge ids: a !~ b iff the edges share a vertex.
// Also reused as the container for derived (band) graphs on the same ids.
class IntersectionGraph {
public:
    static constexpr std::uint32_t kUnreachable = 0xffffffffu;

    static IntersectionGraph build(const Hypergraph& h);
    explicit IntersectionGraph(std::vector<std::vector<EdgeId>> adjacency);

    std::size_t n_nodes() const { return adj_.size(); }
    const std::vector<EdgeId>& neighbors(EdgeId e) const { return adj_[e]; }
    bool adjacent(EdgeId a, EdgeId b) const;
    std::size_t max_degree() const;
    // BFS distances from src; kUnreachable marks separate components.
    std::vector<std::uint32_t> bfs_distances(EdgeId src) const;

private:
    std::vector<std::vector<EdgeId>> adj_;
};

// Shortest path length between edge nodes, or nullopt if disconnected.
std::optional<std::uint32_t> graph_distance(const IntersectionGraph& g, EdgeId a, EdgeId b);

// Band graph: same nodes, a !~ b iff their distance in g lies in {a, a+1}.
// a == 1 gives the square of g (the (1,2) relation), a == 2 the (2,3) one.
IntersectionGraph band_intersection_graph(const IntersectionGraph& g, std::uint32_t a);

// Connected components of the subset s under the (1,2) relation of g.
// Each component is ascending; components are ordered by first member.
std::vector<std::vector<EdgeId>> components_12(const IntersectionGraph& g,
                                               const std::vector<EdgeId>& s);
// Variant taking a prebuilt band-(1,2) graph, for callers that reuse it.
std::vector<std::vector<EdgeId>> components_12_in_band(const IntersectionGraph& band1,
                                                       const std::vector<EdgeId>& s);

// Maximal pairwise vertex-disjoint groups of s that are connected under the
// (2,3) relation. Built in three deterministic stages: split s by (2,3)
// connectivity, thin each part to a pairwise-disjoint subset by ascending id
// (vertex-disjoint == non-adjacent in g), then re-split the survivors, since
// removing edges can disconnect a part.
std::vector<std::vector<EdgeId>> components_23(const IntersectionGraph& g,
                                               const std::vector<EdgeId>& s);
std::vector<std::vector<EdgeId>> components_23_in_band(const IntersectionGraph& g,
                                                       const IntersectionGraph& band2,
                                                       const std::vector<EdgeId>& s);

// Deterministic skeleton of a (1,2)-connected component: grow from the
// smallest id, repeatedly adding the smallest component edge that is
// vertex-disjoint from all current members and at distance 2 or 3 from one
// of them. At the fixpoint every component edge lies within distance 2 of
// the skeleton (any member at distance exactly 2 or 3 from it would itself
// be addable), which is the domination property verify_skeleton_23 checks.
std::vector<EdgeId> skeleton_23(const IntersectionGraph& g,
                                const std::vector<EdgeId>& component);
std::vector<EdgeId> skeleton_23_in_band(const IntersectionGraph& g,
                                        const IntersectionGraph& band2,
                                        const std::vector<EdgeId>& component);

// Checks the defining properties of a (2,3)-skeleton for `component`:
// non-empty subset, pairwise vertex-disjoint, connected under the (2,3)
// relation, every component member within distance 2 of the skeleton, and
// maximality (no addable member remains). On failure, stores a reason in
// *why when provided.
bool verify_skeleton_23(const IntersectionGraph& g, const std::vector<EdgeId>& component,
                        const std::vector<EdgeId>& skeleton, std::string* why = nullptr);

// Largest skeleton size over the (1,2)-components of s (0 for empty s).
std::size_t max_skeleton_size(const IntersectionGraph& g, const std::vector<EdgeId>& s);
std::size_t max_skeleton_size_in_bands(const IntersectionGraph& g, const IntersectionGraph& band1,
                                       const IntersectionGraph& band2,
                                       const std::vector<EdgeId>& s);

// Max pairwise distance in g between members. Throws EmptyComponent on an
// empty member list; returns kUnreachable if some pair is disconnected in g.
std::uint32_t component_diameter(const IntersectionGraph& g, const std::vector<EdgeId>& members);

} // namespace lhc
