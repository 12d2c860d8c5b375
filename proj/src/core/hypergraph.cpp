#include "core/hypergraph.hpp"

#include <algorithm>
#include <deque>
#include <sstream>

namespace lhc {

namespace {

std::string edge_to_string(const std::vector<VertexId>& e) {
    std::ostringstream os;
    os << "{";
    for (std::size_t i = 0; i < e.size(); ++i) os << (i ? "," : "") << e[i];
    os << "}";
    return os.str();
}

} // namespace

Hypergraph::Hypergraph(std::uint32_t n_vertices, std::uint32_t delta,
                       std::vector<std::vector<VertexId>> edges)
    : n_vertices_(n_vertices), delta_(delta), edges_(std::move(edges)) {
    if (n_vertices_ == 0) throw ValidationError("hypergraph needs at least one vertex");
    if (delta_ == 0) throw ValidationError("delta must be positive");
    if (delta_ > n_vertices_) throw ValidationError("delta exceeds the number of vertices");
    for (auto& e : edges_) {
        std::sort(e.begin(), e.end());
        if (std::adjacent_find(e.begin(), e.end()) != e.end())
            throw ValidationError("edge " + edge_to_string(e) + " repeats a vertex");
        if (e.size() != delta_)
            throw ValidationError("edge " + edge_to_string(e) + " is not delta-uniform");
        if (e.back() >= n_vertices_)
            throw ValidationError("edge " + edge_to_string(e) + " references a missing vertex");
    }
    std::sort(edges_.begin(), edges_.end());
    incidence_.assign(n_vertices_, {});
    for (EdgeId id = 0; id < edges_.size(); ++id)
        for (VertexId v : edges_[id]) incidence_[v].push_back(id);
}

Hypergraph Hypergraph::truncate_to_uniform(std::uint32_t n_vertices, std::uint32_t delta,
                                           const std::vector<std::vector<VertexId>>& raw_edges) {
    std::vector<std::vector<VertexId>> trimmed;
    trimmed.reserve(raw_edges.size());
    for (const auto& raw : raw_edges) {
        std::vector<VertexId> e(raw);
        std::sort(e.begin(), e.end());
        e.erase(std::unique(e.begin(), e.end()), e.end());
        if (e.size() < delta)
            throw EdgeTooSmall("raw edge " + edge_to_string(raw) + " has fewer than delta vertices");
        e.resize(delta); // keep the delta smallest
        trimmed.push_back(std::move(e));
    }
    return Hypergraph(n_vertices, delta, std::move(trimmed));
}

bool Hypergraph::shares_vertex(EdgeId a, EdgeId b) const {
    const auto& ea = edges_[a];
    const auto& eb = edges_[b];
    std::size_t i = 0, j = 0;
    while (i < ea.size() && j < eb.size()) {
        if (ea[i] == eb[j]) return true;
        if (ea[i] < eb[j]) ++i; else ++j;
    }
    return false;
}

IntersectionGraph::IntersectionGraph(std::vector<std::vector<EdgeId>> adjacency)
    : adj_(std::move(adjacency)) {}

IntersectionGraph IntersectionGraph::build(const Hypergraph& h) {
    std::vector<std::vector<EdgeId>> adj(h.n_edges());
    // Gather neighbours through shared vertices instead of testing all pairs.
    std::vector<char> seen(h.n_edges(), 0);
    for (EdgeId e = 0; e < h.n_edges(); ++e) {
        std::vector<EdgeId> nbrs;
        for (VertexId v : h.edge(e))
            for (EdgeId f : h.edges_of(v))
                if (f != e && !seen[f]) {
                    seen[f] = 1;
                    nbrs.push_back(f);
                }
        for (EdgeId f : nbrs) seen[f] = 0;
        std::sort(nbrs.begin(), nbrs.end());
        adj[e] = std::move(nbrs);
    }
    return IntersectionGraph(std::move(adj));
}

bool IntersectionGraph::adjacent(EdgeId a, EdgeId b) const {
    const auto& na = adj_[a];
    return std::binary_search(na.begin(), na.end(), b);
}

std::size_t IntersectionGraph::max_degree() const {
    std::size_t d = 0;
    for (const auto& n : adj_) d = std::max(d, n.size());
    return d;
}

std::vector<std::uint32_t> IntersectionGraph::bfs_distances(EdgeId src) const {
    std::vector<std::uint32_t> dist(adj_.size(), kUnreachable);
    std::deque<EdgeId> queue{src};
    dist[src] = 0;
    while (!queue.empty()) {
        EdgeId cur = queue.front();
        queue.pop_front();
        for (EdgeId nxt : adj_[cur])
            if (dist[nxt] == kUnreachable) {
                dist[nxt] = dist[cur] + 1;
                queue.push_back(nxt);
            }
    }
    return dist;
}

std::optional<std::uint32_t> graph_distance(const IntersectionGraph& g, EdgeId a, EdgeId b) {
    auto dist = g.bfs_distances(a);
    if (dist[b] == IntersectionGraph::kUnreachable) return std::nullopt;
    return dist[b];
}

IntersectionGraph band_intersection_graph(const IntersectionGraph& g, std::uint32_t a) {
    if (a == 0) throw DomainError("band parameter must be positive");
    std::vector<std::vector<EdgeId>> adj(g.n_nodes());
    for (EdgeId e = 0; e < g.n_nodes(); ++e) {
        auto dist = g.bfs_distances(e);
        for (EdgeId f = 0; f < g.n_nodes(); ++f)
            if (dist[f] == a || dist[f] == a + 1) adj[e].push_back(f);
    }
    return IntersectionGraph(std::move(adj));
}

namespace {

// Components of `s` under `relation`, restricted to members of `s`.
std::vector<std::vector<EdgeId>> components_in(const IntersectionGraph& relation,
                                               const std::vector<EdgeId>& s) {
    std::vector<char> in_s(relation.n_nodes(), 0);
    for (EdgeId e : s) {
        if (e >= relation.n_nodes()) throw ValidationError("edge id out of range in subset");
        in_s[e] = 1;
    }
    std::vector<char> done(relation.n_nodes(), 0);
    std::vector<EdgeId> sorted(s);
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());

    std::vector<std::vector<EdgeId>> out;
    for (EdgeId seed : sorted) {
        if (done[seed]) continue;
        std::vector<EdgeId> comp;
        std::deque<EdgeId> queue{seed};
        done[seed] = 1;
        while (!queue.empty()) {
            EdgeId cur = queue.front();
            queue.pop_front();
            comp.push_back(cur);
            for (EdgeId nxt : relation.neighbors(cur))
                if (in_s[nxt] && !done[nxt]) {
                    done[nxt] = 1;
                    queue.push_back(nxt);
                }
        }
        std::sort(comp.begin(), comp.end());
        out.push_back(std::move(comp));
    }
    // Seeds were visited in ascending order, so components are already
    // ordered by their smallest member.
    return out;
}

} // namespace

std::vector<std::vector<EdgeId>> components_12(const IntersectionGraph& g,
                                               const std::vector<EdgeId>& s) {
    return components_12_in_band(band_intersection_graph(g, 1), s);
}

std::vector<std::vector<EdgeId>> components_12_in_band(const IntersectionGraph& band1,
                                                       const std::vector<EdgeId>& s) {
    return components_in(band1, s);
}

std::vector<std::vector<EdgeId>> components_23(const IntersectionGraph& g,
                                               const std::vector<EdgeId>& s) {
    return components_23_in_band(g, band_intersection_graph(g, 2), s);
}

std::vector<std::vector<EdgeId>> components_23_in_band(const IntersectionGraph& g,
                                                       const IntersectionGraph& band2,
                                                       const std::vector<EdgeId>& s) {
    std::vector<std::vector<EdgeId>> out;
    for (const auto& part : components_in(band2, s)) {
        // Thin to a pairwise vertex-disjoint subset; two edge nodes are
        // disjoint exactly when they are non-adjacent in g.
        std::vector<EdgeId> kept;
        for (EdgeId e : part) {
            bool clash = false;
            for (EdgeId k : kept)
                if (g.adjacent(e, k)) {
                    clash = true;
                    break;
                }
            if (!clash) kept.push_back(e);
        }
        for (auto& sub : components_in(band2, kept)) out.push_back(std::move(sub));
    }
    std::sort(out.begin(), out.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });
    return out;
}

std::vector<EdgeId> skeleton_23(const IntersectionGraph& g,
                                const std::vector<EdgeId>& component) {
    return skeleton_23_in_band(g, band_intersection_graph(g, 2), component);
}

std::vector<EdgeId> skeleton_23_in_band(const IntersectionGraph& g,
                                        const IntersectionGraph& band2,
                                        const std::vector<EdgeId>& component) {
    if (component.empty()) throw EmptyComponent("skeleton of an empty component");
    std::vector<EdgeId> sorted(component);
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());

    std::vector<EdgeId> skel{sorted.front()};
    std::vector<char> in_skel(g.n_nodes(), 0);
    in_skel[sorted.front()] = 1;
    bool grew = true;
    while (grew) {
        grew = false;
        for (EdgeId e : sorted) {
            if (in_skel[e]) continue;
            bool disjoint = true;
            bool banded = false;
            for (EdgeId m : skel) {
                if (g.adjacent(e, m)) {
                    disjoint = false;
                    break;
                }
                if (!banded && band2.adjacent(e, m)) banded = true;
            }
            if (disjoint && banded) {
                skel.push_back(e);
                in_skel[e] = 1;
                grew = true;
                break; // restart the scan so growth order stays canonical
            }
        }
    }
    std::sort(skel.begin(), skel.end());
    return skel;
}

bool verify_skeleton_23(const IntersectionGraph& g, const std::vector<EdgeId>& component,
                        const std::vector<EdgeId>& skeleton, std::string* why) {
    auto fail = [&](const std::string& reason) {
        if (why) *why = reason;
        return false;
    };
    if (component.empty()) return fail("component is empty");
    if (skeleton.empty()) return fail("skeleton is empty");
    std::vector<EdgeId> comp(component);
    std::sort(comp.begin(), comp.end());
    for (EdgeId m : skeleton)
        if (!std::binary_search(comp.begin(), comp.end(), m))
            return fail("skeleton member " + std::to_string(m) + " outside the component");
    for (std::size_t i = 0; i < skeleton.size(); ++i)
        for (std::size_t j = i + 1; j < skeleton.size(); ++j)
            if (g.adjacent(skeleton[i], skeleton[j]))
                return fail("skeleton members " + std::to_string(skeleton[i]) + " and " +
                            std::to_string(skeleton[j]) + " share a vertex");
    IntersectionGraph band2 = band_intersection_graph(g, 2);
    auto parts = components_in(band2, skeleton);
    if (parts.size() != 1) return fail("skeleton is not (2,3)-connected");
    // 1,2-domination: every component edge within distance 2 of the skeleton.
    for (EdgeId e : comp) {
        auto dist = g.bfs_distances(e);
        bool covered = false;
        for (EdgeId m : skeleton)
            if (dist[m] != IntersectionGraph::kUnreachable && dist[m] <= 2) {
                covered = true;
                break;
            }
        if (!covered)
            return fail("component edge " + std::to_string(e) + " is not dominated");
    }
    // Maximality: nothing left in the component is addable, i.e. disjoint
    // from every member yet at distance 2 or 3 from one of them.
    for (EdgeId e : comp) {
        if (std::find(skeleton.begin(), skeleton.end(), e) != skeleton.end()) continue;
        bool disjoint = true, near = false;
        for (EdgeId m : skeleton) {
            if (g.adjacent(e, m)) disjoint = false;
            if (band2.adjacent(e, m)) near = true;
        }
        if (disjoint && near)
            return fail("component edge " + std::to_string(e) + " could still be added");
    }
    return true;
}

std::size_t max_skeleton_size(const IntersectionGraph& g, const std::vector<EdgeId>& s) {
    return max_skeleton_size_in_bands(g, band_intersection_graph(g, 1),
                                      band_intersection_graph(g, 2), s);
}

std::size_t max_skeleton_size_in_bands(const IntersectionGraph& g, const IntersectionGraph& band1,
                                       const IntersectionGraph& band2,
                                       const std::vector<EdgeId>& s) {
    std::size_t best = 0;
    for (const auto& comp : components_12_in_band(band1, s))
        best = std::max(best, skeleton_23_in_band(g, band2, comp).size());
    return best;
}

std::uint32_t component_diameter(const IntersectionGraph& g, const std::vector<EdgeId>& members) {
    if (members.empty()) throw EmptyComponent("diameter of an empty component");
    std::uint32_t diam = 0;
    for (EdgeId a : members) {
        auto dist = g.bfs_distances(a);
        for (EdgeId b : members) {
            if (dist[b] == IntersectionGraph::kUnreachable) return IntersectionGraph::kUnreachable;
            diam = std::max(diam, dist[b]);
        }
    }
    return diam;
}

} // namespace lhc
