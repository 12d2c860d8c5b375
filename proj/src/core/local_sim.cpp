#include "core/local_sim.hpp"

#include <algorithm>
#include <deque>

namespace lhc {

PhaseSnapshot::PhaseSnapshot(const Hypergraph& h, const PartialColoringState& st,
                             const std::vector<Color>& temp)
    : h_(&h), temp_(temp) {
    if (st.n_vertices() != h.n_vertices() || st.n_edges() != h.n_edges())
        throw ValidationError("state does not match the hypergraph");
    if (temp_.size() != h.n_vertices())
        throw ValidationError("temporary coloring does not cover every vertex");
    fixed_.resize(h.n_vertices());
    active_.resize(h.n_edges());
    for (VertexId v = 0; v < h.n_vertices(); ++v) fixed_[v] = st.fixed_color(v);
    for (EdgeId e = 0; e < h.n_edges(); ++e) active_[e] = st.edge_active(e) ? 1 : 0;
    n_facts_ = h.n_edges() + h.n_vertices();
}

std::vector<std::uint32_t> PhaseSnapshot::seed_facts(UnitId unit) const {
    std::vector<std::uint32_t> out;
    if (unit.kind == UnitId::Kind::Edge) {
        if (edge_participates(unit.index)) out.push_back(edge_fact(unit.index));
        return out;
    }
    const VertexId v = unit.index;
    // Every vertex knows which of its edges are still in play; only
    // undecided vertices additionally hold (and ever transmit) a temp color.
    for (EdgeId e : h_->edges_of(v))
        if (edge_participates(e)) out.push_back(edge_fact(e));
    if (vertex_participates(v)) out.push_back(vertex_fact(v));
    std::sort(out.begin(), out.end());
    return out;
}

bool LocalView::knows_edge(EdgeId e) const {
    if (e >= snap_->hypergraph().n_edges()) throw ValidationError("edge id out of range");
    return has_fact(snap_->edge_fact(e));
}

std::vector<EdgeId> LocalView::known_edges() const {
    std::vector<EdgeId> out;
    for (EdgeId e = 0; e < snap_->hypergraph().n_edges(); ++e)
        if (has_fact(snap_->edge_fact(e))) out.push_back(e);
    return out;
}

const std::vector<VertexId>& LocalView::edge_vertices(EdgeId e) const {
    if (!knows_edge(e))
        throw ViewAccessError("edge " + std::to_string(e) + " is outside this view");
    return snap_->hypergraph().edge(e);
}

bool LocalView::knows_vertex_status(VertexId v) const {
    for (EdgeId e : snap_->hypergraph().edges_of(v))
        if (has_fact(snap_->edge_fact(e))) return true;
    return false;
}

std::optional<Color> LocalView::vertex_fixed(VertexId v) const {
    if (!knows_vertex_status(v))
        throw ViewAccessError("vertex " + std::to_string(v) + " status is outside this view");
    return snap_->fixed(v);
}

bool LocalView::knows_temp(VertexId v) const {
    if (v >= snap_->hypergraph().n_vertices()) throw ValidationError("vertex id out of range");
    return has_fact(snap_->vertex_fact(v));
}

Color LocalView::temp(VertexId v) const {
    if (!knows_temp(v))
        throw ViewAccessError("temp color of vertex " + std::to_string(v) +
                              " is outside this view");
    return snap_->temp(v);
}

std::vector<std::uint32_t> LocalView::fact_ids() const {
    std::vector<std::uint32_t> out;
    for (std::uint32_t f = 0; f < snap_->n_facts(); ++f)
        if (has_fact(f)) out.push_back(f);
    return out;
}

RoundEngine::RoundEngine(const Hypergraph& h, const PartialColoringState& st,
                         const std::vector<Color>& temp)
    : snap_(h, st, temp) {
    const std::size_t units = h.n_vertices() + h.n_edges();
    words_ = (snap_.n_facts() + 63) / 64;
    bits_.assign(units, std::vector<std::uint64_t>(words_, 0));
    scratch_ = bits_;
    auto set_fact = [&](std::size_t slot, std::uint32_t f) {
        bits_[slot][f >> 6] |= 1ULL << (f & 63);
    };
    for (VertexId v = 0; v < h.n_vertices(); ++v)
        for (std::uint32_t f : snap_.seed_facts(UnitId::vertex(v))) set_fact(v, f);
    for (EdgeId e = 0; e < h.n_edges(); ++e)
        for (std::uint32_t f : snap_.seed_facts(UnitId::edge(e)))
            set_fact(h.n_vertices() + e, f);
    for (EdgeId e = 0; e < h.n_edges(); ++e)
        if (snap_.edge_participates(e))
            for (VertexId v : h.edge(e))
                if (snap_.vertex_participates(v)) ++links_;
}

void RoundEngine::step_round() {
    const Hypergraph& h = snap_.hypergraph();
    scratch_ = bits_; // previous-round views: all sends within a round are simultaneous
    for (EdgeId e = 0; e < h.n_edges(); ++e) {
        if (!snap_.edge_participates(e)) continue;
        const std::size_t eslot = h.n_vertices() + e;
        for (VertexId v : h.edge(e)) {
            if (!snap_.vertex_participates(v)) continue;
            for (std::size_t w = 0; w < words_; ++w) {
                bits_[eslot][w] |= scratch_[v][w];
                bits_[v][w] |= scratch_[eslot][w];
            }
        }
    }
    ++rounds_;
    messages_ += 2 * links_;
}

void RoundEngine::run_gossip(std::uint32_t rounds) {
    for (std::uint32_t r = 0; r < rounds; ++r) step_round();
}

std::vector<std::uint32_t> oracle_fact_ids(const Hypergraph& h, const PartialColoringState& st,
                                           const std::vector<Color>& temp, UnitId unit,
                                           std::uint32_t rounds) {
    PhaseSnapshot snap(h, st, temp);
    const std::size_t units = h.n_vertices() + h.n_edges();
    auto slot = [&](UnitId u) {
        return u.kind == UnitId::Kind::Vertex ? u.index : h.n_vertices() + u.index;
    };
    auto participates = [&](std::size_t s) {
        return s < h.n_vertices() ? snap.vertex_participates(static_cast<VertexId>(s))
                                  : snap.edge_participates(static_cast<EdgeId>(s - h.n_vertices()));
    };

    std::vector<std::uint32_t> seeds = snap.seed_facts(unit);
    std::vector<char> known(snap.n_facts(), 0);
    for (std::uint32_t f : seeds) known[f] = 1;

    if (participates(slot(unit))) {
        // Seed holders per fact, restricted to units that actually transmit.
        std::vector<std::vector<std::size_t>> sources(snap.n_facts());
        for (std::size_t s = 0; s < units; ++s) {
            if (!participates(s)) continue;
            UnitId u = s < h.n_vertices()
                           ? UnitId::vertex(static_cast<VertexId>(s))
                           : UnitId::edge(static_cast<EdgeId>(s - h.n_vertices()));
            for (std::uint32_t f : snap.seed_facts(u)) sources[f].push_back(s);
        }
        const std::uint32_t unreached = 0xffffffffu;
        for (std::uint32_t f = 0; f < snap.n_facts(); ++f) {
            if (known[f] || sources[f].empty()) continue;
            std::vector<std::uint32_t> dist(units, unreached);
            std::deque<std::size_t> queue;
            for (std::size_t s : sources[f]) {
                dist[s] = 0;
                queue.push_back(s);
            }
            while (!queue.empty()) {
                std::size_t cur = queue.front();
                queue.pop_front();
                if (dist[cur] >= rounds) continue;
                if (cur < h.n_vertices()) {
                    for (EdgeId e : h.edges_of(static_cast<VertexId>(cur))) {
                        const std::size_t nxt = h.n_vertices() + e;
                        if (participates(nxt) && dist[nxt] == unreached) {
                            dist[nxt] = dist[cur] + 1;
                            queue.push_back(nxt);
                        }
                    }
                } else {
                    for (VertexId v : h.edge(static_cast<EdgeId>(cur - h.n_vertices())))
                        if (participates(v) && dist[v] == unreached) {
                            dist[v] = dist[cur] + 1;
                            queue.push_back(v);
                        }
                }
            }
            if (dist[slot(unit)] <= rounds) known[f] = 1;
        }
    }

    std::vector<std::uint32_t> out;
    for (std::uint32_t f = 0; f < snap.n_facts(); ++f)
        if (known[f]) out.push_back(f);
    return out;
}

} // namespace lhc
