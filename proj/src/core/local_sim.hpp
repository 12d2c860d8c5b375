#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "core/coloring.hpp"
#include "core/common.hpp"
#include "core/hypergraph.hpp"

namespace lhc {

// A view accessor touched a fact the unit has not received. Decision code
// must guard every read behind the corresponding knows_* query; this firing
// means a locality bug, not a user error.
struct ViewAccessError : Error {
    using Error::Error;
};

// One network unit of the bipartite communication graph.
struct UnitId {
    enum class Kind : std::uint8_t { Vertex, Edge };
    Kind kind = Kind::Vertex;
    std::uint32_t index = 0;

    static UnitId vertex(VertexId v) { return {Kind::Vertex, v}; }
    static UnitId edge(EdgeId e) { return {Kind::Edge, e}; }
    bool operator==(const UnitId&) const = default;
};

// Immutable phase-start snapshot shared by all views of one gossip phase.
//
// Facts are the unit of knowledge:
//   fact id e                < n_edges   -- edge fact: the edge's id, vertex
//                                           list, per-vertex fixed profile,
//                                           and its (active) status;
//   fact id n_edges + v                  -- vertex fact: v's temporary color.
// An edge fact exists for every phase-start active edge and originates at
// that edge's unit and at each of its undecided vertices. A vertex fact
// exists for every undecided vertex and originates there. Participating
// units (undecided vertices, active edges) exchange entire views each round;
// everything else stays silent.
class PhaseSnapshot {
public:
    PhaseSnapshot(const Hypergraph& h, const PartialColoringState& st,
                  const std::vector<Color>& temp);

    const Hypergraph& hypergraph() const { return *h_; }
    std::uint32_t n_facts() const { return n_facts_; }
    bool vertex_participates(VertexId v) const { return !fixed_[v].has_value(); }
    bool edge_participates(EdgeId e) const { return active_[e] != 0; }
    std::optional<Color> fixed(VertexId v) const { return fixed_[v]; }
    Color temp(VertexId v) const { return temp_[v]; }

    std::uint32_t edge_fact(EdgeId e) const { return e; }
    std::uint32_t vertex_fact(VertexId v) const { return h_->n_edges() + v; }

    // Facts a unit holds before any communication.
    std::vector<std::uint32_t> seed_facts(UnitId unit) const;

private:
    const Hypergraph* h_;
    std::vector<std::optional<Color>> fixed_;
    std::vector<char> active_;
    std::vector<Color> temp_;
    std::uint32_t n_facts_ = 0;
};

class RoundEngine;

// Read-only window onto one unit's knowledge. All accessors enforce
// locality: reading data whose fact has not arrived throws ViewAccessError.
class LocalView {
public:
    UnitId owner() const { return owner_; }
    const PhaseSnapshot& snapshot() const { return *snap_; }

    bool knows_edge(EdgeId e) const;
    std::vector<EdgeId> known_edges() const; // ascending
    // Vertex list of a known edge.
    const std::vector<VertexId>& edge_vertices(EdgeId e) const;
    // True when some known edge contains v (edge facts carry the fixed
    // profile of their vertices, so v's status travels with them).
    bool knows_vertex_status(VertexId v) const;
    std::optional<Color> vertex_fixed(VertexId v) const;
    bool knows_temp(VertexId v) const;
    Color temp(VertexId v) const;

    std::vector<std::uint32_t> fact_ids() const; // ascending, for oracle comparison

private:
    friend class RoundEngine;
    LocalView(const PhaseSnapshot& snap, const std::vector<std::uint64_t>& bits, UnitId owner)
        : snap_(&snap), bits_(&bits), owner_(owner) {}

    bool has_fact(std::uint32_t f) const {
        return ((*bits_)[f >> 6] >> (f & 63)) & 1u;
    }

    const PhaseSnapshot* snap_;
    const std::vector<std::uint64_t>* bits_;
    UnitId owner_;
};

// Synchronous gossip over the bipartite vertex/edge graph. Each round every
// participating unit broadcasts its whole current view to every
// participating neighbour; views only grow, so a round is a bitset OR-merge
// against the previous round's states.
class RoundEngine {
public:
    RoundEngine(const Hypergraph& h, const PartialColoringState& st,
                const std::vector<Color>& temp);

    void step_round();
    void run_gossip(std::uint32_t rounds);
    std::uint32_t rounds_run() const { return rounds_; }
    // Cumulative count of view transmissions (one per ordered participating
    // neighbour pair per round).
    std::uint64_t messages_sent() const { return messages_; }

    const PhaseSnapshot& snapshot() const { return snap_; }
    LocalView vertex_view(VertexId v) const { return {snap_, bits_[unit_slot(UnitId::vertex(v))], UnitId::vertex(v)}; }
    LocalView edge_view(EdgeId e) const { return {snap_, bits_[unit_slot(UnitId::edge(e))], UnitId::edge(e)}; }
    LocalView view(UnitId unit) const {
        return unit.kind == UnitId::Kind::Vertex ? vertex_view(unit.index) : edge_view(unit.index);
    }

private:
    std::size_t unit_slot(UnitId unit) const {
        return unit.kind == UnitId::Kind::Vertex ? unit.index
                                                 : snap_.hypergraph().n_vertices() + unit.index;
    }

    PhaseSnapshot snap_;
    std::size_t words_ = 0;
    std::vector<std::vector<std::uint64_t>> bits_; // per unit slot
    std::vector<std::vector<std::uint64_t>> scratch_;
    std::uint64_t links_ = 0; // participating (vertex, edge) incidences
    std::uint32_t rounds_ = 0;
    std::uint64_t messages_ = 0;
};

// Independent reference for the engine: per-fact multi-source BFS over the
// participating bipartite graph. A unit knows a fact after r rounds iff it
// seeds the fact, or it participates and lies within bipartite distance r of
// some participating unit seeding it. Returns ascending fact ids.
std::vector<std::uint32_t> oracle_fact_ids(const Hypergraph& h, const PartialColoringState& st,
                                           const std::vector<Color>& temp, UnitId unit,
                                           std::uint32_t rounds);

} // namespace lhc
