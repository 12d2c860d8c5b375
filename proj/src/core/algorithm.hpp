#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "core/blackbox.hpp"
#include "core/coloring.hpp"
#include "core/common.hpp"
#include "core/hypergraph.hpp"
#include "core/local_sim.hpp"

namespace lhc {

// ceil(log2(n)), floored at 1: the default for both the phases-per-epoch
// budget (beta) and the number of epochs.
std::uint32_t default_phase_budget(std::uint32_t n);

struct AlgoParams {
    double alpha = 0.125;
    // Bad-vertex threshold fraction for the dangerous classification;
    // negative means "use alpha". (1/8, 1/9) is the sharpened preset.
    double dangerous_frac = -1.0;
    std::uint32_t u = 3;          // locality parameter; gossip runs 6u+2 rounds
    std::uint32_t beta = 0;       // phases per epoch; 0 -> default_phase_budget(n)
    std::uint32_t num_epochs = 0; // 0 -> default_phase_budget(n)
    std::uint32_t exhaustive_cap = 20;

    std::uint32_t gossip_rounds() const { return 6 * u + 2; }
    double effective_dangerous_frac() const {
        return dangerous_frac < 0.0 ? alpha : dangerous_frac;
    }
    ClassifyParams classify_params() const {
        return {alpha, effective_dangerous_frac()};
    }
    std::uint32_t resolved_beta(std::uint32_t n) const {
        return beta ? beta : default_phase_budget(n);
    }
    std::uint32_t resolved_epochs(std::uint32_t n) const {
        return num_epochs ? num_epochs : default_phase_budget(n);
    }
    std::uint32_t phase_budget(std::uint32_t n) const {
        return resolved_beta(n) * resolved_epochs(n);
    }
    void validate() const;
};

// What one undecided vertex resolves to after a phase's gossip.
struct VertexPlan {
    enum class Kind : std::uint8_t {
        Stay,       // bad vertex of a component that cannot be recolored yet
        FixTemp,    // good vertex adopting its temporary color
        FixAssigned // bad vertex taking its black-box assignment
    };
    Kind kind = Kind::Stay;
    Color color = Color::Red;
};

struct PieceTraceEntry {
    std::vector<EdgeId> core;   // the biased component handed to the black box
    std::vector<EdgeId> fringe; // dangerous edges pulled in alongside it
    bool feasible = false;
    RecolorResult::Method method = RecolorResult::Method::Exhaustive;
    std::uint32_t recolored = 0; // vertices assigned by the black box
};

struct PhaseTrace {
    std::uint32_t phase = 0; // 1-based
    std::vector<EdgeId> biased;
    std::vector<EdgeId> dangerous;
    // Connected (1,2)-components of the biased set in the full intersection
    // graph, with their diameters there and their (2,3)-skeleton sizes.
    std::vector<std::vector<EdgeId>> components;
    std::vector<std::uint32_t> component_diameters;
    std::vector<std::size_t> skeleton_sizes;
    std::vector<PieceTraceEntry> pieces;
    std::vector<VertexId> fixed_good;      // temporary colors made permanent
    std::vector<VertexId> fixed_recolored; // black-box assignments applied
    std::vector<VertexId> fixed_mopup;     // vertices whose edges were all settled
    std::vector<EdgeId> idled;
    bool invariant_ok = false;
};

enum class RunOutcome : std::uint8_t { Success, Exhausted };

struct RunResult {
    RunOutcome outcome = RunOutcome::Exhausted;
    // Final colors; entries are meaningful where decided[v] != 0. On Success
    // every vertex is decided.
    std::vector<Color> coloring;
    std::vector<char> decided;
    std::vector<EdgeId> active_edges; // left over; empty on Success

    std::uint32_t x = 0; // phase budget
    std::uint32_t y = 0; // gossip rounds per phase
    std::uint32_t executed_phases = 0;
    std::uint64_t total_rounds = 0; // == executed_phases * y
    std::uint64_t messages = 0;
    std::uint32_t infeasible_pieces = 0; // distinct pieces the black box rejected

    // Max (2,3)-skeleton size over biased components: entry 0 measures the
    // phase-1 biased set, entry t the still-active biased edges at the end
    // of the t-th epoch boundary (the final, possibly partial, epoch gets an
    // entry too). Ends in 0 exactly when the run succeeds.
    std::vector<std::size_t> skeleton_series;
    // Edges whose phase component kept a skeleton of size >= u, per executed
    // phase; the decay statistic of the claim experiment is built from this.
    std::vector<std::vector<EdgeId>> unsuccessful_per_phase;

    std::vector<PhaseTrace> traces; // populated when requested
};

// Executes the full multi-phase protocol on an instance. The sequence must
// provide exactly beta * num_epochs colorings of h.n_vertices() entries.
// Phases run until the edge set empties or the budget is spent; a violated
// phase invariant throws InvariantViolationError (internal bug, not a user
// outcome). Fully deterministic.
RunResult run(const Hypergraph& h, const ColoringSequence& seq, const AlgoParams& params,
              bool keep_traces = true);

// One vertex's phase decision from nothing but its gossip view. Exposed so
// tests can drive it against hand-built views; `memo` (optional) caches
// black-box results across the vertices of one phase.
class PieceMemo;
VertexPlan decide_vertex(const LocalView& view, VertexId v, const AlgoParams& params,
                         PieceMemo* memo = nullptr);

// Reference implementation of one phase's decisions computed from global
// state, no views or message passing involved. The simulation must produce
// identical plans; tests assert this on random instances.
std::vector<VertexPlan> global_phase_plans(const Hypergraph& h, const PartialColoringState& st,
                                           const std::vector<Color>& temp,
                                           const AlgoParams& params);

} // namespace lhc
