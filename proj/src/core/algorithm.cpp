#include "core/algorithm.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <sstream>

namespace lhc {

std::uint32_t default_phase_budget(std::uint32_t n) {
    std::uint32_t b = 0;
    while ((1ULL << b) < n) ++b;
    return std::max<std::uint32_t>(1, b);
}

void AlgoParams::validate() const {
    if (!(alpha > 0.0) || !(alpha < 0.5)) throw DomainError("alpha must lie in (0, 1/2)");
    if (dangerous_frac >= 0.0 && !(dangerous_frac < 0.5))
        throw DomainError("dangerous fraction must lie in (0, 1/2)");
    if (u == 0) throw DomainError("locality parameter u must be positive");
    if (exhaustive_cap > 30) throw DomainError("exhaustive cap above 30 is not supported");
}

// Shared cache of black-box results for one phase. Every executor of a
// component builds the identical canonical piece, so the first lookup pays
// for the search and the rest reuse (and agree with) its result.
class PieceMemo {
public:
    struct Entry {
        RecolorResult result;
        PieceTraceEntry trace;
    };

    Entry& lookup(const Piece& piece, std::vector<EdgeId> core, std::vector<EdgeId> fringe,
                  std::uint32_t cap) {
        auto key = piece.canonical_key();
        auto it = cache_.find(key);
        if (it != cache_.end()) return it->second;
        Entry entry;
        entry.result = blackbox_recolor(piece, cap);
        entry.trace.core = std::move(core);
        entry.trace.fringe = std::move(fringe);
        entry.trace.feasible = entry.result.feasible;
        entry.trace.method = entry.result.method;
        entry.trace.recolored =
            static_cast<std::uint32_t>(entry.result.assignment.size());
        return cache_.emplace(key, std::move(entry)).first->second;
    }

    // Unique pieces of the phase, ordered by their smallest core edge.
    std::vector<PieceTraceEntry> traces() const {
        std::vector<PieceTraceEntry> out;
        for (const auto& [key, entry] : cache_) out.push_back(entry.trace);
        std::sort(out.begin(), out.end(), [](const PieceTraceEntry& a, const PieceTraceEntry& b) {
            return a.core.front() < b.core.front();
        });
        return out;
    }

private:
    std::map<std::string, Entry> cache_;
};

namespace {

// Per-view helper around the facts decide_vertex needs. Everything funnels
// through the LocalView accessors, so locality stays enforced.
struct ViewScope {
    const LocalView& view;
    std::uint32_t t_biased;
    std::uint32_t t_dangerous;

    // nullopt when some undecided vertex's temp has not arrived.
    std::optional<bool> biased(EdgeId e) const {
        std::uint32_t reds = 0, blues = 0;
        for (VertexId w : view.edge_vertices(e)) {
            auto fx = view.vertex_fixed(w);
            Color c;
            if (fx) {
                c = *fx;
            } else {
                if (!view.knows_temp(w)) return std::nullopt;
                c = view.temp(w);
            }
            (c == Color::Red ? reds : blues)++;
        }
        return std::min(reds, blues) <= t_biased;
    }

    bool undecided(VertexId w) const { return !view.vertex_fixed(w).has_value(); }
};

// Edges known to the view that share an undecided vertex with e (its
// operational neighbours), via the prebuilt vertex -> known edges index.
std::vector<EdgeId> op_neighbors(const ViewScope& scope, EdgeId e,
                                 const std::map<VertexId, std::vector<EdgeId>>& by_vertex) {
    std::vector<EdgeId> out;
    for (VertexId w : scope.view.edge_vertices(e)) {
        if (!scope.undecided(w)) continue;
        auto it = by_vertex.find(w);
        if (it == by_vertex.end()) continue;
        for (EdgeId f : it->second)
            if (f != e) out.push_back(f);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

} // namespace

VertexPlan decide_vertex(const LocalView& view, VertexId v, const AlgoParams& params,
                         PieceMemo* memo) {
    params.validate();
    const Hypergraph& h = view.snapshot().hypergraph();
    const ClassifyParams cls = params.classify_params();
    ViewScope scope{view, cls.biased_threshold(h.delta()), cls.dangerous_threshold(h.delta())};

    if (view.snapshot().fixed(v)) throw ValidationError("decide_vertex needs an undecided vertex");

    // Classify the edges around v. With at least one gossip round their
    // members' facts have arrived; on an under-gossiped view we abstain.
    std::vector<EdgeId> seeds;
    for (EdgeId e : h.edges_of(v)) {
        if (!view.knows_edge(e)) continue; // idle edge: no fact exists
        auto b = scope.biased(e);
        if (!b) return {VertexPlan::Kind::Stay, Color::Red};
        if (*b) seeds.push_back(e);
    }
    if (seeds.empty()) {
        // Good vertex: no active biased edge contains it.
        return {VertexPlan::Kind::FixTemp, view.temp(v)};
    }

    // Index every known (hence active) edge by its undecided vertices.
    std::map<VertexId, std::vector<EdgeId>> by_vertex;
    for (EdgeId e : view.known_edges())
        for (VertexId w : view.edge_vertices(e))
            if (scope.undecided(w)) by_vertex[w].push_back(e);

    // Grow v's biased component: the connected set of biased edges under
    // "within two operational hops". If anything within two hops of a member
    // cannot be classified from this view, the component may extend past the
    // horizon and we abstain; when the diameter test below passes, the view
    // provably contains the whole component and its two-hop collar.
    std::map<EdgeId, char> in_comp;
    std::deque<EdgeId> frontier;
    for (EdgeId e : seeds) {
        in_comp[e] = 1;
        frontier.push_back(e);
    }
    while (!frontier.empty()) {
        EdgeId e = frontier.front();
        frontier.pop_front();
        for (EdgeId f : op_neighbors(scope, e, by_vertex)) {
            auto bf = scope.biased(f);
            if (!bf) return {VertexPlan::Kind::Stay, Color::Red};
            if (*bf) {
                if (!in_comp[f]) {
                    in_comp[f] = 1;
                    frontier.push_back(f);
                }
                continue;
            }
            for (EdgeId g : op_neighbors(scope, f, by_vertex)) {
                if (in_comp.count(g)) continue;
                auto bg = scope.biased(g);
                if (!bg) return {VertexPlan::Kind::Stay, Color::Red};
                if (*bg) {
                    in_comp[g] = 1;
                    frontier.push_back(g);
                }
            }
        }
    }
    std::vector<EdgeId> comp;
    for (auto& [e, flag] : in_comp)
        if (flag) comp.push_back(e); // std::map iterates ascending

    // Collars, derived after the closure settles so an edge reachable both
    // ways lands at its true distance. Everything here was classified above.
    std::vector<EdgeId> collar1, collar2;
    {
        std::map<EdgeId, char> dist1, dist2;
        for (EdgeId e : comp)
            for (EdgeId f : op_neighbors(scope, e, by_vertex))
                if (!in_comp.count(f)) dist1[f] = 1;
        for (auto& [f, flag] : dist1) {
            collar1.push_back(f);
            for (EdgeId g : op_neighbors(scope, f, by_vertex))
                if (!in_comp.count(g) && !dist1.count(g)) dist2[g] = 1;
        }
        for (auto& [g, flag] : dist2) collar2.push_back(g);
    }

    // Diameter of the component measured inside its two-hop region. Paths
    // are restricted to edges every executor of this component can see, so
    // all of them compute the same value.
    std::vector<EdgeId> region(comp);
    region.insert(region.end(), collar1.begin(), collar1.end());
    region.insert(region.end(), collar2.begin(), collar2.end());
    std::sort(region.begin(), region.end());
    region.erase(std::unique(region.begin(), region.end()), region.end());
    std::map<EdgeId, std::uint32_t> region_pos;
    for (std::uint32_t i = 0; i < region.size(); ++i) region_pos[region[i]] = i;
    std::vector<std::vector<std::uint32_t>> region_adj(region.size());
    for (std::uint32_t i = 0; i < region.size(); ++i)
        for (EdgeId f : op_neighbors(scope, region[i], by_vertex)) {
            auto it = region_pos.find(f);
            if (it != region_pos.end()) region_adj[i].push_back(it->second);
        }
    const std::uint32_t diameter_cap = 3 * params.u - 2;
    const std::uint32_t unreached = 0xffffffffu;
    for (EdgeId a : comp) {
        std::vector<std::uint32_t> dist(region.size(), unreached);
        std::deque<std::uint32_t> queue{region_pos[a]};
        dist[region_pos[a]] = 0;
        while (!queue.empty()) {
            std::uint32_t cur = queue.front();
            queue.pop_front();
            for (std::uint32_t nxt : region_adj[cur])
                if (dist[nxt] == unreached) {
                    dist[nxt] = dist[cur] + 1;
                    queue.push_back(nxt);
                }
        }
        for (EdgeId b : comp)
            if (dist[region_pos[b]] == unreached || dist[region_pos[b]] > diameter_cap)
                return {VertexPlan::Kind::Stay, Color::Red};
    }

    // Component small enough: hand it to the black box together with the
    // dangerous edges leaning on it. Undecided vertices of component edges
    // are the recolorable ones; everything else is pinned -- previously
    // fixed vertices to their colors, good vertices to their temporary
    // colors (which rule 4 makes permanent this same phase).
    std::map<VertexId, char> comp_vertex;
    for (EdgeId e : comp)
        for (VertexId w : scope.view.edge_vertices(e)) comp_vertex[w] = 1;
    auto bad_undecided = [&](VertexId w) {
        return scope.undecided(w) && comp_vertex.count(w) > 0;
    };

    std::vector<EdgeId> fringe;
    for (EdgeId f : collar1) {
        std::uint32_t bad = 0;
        for (VertexId w : view.edge_vertices(f))
            if (bad_undecided(w)) ++bad;
        if (bad >= scope.t_dangerous) fringe.push_back(f);
    }
    std::sort(fringe.begin(), fringe.end());

    Piece piece;
    auto add_piece_edge = [&](EdgeId e) {
        PieceEdge pe;
        pe.id = e;
        for (VertexId w : view.edge_vertices(e)) {
            pe.vertices.push_back(w);
            auto fx = view.vertex_fixed(w);
            if (fx)
                pe.fixed.push_back(*fx);
            else if (bad_undecided(w))
                pe.fixed.push_back(std::nullopt);
            else
                pe.fixed.push_back(view.temp(w));
        }
        piece.edges.push_back(std::move(pe));
    };
    for (EdgeId e : comp) add_piece_edge(e);
    for (EdgeId f : fringe) add_piece_edge(f);

    const RecolorResult* result;
    PieceMemo local_memo;
    PieceMemo& m = memo ? *memo : local_memo;
    result = &m.lookup(piece, comp, fringe, params.exhaustive_cap).result;
    if (!result->feasible) return {VertexPlan::Kind::Stay, Color::Red};
    for (const auto& [w, c] : result->assignment)
        if (w == v) return {VertexPlan::Kind::FixAssigned, c};
    throw InvariantViolationError("black-box assignment misses an executor vertex");
}

namespace {

struct StaticContext {
    IntersectionGraph ig;
    IntersectionGraph band1;
    IntersectionGraph band2;

    explicit StaticContext(const Hypergraph& h)
        : ig(IntersectionGraph::build(h)),
          band1(band_intersection_graph(ig, 1)),
          band2(band_intersection_graph(ig, 2)) {}
};

// Applies one phase's plans to the state, returning the trace pieces of
// bookkeeping the caller asked for. Rules 4/5 are the plans themselves;
// rule 6 sweeps undecided vertices whose surviving edges are all settled;
// rule 7 retires edges.
void apply_phase(const Hypergraph& h, PartialColoringState& st, const std::vector<Color>& temp,
                 const std::vector<std::pair<VertexId, VertexPlan>>& plans, PhaseTrace& trace) {
    for (const auto& [v, plan] : plans) {
        if (plan.kind == VertexPlan::Kind::FixTemp) {
            st.fix_vertex(v, temp[v]);
            trace.fixed_good.push_back(v);
        } else if (plan.kind == VertexPlan::Kind::FixAssigned) {
            st.fix_vertex(v, plan.color);
            trace.fixed_recolored.push_back(v);
        }
    }

    auto fixed_bichromatic = [&](EdgeId e) {
        bool red = false, blue = false;
        for (VertexId w : h.edge(e)) {
            auto f = st.fixed_color(w);
            if (f) (*f == Color::Red ? red : blue) = true;
        }
        return red && blue;
    };

    // Rule 6 as a sequential fixpoint: one fix can settle the last open edge
    // of the next vertex, so sweep ascending until stable.
    bool changed = true;
    while (changed) {
        changed = false;
        for (VertexId v = 0; v < h.n_vertices(); ++v) {
            if (st.decided(v)) continue;
            bool all_settled = true;
            for (EdgeId e : h.edges_of(v))
                if (st.edge_active(e) && !fixed_bichromatic(e)) {
                    all_settled = false;
                    break;
                }
            if (all_settled) {
                st.fix_vertex(v, temp[v]);
                trace.fixed_mopup.push_back(v);
                changed = true;
            }
        }
    }

    for (EdgeId e = 0; e < h.n_edges(); ++e) {
        if (!st.edge_active(e)) continue;
        if (fixed_bichromatic(e)) {
            st.idle_edge(e);
            trace.idled.push_back(e);
            continue;
        }
        bool any_undecided = false;
        for (VertexId w : h.edge(e))
            if (!st.decided(w)) any_undecided = true;
        if (!any_undecided)
            throw InvariantViolationError("edge " + std::to_string(e) +
                                          " became fully fixed yet monochromatic in phase " +
                                          std::to_string(trace.phase));
    }
}

} // namespace

std::vector<VertexPlan> global_phase_plans(const Hypergraph& h, const PartialColoringState& st,
                                           const std::vector<Color>& temp,
                                           const AlgoParams& params) {
    params.validate();
    const ClassifyParams cls_params = params.classify_params();
    EdgeClassification cls = classify(h, st, temp, cls_params);

    // Operational adjacency: active edges sharing a still-undecided vertex.
    std::vector<std::vector<EdgeId>> op_adj(h.n_edges());
    for (VertexId w = 0; w < h.n_vertices(); ++w) {
        if (st.decided(w)) continue;
        const auto& around = h.edges_of(w);
        for (EdgeId a : around) {
            if (!st.edge_active(a)) continue;
            for (EdgeId b : around)
                if (b != a && st.edge_active(b)) op_adj[a].push_back(b);
        }
    }
    for (auto& nbrs : op_adj) {
        std::sort(nbrs.begin(), nbrs.end());
        nbrs.erase(std::unique(nbrs.begin(), nbrs.end()), nbrs.end());
    }
    auto two_hop = [&](EdgeId e) {
        std::vector<EdgeId> out;
        for (EdgeId f : op_adj[e]) {
            out.push_back(f);
            for (EdgeId g : op_adj[f])
                if (g != e) out.push_back(g);
        }
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return out;
    };

    // Components of the biased set in the square of the operational graph.
    std::vector<char> is_biased(h.n_edges(), 0);
    for (EdgeId e : cls.biased) is_biased[e] = 1;
    std::vector<char> assigned_comp(h.n_edges(), 0);
    std::vector<std::vector<EdgeId>> comps;
    for (EdgeId e : cls.biased) {
        if (assigned_comp[e]) continue;
        std::vector<EdgeId> comp;
        std::deque<EdgeId> queue{e};
        assigned_comp[e] = 1;
        while (!queue.empty()) {
            EdgeId cur = queue.front();
            queue.pop_front();
            comp.push_back(cur);
            for (EdgeId f : two_hop(cur))
                if (is_biased[f] && !assigned_comp[f]) {
                    assigned_comp[f] = 1;
                    queue.push_back(f);
                }
        }
        std::sort(comp.begin(), comp.end());
        comps.push_back(std::move(comp));
    }

    std::vector<VertexPlan> plans(h.n_vertices(), {VertexPlan::Kind::Stay, Color::Red});
    for (VertexId v = 0; v < h.n_vertices(); ++v)
        if (!st.decided(v) && !cls.vertex_bad[v])
            plans[v] = {VertexPlan::Kind::FixTemp, temp[v]};

    const std::uint32_t t_dangerous = cls_params.dangerous_threshold(h.delta());
    const std::uint32_t diameter_cap = 3 * params.u - 2;
    for (const auto& comp : comps) {
        // Region: the component plus its two-hop operational collar.
        std::vector<EdgeId> region(comp);
        std::vector<EdgeId> collar1;
        std::vector<char> in_comp(h.n_edges(), 0), in_region(h.n_edges(), 0);
        for (EdgeId e : comp) in_comp[e] = in_region[e] = 1;
        for (EdgeId e : comp)
            for (EdgeId f : op_adj[e])
                if (!in_comp[f]) {
                    if (!in_region[f]) {
                        in_region[f] = 1;
                        region.push_back(f);
                    }
                    collar1.push_back(f);
                }
        std::sort(collar1.begin(), collar1.end());
        collar1.erase(std::unique(collar1.begin(), collar1.end()), collar1.end());
        for (EdgeId f : collar1)
            for (EdgeId g : op_adj[f])
                if (!in_region[g]) {
                    in_region[g] = 1;
                    region.push_back(g);
                }
        std::sort(region.begin(), region.end());

        std::map<EdgeId, std::uint32_t> pos;
        for (std::uint32_t i = 0; i < region.size(); ++i) pos[region[i]] = i;
        const std::uint32_t unreached = 0xffffffffu;
        bool small = true;
        for (EdgeId a : comp) {
            std::vector<std::uint32_t> dist(region.size(), unreached);
            std::deque<std::uint32_t> queue{pos[a]};
            dist[pos[a]] = 0;
            while (!queue.empty()) {
                std::uint32_t cur = queue.front();
                queue.pop_front();
                for (EdgeId f : op_adj[region[cur]]) {
                    auto it = pos.find(f);
                    if (it != pos.end() && dist[it->second] == unreached) {
                        dist[it->second] = dist[cur] + 1;
                        queue.push_back(it->second);
                    }
                }
            }
            for (EdgeId b : comp)
                if (dist[pos[b]] == unreached || dist[pos[b]] > diameter_cap) small = false;
            if (!small) break;
        }
        if (!small) continue;

        std::vector<char> comp_vertex(h.n_vertices(), 0);
        for (EdgeId e : comp)
            for (VertexId w : h.edge(e)) comp_vertex[w] = 1;
        auto bad_undecided = [&](VertexId w) { return !st.decided(w) && comp_vertex[w]; };

        std::vector<EdgeId> fringe;
        for (EdgeId f : collar1) {
            std::uint32_t bad = 0;
            for (VertexId w : h.edge(f))
                if (bad_undecided(w)) ++bad;
            if (bad >= t_dangerous) fringe.push_back(f);
        }

        Piece piece;
        auto add_edge = [&](EdgeId e) {
            PieceEdge pe;
            pe.id = e;
            for (VertexId w : h.edge(e)) {
                pe.vertices.push_back(w);
                auto fx = st.fixed_color(w);
                if (fx)
                    pe.fixed.push_back(*fx);
                else if (bad_undecided(w))
                    pe.fixed.push_back(std::nullopt);
                else
                    pe.fixed.push_back(temp[w]);
            }
            piece.edges.push_back(std::move(pe));
        };
        for (EdgeId e : comp) add_edge(e);
        for (EdgeId f : fringe) add_edge(f);

        RecolorResult result = blackbox_recolor(piece, params.exhaustive_cap);
        if (!result.feasible) continue;
        for (const auto& [w, c] : result.assignment)
            plans[w] = {VertexPlan::Kind::FixAssigned, c};
    }
    return plans;
}

RunResult run(const Hypergraph& h, const ColoringSequence& seq, const AlgoParams& params,
              bool keep_traces) {
    params.validate();
    seq.validate();
    if (seq.n_vertices != h.n_vertices())
        throw ValidationError("coloring sequence is for a different vertex count");
    const std::uint32_t x = params.phase_budget(h.n_vertices());
    if (seq.x() != x)
        throw ValidationError("coloring sequence has " + std::to_string(seq.x()) +
                              " colorings but the phase budget is " + std::to_string(x));

    StaticContext ctx(h);
    PartialColoringState st(h);
    const std::uint32_t beta = params.resolved_beta(h.n_vertices());

    RunResult res;
    res.x = x;
    res.y = params.gossip_rounds();

    for (std::uint32_t phase = 1; phase <= x; ++phase) {
        if (st.active_count() == 0) break;
        const std::vector<Color>& temp = seq.colorings[phase - 1];

        RoundEngine engine(h, st, temp);
        engine.run_gossip(res.y);
        res.total_rounds += res.y;
        res.messages += engine.messages_sent();

        PieceMemo memo;
        std::vector<std::pair<VertexId, VertexPlan>> plans;
        for (VertexId v = 0; v < h.n_vertices(); ++v)
            if (!st.decided(v))
                plans.emplace_back(v, decide_vertex(engine.vertex_view(v), v, params, &memo));

        PhaseTrace trace;
        trace.phase = phase;
        // Global classification for the trace and the progress statistics;
        // decisions above never see it.
        EdgeClassification cls = classify(h, st, temp, params.classify_params());
        trace.biased = cls.biased;
        trace.dangerous = cls.dangerous;
        trace.components = components_12_in_band(ctx.band1, cls.biased);
        std::vector<EdgeId> unsuccessful;
        for (const auto& comp : trace.components) {
            trace.component_diameters.push_back(component_diameter(ctx.ig, comp));
            auto skel = skeleton_23_in_band(ctx.ig, ctx.band2, comp);
            trace.skeleton_sizes.push_back(skel.size());
            if (skel.size() >= params.u)
                unsuccessful.insert(unsuccessful.end(), comp.begin(), comp.end());
        }
        std::sort(unsuccessful.begin(), unsuccessful.end());
        res.unsuccessful_per_phase.push_back(std::move(unsuccessful));
        trace.pieces = memo.traces();
        for (const auto& piece : trace.pieces)
            if (!piece.feasible) ++res.infeasible_pieces;

        apply_phase(h, st, temp, plans, trace);

        InvariantReport inv = check_invariant(h, st, params.alpha);
        trace.invariant_ok = inv.ok;
        if (!inv.ok) {
            std::ostringstream os;
            os << "phase " << phase << " invariant violated at edge "
               << inv.violations.front().edge << " clause " << inv.violations.front().clause;
            throw InvariantViolationError(os.str());
        }
        // Safe edges must retire bi-chromatic within their phase: their good
        // vertices carry both colors into the fixed part.
        for (EdgeId e = 0; e < h.n_edges(); ++e)
            if (cls.edge_class[e] == EdgeClass::Safe && st.edge_active(e))
                throw InvariantViolationError("safe edge " + std::to_string(e) +
                                              " survived phase " + std::to_string(phase));

        ++res.executed_phases;
        if (phase == 1)
            res.skeleton_series.push_back(
                max_skeleton_size_in_bands(ctx.ig, ctx.band1, ctx.band2, cls.biased));
        const bool ending = st.active_count() == 0 || phase == x;
        if (phase % beta == 0 || ending) {
            std::vector<EdgeId> still_active;
            for (EdgeId e : cls.biased)
                if (st.edge_active(e)) still_active.push_back(e);
            res.skeleton_series.push_back(
                max_skeleton_size_in_bands(ctx.ig, ctx.band1, ctx.band2, still_active));
        }

        if (keep_traces) res.traces.push_back(std::move(trace));
        if (ending) break;
    }
    if (res.executed_phases == 0) res.skeleton_series.push_back(0);

    res.outcome = st.active_count() == 0 ? RunOutcome::Success : RunOutcome::Exhausted;
    res.active_edges = st.active_edges();
    res.decided.assign(h.n_vertices(), 0);
    res.coloring.assign(h.n_vertices(), Color::Red);
    if (res.outcome == RunOutcome::Success && !st.fully_decided()) {
        // Only reachable when the instance has no edges at all: nothing
        // constrains the vertices, so any total coloring completes the run.
        for (VertexId v = 0; v < h.n_vertices(); ++v)
            if (!st.decided(v)) st.fix_vertex(v, Color::Red);
    }
    for (VertexId v = 0; v < h.n_vertices(); ++v) {
        auto f = st.fixed_color(v);
        if (f) {
            res.decided[v] = 1;
            res.coloring[v] = *f;
        }
    }
    return res;
}

} // namespace lhc
