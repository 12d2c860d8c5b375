#include <doctest.h>

#include <algorithm>
#include <set>
#include <vector>

#include "core/algorithm.hpp"
#include "core/harness.hpp"
#include "core/json_io.hpp"
#include "core/rng.hpp"

using namespace lhc;

namespace {

ColoringSequence constant_sequence(std::uint32_t n, std::uint32_t x, Color c) {
    ColoringSequence seq;
    seq.n_vertices = n;
    seq.colorings.assign(x, std::vector<Color>(n, c));
    return seq;
}

std::vector<Color> parse_colors(const std::string& s) {
    std::vector<Color> out;
    for (char c : s) out.push_back(color_from_char(c));
    return out;
}

// Path/cycle chain: edge i = {i, ..., i + delta - 1} mod n.
Hypergraph chain(std::uint32_t n, std::uint32_t delta) {
    std::vector<std::vector<VertexId>> edges;
    for (std::uint32_t i = 0; i < n; ++i) {
        std::vector<VertexId> e;
        for (std::uint32_t k = 0; k < delta; ++k) e.push_back((i + k) % n);
        edges.push_back(std::move(e));
    }
    return Hypergraph(n, delta, std::move(edges));
}

// Re-derives one phase from global state and trace bookkeeping, applying the
// same rules 4-7 to an independent state object.
void replay_phase(const Hypergraph& h, PartialColoringState& st, const std::vector<Color>& temp,
                  const AlgoParams& params, const PhaseTrace& trace) {
    const std::vector<VertexPlan> plans = global_phase_plans(h, st, temp, params);

    std::vector<VertexId> good, recolored;
    for (VertexId v = 0; v < h.n_vertices(); ++v) {
        if (st.decided(v)) {
            CHECK(plans[v].kind == VertexPlan::Kind::Stay);
            continue;
        }
        if (plans[v].kind == VertexPlan::Kind::FixTemp) {
            good.push_back(v);
            st.fix_vertex(v, temp[v]);
        } else if (plans[v].kind == VertexPlan::Kind::FixAssigned) {
            recolored.push_back(v);
            st.fix_vertex(v, plans[v].color);
        }
    }
    CHECK(good == trace.fixed_good);
    CHECK(recolored == trace.fixed_recolored);

    auto fixed_bichromatic = [&](EdgeId e) {
        bool red = false, blue = false;
        for (VertexId w : h.edge(e)) {
            auto f = st.fixed_color(w);
            if (f) (*f == Color::Red ? red : blue) = true;
        }
        return red && blue;
    };

    std::vector<VertexId> mopup;
    bool changed = true;
    while (changed) {
        changed = false;
        for (VertexId v = 0; v < h.n_vertices(); ++v) {
            if (st.decided(v)) continue;
            bool settled = true;
            for (EdgeId e : h.edges_of(v))
                if (st.edge_active(e) && !fixed_bichromatic(e)) settled = false;
            if (settled) {
                mopup.push_back(v);
                st.fix_vertex(v, temp[v]);
                changed = true;
            }
        }
    }
    std::set<VertexId> mop_a(mopup.begin(), mopup.end());
    std::set<VertexId> mop_b(trace.fixed_mopup.begin(), trace.fixed_mopup.end());
    CHECK(mop_a == mop_b);

    std::vector<EdgeId> idled;
    for (EdgeId e = 0; e < h.n_edges(); ++e)
        if (st.edge_active(e) && fixed_bichromatic(e)) {
            idled.push_back(e);
            st.idle_edge(e);
        }
    CHECK(idled == trace.idled);
}

} // namespace

TEST_CASE("default phase budget is ceil(log2 n), at least one") {
    CHECK(default_phase_budget(1) == 1);
    CHECK(default_phase_budget(2) == 1);
    CHECK(default_phase_budget(3) == 2);
    CHECK(default_phase_budget(5) == 3);
    CHECK(default_phase_budget(32) == 5);
    CHECK(default_phase_budget(33) == 6);
    CHECK(default_phase_budget(1024) == 10);
}

TEST_CASE("parameter validation and derived quantities") {
    AlgoParams p;
    CHECK_NOTHROW(p.validate());
    CHECK(p.gossip_rounds() == 20);
    CHECK(p.effective_dangerous_frac() == doctest::Approx(0.125));
    CHECK(p.resolved_beta(32) == 5);
    CHECK(p.resolved_epochs(32) == 5);
    CHECK(p.phase_budget(32) == 25);

    AlgoParams sharp;
    sharp.dangerous_frac = 1.0 / 9.0;
    CHECK(sharp.classify_params().dangerous_threshold(72) == 8);

    AlgoParams explicit_budget;
    explicit_budget.beta = 3;
    explicit_budget.num_epochs = 2;
    CHECK(explicit_budget.phase_budget(1000) == 6);

    AlgoParams bad;
    bad.alpha = 0.5;
    CHECK_THROWS_AS(bad.validate(), DomainError);
    bad.alpha = 0.0;
    CHECK_THROWS_AS(bad.validate(), DomainError);
    bad.alpha = -0.1;
    CHECK_THROWS_AS(bad.validate(), DomainError);

    AlgoParams bad_u;
    bad_u.u = 0;
    CHECK_THROWS_AS(bad_u.validate(), DomainError);

    AlgoParams bad_frac;
    bad_frac.dangerous_frac = 0.5;
    CHECK_THROWS_AS(bad_frac.validate(), DomainError);

    AlgoParams bad_cap;
    bad_cap.exhaustive_cap = 31;
    CHECK_THROWS_AS(bad_cap.validate(), DomainError);
}

TEST_CASE("a balanced first coloring finishes in one phase") {
    const Hypergraph h = chain(4, 2);
    AlgoParams params;
    params.beta = 1;
    params.num_epochs = 1;

    ColoringSequence seq;
    seq.n_vertices = 4;
    seq.colorings.push_back(parse_colors("RBRB"));

    const RunResult res = run(h, seq, params);
    CHECK(res.outcome == RunOutcome::Success);
    CHECK(res.executed_phases == 1);
    CHECK(res.x == 1);
    CHECK(res.y == 20);
    CHECK(res.total_rounds == 20);
    CHECK(res.active_edges.empty());
    CHECK(res.coloring == parse_colors("RBRB"));
    CHECK(std::count(res.decided.begin(), res.decided.end(), 1) == 4);
    CHECK(is_bichromatic(h, res.coloring).ok);

    // No edge was ever biased, so both series entries are zero.
    CHECK(res.skeleton_series == std::vector<std::size_t>{0, 0});

    REQUIRE(res.traces.size() == 1);
    const PhaseTrace& t = res.traces[0];
    CHECK(t.biased.empty());
    CHECK(t.pieces.empty());
    CHECK(t.fixed_good == std::vector<VertexId>{0, 1, 2, 3});
    CHECK(t.fixed_recolored.empty());
    CHECK(t.idled == std::vector<EdgeId>{0, 1, 2, 3});
    CHECK(t.invariant_ok);
}

TEST_CASE("a monochromatic single edge is rescued by the black box") {
    const Hypergraph h(3, 3, {{0, 1, 2}});
    AlgoParams params;
    params.beta = 1;
    params.num_epochs = 1;

    SUBCASE("bi-chromatic temporaries fix themselves") {
        ColoringSequence seq;
        seq.n_vertices = 3;
        seq.colorings.push_back(parse_colors("RBR"));
        const RunResult res = run(h, seq, params);
        CHECK(res.outcome == RunOutcome::Success);
        CHECK(res.coloring == parse_colors("RBR"));
        CHECK(res.traces[0].fixed_good == std::vector<VertexId>{0, 1, 2});
        CHECK(res.infeasible_pieces == 0);
    }

    SUBCASE("all-red temporaries trigger a recoloring") {
        const ColoringSequence seq = constant_sequence(3, 1, Color::Red);
        const RunResult res = run(h, seq, params);
        CHECK(res.outcome == RunOutcome::Success);
        // Lexicographically first rescue: flip the last vertex.
        CHECK(res.coloring == parse_colors("RRB"));
        CHECK(res.skeleton_series == std::vector<std::size_t>{1, 0});

        REQUIRE(res.traces.size() == 1);
        const PhaseTrace& t = res.traces[0];
        CHECK(t.biased == std::vector<EdgeId>{0});
        CHECK(t.dangerous.empty());
        CHECK(t.components == std::vector<std::vector<EdgeId>>{{0}});
        CHECK(t.component_diameters == std::vector<std::uint32_t>{0});
        CHECK(t.skeleton_sizes == std::vector<std::size_t>{1});
        REQUIRE(t.pieces.size() == 1);
        CHECK(t.pieces[0].core == std::vector<EdgeId>{0});
        CHECK(t.pieces[0].fringe.empty());
        CHECK(t.pieces[0].feasible);
        CHECK(t.pieces[0].method == RecolorResult::Method::Exhaustive);
        CHECK(t.pieces[0].recolored == 3);
        CHECK(t.fixed_good.empty());
        CHECK(t.fixed_recolored == std::vector<VertexId>{0, 1, 2});
        CHECK(t.idled == std::vector<EdgeId>{0});
    }
}

TEST_CASE("golden adversarial run: a long biased cycle stays put") {
    // 2-uniform 24-cycle under all-red temporaries: every edge is biased,
    // the single component has operational diameter 12 > 3u - 2 = 7, so no
    // vertex ever moves and the budget runs out.
    const Hypergraph h = chain(24, 2);
    AlgoParams params;
    params.beta = 2;
    params.num_epochs = 2;

    const ColoringSequence seq = constant_sequence(24, 4, Color::Red);
    const RunResult res = run(h, seq, params);

    CHECK(res.outcome == RunOutcome::Exhausted);
    CHECK(res.x == 4);
    CHECK(res.executed_phases == 4);
    CHECK(res.y == 20);
    CHECK(res.total_rounds == 80);
    // 24 active edges x 2 undecided endpoints = 48 participating links, two
    // messages per link per round, 80 rounds.
    CHECK(res.messages == 7680);
    CHECK(std::count(res.decided.begin(), res.decided.end(), 1) == 0);
    CHECK(res.active_edges.size() == 24);
    CHECK(res.infeasible_pieces == 0); // nothing ever reached the black box

    // Max (2,3)-skeleton of the biased 24-cycle is 12 (every other edge), and
    // nothing shrinks: phase-1 entry plus one entry per epoch boundary.
    CHECK(res.skeleton_series == std::vector<std::size_t>{12, 12, 12});

    std::vector<EdgeId> all_edges;
    for (EdgeId e = 0; e < 24; ++e) all_edges.push_back(e);
    REQUIRE(res.unsuccessful_per_phase.size() == 4);
    for (const auto& phase_edges : res.unsuccessful_per_phase)
        CHECK(phase_edges == all_edges);

    REQUIRE(res.traces.size() == 4);
    for (const PhaseTrace& t : res.traces) {
        CHECK(t.biased == all_edges);
        CHECK(t.dangerous.empty());
        REQUIRE(t.components.size() == 1);
        CHECK(t.components[0] == all_edges);
        CHECK(t.component_diameters == std::vector<std::uint32_t>{12});
        CHECK(t.skeleton_sizes == std::vector<std::size_t>{12});
        CHECK(t.pieces.empty());
        CHECK(t.fixed_good.empty());
        CHECK(t.fixed_recolored.empty());
        CHECK(t.fixed_mopup.empty());
        CHECK(t.idled.empty());
        CHECK(t.invariant_ok);
    }

    // A larger locality parameter clears the same instance in one phase: the
    // diameter cap reaches 13 and the greedy recoloring alternates the cycle.
    AlgoParams wide(params);
    wide.u = 5;
    const ColoringSequence seq5 = constant_sequence(24, 4, Color::Red);
    const RunResult rescued = run(h, seq5, wide);
    CHECK(rescued.outcome == RunOutcome::Success);
    CHECK(rescued.executed_phases == 1);
    CHECK(is_bichromatic(h, rescued.coloring).ok);
}

TEST_CASE("one-vertex edges are recorded as infeasible and carried") {
    const Hypergraph h(2, 1, {{0}, {1}});
    AlgoParams params;
    params.beta = 1;
    params.num_epochs = 1;

    const ColoringSequence seq = constant_sequence(2, 1, Color::Red);
    const RunResult res = run(h, seq, params);
    CHECK(res.outcome == RunOutcome::Exhausted);
    CHECK(res.executed_phases == 1);
    CHECK(res.infeasible_pieces == 2);
    CHECK(res.active_edges == std::vector<EdgeId>{0, 1});
    REQUIRE(res.traces.size() == 1);
    REQUIRE(res.traces[0].pieces.size() == 2);
    for (const auto& piece : res.traces[0].pieces) {
        CHECK(!piece.feasible);
        CHECK(piece.recolored == 0);
    }
    CHECK(res.skeleton_series.back() != 0);
}

TEST_CASE("run rejects mismatched coloring sequences") {
    const Hypergraph h = chain(4, 2);
    AlgoParams params;
    params.beta = 1;
    params.num_epochs = 2;

    CHECK_THROWS_AS(run(h, constant_sequence(4, 3, Color::Red), params), ValidationError);
    CHECK_THROWS_AS(run(h, constant_sequence(5, 2, Color::Red), params), ValidationError);

    ColoringSequence ragged;
    ragged.n_vertices = 4;
    ragged.colorings = {parse_colors("RBRB"), parse_colors("RBR")};
    CHECK_THROWS_AS(run(h, ragged, params), ValidationError);
}

TEST_CASE("decide_vertex needs an undecided executor and enough gossip") {
    const Hypergraph h(3, 3, {{0, 1, 2}});
    AlgoParams params;

    PartialColoringState st(h);
    st.fix_vertex(0, Color::Red);
    const std::vector<Color> temp = parse_colors("RRR");

    RoundEngine engine(h, st, temp);
    engine.run_gossip(params.gossip_rounds());
    CHECK_THROWS_AS(decide_vertex(engine.vertex_view(0), 0, params), ValidationError);

    // Without gossip the executor cannot classify its own edge (the other
    // members' temporaries never arrived) and must abstain.
    PartialColoringState fresh(h);
    RoundEngine cold(h, fresh, temp);
    const VertexPlan plan = decide_vertex(cold.vertex_view(1), 1, params);
    CHECK(plan.kind == VertexPlan::Kind::Stay);
}

TEST_CASE("simulated decisions replay exactly from global state") {
    const std::vector<Family> families{Family::UniformRandom, Family::BoundedDegree,
                                       Family::PathChain, Family::Grid,
                                       Family::AdversarialBiased};
    AlgoParams params;
    params.beta = 2;
    params.num_epochs = 2;

    int successes = 0, exhausted = 0;
    for (Family family : families) {
        for (std::uint32_t n : {8u, 12u}) {
            for (std::uint32_t delta : {2u, 3u}) {
                for (std::uint64_t seed : {7ull, 19ull}) {
                    GeneratorSpec spec;
                    spec.family = family;
                    spec.n = n;
                    spec.delta = delta;
                    spec.seed = seed;
                    const Hypergraph h = generate(spec);
                    const ColoringSequence seq =
                        random_coloring_sequence(n, params.phase_budget(n), seed * 11 + 1);

                    const RunResult res = run(h, seq, params);
                    (res.outcome == RunOutcome::Success ? successes : exhausted)++;

                    CHECK(res.total_rounds ==
                          static_cast<std::uint64_t>(res.executed_phases) * res.y);
                    CHECK(res.traces.size() == res.executed_phases);
                    CHECK(res.unsuccessful_per_phase.size() == res.executed_phases);
                    CHECK((res.skeleton_series.back() == 0) ==
                          (res.outcome == RunOutcome::Success));
                    if (res.outcome == RunOutcome::Success) {
                        CHECK(res.active_edges.empty());
                        CHECK(is_bichromatic(h, res.coloring).ok);
                    }

                    // Replay every phase from global state: the view-driven
                    // decisions must match the reference plans exactly.
                    PartialColoringState st(h);
                    for (const PhaseTrace& t : res.traces)
                        replay_phase(h, st, seq.colorings[t.phase - 1], params, t);
                    for (VertexId v = 0; v < h.n_vertices(); ++v) {
                        CHECK(st.decided(v) == (res.decided[v] != 0));
                        if (st.decided(v)) CHECK(*st.fixed_color(v) == res.coloring[v]);
                    }
                    CHECK(st.active_edges() == res.active_edges);
                }
            }
        }
    }
    // The corpus must exercise both outcomes or the replay proves little.
    CHECK(successes > 0);
    CHECK(exhausted > 0);
}

TEST_CASE("run results serialize with stable keys") {
    const Hypergraph h(3, 3, {{0, 1, 2}});
    AlgoParams params;
    params.beta = 1;
    params.num_epochs = 1;

    const RunResult good = run(h, constant_sequence(3, 1, Color::Red), params);
    const nlohmann::json j = run_result_to_json(good, true);
    CHECK(j.at("outcome") == "success");
    CHECK(j.at("coloring") == nlohmann::json::array({"R", "R", "B"}));
    CHECK(j.at("x") == 1);
    CHECK(j.at("y") == 20);
    CHECK(j.at("executed_phases") == 1);
    CHECK(j.at("total_rounds") == 20);
    CHECK(j.at("infeasible_pieces") == 0);
    CHECK(j.at("skeleton_series") == nlohmann::json::array({1, 0}));
    REQUIRE(j.contains("traces"));
    CHECK(j.at("traces").size() == 1);
    CHECK(j.at("traces")[0].at("phase") == 1);
    CHECK(j.at("traces")[0].at("pieces")[0].at("method") == "exhaustive");

    const nlohmann::json bare = run_result_to_json(good, false);
    CHECK(!bare.contains("traces"));

    const Hypergraph stuck(2, 1, {{0}, {1}});
    const RunResult res = run(stuck, constant_sequence(2, 1, Color::Red), params);
    const nlohmann::json k = run_result_to_json(res, false);
    CHECK(k.at("outcome") == "exhausted");
    CHECK(k.at("coloring") == nlohmann::json::array({"U", "U"}));
    CHECK(k.at("active_edges") == nlohmann::json::array({0, 1}));
}
