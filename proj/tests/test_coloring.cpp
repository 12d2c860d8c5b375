#include <doctest.h>

#include <bit>
#include <cmath>
#include <cstdint>
#include <vector>

#include "core/coloring.hpp"
#include "core/hypergraph.hpp"

using namespace lhc;

namespace {

std::vector<Color> colors_from(const std::string& s) {
    std::vector<Color> out;
    for (char c : s) out.push_back(color_from_char(c));
    return out;
}

} // namespace

TEST_CASE("color parsing") {
    CHECK(color_from_char('R') == Color::Red);
    CHECK(color_from_char('b') == Color::Blue);
    CHECK(color_char(Color::Blue) == 'B');
    CHECK_THROWS_AS(color_from_char('x'), DomainError);
}

TEST_CASE("coloring sequence validation") {
    ColoringSequence seq;
    seq.n_vertices = 3;
    seq.colorings.push_back(colors_from("RBR"));
    CHECK(seq.x() == 1);
    seq.validate();
    seq.colorings.push_back(colors_from("RB"));
    CHECK_THROWS_AS(seq.validate(), ValidationError);
}

TEST_CASE("partial coloring state transitions are one-way") {
    Hypergraph h(4, 2, {{0, 1}, {2, 3}});
    PartialColoringState st(h);
    CHECK(st.undecided_count() == 4);
    CHECK(st.active_count() == 2);
    CHECK_FALSE(st.fully_decided());

    st.fix_vertex(1, Color::Blue);
    CHECK(st.decided(1));
    CHECK(st.fixed_color(1) == Color::Blue);
    CHECK(st.undecided_count() == 3);
    CHECK_THROWS_AS(st.fix_vertex(1, Color::Red), ValidationError);

    st.idle_edge(0);
    CHECK_FALSE(st.edge_active(0));
    CHECK(st.active_edges() == std::vector<EdgeId>{1});
    CHECK_THROWS_AS(st.idle_edge(0), ValidationError);

    // Fixed wins over the temporary color; undecided falls through.
    std::vector<Color> temp = colors_from("RRRR");
    CHECK(effective_color(st, temp, 1) == Color::Blue);
    CHECK(effective_color(st, temp, 0) == Color::Red);
}

TEST_CASE("classify thresholds and rounding") {
    CHECK_THROWS_AS((ClassifyParams{0.0, 0.125}.validate()), DomainError);
    CHECK_THROWS_AS((ClassifyParams{0.125, 0.5}.validate()), DomainError);

    ClassifyParams quarter = ClassifyParams::from_alpha(0.25);
    CHECK(quarter.biased_threshold(8) == 2);
    CHECK(quarter.dangerous_threshold(8) == 2);

    ClassifyParams eighth = ClassifyParams::from_alpha(0.125);
    CHECK(eighth.biased_threshold(12) == 1);  // floor(1.5)
    CHECK(eighth.dangerous_threshold(12) == 2); // ceil(1.5)

    ClassifyParams preset = ClassifyParams::eighth_ninth();
    CHECK(preset.biased_threshold(72) == 9);
    CHECK(preset.dangerous_threshold(72) == 8);

    // 0.29 * 100 lands at 28.999999999999996; the nudge restores the intended
    // integer on both rounding directions.
    ClassifyParams nudged{0.29, 0.29};
    CHECK(nudged.biased_threshold(100) == 29);
    CHECK(nudged.dangerous_threshold(100) == 29);
}

TEST_CASE("classify: biased, safe, dangerous") {
    // delta = 8, alpha = 1/4: biased iff minority <= 2, dangerous iff >= 2 bad.
    ClassifyParams params = ClassifyParams::from_alpha(0.25);

    SUBCASE("single edge by minority count") {
        Hypergraph h(8, 8, {{0, 1, 2, 3, 4, 5, 6, 7}});
        PartialColoringState st(h);
        auto biased = classify(h, st, colors_from("RRRRRRBB"), params);
        CHECK(biased.edge_class[0] == EdgeClass::Biased);
        CHECK(biased.biased == std::vector<EdgeId>{0});
        for (VertexId v = 0; v < 8; ++v) CHECK(biased.vertex_bad[v] == 1);

        auto safe = classify(h, st, colors_from("RRRRRBBB"), params);
        CHECK(safe.edge_class[0] == EdgeClass::Safe);
        CHECK(safe.biased.empty());
        CHECK(safe.dangerous.empty());

        auto mono = classify(h, st, colors_from("RRRRRRRR"), params);
        CHECK(mono.edge_class[0] == EdgeClass::Biased);
    }

    SUBCASE("dangerous edge borrows bad vertices from a biased neighbour") {
        Hypergraph h(16, 8,
                     {{0, 1, 2, 3, 4, 5, 6, 7}, {6, 7, 8, 9, 10, 11, 12, 13}});
        PartialColoringState st(h);
        // Edge 0 all Red (biased); edge 1 has 5R/3B, of which vertices 6 and 7
        // are bad: exactly the ceil(alpha * delta) = 2 threshold.
        std::vector<Color> temp = colors_from("RRRRRRRR" "RRRBBBRR");
        auto cls = classify(h, st, temp, params);
        CHECK(cls.edge_class[0] == EdgeClass::Biased);
        CHECK(cls.edge_class[1] == EdgeClass::Dangerous);
        CHECK(cls.dangerous == std::vector<EdgeId>{1});

        // Idling the biased edge removes its bad vertices from consideration.
        st.idle_edge(0);
        auto after = classify(h, st, temp, params);
        CHECK(after.edge_class[0] == EdgeClass::Idle);
        CHECK(after.edge_class[1] == EdgeClass::Safe);
    }

    SUBCASE("class lists are disjoint") {
        Hypergraph h(16, 8,
                     {{0, 1, 2, 3, 4, 5, 6, 7}, {6, 7, 8, 9, 10, 11, 12, 13}});
        PartialColoringState st(h);
        auto cls = classify(h, st, colors_from("RRRRRRRRRRRBBBRR"), params);
        for (EdgeId e : cls.biased)
            CHECK(cls.edge_class[e] == EdgeClass::Biased);
        for (EdgeId e : cls.dangerous)
            CHECK(cls.edge_class[e] == EdgeClass::Dangerous);
    }
}

TEST_CASE("binary entropy") {
    CHECK(binary_entropy(0.5) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(binary_entropy(0.0) == 0.0);
    CHECK(binary_entropy(1.0) == 0.0);
    CHECK(binary_entropy(0.125) == doctest::Approx(0.5435644431995964).epsilon(1e-12));
    CHECK(binary_entropy(0.3) == doctest::Approx(0.8812908992306927).epsilon(1e-12));
    CHECK(binary_entropy(0.3) == doctest::Approx(binary_entropy(0.7)).epsilon(1e-12));
    CHECK_THROWS_AS(binary_entropy(-0.1), DomainError);
    CHECK_THROWS_AS(binary_entropy(1.1), DomainError);
}

TEST_CASE("first-moment bias bound") {
    CHECK(bias_probability_bound(0.125, 8) ==
          doctest::Approx(0.15915623106504456).epsilon(1e-12));
    CHECK(bias_probability_bound(0.125, 12) ==
          doctest::Approx(0.044897325528170245).epsilon(1e-12));
    CHECK(bias_probability_bound(0.25, 8) ==
          doctest::Approx(0.7023319615912207).epsilon(1e-12));
    // Decreasing in delta for fixed alpha < 1/2.
    CHECK(bias_probability_bound(0.125, 16) < bias_probability_bound(0.125, 8));
}

TEST_CASE("exact bias probability, frozen counts") {
    struct Row {
        double alpha;
        std::uint32_t delta;
        std::uint64_t favourable;
    };
    // Counts verified by exhaustive enumeration (see the loop below).
    const Row rows[] = {
        {0.125, 8, 18},  {0.125, 10, 22}, {0.125, 12, 26}, {0.125, 16, 274},
        {0.25, 8, 74},   {0.25, 10, 112}, {0.25, 12, 598},
    };
    for (const Row& r : rows) {
        ExactBias eb = exact_bias_probability(r.alpha, r.delta);
        CHECK(static_cast<std::uint64_t>(eb.favourable) == r.favourable);
        CHECK(eb.probability() ==
              doctest::Approx(static_cast<double>(r.favourable) /
                              std::exp2(static_cast<double>(r.delta)))
                  .epsilon(1e-12));
        // The closed-form first-moment bound dominates the exact value.
        CHECK(eb.probability() <= bias_probability_bound(r.alpha, r.delta));
    }
    CHECK_THROWS_AS(exact_bias_probability(0.125, 65), TooLarge);
}

TEST_CASE("exact bias probability matches enumeration for small delta") {
    for (std::uint32_t delta : {8u, 10u, 12u}) {
        for (double alpha : {0.125, 0.25}) {
            const std::uint32_t t =
                static_cast<std::uint32_t>(std::floor(alpha * delta + 1e-9));
            std::uint64_t count = 0;
            for (std::uint64_t m = 0; m < (1ull << delta); ++m) {
                const std::uint32_t ones = static_cast<std::uint32_t>(std::popcount(m));
                if (std::min(ones, delta - ones) <= t) ++count;
            }
            CHECK(static_cast<std::uint64_t>(exact_bias_probability(alpha, delta).favourable) ==
                  count);
        }
    }
}

TEST_CASE("feasibility formulas") {
    CHECK(lll_feasible(0.5, 10, 3));        // 2e*4 ~ 21.7 <= 32
    CHECK_FALSE(lll_feasible(0.125, 8, 100)); // 549 > 2
    CHECK(lll_feasible(0.375, 8, 0));       // 2e <= 8
    CHECK_FALSE(blackbox_feasible(0.125, 8, 16)); // 16 > 2
    CHECK(blackbox_feasible(0.25, 16, 16));       // 16 <= 16
}

TEST_CASE("is_bichromatic") {
    Hypergraph h(4, 2, {{0, 1}, {1, 2}, {2, 3}});
    auto good = is_bichromatic(h, colors_from("RBRB"));
    CHECK(good.ok);
    CHECK(good.monochromatic.empty());

    auto bad = is_bichromatic(h, colors_from("RRRR"));
    CHECK_FALSE(bad.ok);
    CHECK(bad.monochromatic == std::vector<EdgeId>{0, 1, 2});

    Hypergraph single(2, 2, {{0, 1}});
    CHECK(is_bichromatic(single, colors_from("RB")).ok);
}

TEST_CASE("phase invariant checker") {
    Hypergraph h(8, 8, {{0, 1, 2, 3, 4, 5, 6, 7}});
    SUBCASE("initial state passes") {
        PartialColoringState st(h);
        CHECK(check_invariant(h, st, 0.25).ok);
    }
    SUBCASE("bi-chromatic fixed part of an active edge violates (a)") {
        PartialColoringState st(h);
        st.fix_vertex(0, Color::Red);
        st.fix_vertex(1, Color::Blue);
        auto report = check_invariant(h, st, 0.25);
        REQUIRE_FALSE(report.ok);
        CHECK(report.violations.front().edge == 0);
        CHECK(report.violations.front().clause == 'a');
    }
    SUBCASE("too few undecided vertices violates (b)") {
        PartialColoringState st(h);
        for (VertexId v = 0; v < 7; ++v) st.fix_vertex(v, Color::Red);
        auto report = check_invariant(h, st, 0.25); // 1 undecided < floor(2)
        REQUIRE_FALSE(report.ok);
        CHECK(report.violations.front().edge == 0);
        CHECK(report.violations.front().clause == 'b');
    }
    SUBCASE("idle edges are not audited") {
        PartialColoringState st(h);
        st.fix_vertex(0, Color::Red);
        st.fix_vertex(1, Color::Blue);
        st.idle_edge(0);
        CHECK(check_invariant(h, st, 0.25).ok);
    }
}
