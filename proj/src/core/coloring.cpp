#include "core/coloring.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

namespace lhc {

namespace {

// Guard against 0.29 * 100 == 28.999999999999996-style representation error
// when a fraction-of-delta threshold lands on an integer.
constexpr double kThresholdNudge = 1e-9;

} // namespace

Color color_from_char(char c) {
    switch (std::toupper(static_cast<unsigned char>(c))) {
        case 'R': return Color::Red;
        case 'B': return Color::Blue;
        default: throw DomainError(std::string("unknown color '") + c + "'");
    }
}

void ColoringSequence::validate() const {
    for (const auto& col : colorings)
        if (col.size() != n_vertices)
            throw ValidationError("coloring does not cover every vertex exactly once");
}

PartialColoringState::PartialColoringState(const Hypergraph& h)
    : fixed_(h.n_vertices()), active_(h.n_edges(), 1),
      undecided_(h.n_vertices()), active_count_(h.n_edges()) {}

void PartialColoringState::fix_vertex(VertexId v, Color c) {
    if (fixed_[v]) throw ValidationError("vertex " + std::to_string(v) + " is already fixed");
    fixed_[v] = c;
    --undecided_;
}

void PartialColoringState::idle_edge(EdgeId e) {
    if (!active_[e]) throw ValidationError("edge " + std::to_string(e) + " is already idle");
    active_[e] = 0;
    --active_count_;
}

std::vector<EdgeId> PartialColoringState::active_edges() const {
    std::vector<EdgeId> out;
    out.reserve(active_count_);
    for (EdgeId e = 0; e < active_.size(); ++e)
        if (active_[e]) out.push_back(e);
    return out;
}

void ClassifyParams::validate() const {
    if (!(biased_frac > 0.0) || !(biased_frac < 0.5))
        throw DomainError("biased fraction must lie in (0, 1/2)");
    if (!(dangerous_frac > 0.0) || !(dangerous_frac < 0.5))
        throw DomainError("dangerous fraction must lie in (0, 1/2)");
}

std::uint32_t ClassifyParams::biased_threshold(std::uint32_t delta) const {
    return static_cast<std::uint32_t>(std::floor(biased_frac * delta + kThresholdNudge));
}

std::uint32_t ClassifyParams::dangerous_threshold(std::uint32_t delta) const {
    return static_cast<std::uint32_t>(std::ceil(dangerous_frac * delta - kThresholdNudge));
}

EdgeClassification classify(const Hypergraph& h, const PartialColoringState& st,
                            const std::vector<Color>& temp, const ClassifyParams& params) {
    params.validate();
    if (temp.size() != h.n_vertices())
        throw ValidationError("temporary coloring does not cover every vertex");
    const std::uint32_t biased_at = params.biased_threshold(h.delta());
    const std::uint32_t dangerous_at = params.dangerous_threshold(h.delta());

    EdgeClassification out;
    out.edge_class.assign(h.n_edges(), EdgeClass::Idle);
    out.vertex_bad.assign(h.n_vertices(), 0);

    for (EdgeId e = 0; e < h.n_edges(); ++e) {
        if (!st.edge_active(e)) continue;
        std::uint32_t reds = 0;
        for (VertexId v : h.edge(e))
            if (effective_color(st, temp, v) == Color::Red) ++reds;
        const std::uint32_t minority = std::min(reds, h.delta() - reds);
        if (minority <= biased_at) {
            out.edge_class[e] = EdgeClass::Biased;
            out.biased.push_back(e);
            for (VertexId v : h.edge(e)) out.vertex_bad[v] = 1;
        } else {
            out.edge_class[e] = EdgeClass::Safe; // possibly upgraded below
        }
    }
    for (EdgeId e = 0; e < h.n_edges(); ++e) {
        if (out.edge_class[e] != EdgeClass::Safe) continue;
        std::uint32_t bad = 0;
        for (VertexId v : h.edge(e))
            if (out.vertex_bad[v]) ++bad;
        if (bad >= dangerous_at) {
            out.edge_class[e] = EdgeClass::Dangerous;
            out.dangerous.push_back(e);
        }
    }
    return out;
}

double binary_entropy(double a) {
    if (!(a >= 0.0) || !(a <= 1.0)) throw DomainError("entropy argument outside [0, 1]");
    if (a == 0.0 || a == 1.0) return 0.0;
    return -a * std::log2(a) - (1.0 - a) * std::log2(1.0 - a);
}

double bias_probability_bound(double alpha, std::uint32_t delta) {
    if (!(alpha > 0.0) || !(alpha < 0.5)) throw DomainError("alpha must lie in (0, 1/2)");
    if (delta == 0) throw DomainError("delta must be positive");
    return 2.0 * std::exp2((binary_entropy(alpha) - 1.0) * static_cast<double>(delta));
}

double ExactBias::probability() const {
    return static_cast<double>(favourable) / std::exp2(static_cast<double>(delta));
}

ExactBias exact_bias_probability(double alpha, std::uint32_t delta) {
    if (!(alpha > 0.0) || !(alpha < 0.5)) throw DomainError("alpha must lie in (0, 1/2)");
    if (delta == 0) throw DomainError("delta must be positive");
    if (delta > 64) throw TooLarge("exact bias probability supports delta <= 64");
    const std::uint32_t t = ClassifyParams::from_alpha(alpha).biased_threshold(delta);
    // Sum of C(delta, i) for i <= t; C(64, 32) < 2^62 so every term and the
    // partial sums fit comfortably in 128 bits.
    unsigned __int128 sum = 0;
    unsigned __int128 binom = 1;
    for (std::uint32_t i = 0; i <= t; ++i) {
        sum += binom;
        binom = binom * (delta - i) / (i + 1);
    }
    // "At most t of either color": for t < delta/2 the two events are
    // disjoint, so the count is exactly twice the one-sided sum.
    return ExactBias{delta, 2 * sum};
}

// Pure formula checks, deliberately unvalidated: callers probe parameter
// combinations outside the classification range (e.g. alpha = 1/2).
bool lll_feasible(double alpha, std::uint32_t delta, std::size_t d) {
    const double lhs = 2.0 * std::exp(1.0) * (static_cast<double>(d) + 1.0);
    return lhs <= std::exp2(alpha * static_cast<double>(delta));
}

bool blackbox_feasible(double alpha, std::uint32_t delta, std::uint32_t n) {
    return static_cast<double>(n) <= std::exp2(alpha * static_cast<double>(delta));
}

BichromaticCheck is_bichromatic(const Hypergraph& h, const std::vector<Color>& coloring) {
    if (coloring.size() != h.n_vertices())
        throw ValidationError("coloring does not cover every vertex");
    BichromaticCheck out;
    out.ok = true;
    for (EdgeId e = 0; e < h.n_edges(); ++e) {
        bool red = false, blue = false;
        for (VertexId v : h.edge(e))
            (coloring[v] == Color::Red ? red : blue) = true;
        if (!red || !blue) {
            out.ok = false;
            out.monochromatic.push_back(e);
        }
    }
    return out;
}

InvariantReport check_invariant(const Hypergraph& h, const PartialColoringState& st,
                                double alpha) {
    if (!(alpha > 0.0) || !(alpha < 0.5)) throw DomainError("alpha must lie in (0, 1/2)");
    const std::uint32_t min_undecided =
        static_cast<std::uint32_t>(std::floor(alpha * h.delta() + kThresholdNudge));
    InvariantReport out;
    for (EdgeId e = 0; e < h.n_edges(); ++e) {
        if (!st.edge_active(e)) continue;
        std::uint32_t undecided = 0;
        bool red = false, blue = false;
        for (VertexId v : h.edge(e)) {
            auto f = st.fixed_color(v);
            if (!f) {
                ++undecided;
                continue;
            }
            (*f == Color::Red ? red : blue) = true;
        }
        if (red && blue) {
            out.ok = false;
            out.violations.push_back({e, 'a'});
        }
        if (undecided < min_undecided) {
            out.ok = false;
            out.violations.push_back({e, 'b'});
        }
    }
    return out;
}

} // namespace lhc
