#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "core/common.hpp"
#include "core/hypergraph.hpp"

namespace lhc {

enum class Color : std::uint8_t { Red = 0, Blue = 1 };

inline char color_char(Color c) { return c == Color::Red ? 'R' : 'B'; }
Color color_from_char(char c); // accepts 'R'/'B' (case-insensitive), else DomainError

// x temporary colorings, one per phase, each covering every vertex.
struct ColoringSequence {
    std::uint32_t n_vertices = 0;
    std::vector<std::vector<Color>> colorings;

    std::uint32_t x() const { return static_cast<std::uint32_t>(colorings.size()); }
    void validate() const; // every coloring has exactly n_vertices entries
};

// Mutable run state: per-vertex fixed color (or undecided) plus per-edge
// active flag. Edges only ever move from active to idle, vertices from
// undecided to fixed.
class PartialColoringState {
public:
    explicit PartialColoringState(const Hypergraph& h);

    bool decided(VertexId v) const { return fixed_[v].has_value(); }
    std::optional<Color> fixed_color(VertexId v) const { return fixed_[v]; }
    void fix_vertex(VertexId v, Color c);
    bool edge_active(EdgeId e) const { return active_[e] != 0; }
    void idle_edge(EdgeId e);

    std::uint32_t n_vertices() const { return static_cast<std::uint32_t>(fixed_.size()); }
    std::uint32_t n_edges() const { return static_cast<std::uint32_t>(active_.size()); }
    std::uint32_t undecided_count() const { return undecided_; }
    std::uint32_t active_count() const { return active_count_; }
    std::vector<EdgeId> active_edges() const;
    bool fully_decided() const { return undecided_ == 0; }

private:
    std::vector<std::optional<Color>> fixed_;
    std::vector<char> active_;
    std::uint32_t undecided_ = 0;
    std::uint32_t active_count_ = 0;
};

// Fixed color where decided, temporary color otherwise.
inline Color effective_color(const PartialColoringState& st, const std::vector<Color>& temp,
                             VertexId v) {
    auto f = st.fixed_color(v);
    return f ? *f : temp[v];
}

enum class EdgeClass : std::uint8_t {
    Idle,      // not classified: already permanently bi-chromatic / retired
    Safe,      // active, neither biased nor dangerous
    Dangerous, // active, not biased, but rich in bad vertices
    Biased,    // active with a nearly monochromatic effective coloring
};

// Classification thresholds as fractions of delta. An edge is biased when
// its minority effective color count is <= floor(biased_frac * delta); a
// non-biased active edge is dangerous when it has >= ceil(dangerous_frac *
// delta) bad vertices. The plain alpha-parameterized algorithm uses
// (alpha, alpha); the sharper counting argument for bounded-degree instances
// is stated for (1/8, 1/9), provided as a named preset.
struct ClassifyParams {
    double biased_frac = 0.125;
    double dangerous_frac = 0.125;

    static ClassifyParams from_alpha(double alpha) { return {alpha, alpha}; }
    static ClassifyParams eighth_ninth() { return {1.0 / 8.0, 1.0 / 9.0}; }
    void validate() const;

    std::uint32_t biased_threshold(std::uint32_t delta) const;    // floor
    std::uint32_t dangerous_threshold(std::uint32_t delta) const; // ceil
};

struct EdgeClassification {
    std::vector<EdgeClass> edge_class; // indexed by edge id
    std::vector<char> vertex_bad;      // member of some active biased edge
    std::vector<EdgeId> biased;        // ascending
    std::vector<EdgeId> dangerous;     // ascending
};

// Classifies every active edge under the effective coloring (fixed colors
// where decided, temp elsewhere). Idle edges are skipped and contribute no
// bad vertices.
EdgeClassification classify(const Hypergraph& h, const PartialColoringState& st,
                            const std::vector<Color>& temp, const ClassifyParams& params);

// Binary entropy h(a) = -a log2 a - (1-a) log2 (1-a), with h(0) = h(1) = 0.
// DomainError outside [0, 1].
double binary_entropy(double a);

// First-moment bias bound p = 2 * 2^((h(alpha) - 1) * delta).
double bias_probability_bound(double alpha, std::uint32_t delta);

// Exact probability that a uniformly colored delta-edge is biased at level
// alpha: 2 * sum_{i <= floor(alpha*delta)} C(delta, i) / 2^delta (the two
// minority sides cannot overlap for alpha < 1/2). Exact integer arithmetic;
// requires delta <= 64 (TooLarge beyond).
struct ExactBias {
    std::uint32_t delta = 0;
    unsigned __int128 favourable = 0; // biased colorings out of 2^delta
    double probability() const;
};
ExactBias exact_bias_probability(double alpha, std::uint32_t delta);

// Symmetric Lovasz Local Lemma feasibility: 2e(d+1) <= 2^(alpha*delta),
// where d is the max degree of the intersection graph.
bool lll_feasible(double alpha, std::uint32_t delta, std::size_t d);

// Union-bound feasibility for recoloring n identical pieces: n <= 2^(alpha*delta).
bool blackbox_feasible(double alpha, std::uint32_t delta, std::uint32_t n);

struct BichromaticCheck {
    bool ok = false;
    std::vector<EdgeId> monochromatic; // ascending
};

// Verifies a total coloring: every edge must carry both colors.
BichromaticCheck is_bichromatic(const Hypergraph& h, const std::vector<Color>& coloring);

struct InvariantViolation {
    EdgeId edge = 0;
    char clause = '?'; // 'a': fixed part not monochromatic-safe, 'b': too few undecided
};

struct InvariantReport {
    bool ok = true;
    std::vector<InvariantViolation> violations;
};

// Phase-end invariant over active edges: (a) all fixed vertices of an active
// edge share one color, (b) the edge keeps at least floor(alpha*delta)
// undecided vertices.
InvariantReport check_invariant(const Hypergraph& h, const PartialColoringState& st,
                                double alpha);

} // namespace lhc
