#include "core/harness.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "core/json_io.hpp"

namespace lhc {

using nlohmann::json;

Family family_from_string(const std::string& name) {
    if (name == "uniform_random") return Family::UniformRandom;
    if (name == "bounded_degree") return Family::BoundedDegree;
    if (name == "path_chain") return Family::PathChain;
    if (name == "grid") return Family::Grid;
    if (name == "adversarial_biased") return Family::AdversarialBiased;
    throw DomainError("unknown generator family \"" + name + "\"");
}

std::string family_name(Family family) {
    switch (family) {
        case Family::UniformRandom: return "uniform_random";
        case Family::BoundedDegree: return "bounded_degree";
        case Family::PathChain: return "path_chain";
        case Family::Grid: return "grid";
        case Family::AdversarialBiased: return "adversarial_biased";
    }
    throw DomainError("unknown generator family");
}

std::vector<Family> all_families() {
    return {Family::UniformRandom, Family::BoundedDegree, Family::PathChain, Family::Grid,
            Family::AdversarialBiased};
}

namespace {

std::vector<VertexId> sample_distinct(SplitMix64& rng, std::uint32_t count,
                                      const std::vector<VertexId>& pool) {
    std::set<VertexId> picked;
    while (picked.size() < count)
        picked.insert(pool[rng.next_below(pool.size())]);
    return {picked.begin(), picked.end()};
}

Hypergraph gen_uniform(const GeneratorSpec& s) {
    SplitMix64 rng(s.seed);
    std::vector<VertexId> pool(s.n);
    for (VertexId v = 0; v < s.n; ++v) pool[v] = v;
    std::vector<std::vector<VertexId>> edges;
    for (std::uint32_t i = 0; i < s.n; ++i) edges.push_back(sample_distinct(rng, s.delta, pool));
    return Hypergraph(s.n, s.delta, std::move(edges));
}

Hypergraph gen_bounded_degree(const GeneratorSpec& s) {
    // Cap on the intersection degree: no edge may share a vertex with more
    // than `cap` other edges. Candidates breaking the cap (their own count or
    // a neighbour's) are redrawn.
    const std::uint32_t cap = s.max_degree ? *s.max_degree : s.delta * s.delta;
    SplitMix64 rng(s.seed);
    std::vector<VertexId> pool(s.n);
    for (VertexId v = 0; v < s.n; ++v) pool[v] = v;
    std::vector<std::vector<EdgeId>> by_vertex(s.n);
    std::vector<std::uint32_t> idegree; // per placed edge
    std::vector<std::vector<VertexId>> edges;
    std::vector<char> seen;
    for (std::uint32_t i = 0; i < s.n; ++i) {
        bool placed = false;
        for (std::uint32_t attempt = 0; attempt < 1000 && !placed; ++attempt) {
            auto edge = sample_distinct(rng, s.delta, pool);
            seen.assign(edges.size(), 0);
            std::vector<EdgeId> touching;
            for (VertexId v : edge)
                for (EdgeId e : by_vertex[v])
                    if (!seen[e]) {
                        seen[e] = 1;
                        touching.push_back(e);
                    }
            bool fits = touching.size() <= cap;
            for (EdgeId e : touching)
                if (idegree[e] + 1 > cap) {
                    fits = false;
                    break;
                }
            if (!fits) continue;
            for (EdgeId e : touching) ++idegree[e];
            idegree.push_back(static_cast<std::uint32_t>(touching.size()));
            for (VertexId v : edge) by_vertex[v].push_back(static_cast<EdgeId>(edges.size()));
            edges.push_back(std::move(edge));
            placed = true;
        }
        if (!placed)
            throw GenerationFailed("bounded-degree generator exceeded its retry budget");
    }
    return Hypergraph(s.n, s.delta, std::move(edges));
}

Hypergraph gen_path_chain(const GeneratorSpec& s) {
    std::vector<std::vector<VertexId>> edges;
    for (std::uint32_t i = 0; i < s.n; ++i) {
        std::vector<VertexId> edge;
        for (std::uint32_t k = 0; k < s.delta; ++k) edge.push_back((i + k) % s.n);
        edges.push_back(std::move(edge));
    }
    return Hypergraph(s.n, s.delta, std::move(edges));
}

Hypergraph gen_grid(const GeneratorSpec& s) {
    const std::uint32_t rows = std::max<std::uint32_t>(
        1, static_cast<std::uint32_t>(std::floor(std::sqrt(static_cast<double>(s.n)))));
    const std::uint32_t cols = (s.n + rows - 1) / rows;
    // Cells are ranked by L-infinity ring around the edge's anchor, so each
    // edge is a compact rectangular-ish patch of the torus.
    std::vector<std::pair<std::uint32_t, std::uint32_t>> offsets;
    for (std::uint32_t a = 0; a < rows; ++a)
        for (std::uint32_t b = 0; b < cols; ++b) offsets.emplace_back(a, b);
    std::sort(offsets.begin(), offsets.end(), [](const auto& p, const auto& q) {
        const std::uint32_t rp = std::max(p.first, p.second);
        const std::uint32_t rq = std::max(q.first, q.second);
        return std::tie(rp, p.first, p.second) < std::tie(rq, q.first, q.second);
    });
    std::vector<std::vector<VertexId>> edges;
    for (std::uint32_t i = 0; i < s.n; ++i) {
        const std::uint32_t r = i / cols, c = i % cols;
        std::vector<VertexId> edge;
        for (const auto& [a, b] : offsets) {
            const VertexId v = ((r + a) % rows) * cols + ((c + b) % cols);
            if (v >= s.n) continue; // cell beyond the last partial row
            edge.push_back(v);
            if (edge.size() == s.delta) break;
        }
        edges.push_back(std::move(edge));
    }
    return Hypergraph(s.n, s.delta, std::move(edges));
}

Hypergraph gen_adversarial(const GeneratorSpec& s) {
    // Crowd consecutive edges into pools of delta + 2 vertices: edges within
    // a pool pairwise share at least delta - 2 vertices, which concentrates
    // bias and keeps whole pools monochromatic-prone under random colorings.
    const std::uint32_t pool_size = std::min(s.n, s.delta + 2);
    const std::uint32_t pools = std::max<std::uint32_t>(1, s.n / pool_size);
    SplitMix64 rng(s.seed);
    std::vector<std::vector<VertexId>> edges;
    for (std::uint32_t i = 0; i < s.n; ++i) {
        const std::uint32_t p = i % pools;
        std::vector<VertexId> pool(pool_size);
        for (std::uint32_t j = 0; j < pool_size; ++j)
            pool[j] = static_cast<VertexId>((static_cast<std::uint64_t>(p) * pool_size + j) % s.n);
        edges.push_back(sample_distinct(rng, s.delta, pool));
    }
    return Hypergraph(s.n, s.delta, std::move(edges));
}

} // namespace

Hypergraph generate(const GeneratorSpec& spec) {
    if (spec.delta == 0 || spec.n == 0) throw DomainError("generator needs positive n and delta");
    if (spec.delta > spec.n) throw DomainError("generator needs delta <= n");
    switch (spec.family) {
        case Family::UniformRandom: return gen_uniform(spec);
        case Family::BoundedDegree: return gen_bounded_degree(spec);
        case Family::PathChain: return gen_path_chain(spec);
        case Family::Grid: return gen_grid(spec);
        case Family::AdversarialBiased: return gen_adversarial(spec);
    }
    throw DomainError("unknown generator family");
}

ColoringSequence random_coloring_sequence(std::uint32_t n, std::uint32_t x, std::uint64_t seed) {
    SplitMix64 rng(seed);
    ColoringSequence seq;
    seq.n_vertices = n;
    for (std::uint32_t i = 0; i < x; ++i) {
        std::vector<Color> col(n);
        for (VertexId v = 0; v < n; ++v) col[v] = rng.next_bit() ? Color::Blue : Color::Red;
        seq.colorings.push_back(std::move(col));
    }
    return seq;
}

RunResult seeded_run(const Hypergraph& h, const AlgoParams& params, std::uint64_t seed,
                     bool keep_traces) {
    const std::uint32_t x = params.phase_budget(h.n_vertices());
    return run(h, random_coloring_sequence(h.n_vertices(), x, seed), params, keep_traces);
}

BruteForceResult brute_force_bichromatic(const Hypergraph& h) {
    const std::uint32_t n = h.n_vertices();
    if (n > 24) throw TooLarge("brute-force oracle supports at most 24 vertices");
    std::vector<std::uint32_t> masks(h.n_edges(), 0);
    for (EdgeId e = 0; e < h.n_edges(); ++e)
        for (VertexId v : h.edge(e)) masks[e] |= 1u << (n - 1 - v);
    BruteForceResult res;
    for (std::uint64_t m = 0; m < (1ULL << n); ++m) {
        ++res.tried;
        bool ok = true;
        for (std::uint32_t mask : masks) {
            const std::uint32_t bits = static_cast<std::uint32_t>(m) & mask;
            if (bits == 0 || bits == mask) { // all Red / all Blue
                ok = false;
                break;
            }
        }
        if (ok) {
            res.feasible = true;
            res.coloring.resize(n);
            for (VertexId v = 0; v < n; ++v)
                res.coloring[v] = (m >> (n - 1 - v)) & 1 ? Color::Blue : Color::Red;
            return res;
        }
    }
    return res;
}

json SuccessRateResult::to_json() const {
    json recs = json::array();
    for (const auto& r : records)
        recs.push_back(json{{"seed", r.seed},
                            {"success", r.success},
                            {"executed_phases", r.executed_phases},
                            {"total_rounds", r.total_rounds},
                            {"infeasible_pieces", r.infeasible_pieces}});
    json out{{"experiment", "success-rate"},
             {"trials", trials},
             {"successes", successes},
             {"success_rate", success_rate},
             {"mean_phases_to_success", mean_phases_to_success},
             {"records", recs}};
    if (structurally_infeasible)
        out["structurally_infeasible"] = *structurally_infeasible;
    else
        out["structurally_infeasible"] = nullptr;
    return out;
}

SuccessRateResult experiment_success_rate(const Hypergraph& h, const AlgoParams& params,
                                          std::uint32_t trials, std::uint64_t seed) {
    SuccessRateResult res;
    res.trials = trials;
    if (trials == 0) return res; // vacuous report
    double phases_sum = 0.0;
    for (std::uint32_t t = 0; t < trials; ++t) {
        const std::uint64_t trial_seed = derive_seed(seed, t);
        RunResult r = seeded_run(h, params, trial_seed);
        const bool success = r.outcome == RunOutcome::Success;
        if (success) {
            ++res.successes;
            phases_sum += r.executed_phases;
        }
        res.records.push_back({trial_seed, success, r.executed_phases, r.total_rounds,
                               r.infeasible_pieces});
    }
    res.success_rate = static_cast<double>(res.successes) / trials;
    res.mean_phases_to_success = res.successes ? phases_sum / res.successes : 0.0;
    if (res.successes > 0)
        res.structurally_infeasible = false; // a success is a feasibility witness
    else if (h.n_vertices() <= 24)
        res.structurally_infeasible = !brute_force_bichromatic(h).feasible;
    else
        res.structurally_infeasible = std::nullopt;
    return res;
}

json ClaimResult::to_json() const {
    return json{{"experiment", "claim"},  {"trials", trials},
                {"ell_max", ell_max},     {"freq", freq},
                {"ratios", ratios},       {"fitted_ratio", fitted_ratio},
                {"monotone", monotone}};
}

ClaimResult experiment_claim(const Hypergraph& h, const AlgoParams& params,
                             std::uint32_t trials, std::uint32_t ell_max, std::uint64_t seed) {
    ClaimResult res;
    res.trials = trials;
    res.ell_max = ell_max;
    if (trials == 0 || ell_max == 0) { // vacuous report (frequency 1 over zero phases)
        res.fitted_ratio = 1.0;
        res.monotone = true;
        return res;
    }
    // Only the first ell_max phases matter, so run with that exact budget.
    AlgoParams truncated = params;
    truncated.beta = ell_max;
    truncated.num_epochs = 1;
    std::vector<std::uint64_t> survivors(ell_max, 0); // summed over trials and edges
    for (std::uint32_t t = 0; t < trials; ++t) {
        RunResult r = seeded_run(h, truncated, derive_seed(seed, t));
        // An edge survives through phase l if it was unsuccessful in every
        // phase 1..l. Phases the run never executed have empty unsuccessful
        // sets: nothing survives them.
        std::vector<char> alive(h.n_edges(), 1);
        for (std::uint32_t l = 0; l < ell_max; ++l) {
            std::vector<char> here(h.n_edges(), 0);
            if (l < r.unsuccessful_per_phase.size())
                for (EdgeId e : r.unsuccessful_per_phase[l]) here[e] = 1;
            std::uint64_t count = 0;
            for (EdgeId e = 0; e < h.n_edges(); ++e) {
                alive[e] = alive[e] && here[e];
                if (alive[e]) ++count;
            }
            survivors[l] += count;
        }
    }
    const double denom = static_cast<double>(trials) * h.n_edges();
    for (std::uint32_t l = 0; l < ell_max; ++l) res.freq.push_back(survivors[l] / denom);
    res.monotone = true;
    for (std::uint32_t l = 1; l < ell_max; ++l) {
        if (res.freq[l] > res.freq[l - 1]) res.monotone = false;
        res.ratios.push_back(res.freq[l - 1] > 0.0 ? res.freq[l] / res.freq[l - 1] : 0.0);
    }
    if (res.freq.front() <= 0.0)
        res.fitted_ratio = 0.0;
    else if (ell_max == 1)
        res.fitted_ratio = 1.0;
    else
        res.fitted_ratio = std::pow(res.freq.back() / res.freq.front(),
                                    1.0 / static_cast<double>(ell_max - 1));
    return res;
}

json ShrinkageResult::to_json() const {
    return json{{"experiment", "shrinkage"},
                {"trials", trials},
                {"series", series},
                {"monotone_fraction", monotone_fraction},
                {"halving_fraction", halving_fraction},
                {"final_zero_fraction", final_zero_fraction},
                {"mean_by_epoch", mean_by_epoch}};
}

ShrinkageResult experiment_shrinkage(const Hypergraph& h, const AlgoParams& params,
                                     std::uint32_t trials, std::uint64_t seed) {
    ShrinkageResult res;
    res.trials = trials;
    if (trials == 0) { // vacuous report
        res.monotone_fraction = res.halving_fraction = res.final_zero_fraction = 1.0;
        return res;
    }
    std::uint64_t transitions = 0, monotone = 0, halving = 0, final_zero = 0;
    for (std::uint32_t t = 0; t < trials; ++t) {
        RunResult r = seeded_run(h, params, derive_seed(seed, t));
        const auto& s = r.skeleton_series;
        for (std::size_t i = 0; i + 1 < s.size(); ++i) {
            ++transitions;
            if (s[i + 1] <= s[i]) ++monotone;
            if (s[i + 1] <= (s[i] + 1) / 2) ++halving;
        }
        if (!s.empty() && s.back() == 0) ++final_zero;
        res.series.push_back(s);
    }
    res.monotone_fraction = transitions ? static_cast<double>(monotone) / transitions : 1.0;
    res.halving_fraction = transitions ? static_cast<double>(halving) / transitions : 1.0;
    res.final_zero_fraction = static_cast<double>(final_zero) / trials;
    std::size_t longest = 0;
    for (const auto& s : res.series) longest = std::max(longest, s.size());
    for (std::size_t i = 0; i < longest; ++i) {
        double sum = 0.0;
        std::uint32_t count = 0;
        for (const auto& s : res.series)
            if (i < s.size()) {
                sum += static_cast<double>(s[i]);
                ++count;
            }
        res.mean_by_epoch.push_back(count ? sum / count : 0.0);
    }
    return res;
}

json SearchResult::to_json() const {
    json out{{"found", found},
             {"tried", tried},
             {"budget", budget},
             {"exhausted_space", exhausted_space}};
    out["sequence"] = found ? coloring_sequence_to_json(sequence) : json(nullptr);
    return out;
}

SearchResult search_colorings(const std::vector<Hypergraph>& universe, const AlgoParams& params,
                              std::uint64_t budget, std::uint64_t seed) {
    if (universe.empty()) throw ValidationError("search needs at least one instance");
    const std::uint32_t n = universe.front().n_vertices();
    for (const auto& h : universe)
        if (h.n_vertices() != n)
            throw ValidationError("universe instances must share one vertex count");
    const std::uint32_t x = params.phase_budget(n);

    SearchResult res;
    res.budget = budget;
    const std::uint64_t bits = static_cast<std::uint64_t>(x) * n;

    auto attempt = [&](const ColoringSequence& seq) {
        ++res.tried;
        for (const auto& h : universe)
            if (run(h, seq, params, false).outcome != RunOutcome::Success) return false;
        return true;
    };

    // Lexicographic sweep: all-Red first, last vertex of the last coloring
    // least significant.
    ColoringSequence odo;
    odo.n_vertices = n;
    odo.colorings.assign(x, std::vector<Color>(n, Color::Red));
    bool wrapped = false;
    while (res.tried < budget && !wrapped) {
        if (attempt(odo)) {
            res.found = true;
            res.sequence = odo;
            return res;
        }
        wrapped = true;
        for (std::size_t i = bits; i-- > 0;) {
            auto& slot = odo.colorings[i / n][i % n];
            if (slot == Color::Red) {
                slot = Color::Blue;
                wrapped = false;
                break;
            }
            slot = Color::Red; // carry
        }
    }
    res.exhausted_space = wrapped;

    // Leftover budget after the sweep means the whole space was covered, so
    // random restarts could only repeat candidates; spend the remainder only
    // when the sweep was cut short some other way (kept for interface parity,
    // the lexicographic policy above never leaves this reachable).
    while (!res.exhausted_space && res.tried < budget) {
        ColoringSequence cand = random_coloring_sequence(n, x, derive_seed(seed, res.tried));
        if (attempt(cand)) {
            res.found = true;
            res.sequence = cand;
            return res;
        }
    }
    return res;
}

} // namespace lhc
