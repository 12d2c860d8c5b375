#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "core/algorithm.hpp"
#include "core/coloring.hpp"
#include "core/common.hpp"
#include "core/hypergraph.hpp"
#include "core/rng.hpp"

namespace lhc {

enum class Family : std::uint8_t {
    UniformRandom,     // each edge: delta vertices sampled without replacement
    BoundedDegree,     // uniform with per-vertex degree capped (resampled)
    PathChain,         // edge i = {i, ..., i+delta-1} mod n
    Grid,              // rectangular patches on a 2d torus layout
    AdversarialBiased, // edges crowded into tiny vertex pools
};

Family family_from_string(const std::string& name); // DomainError on unknown
std::string family_name(Family family);
std::vector<Family> all_families();

struct GeneratorSpec {
    Family family = Family::UniformRandom;
    std::uint32_t n = 32;     // vertices; also the edge count (admissible)
    std::uint32_t delta = 8;
    std::uint64_t seed = 1;
    // BoundedDegree only: cap on the number of other edges an edge may
    // intersect; unset means delta^2. An explicit 0 forces pairwise-disjoint
    // edges (GenerationFailed whenever overlap is unavoidable).
    std::optional<std::uint32_t> max_degree;
};

// Deterministic: equal specs give byte-identical instances. Every produced
// instance is admissible (n edges on n vertices) and delta-uniform.
Hypergraph generate(const GeneratorSpec& spec);

// The x = beta * num_epochs colorings a seeded run consumes, drawn
// coloring-major then vertex-ascending, one fair bit each.
ColoringSequence random_coloring_sequence(std::uint32_t n, std::uint32_t x, std::uint64_t seed);

// Convenience: seeded end-to-end run on an instance.
RunResult seeded_run(const Hypergraph& h, const AlgoParams& params, std::uint64_t seed,
                     bool keep_traces = false);

struct BruteForceResult {
    bool feasible = false;
    std::vector<Color> coloring; // first valid in canonical order, empty if none
    std::uint64_t tried = 0;
};

// Ground-truth 2-colorability oracle: scans all 2^n colorings in canonical
// order (vertex 0 most significant, Red before Blue). TooLarge above 24
// vertices.
BruteForceResult brute_force_bichromatic(const Hypergraph& h);

struct TrialRecord {
    std::uint64_t seed = 0;
    bool success = false;
    std::uint32_t executed_phases = 0;
    std::uint64_t total_rounds = 0;
    std::uint32_t infeasible_pieces = 0;
};

struct SuccessRateResult {
    std::uint32_t trials = 0;
    std::uint32_t successes = 0;
    double success_rate = 0.0;
    double mean_phases_to_success = 0.0; // over successful trials
    // Ground truth when it can be settled: successes prove feasibility, and
    // instances small enough for the oracle get the full scan. nullopt when
    // every trial exhausted and the instance is too large to scan.
    std::optional<bool> structurally_infeasible;
    std::vector<TrialRecord> records;

    nlohmann::json to_json() const;
};

SuccessRateResult experiment_success_rate(const Hypergraph& h, const AlgoParams& params,
                                          std::uint32_t trials, std::uint64_t seed);

struct ClaimResult {
    std::uint32_t trials = 0;
    std::uint32_t ell_max = 0;
    // freq[l-1]: fraction of (trial, edge) pairs unsuccessful in every one of
    // the first l phases, where an edge is unsuccessful in a phase when it is
    // biased there and its component's skeleton has size >= u.
    std::vector<double> freq;
    std::vector<double> ratios; // freq[l] / freq[l-1], 0 when the denominator is 0
    double fitted_ratio = 0.0;  // geometric mean decay, 0 when freq[0] == 0
    bool monotone = false;

    nlohmann::json to_json() const;
};

ClaimResult experiment_claim(const Hypergraph& h, const AlgoParams& params,
                             std::uint32_t trials, std::uint32_t ell_max, std::uint64_t seed);

struct ShrinkageResult {
    std::uint32_t trials = 0;
    std::vector<std::vector<std::size_t>> series; // per trial skeleton series
    double monotone_fraction = 0.0; // transitions with k_{t+1} <= k_t
    double halving_fraction = 0.0;  // transitions with k_{t+1} <= ceil(k_t / 2)
    double final_zero_fraction = 0.0;
    std::vector<double> mean_by_epoch; // mean k_t over trials that reach epoch t

    nlohmann::json to_json() const;
};

ShrinkageResult experiment_shrinkage(const Hypergraph& h, const AlgoParams& params,
                                     std::uint32_t trials, std::uint64_t seed);

struct SearchResult {
    bool found = false;
    ColoringSequence sequence; // empty unless found
    std::uint64_t tried = 0;
    std::uint64_t budget = 0;
    // True when the whole sequence space fit inside the budget, making a
    // negative answer a proof rather than a search failure.
    bool exhausted_space = false;

    nlohmann::json to_json() const;
};

// Looks for one sequence of temporary colorings that drives every universe
// instance to success. Candidates are enumerated lexicographically (all-Red
// first); if the budget outlasts the finite space, the remainder is spent on
// seeded random sequences. Deterministic for fixed inputs.
SearchResult search_colorings(const std::vector<Hypergraph>& universe, const AlgoParams& params,
                              std::uint64_t budget, std::uint64_t seed);

} // namespace lhc
