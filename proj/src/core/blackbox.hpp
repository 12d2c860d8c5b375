#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "core/coloring.hpp"
#include "core/common.hpp"

namespace lhc {

// One edge handed to the recoloring black box: its vertex list and, in
// parallel, which vertices are pinned to a color. nullopt slots are the
// recolorable ones.
struct PieceEdge {
    EdgeId id = 0;
    std::vector<VertexId> vertices;
    std::vector<std::optional<Color>> fixed;
};

// A small sub-hypergraph to recolor in isolation. Canonical form (edges
// ascending by id, vertices ascending within an edge) makes equal pieces
// byte-identical, so results can be memoized and permuted inputs agree.
struct Piece {
    std::vector<PieceEdge> edges;

    void canonicalize();
    // Throws ValidationError on malformed input: empty piece, duplicate edge
    // ids, ragged profiles, or one vertex pinned to two colors.
    void validate() const;
    std::vector<VertexId> undecided() const; // ascending, unique
    std::string canonical_key() const;       // serialization of the canonical form
};

struct RecolorResult {
    enum class Method : std::uint8_t { Exhaustive, Greedy };

    bool feasible = false;
    Method method = Method::Exhaustive;
    // Covers exactly the undecided vertices, ascending. Empty when infeasible.
    std::vector<std::pair<VertexId, Color>> assignment;
};

// Recolors the piece's undecided vertices so every edge gets both colors,
// honoring pinned vertices. Dispatch: exhaustive scan when the number of
// undecided vertices is <= exhaustive_cap, otherwise the derandomized
// first-moment greedy. Both are deterministic; infeasibility is reported,
// never thrown.
RecolorResult blackbox_recolor(const Piece& piece, std::uint32_t exhaustive_cap = 20);

// Scans assignments in canonical order -- undecided vertices ascending, the
// smallest acting as the most significant bit, Red (0) before Blue (1) --
// and returns the first that works. Requires <= 30 undecided vertices.
RecolorResult blackbox_recolor_exhaustive(const Piece& piece);

// Method of conditional expectations on the potential
//   Phi = sum over edges of Pr[edge ends monochromatic | choices so far]
// under uniform random completion. Each undecided vertex (ascending) takes
// the color minimizing Phi, ties to Red. Phi never increases, so Phi < 1 at
// the start guarantees success; the result is verified either way. Exact
// arithmetic in 1/2^64 units; requires every edge to have <= 64 vertices.
RecolorResult blackbox_recolor_greedy(const Piece& piece);

// Independent check that `assignment` covers exactly the undecided vertices
// and makes every piece edge bi-chromatic. Reason in *why on failure.
bool verify_piece_recolor(const Piece& piece,
                          const std::vector<std::pair<VertexId, Color>>& assignment,
                          std::string* why = nullptr);

} // namespace lhc
