#pragma once

#include <string>

#include <json.hpp>

#include "core/algorithm.hpp"
#include "core/coloring.hpp"
#include "core/hypergraph.hpp"

namespace lhc {

// On-disk hypergraph format:
//   {"n_vertices": N, "delta": D, "edges": [[v, ...], ...]}
nlohmann::json hypergraph_to_json(const Hypergraph& h);
Hypergraph hypergraph_from_json(const nlohmann::json& j);

// Coloring sequence format:
//   {"x": X, "n_vertices": N, "colorings": [["R","B",...], ...]}
nlohmann::json coloring_sequence_to_json(const ColoringSequence& seq);
ColoringSequence coloring_sequence_from_json(const nlohmann::json& j);

nlohmann::json run_result_to_json(const RunResult& res, bool include_traces);

// Malformed JSON text or wrong shape throws ValidationError.
nlohmann::json parse_json(const std::string& text);

} // namespace lhc
