#include "core/json_io.hpp"

namespace lhc {

using nlohmann::json;

namespace {

const json& require(const json& j, const char* key, const char* what) {
    if (!j.is_object() || !j.contains(key))
        throw ValidationError(std::string(what) + " is missing \"" + key + "\"");
    return j.at(key);
}

std::uint32_t require_u32(const json& j, const char* key, const char* what) {
    const json& v = require(j, key, what);
    if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0))
        throw ValidationError(std::string(what) + " field \"" + key +
                              "\" must be a non-negative integer");
    return v.get<std::uint32_t>();
}

} // namespace

json parse_json(const std::string& text) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) throw ValidationError("input is not valid JSON");
    return j;
}

json hypergraph_to_json(const Hypergraph& h) {
    json edges = json::array();
    for (const auto& e : h.edges()) edges.push_back(e);
    return json{{"n_vertices", h.n_vertices()}, {"delta", h.delta()}, {"edges", edges}};
}

Hypergraph hypergraph_from_json(const json& j) {
    const std::uint32_t n = require_u32(j, "n_vertices", "hypergraph");
    const std::uint32_t delta = require_u32(j, "delta", "hypergraph");
    const json& edges = require(j, "edges", "hypergraph");
    if (!edges.is_array()) throw ValidationError("hypergraph \"edges\" must be an array");
    std::vector<std::vector<VertexId>> parsed;
    parsed.reserve(edges.size());
    for (const json& e : edges) {
        if (!e.is_array()) throw ValidationError("hypergraph edge must be an array of vertices");
        std::vector<VertexId> verts;
        for (const json& v : e) {
            if (!v.is_number_unsigned() &&
                !(v.is_number_integer() && v.get<std::int64_t>() >= 0))
                throw ValidationError("hypergraph vertex ids must be non-negative integers");
            verts.push_back(v.get<VertexId>());
        }
        parsed.push_back(std::move(verts));
    }
    return Hypergraph(n, delta, std::move(parsed));
}

json coloring_sequence_to_json(const ColoringSequence& seq) {
    json colorings = json::array();
    for (const auto& col : seq.colorings) {
        json one = json::array();
        for (Color c : col) one.push_back(std::string(1, color_char(c)));
        colorings.push_back(std::move(one));
    }
    return json{{"x", seq.x()}, {"n_vertices", seq.n_vertices}, {"colorings", colorings}};
}

ColoringSequence coloring_sequence_from_json(const json& j) {
    ColoringSequence seq;
    seq.n_vertices = require_u32(j, "n_vertices", "coloring sequence");
    const json& colorings = require(j, "colorings", "coloring sequence");
    if (!colorings.is_array())
        throw ValidationError("coloring sequence \"colorings\" must be an array");
    for (const json& col : colorings) {
        if (!col.is_array())
            throw ValidationError("each coloring must be an array of \"R\"/\"B\" entries");
        std::vector<Color> one;
        for (const json& c : col) {
            if (!c.is_string() || c.get<std::string>().size() != 1)
                throw ValidationError("colors must be one-character strings");
            one.push_back(color_from_char(c.get<std::string>()[0]));
        }
        seq.colorings.push_back(std::move(one));
    }
    if (j.contains("x") && require_u32(j, "x", "coloring sequence") != seq.x())
        throw ValidationError("coloring sequence \"x\" disagrees with the colorings array");
    seq.validate();
    return seq;
}

json run_result_to_json(const RunResult& res, bool include_traces) {
    json coloring = json::array();
    for (std::size_t v = 0; v < res.coloring.size(); ++v)
        coloring.push_back(res.decided[v] ? std::string(1, color_char(res.coloring[v]))
                                          : std::string("U"));
    json out{{"outcome", res.outcome == RunOutcome::Success ? "success" : "exhausted"},
             {"coloring", coloring},
             {"active_edges", res.active_edges},
             {"x", res.x},
             {"y", res.y},
             {"executed_phases", res.executed_phases},
             {"total_rounds", res.total_rounds},
             {"messages", res.messages},
             {"infeasible_pieces", res.infeasible_pieces},
             {"skeleton_series", res.skeleton_series}};
    if (include_traces) {
        json traces = json::array();
        for (const auto& t : res.traces) {
            json pieces = json::array();
            for (const auto& p : t.pieces)
                pieces.push_back(json{
                    {"core", p.core},
                    {"fringe", p.fringe},
                    {"feasible", p.feasible},
                    {"method",
                     p.method == RecolorResult::Method::Exhaustive ? "exhaustive" : "greedy"},
                    {"recolored", p.recolored}});
            traces.push_back(json{{"phase", t.phase},
                                  {"biased", t.biased},
                                  {"dangerous", t.dangerous},
                                  {"components", t.components},
                                  {"component_diameters", t.component_diameters},
                                  {"skeleton_sizes", t.skeleton_sizes},
                                  {"pieces", pieces},
                                  {"fixed_good", t.fixed_good},
                                  {"fixed_recolored", t.fixed_recolored},
                                  {"fixed_mopup", t.fixed_mopup},
                                  {"idled", t.idled},
                                  {"invariant_ok", t.invariant_ok}});
        }
        out["traces"] = std::move(traces);
    }
    return out;
}

} // namespace lhc
