#include "core/blackbox.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace lhc {

void Piece::canonicalize() {
    for (auto& pe : edges) {
        std::vector<std::size_t> order(pe.vertices.size());
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
        std::sort(order.begin(), order.end(),
                  [&](std::size_t a, std::size_t b) { return pe.vertices[a] < pe.vertices[b]; });
        std::vector<VertexId> vs(pe.vertices.size());
        std::vector<std::optional<Color>> fx(pe.fixed.size());
        for (std::size_t i = 0; i < order.size(); ++i) {
            vs[i] = pe.vertices[order[i]];
            fx[i] = pe.fixed[order[i]];
        }
        pe.vertices = std::move(vs);
        pe.fixed = std::move(fx);
    }
    std::sort(edges.begin(), edges.end(),
              [](const PieceEdge& a, const PieceEdge& b) { return a.id < b.id; });
}

void Piece::validate() const {
    if (edges.empty()) throw ValidationError("piece has no edges");
    std::map<VertexId, std::optional<Color>> profile;
    std::vector<EdgeId> ids;
    for (const auto& pe : edges) {
        ids.push_back(pe.id);
        if (pe.vertices.empty()) throw ValidationError("piece edge has no vertices");
        if (pe.vertices.size() != pe.fixed.size())
            throw ValidationError("piece edge profile length mismatch");
        for (std::size_t i = 0; i < pe.vertices.size(); ++i) {
            auto [it, fresh] = profile.emplace(pe.vertices[i], pe.fixed[i]);
            if (!fresh && it->second != pe.fixed[i])
                throw ValidationError("vertex " + std::to_string(pe.vertices[i]) +
                                      " has conflicting pins across piece edges");
        }
    }
    std::sort(ids.begin(), ids.end());
    if (std::adjacent_find(ids.begin(), ids.end()) != ids.end())
        throw ValidationError("piece repeats an edge id");
}

std::vector<VertexId> Piece::undecided() const {
    std::vector<VertexId> out;
    for (const auto& pe : edges)
        for (std::size_t i = 0; i < pe.vertices.size(); ++i)
            if (!pe.fixed[i]) out.push_back(pe.vertices[i]);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::string Piece::canonical_key() const {
    Piece canon(*this);
    canon.canonicalize();
    std::ostringstream os;
    for (const auto& pe : canon.edges) {
        os << 'e' << pe.id << ':';
        for (std::size_t i = 0; i < pe.vertices.size(); ++i) {
            os << pe.vertices[i];
            os << (pe.fixed[i] ? color_char(*pe.fixed[i]) : 'u');
        }
        os << ';';
    }
    return os.str();
}

namespace {

struct Prepared {
    Piece piece; // canonical
    std::vector<VertexId> undecided;
    // Per edge: indices into `undecided` of its recolorable slots.
    std::vector<std::vector<std::uint32_t>> slots;
    std::vector<char> has_red, has_blue; // from pinned vertices
};

Prepared prepare(const Piece& piece) {
    Prepared p;
    p.piece = piece;
    p.piece.canonicalize();
    p.piece.validate();
    p.undecided = p.piece.undecided();
    p.slots.resize(p.piece.edges.size());
    p.has_red.assign(p.piece.edges.size(), 0);
    p.has_blue.assign(p.piece.edges.size(), 0);
    for (std::size_t f = 0; f < p.piece.edges.size(); ++f) {
        const auto& pe = p.piece.edges[f];
        for (std::size_t i = 0; i < pe.vertices.size(); ++i) {
            if (pe.fixed[i]) {
                (*pe.fixed[i] == Color::Red ? p.has_red : p.has_blue)[f] = 1;
            } else {
                auto it = std::lower_bound(p.undecided.begin(), p.undecided.end(),
                                           pe.vertices[i]);
                p.slots[f].push_back(
                    static_cast<std::uint32_t>(it - p.undecided.begin()));
            }
        }
    }
    return p;
}

std::vector<std::pair<VertexId, Color>> to_assignment(const Prepared& p,
                                                      const std::vector<Color>& colors) {
    std::vector<std::pair<VertexId, Color>> out;
    out.reserve(p.undecided.size());
    for (std::size_t i = 0; i < p.undecided.size(); ++i)
        out.emplace_back(p.undecided[i], colors[i]);
    return out;
}

} // namespace

RecolorResult blackbox_recolor_exhaustive(const Piece& piece) {
    Prepared p = prepare(piece);
    const std::size_t k = p.undecided.size();
    if (k > 30) throw TooLarge("exhaustive recoloring supports at most 30 undecided vertices");

    RecolorResult res;
    res.method = RecolorResult::Method::Exhaustive;
    // Candidate m assigns Blue to undecided vertex j iff bit (k-1-j) of m is
    // set, so ascending m scans colorings in lexicographic order with the
    // smallest vertex most significant and Red first.
    for (std::uint64_t m = 0; m < (1ULL << k); ++m) {
        bool ok = true;
        for (std::size_t f = 0; ok && f < p.piece.edges.size(); ++f) {
            bool red = p.has_red[f], blue = p.has_blue[f];
            for (std::uint32_t j : p.slots[f]) {
                ((m >> (k - 1 - j)) & 1 ? blue : red) = true;
                if (red && blue) break;
            }
            ok = red && blue;
        }
        if (ok) {
            std::vector<Color> colors(k);
            for (std::size_t j = 0; j < k; ++j)
                colors[j] = ((m >> (k - 1 - j)) & 1) ? Color::Blue : Color::Red;
            res.feasible = true;
            res.assignment = to_assignment(p, colors);
            return res;
        }
    }
    return res; // infeasible
}

RecolorResult blackbox_recolor_greedy(const Piece& piece) {
    Prepared p = prepare(piece);
    for (const auto& pe : p.piece.edges)
        if (pe.vertices.size() > 64)
            throw TooLarge("greedy recoloring supports edges with at most 64 vertices");

    const std::size_t k = p.undecided.size();
    const std::size_t m = p.piece.edges.size();
    // Remaining undecided slots per edge, and which colors its decided part
    // (pins plus greedy choices so far) already carries.
    std::vector<std::uint32_t> u(m);
    std::vector<char> red(p.has_red), blue(p.has_blue);
    std::vector<std::vector<std::uint32_t>> edges_of_slot(k);
    for (std::size_t f = 0; f < m; ++f) {
        u[f] = static_cast<std::uint32_t>(p.slots[f].size());
        for (std::uint32_t j : p.slots[f]) edges_of_slot[j].push_back(static_cast<std::uint32_t>(f));
    }
    // Pr[edge f ends monochromatic] in units of 2^-64: zero once both colors
    // are present, otherwise one term of 2^-u per still-reachable color.
    auto contribution = [&](std::size_t f) -> unsigned __int128 {
        if (red[f] && blue[f]) return 0;
        const unsigned __int128 term =
            u[f] >= 64 ? 1 : (static_cast<unsigned __int128>(1) << (64 - u[f]));
        return (!red[f] && !blue[f]) ? 2 * term : term;
    };

    std::vector<Color> colors(k, Color::Red);
    for (std::size_t j = 0; j < k; ++j) {
        unsigned __int128 delta_red = 0, delta_blue = 0; // new minus old, shifted to stay unsigned
        for (std::uint32_t f : edges_of_slot[j]) {
            const unsigned __int128 before = contribution(f);
            const std::uint32_t u_after = u[f] - 1;
            const unsigned __int128 term_after =
                u_after >= 64 ? 1 : (static_cast<unsigned __int128>(1) << (64 - u_after));
            auto after = [&](bool as_red) -> unsigned __int128 {
                const bool r = red[f] || as_red, b = blue[f] || !as_red;
                if (r && b) return 0;
                return (!r && !b) ? 2 * term_after : term_after;
            };
            delta_red += after(true) + (static_cast<unsigned __int128>(1) << 100) - before;
            delta_blue += after(false) + (static_cast<unsigned __int128>(1) << 100) - before;
        }
        const Color pick = delta_red <= delta_blue ? Color::Red : Color::Blue;
        colors[j] = pick;
        for (std::uint32_t f : edges_of_slot[j]) {
            --u[f];
            (pick == Color::Red ? red : blue)[f] = 1;
        }
    }

    RecolorResult res;
    res.method = RecolorResult::Method::Greedy;
    res.assignment = to_assignment(p, colors);
    res.feasible = true;
    for (std::size_t f = 0; f < m; ++f)
        if (!(red[f] && blue[f])) res.feasible = false;
    if (!res.feasible) res.assignment.clear();
    return res;
}

RecolorResult blackbox_recolor(const Piece& piece, std::uint32_t exhaustive_cap) {
    Prepared p = prepare(piece); // validate + count undecided once up front
    if (p.undecided.size() <= exhaustive_cap) return blackbox_recolor_exhaustive(p.piece);
    return blackbox_recolor_greedy(p.piece);
}

bool verify_piece_recolor(const Piece& piece,
                          const std::vector<std::pair<VertexId, Color>>& assignment,
                          std::string* why) {
    auto fail = [&](const std::string& reason) {
        if (why) *why = reason;
        return false;
    };
    Piece canon(piece);
    canon.canonicalize();
    canon.validate();
    std::map<VertexId, Color> assigned(assignment.begin(), assignment.end());
    if (assigned.size() != assignment.size()) return fail("assignment repeats a vertex");
    auto und = canon.undecided();
    if (und.size() != assigned.size()) return fail("assignment does not match the undecided set");
    for (VertexId v : und)
        if (!assigned.count(v)) return fail("vertex " + std::to_string(v) + " left unassigned");
    for (const auto& pe : canon.edges) {
        bool red = false, blue = false;
        for (std::size_t i = 0; i < pe.vertices.size(); ++i) {
            const Color c = pe.fixed[i] ? *pe.fixed[i] : assigned.at(pe.vertices[i]);
            (c == Color::Red ? red : blue) = true;
        }
        if (!red || !blue)
            return fail("edge " + std::to_string(pe.id) + " stays monochromatic");
    }
    return true;
}

} // namespace lhc
