#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <vector>

#include "diagram_builder.hpp"
#include "laurent.hpp"
#include "planar_diagram.hpp"
#include "smith.hpp"
#include "tangle_expr.hpp"

namespace tanglecalc {

// ---------------------------------------------------------------- Goeritz

struct GoeritzData {
    std::vector<Face> faces;
    std::vector<int> color;          // per face, 0 or 1
    int shaded = 1;                  // color class used for the matrix
    std::vector<int> shaded_faces;   // face indices, matrix order
    Matrix matrix;                   // full (singular) Goeritz matrix
    std::size_t deleted = 0;         // index into shaded_faces removed for `reduced`
    Matrix reduced;
};

namespace detail {

inline std::vector<int> checkerboard(const PlanarDiagram& d, const std::vector<Face>& fs)
{
    int nc = static_cast<int>(d.crossing_count());
    std::vector<std::array<int, 4>> face_of(nc);
    for (std::size_t f = 0; f < fs.size(); ++f)
        for (const auto& c : fs[f])
            face_of[c.crossing][c.slot] = static_cast<int>(f);
    std::vector<int> color(fs.size(), -1);
    std::vector<std::vector<int>> adj(fs.size());
    for (int c = 0; c < nc; ++c)
        for (int k = 0; k < 4; ++k) {
            int a = face_of[c][k], b = face_of[c][(k + 1) % 4];
            adj[a].push_back(b);
            adj[b].push_back(a);
        }
    for (std::size_t s = 0; s < fs.size(); ++s) {
        if (color[s] >= 0)
            continue;
        color[s] = 0;
        std::vector<int> stack{static_cast<int>(s)};
        while (!stack.empty()) {
            int f = stack.back();
            stack.pop_back();
            for (int g : adj[f]) {
                if (color[g] < 0) {
                    color[g] = 1 - color[f];
                    stack.push_back(g);
                } else if (color[g] == color[f]) {
                    throw PreconditionError("diagram faces are not two-colorable");
                }
            }
        }
    }
    return color;
}

inline Matrix delete_row_col(const Matrix& m, std::size_t k)
{
    Matrix r;
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (i == k)
            continue;
        std::vector<Integer> row;
        for (std::size_t j = 0; j < m.size(); ++j)
            if (j != k)
                row.push_back(m[i][j]);
        r.push_back(std::move(row));
    }
    return r;
}

inline void require_connected_closed(const PlanarDiagram& d, const char* op)
{
    require_closed(d, op);
    require_valid(d);
    if (piece_count(d) != 1)
        throw PreconditionError(std::string(op) + ": diagram is split");
}

} // namespace detail

// Goeritz matrix for the given shading class (0 or 1) of a connected closed diagram.
inline GoeritzData goeritz(const PlanarDiagram& d, int shaded = 1, std::size_t deleted = 0)
{
    detail::require_connected_closed(d, "goeritz");
    GoeritzData g;
    g.shaded = shaded;
    if (d.crossing_count() == 0) {
        // round unknot: one face of each color
        g.faces = {Face{}, Face{}};
        g.color = {0, 1};
        g.shaded_faces = {shaded};
        g.matrix = Matrix(1, std::vector<Integer>(1, 0));
        g.reduced = {};
        return g;
    }
    g.faces = detail::corner_orbits(d);
    g.color = detail::checkerboard(d, g.faces);
    std::map<int, std::size_t> index;
    for (std::size_t f = 0; f < g.faces.size(); ++f)
        if (g.color[f] == shaded) {
            index[static_cast<int>(f)] = g.shaded_faces.size();
            g.shaded_faces.push_back(static_cast<int>(f));
        }
    std::size_t n = g.shaded_faces.size();
    g.matrix = Matrix(n, std::vector<Integer>(n, 0));
    int nc = static_cast<int>(d.crossing_count());
    std::vector<std::array<int, 4>> face_of(nc);
    for (std::size_t f = 0; f < g.faces.size(); ++f)
        for (const auto& c : g.faces[f])
            face_of[c.crossing][c.slot] = static_cast<int>(f);
    for (int c = 0; c < nc; ++c) {
        int first = g.color[face_of[c][0]] == shaded ? 0 : 1;
        int eta = first == 0 ? 1 : -1;
        std::size_t i = index[face_of[c][first]], j = index[face_of[c][first + 2]];
        if (i == j)
            continue;
        g.matrix[i][j] -= eta;
        g.matrix[j][i] -= eta;
        g.matrix[i][i] += eta;
        g.matrix[j][j] += eta;
    }
    if (deleted >= n)
        throw PreconditionError("goeritz: deleted face index out of range");
    g.deleted = deleted;
    g.reduced = detail::delete_row_col(g.matrix, deleted);
    return g;
}

struct DeterminantResult {
    Integer value;
    bool split = false;
};

inline DeterminantResult determinant_info(const PlanarDiagram& d)
{
    require_closed(d, "determinant");
    require_valid(d);
    if (piece_count(d) != 1)
        return {0, true};
    Integer a = abs(determinant(goeritz(d, 1).reduced));
    Integer b = abs(determinant(goeritz(d, 0).reduced));
    if (a != b)
        throw Error("Goeritz self-check failed: shadings disagree (" + a.str() + " vs " + b.str() + ")");
    return {a, false};
}

inline Integer determinant(const PlanarDiagram& d) { return determinant_info(d).value; }

namespace detail {

// Sub-diagram of one connected piece, half-edge ids preserved.
inline std::vector<PlanarDiagram> split_pieces(const PlanarDiagram& d)
{
    auto label = piece_labels(d);
    std::map<int, std::vector<int>> groups;
    for (int c = 0; c < static_cast<int>(d.crossing_count()); ++c)
        groups[label[c]].push_back(c);
    std::vector<PlanarDiagram> out;
    for (auto& [root, cs] : groups) {
        std::vector<Crossing> crossings;
        std::vector<std::pair<int, int>> arcs;
        for (int c : cs) {
            crossings.push_back(d.crossings()[c]);
            for (int h : d.crossings()[c].slots) {
                int p = d.partner(h);
                if (h < p)
                    arcs.emplace_back(h, p);
            }
        }
        out.emplace_back(std::move(crossings), std::move(arcs));
    }
    for (int i = 0; i < d.free_loops(); ++i)
        out.emplace_back(std::vector<Crossing>{}, std::vector<std::pair<int, int>>{}, std::vector<int>{}, 1);
    return out;
}

} // namespace detail

// H1 of the double branched cover. A split diagram gives the connected sum
// of the pieces' covers, which adds a free Z per extra piece.
inline AbelianGroup double_cover_homology(const PlanarDiagram& d)
{
    require_closed(d, "double_cover_homology");
    require_valid(d);
    auto pieces = detail::split_pieces(d);
    AbelianGroup total;
    std::vector<Integer> torsion;
    for (const auto& p : pieces) {
        if (p.crossing_count() == 0)
            continue;
        AbelianGroup g = smith_normal_form(goeritz(p, 1).reduced).group;
        total.rank += g.rank;
        torsion.insert(torsion.end(), g.torsion.begin(), g.torsion.end());
    }
    if (pieces.size() > 1)
        total.rank += pieces.size() - 1;
    // merge torsion into a divisibility chain through a diagonal SNF
    if (!torsion.empty()) {
        Matrix m(torsion.size(), std::vector<Integer>(torsion.size(), 0));
        for (std::size_t i = 0; i < torsion.size(); ++i)
            m[i][i] = torsion[i];
        total.torsion = smith_normal_form(m).group.torsion;
    }
    return total;
}

// ---------------------------------------------------------------- bracket

// Kauffman bracket value of a 4-ended tangle: c0*[0] + cinf*[inf].
struct TLPair {
    LaurentPoly c0;
    LaurentPoly cinf;
    friend bool operator==(const TLPair&, const TLPair&) = default;
};

namespace detail {

inline LaurentPoly divide_by_delta(const LaurentPoly& p)
{
    // delta = -A^-2 (1 + A^4); divide by (1 + A^4) from the lowest term up
    LaurentPoly rest = p, q;
    while (!rest.is_zero()) {
        int e = rest.min_exp();
        Integer c = rest.coeff(e);
        q += LaurentPoly::monomial(c, e);
        rest -= LaurentPoly::monomial(c, e) + LaurentPoly::monomial(c, e + 4);
        if (!rest.is_zero() && rest.min_exp() < e)
            throw Error("bracket normalization: polynomial not divisible by the loop value");
    }
    // p = q (1 + A^4) and delta = -A^-2 (1 + A^4), so p / delta = -A^2 q
    return LaurentPoly::monomial(-1, 2) * q;
}

// Frontier dynamic program over crossings. Returns, for every final pairing of
// boundary endpoints, the sum of A^(a-b) delta^loops.
struct FrontierResult {
    LaurentPoly closed; // closed diagrams
    TLPair open;        // tangles (boundary pairing 0 or inf)
};

inline FrontierResult frontier_bracket(const PlanarDiagram& d)
{
    int nc = static_cast<int>(d.crossing_count());
    // greedy order: next crossing with most arcs into the processed set
    std::vector<int> order;
    std::vector<bool> done(nc, false);
    for (int step = 0; step < nc; ++step) {
        int best = -1, best_score = -1;
        for (int c = 0; c < nc; ++c) {
            if (done[c])
                continue;
            int score = 0;
            for (int k = 0; k < 4; ++k) {
                auto [pc, pk] = d.locate(d.partner(d.slot_id(c, k)));
                if (pc >= 0 && done[pc])
                    ++score;
            }
            if (score > best_score) {
                best = c;
                best_score = score;
            }
        }
        done[best] = true;
        order.push_back(best);
    }

    // state: sorted list of (a, b) mate pairs among frontier half-edges
    using State = std::vector<std::pair<int, int>>;
    std::map<State, LaurentPoly> states;
    states[State{}] = LaurentPoly(1);
    std::vector<bool> processed(nc, false);
    const LaurentPoly delta = LaurentPoly::delta();
    for (int c : order) {
        std::map<State, LaurentPoly> next;
        processed[c] = true;
        for (int smoothing = 0; smoothing < 2; ++smoothing) {
            // A: slots (0,1),(2,3); B: (1,2),(3,0)
            std::array<std::pair<int, int>, 2> pairs = smoothing == 0
                ? std::array<std::pair<int, int>, 2>{{{0, 1}, {2, 3}}}
                : std::array<std::pair<int, int>, 2>{{{1, 2}, {3, 0}}};
            LaurentPoly weight = LaurentPoly::A(smoothing == 0 ? 1 : -1);
            for (const auto& [state, poly] : states) {
                std::map<int, std::vector<int>> adj;
                for (auto [a, b] : state) {
                    adj[a].push_back(b);
                    adj[b].push_back(a);
                }
                for (auto [x, y] : pairs) {
                    int a = d.slot_id(c, x), b = d.slot_id(c, y);
                    adj[a].push_back(b);
                    adj[b].push_back(a);
                }
                for (int k = 0; k < 4; ++k) {
                    int h = d.slot_id(c, k);
                    int p = d.partner(h);
                    auto [pc, pk] = d.locate(p);
                    if (pc >= 0 && processed[pc] && (pc != c || h < p)) {
                        adj[h].push_back(p);
                        adj[p].push_back(h);
                    }
                }
                // endpoints: degree-1 nodes; walk paths and count cycles
                std::map<int, bool> seen;
                State ns;
                int loops = 0;
                for (auto& [v, nb] : adj) {
                    if (seen[v] || nb.size() != 1)
                        continue;
                    int prev = -1, cur = v;
                    seen[cur] = true;
                    while (true) {
                        const auto& l = adj[cur];
                        int nxt = (l.size() == 1 || l[0] != prev) ? l[0] : l[1];
                        if (l.size() == 1 && prev != -1)
                            break;
                        prev = cur;
                        cur = nxt;
                        seen[cur] = true;
                        if (adj[cur].size() == 1)
                            break;
                    }
                    ns.emplace_back(std::min(v, cur), std::max(v, cur));
                }
                for (auto& [v, nb] : adj) {
                    if (seen[v])
                        continue;
                    ++loops;
                    int prev = -1, cur = v;
                    while (!seen[cur]) {
                        seen[cur] = true;
                        const auto& l = adj[cur];
                        int nxt = (l[0] != prev) ? l[0] : l[1];
                        prev = cur;
                        cur = nxt;
                    }
                }
                std::sort(ns.begin(), ns.end());
                LaurentPoly term = poly * weight;
                for (int i = 0; i < loops; ++i)
                    term *= delta;
                next[ns] += term;
            }
        }
        states = std::move(next);
    }

    FrontierResult r;
    LaurentPoly loop_factor = delta.pow(d.free_loops());
    if (d.is_closed()) {
        for (const auto& [state, poly] : states)
            r.closed += poly;
        r.closed *= loop_factor;
        return r;
    }
    // boundary pairing
    std::map<int, int> bindex;
    for (int j = 0; j < 4; ++j)
        bindex[d.boundary()[j]] = j;
    for (const auto& [state, poly] : states) {
        std::map<int, int> mate;
        for (auto [a, b] : state) {
            mate[a] = b;
            mate[b] = a;
        }
        int j0 = 0;
        int p = d.partner(d.boundary()[0]);
        if (!bindex.count(p))
            p = d.partner(mate.at(p));
        int other = bindex.at(p);
        (void)j0;
        if (other == 1)
            r.open.c0 += poly * loop_factor;
        else if (other == 3)
            r.open.cinf += poly * loop_factor;
        else
            throw Error("non-planar boundary pairing in bracket evaluation");
    }
    return r;
}

} // namespace detail

// Kauffman bracket of a closed diagram, <unknot> = 1.
inline LaurentPoly bracket(const PlanarDiagram& d)
{
    require_closed(d, "bracket");
    require_valid(d);
    return detail::divide_by_delta(detail::frontier_bracket(d).closed);
}

// Bracket of a tangle diagram in the basis {[0], [inf]}.
inline TLPair tangle_bracket(const PlanarDiagram& d)
{
    if (d.is_closed())
        throw PreconditionError("tangle_bracket: diagram is closed");
    require_valid(d);
    return detail::frontier_bracket(d).open;
}

namespace tl {

inline TLPair crossing(int sign)
{
    return sign > 0 ? TLPair{LaurentPoly::A(-1), LaurentPoly::A(1)} : TLPair{LaurentPoly::A(1), LaurentPoly::A(-1)};
}
inline TLPair zero() { return {LaurentPoly(1), LaurentPoly()}; }
inline TLPair infinity() { return {LaurentPoly(), LaurentPoly(1)}; }

inline TLPair sum(const TLPair& a, const TLPair& b)
{
    return {a.c0 * b.c0, a.c0 * b.cinf + a.cinf * b.c0 + LaurentPoly::delta() * a.cinf * b.cinf};
}
inline TLPair stack(const TLPair& a, const TLPair& b)
{
    return {LaurentPoly::delta() * a.c0 * b.c0 + a.c0 * b.cinf + a.cinf * b.c0, a.cinf * b.cinf};
}
inline TLPair rotate(const TLPair& t) { return {t.cinf, t.c0}; }
inline LaurentPoly close_numerator(const TLPair& t) { return t.c0 * LaurentPoly::delta() + t.cinf; }
inline LaurentPoly close_denominator(const TLPair& t) { return t.c0 + t.cinf * LaurentPoly::delta(); }

inline TLPair twists(std::int64_t k, bool vertical)
{
    TLPair acc = vertical ? infinity() : zero();
    TLPair x = crossing(k > 0 ? 1 : -1);
    for (std::int64_t i = 0; i < std::abs(k); ++i)
        acc = vertical ? stack(acc, x) : sum(acc, x);
    return acc;
}

} // namespace tl

// Compositional evaluation: a tangle value or, for closed expressions, a
// normalized bracket.
struct BracketValue {
    std::optional<TLPair> tangle;
    std::optional<LaurentPoly> closed;
};

namespace detail {

inline BracketValue eval_network(const TangleExpr& t, const std::vector<BracketValue>& kids)
{
    const auto& w = t.node().wiring;
    std::size_t k = w.boxes.size();
    if (k > 20)
        throw PreconditionError("network too large for compositional evaluation");
    for (const auto& v : kids)
        if (!v.tangle)
            throw PreconditionError("network box holds a closed link");
    // label -> the two (box, endpoint) uses; endpoint 4..7 marks the outer boundary
    std::map<int, std::vector<int>> uses;
    for (std::size_t b = 0; b < k; ++b)
        for (int e = 0; e < 4; ++e)
            uses[w.boxes[b].labels[e]].push_back(static_cast<int>(4 * b + e));
    int outer = static_cast<int>(4 * k);
    if (w.boundary)
        for (int e = 0; e < 4; ++e)
            uses[(*w.boundary)[e]].push_back(outer + e);
    std::vector<int> across(outer + 4, -1);
    for (auto& [label, us] : uses) {
        across[us[0]] = us[1];
        across[us[1]] = us[0];
    }
    const LaurentPoly delta = LaurentPoly::delta();
    LaurentPoly closed_total;
    TLPair open_total;
    for (std::size_t mask = 0; mask < (std::size_t{1} << k); ++mask) {
        LaurentPoly weight(1);
        bool zero_weight = false;
        for (std::size_t b = 0; b < k; ++b) {
            const TLPair& v = *kids[w.boxes[b].child].tangle;
            const LaurentPoly& c = (mask >> b) & 1 ? v.cinf : v.c0;
            if (c.is_zero()) {
                zero_weight = true;
                break;
            }
            weight *= c;
        }
        if (zero_weight)
            continue;
        // inside each box: 0 joins NW-NE, SW-SE; inf joins NW-SW, NE-SE
        auto inside = [&](int node) {
            int b = node / 4, e = node % 4;
            bool inf = (mask >> b) & 1;
            static constexpr int zero_mate[4] = {1, 0, 3, 2};
            static constexpr int inf_mate[4] = {3, 2, 1, 0};
            return 4 * b + (inf ? inf_mate[e] : zero_mate[e]);
        };
        std::vector<bool> seen(outer + 4, false);
        int loops = 0;
        int boundary_mate_of_nw = -1;
        if (w.boundary) {
            int cur = outer; // NW endpoint of the network's boundary
            int node = across[cur];
            while (node < outer) {
                seen[node] = true;
                int o = inside(node);
                seen[o] = true;
                node = across[o];
            }
            boundary_mate_of_nw = node - outer;
            // mark the other boundary strand
            for (int e = 1; e < 4; ++e) {
                if (e == boundary_mate_of_nw)
                    continue;
                int n2 = across[outer + e];
                while (n2 < outer && !seen[n2]) {
                    seen[n2] = true;
                    int o = inside(n2);
                    seen[o] = true;
                    n2 = across[o];
                }
                break;
            }
        }
        for (int node = 0; node < outer; ++node) {
            if (seen[node])
                continue;
            ++loops;
            int cur = node;
            while (!seen[cur]) {
                seen[cur] = true;
                int o = inside(cur);
                seen[o] = true;
                cur = across[o];
            }
        }
        LaurentPoly term = weight * delta.pow(loops);
        if (!w.boundary)
            closed_total += term;
        else if (boundary_mate_of_nw == 1)
            open_total.c0 += term;
        else if (boundary_mate_of_nw == 3)
            open_total.cinf += term;
        else
            throw Error("non-planar network wiring");
    }
    if (!w.boundary)
        return {std::nullopt, divide_by_delta(closed_total)};
    return {open_total, std::nullopt};
}

inline BracketValue eval_bracket(const TangleExpr& t)
{
    auto open = [](const BracketValue& v) -> const TLPair& {
        if (!v.tangle)
            throw PreconditionError("closed link used where a tangle is expected");
        return *v.tangle;
    };
    switch (t.kind()) {
    case NodeKind::Slot:
        throw PreconditionError("bracket: expression contains a slot");
    case NodeKind::Rational: {
        Fraction f = t.fraction();
        if (f.is_infinity())
            return {tl::infinity(), std::nullopt};
        if (f.num() == 0)
            return {tl::zero(), std::nullopt};
        return eval_bracket(rational_tangle(f));
    }
    case NodeKind::HorizontalTwists:
        return {tl::sum(open(eval_bracket(t.child())), tl::twists(t.twist_count(), false)), std::nullopt};
    case NodeKind::VerticalTwists:
        return {tl::stack(open(eval_bracket(t.child())), tl::twists(t.twist_count(), true)), std::nullopt};
    case NodeKind::Sum:
        return {tl::sum(open(eval_bracket(t.child(0))), open(eval_bracket(t.child(1)))), std::nullopt};
    case NodeKind::Rotate90:
        return {tl::rotate(open(eval_bracket(t.child()))), std::nullopt};
    case NodeKind::NumeratorClosure:
        return {std::nullopt, tl::close_numerator(open(eval_bracket(t.child())))};
    case NodeKind::DenominatorClosure:
        return {std::nullopt, tl::close_denominator(open(eval_bracket(t.child())))};
    case NodeKind::Network: {
        std::vector<BracketValue> kids;
        for (const auto& ch : t.children())
            kids.push_back(eval_bracket(ch));
        return eval_network(t, kids);
    }
    }
    throw PreconditionError("unknown node kind");
}

} // namespace detail

// Compositional bracket of a closed, slot-free, symbol-free expression.
inline LaurentPoly bracket(const TangleExpr& t)
{
    if (t.has_slot())
        throw PreconditionError("bracket: expression contains a slot");
    if (t.is_symbolic())
        throw PreconditionError("bracket: expression has unbound symbols");
    BracketValue v = detail::eval_bracket(t);
    if (!v.closed)
        throw PreconditionError("bracket: expression is an open tangle; close it first");
    return *v.closed;
}

inline TLPair tangle_bracket(const TangleExpr& t)
{
    if (t.has_slot() || t.is_symbolic())
        throw PreconditionError("tangle_bracket: expression must be concrete and slot-free");
    BracketValue v = detail::eval_bracket(t);
    if (!v.tangle)
        throw PreconditionError("tangle_bracket: expression is closed");
    return *v.tangle;
}

// ---------------------------------------------------------------- Jones

// (-A^3)^(-w) <L>, still in the variable A (t = A^-4).
inline LaurentPoly jones_from_bracket(const LaurentPoly& br, int w)
{
    LaurentPoly factor = LaurentPoly::monomial((w % 2 == 0) ? 1 : -1, -3 * w);
    return factor * br;
}

inline LaurentPoly jones(const PlanarDiagram& d)
{
    d.require_orientation("jones");
    return jones_from_bracket(bracket(d), writhe(d));
}

// |V(-1)| via A = primitive 8th root of unity.
inline Integer abs_at_minus_one(const LaurentPoly& v)
{
    Cyclotomic8 x = evaluate_at_zeta8(v);
    int nonzero = 0;
    Integer value = 0;
    for (const auto& c : x.c)
        if (c != 0) {
            ++nonzero;
            value = abs(c);
        }
    if (nonzero > 1)
        throw Error("V(-1) is not a unit multiple of an integer");
    return value;
}

inline Integer det_via_jones(const PlanarDiagram& d)
{
    d.require_orientation("det_via_jones");
    require_closed(d, "det_via_jones");
    return abs_at_minus_one(jones(d));
}

// Same quantity from a compositional bracket; the writhe factor is a unit
// at A = zeta8 so no orientation is needed.
inline Integer det_via_bracket(const LaurentPoly& br) { return abs_at_minus_one(br); }

// Jones polynomial printed in t^(1/2): exponent e of A becomes -e/2 of t^(1/2).
inline std::string jones_t_string(const LaurentPoly& v)
{
    if (v.is_zero())
        return "0";
    std::map<int, Integer> in_t;
    for (const auto& [e, c] : v.terms())
        in_t[-e / 2] = c;
    std::string out;
    for (const auto& [e, c] : in_t) {
        if (!out.empty())
            out += " + ";
        out += c.str() + "*t^(" + std::to_string(e) + "/2)";
    }
    return out;
}

// ---------------------------------------------------------------- Seifert

inline int seifert_circles(const PlanarDiagram& d)
{
    d.require_orientation("seifert_circles");
    require_closed(d, "seifert_circles");
    std::map<int, int> parent;
    std::function<int(int)> find = [&](int x) {
        auto it = parent.find(x);
        if (it == parent.end() || it->second == x)
            return parent[x] = x;
        return parent[x] = find(it->second);
    };
    auto unite = [&](int a, int b) { parent[find(a)] = find(b); };
    for (auto [a, b] : d.arcs())
        unite(a, b);
    for (int c = 0; c < static_cast<int>(d.crossing_count()); ++c) {
        if (d.crossing_sign(c) > 0) {
            unite(d.slot_id(c, 0), d.slot_id(c, 1));
            unite(d.slot_id(c, 2), d.slot_id(c, 3));
        } else {
            unite(d.slot_id(c, 1), d.slot_id(c, 2));
            unite(d.slot_id(c, 3), d.slot_id(c, 0));
        }
    }
    std::set<int> roots;
    for (auto [a, b] : d.arcs())
        roots.insert(find(a));
    return static_cast<int>(roots.size()) + d.free_loops();
}

} // namespace tanglecalc
