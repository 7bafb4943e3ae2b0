#pragma once

#include <algorithm>
#include <cctype>
#include <deque>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "planar_diagram.hpp"

namespace tanglecalc {

namespace detail {

// Half-edges of an oriented component in traversal order, as (leaving, arriving)
// pairs of each arc along the walk.
inline bool over_only(const PlanarDiagram& d, const Component& comp)
{
    if (comp.free_loop)
        return false;
    for (int h : comp.entries) {
        int k = d.locate(h).second;
        if (k == 0 || k == 2)
            return false;
    }
    return true;
}

inline std::vector<std::pair<int, int>> oriented_arcs(const PlanarDiagram& d, std::size_t ci)
{
    const Component& comp = d.components()[ci];
    bool forward = (*d.orientation())[ci] > 0;
    std::vector<std::pair<int, int>> arcs; // (from, to) along orientation
    if (comp.free_loop)
        return arcs;
    if (comp.closed) {
        for (std::size_t i = 0; i < comp.entries.size(); ++i) {
            int in = comp.entries[i];
            auto [c, k] = d.locate(in);
            int out = d.slot_id(c, k + 2);
            arcs.emplace_back(out, d.partner(out));
        }
        if (!forward) {
            std::reverse(arcs.begin(), arcs.end());
            for (auto& a : arcs)
                std::swap(a.first, a.second);
        }
        return arcs;
    }
    int start = d.boundary()[comp.first_boundary];
    arcs.emplace_back(start, d.partner(start));
    for (int in : comp.entries) {
        auto [c, k] = d.locate(in);
        int out = d.slot_id(c, k + 2);
        arcs.emplace_back(out, d.partner(out));
    }
    if (!forward) {
        std::reverse(arcs.begin(), arcs.end());
        for (auto& a : arcs)
            std::swap(a.first, a.second);
    }
    return arcs;
}

} // namespace detail

// PD text. Unoriented diagrams are exported with the default orientation.
// Arc labels run 1, 2, ... along each oriented component; every crossing
// lists its half-edges counterclockwise starting at the incoming under-strand.
inline std::string export_pd(const PlanarDiagram& input)
{
    require_valid(input);
    PlanarDiagram d = input.is_oriented() ? input : input.with_default_orientation();
    std::map<int, int> label;
    int next = 1;
    for (std::size_t ci = 0; ci < d.components().size(); ++ci) {
        auto arcs = detail::oriented_arcs(d, ci);
        if (detail::over_only(d, d.components()[ci]) && d.components()[ci].closed) {
            // start at an arc leaving the first listed crossing so import can
            // recover the direction of a two-arc loop
            auto first = std::min_element(arcs.begin(), arcs.end(), [&](auto a, auto b) {
                return d.locate(a.first).first < d.locate(b.first).first;
            });
            std::rotate(arcs.begin(), first, arcs.end());
        }
        for (auto [from, to] : arcs) {
            label[from] = next;
            label[to] = next;
            ++next;
        }
    }
    std::ostringstream os;
    for (std::size_t c = 0; c < d.crossing_count(); ++c) {
        int r = d.enters(d.slot_id(static_cast<int>(c), 0)) ? 0 : 2;
        os << "X(";
        for (int k = 0; k < 4; ++k)
            os << (k ? "," : "") << label[d.slot_id(static_cast<int>(c), k + r)];
        os << ")\n";
    }
    if (!d.is_closed()) {
        os << "B(";
        for (int j = 0; j < 4; ++j)
            os << (j ? "," : "") << label[d.boundary()[j]];
        os << ")\n";
    }
    for (int i = 0; i < d.free_loops(); ++i)
        os << "O()\n";
    return os.str();
}

// Reads X(...), B(...), O() lines; '#' starts a comment. The result is
// oriented: a strand's direction comes from its incoming under-slots, or,
// for strands that only pass over, from increasing arc labels. A closed
// over-only loop of two arcs is ambiguous in plain PD; there the lower label
// is taken to leave the crossing listed first, which export_pd respects.
inline PlanarDiagram import_pd(const std::string& text)
{
    std::vector<std::array<int, 4>> xs;
    std::optional<std::array<int, 4>> bnd;
    int loops = 0;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    std::size_t offset = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::size_t line_start = offset;
        offset += line.size() + 1;
        std::string s = line.substr(0, line.find('#'));
        s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char ch) { return std::isspace(ch); }), s.end());
        if (s.empty())
            continue;
        auto fail = [&](const std::string& why) {
            throw ParseError("PD line " + std::to_string(lineno) + ": " + why, {line_start, line_start + line.size()});
        };
        if (s == "O()") {
            ++loops;
            continue;
        }
        if (s.size() < 3 || (s[0] != 'X' && s[0] != 'B') || s[1] != '(' || s.back() != ')')
            fail("expected X(a,b,c,d), B(nw,ne,se,sw) or O()");
        std::array<int, 4> v{};
        std::string body = s.substr(2, s.size() - 3);
        std::istringstream fields(body);
        std::string tok;
        int count = 0;
        while (std::getline(fields, tok, ',')) {
            if (count == 4)
                fail("too many entries");
            try {
                std::size_t used = 0;
                v[count] = std::stoi(tok, &used);
                if (used != tok.size())
                    fail("bad label '" + tok + "'");
            } catch (const std::logic_error&) {
                fail("bad label '" + tok + "'");
            }
            ++count;
        }
        if (count != 4)
            fail("expected 4 entries");
        if (s[0] == 'X')
            xs.push_back(v);
        else if (bnd)
            fail("second boundary line");
        else
            bnd = v;
    }
    int nc = static_cast<int>(xs.size());
    std::vector<Crossing> crossings(nc);
    std::map<int, std::vector<int>> ends;
    for (int c = 0; c < nc; ++c)
        for (int k = 0; k < 4; ++k) {
            crossings[c].slots[k] = 4 * c + k;
            ends[xs[c][k]].push_back(4 * c + k);
        }
    std::vector<int> boundary;
    if (bnd)
        for (int j = 0; j < 4; ++j) {
            boundary.push_back(4 * nc + j);
            ends[(*bnd)[j]].push_back(4 * nc + j);
        }
    std::vector<std::pair<int, int>> arcs;
    std::map<int, int> label_of; // half-edge -> label
    for (auto& [lab, hs] : ends) {
        if (hs.size() != 2)
            throw ParseError("PD label " + std::to_string(lab) + " occurs " + std::to_string(hs.size()) + " times",
                             {0, text.size()});
        arcs.emplace_back(hs[0], hs[1]);
        label_of[hs[0]] = lab;
        label_of[hs[1]] = lab;
    }
    PlanarDiagram raw(std::move(crossings), std::move(arcs), std::move(boundary), loops);
    require_valid(raw);

    std::vector<int> orient;
    for (const auto& comp : raw.components()) {
        if (comp.free_loop) {
            orient.push_back(1);
            continue;
        }
        int dir = 0;
        for (int h : comp.entries) {
            int k = raw.locate(h).second;
            if (k == 0) {
                dir = 1;
                break;
            }
            if (k == 2) {
                dir = -1;
                break;
            }
        }
        if (dir == 0 && comp.closed && comp.entries.size() == 2) {
            // two-arc loop: the lower label leaves the earlier crossing
            int h = label_of[comp.entries[0]] < label_of[comp.entries[1]] ? comp.entries[0] : comp.entries[1];
            dir = raw.locate(raw.partner(h)).first < raw.locate(h).first ? 1 : -1;
        } else if (dir == 0) {
            // over-only strand: follow increasing labels
            std::vector<int> seq;
            if (!comp.closed)
                seq.push_back(label_of[raw.boundary()[comp.first_boundary]]);
            for (int h : comp.entries) {
                seq.push_back(label_of[h]);
            }
            int votes = 0;
            for (std::size_t i = 0; i + 1 < seq.size(); ++i) {
                if (seq[i + 1] == seq[i] + 1)
                    ++votes;
                else if (seq[i + 1] == seq[i] - 1)
                    --votes;
            }
            dir = votes < 0 ? -1 : 1;
        }
        orient.push_back(dir);
    }
    return raw.with_orientation(std::move(orient));
}

namespace detail {

// BFS relabeling code from a start half-edge; crossings may be rotated by 2.
inline std::vector<int> traversal_code(const PlanarDiagram& d, int start_vertex, int start_slot, bool from_boundary)
{
    int nc = static_cast<int>(d.crossing_count());
    std::vector<int> index(nc, -1), rot(nc, 0);
    std::deque<int> queue;
    std::vector<int> code;
    auto visit = [&](int h) {
        auto [c, k] = d.locate(h);
        if (c < 0) {
            code.push_back(-1);
            code.push_back(k);
            return;
        }
        code.push_back(index[c]);
        code.push_back(((k - rot[c]) % 4 + 4) % 4);
    };
    std::size_t head = 0;
    int assigned = 0;
    auto visit_counted = [&](int h) {
        auto [c, k] = d.locate(h);
        if (c >= 0 && index[c] < 0) {
            index[c] = assigned++;
            rot[c] = k >= 2 ? 2 : 0;
            queue.push_back(c);
        }
        visit(h);
    };
    if (from_boundary) {
        for (int j = 0; j < 4; ++j)
            visit_counted(d.partner(d.boundary()[j]));
    } else {
        int c = start_vertex;
        index[c] = assigned++;
        rot[c] = start_slot >= 2 ? 2 : 0;
        queue.push_back(c);
    }
    while (head < queue.size()) {
        int c = queue[head++];
        for (int s = 0; s < 4; ++s)
            visit_counted(d.partner(d.slot_id(c, s + rot[c])));
    }
    if (d.is_oriented()) {
        std::vector<int> order(queue.begin(), queue.end());
        for (int c : order) {
            code.push_back(d.enters(d.slot_id(c, rot[c])) ? 1 : 0);
            code.push_back(d.enters(d.slot_id(c, rot[c] + 1)) ? 1 : 0);
        }
    }
    return code;
}

} // namespace detail

// Lexicographically minimal traversal code over all start choices, one code
// per connected piece, pieces sorted. Equal strings mean isomorphic diagrams.
inline std::string canonical_form(const PlanarDiagram& d)
{
    require_valid(d);
    auto label = detail::piece_labels(d);
    int nc = static_cast<int>(d.crossing_count());
    std::map<int, std::vector<int>> pieces;
    for (int v = 0; v < nc; ++v)
        pieces[label[v]].push_back(v);
    std::vector<std::vector<int>> codes;
    std::vector<int> boundary_code;
    int boundary_piece = d.is_closed() ? -1 : label[nc];
    for (auto& [root, verts] : pieces) {
        if (root == boundary_piece)
            continue;
        std::vector<int> best;
        bool have = false;
        for (int c : verts)
            for (int k = 0; k < 4; ++k) {
                auto code = detail::traversal_code(d, c, k, false);
                if (!have || code < best) {
                    best = std::move(code);
                    have = true;
                }
            }
        codes.push_back(std::move(best));
    }
    std::sort(codes.begin(), codes.end());
    std::ostringstream os;
    if (!d.is_closed()) {
        os << "T";
        for (int x : detail::traversal_code(d, 0, 0, true))
            os << x << ",";
        os << ";";
    }
    for (const auto& code : codes) {
        os << "P";
        for (int x : code)
            os << x << ",";
        os << ";";
    }
    os << "O" << d.free_loops();
    if (d.is_oriented())
        os << "+";
    return os.str();
}

} // namespace tanglecalc
