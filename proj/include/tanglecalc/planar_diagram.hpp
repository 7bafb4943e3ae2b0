#pragma once

#include <algorithm>
#include <array>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "error.hpp"

namespace tanglecalc {

// Half-edge ids listed counterclockwise. Slots 0 and 2 belong to the under
// strand, slots 1 and 3 to the over strand.
struct Crossing {
    std::array<int, 4> slots{};
    friend bool operator==(const Crossing&, const Crossing&) = default;
};

struct Corner {
    int crossing = 0;
    int slot = 0; // between slot and slot+1, counterclockwise
    friend auto operator<=>(const Corner&, const Corner&) = default;
};

using Face = std::vector<Corner>;

struct Violation {
    std::string kind; // "incidence", "Euler", "components"
    std::vector<int> ids;
    std::string detail;
};

// A strand of the diagram as a sequence of crossing half-edges in traversal
// order; each entry is the half-edge through which the strand enters a crossing.
struct Component {
    std::vector<int> entries;
    bool closed = true;
    int first_boundary = -1; // open strands: boundary index the walk starts from
    int last_boundary = -1;
    bool free_loop = false;
};

class PlanarDiagram {
public:
    PlanarDiagram() = default;
    PlanarDiagram(std::vector<Crossing> crossings, std::vector<std::pair<int, int>> arcs, std::vector<int> boundary = {},
                  int free_loops = 0, std::optional<std::vector<int>> orientation = std::nullopt)
        : crossings_(std::move(crossings)), arcs_(std::move(arcs)), boundary_(std::move(boundary)),
          free_loops_(free_loops), orientation_(std::move(orientation))
    {
        build_index();
    }

    const std::vector<Crossing>& crossings() const { return crossings_; }
    const std::vector<std::pair<int, int>>& arcs() const { return arcs_; }
    const std::vector<int>& boundary() const { return boundary_; }
    int free_loops() const { return free_loops_; }
    const std::optional<std::vector<int>>& orientation() const { return orientation_; }
    std::size_t crossing_count() const { return crossings_.size(); }
    bool is_closed() const { return boundary_.empty(); }
    bool is_oriented() const { return orientation_.has_value(); }
    bool empty() const { return crossings_.empty() && boundary_.empty() && free_loops_ == 0; }

    PlanarDiagram with_orientation(std::vector<int> o) const
    {
        if (o.size() != components().size())
            throw PreconditionError("orientation has " + std::to_string(o.size()) + " entries, diagram has "
                                    + std::to_string(components().size()) + " components");
        for (int s : o)
            if (s != 1 && s != -1)
                throw PreconditionError("orientation entries must be +1 or -1");
        return PlanarDiagram(crossings_, arcs_, boundary_, free_loops_, std::move(o));
    }
    PlanarDiagram with_default_orientation() const
    {
        return with_orientation(std::vector<int>(components().size(), 1));
    }
    PlanarDiagram unoriented() const { return PlanarDiagram(crossings_, arcs_, boundary_, free_loops_); }
    PlanarDiagram reversed() const
    {
        require_orientation("reversed");
        std::vector<int> o = *orientation_;
        for (int& s : o)
            s = -s;
        return PlanarDiagram(crossings_, arcs_, boundary_, free_loops_, std::move(o));
    }
    // Mirror image: every crossing switches over and under.
    PlanarDiagram mirrored() const
    {
        std::vector<Crossing> cs = crossings_;
        for (auto& c : cs)
            std::rotate(c.slots.begin(), c.slots.begin() + 1, c.slots.end());
        return PlanarDiagram(std::move(cs), arcs_, boundary_, free_loops_, orientation_);
    }

    // Location of a half-edge: crossing index and slot, or (-1, boundary index).
    std::pair<int, int> locate(int h) const
    {
        auto it = where_.find(h);
        if (it == where_.end())
            throw PreconditionError("unknown half-edge " + std::to_string(h));
        return it->second;
    }
    int partner(int h) const
    {
        auto it = partner_.find(h);
        if (it == partner_.end())
            throw PreconditionError("half-edge " + std::to_string(h) + " has no arc");
        return it->second;
    }
    int slot_id(int c, int k) const { return crossings_[c].slots[((k % 4) + 4) % 4]; }

    // Components in a fixed order: open strands by boundary index, closed
    // strands by smallest half-edge id, then free loops. Each walk follows
    // the canonical direction (orientation +1).
    const std::vector<Component>& components() const
    {
        if (!components_cache_)
            components_cache_ = compute_components();
        return *components_cache_;
    }

    // For oriented diagrams: does the strand enter its crossing through half-edge h?
    bool enters(int h) const
    {
        require_orientation("enters");
        const auto& info = entry_info();
        auto it = info.find(h);
        if (it == info.end())
            throw PreconditionError("half-edge " + std::to_string(h) + " is not on a crossing");
        return it->second;
    }

    // +1 / -1 for an oriented diagram.
    int crossing_sign(int c) const
    {
        int under_in = enters(slot_id(c, 0)) ? 0 : 2;
        int over_in = enters(slot_id(c, 1)) ? 1 : 3;
        return over_in == (under_in + 3) % 4 ? 1 : -1;
    }

    void require_orientation(const char* op) const
    {
        if (!orientation_)
            throw PreconditionError(std::string(op) + ": orientation required");
    }

private:
    void build_index()
    {
        where_.clear();
        partner_.clear();
        for (int c = 0; c < static_cast<int>(crossings_.size()); ++c)
            for (int k = 0; k < 4; ++k)
                where_.emplace(crossings_[c].slots[k], std::make_pair(c, k));
        for (int j = 0; j < static_cast<int>(boundary_.size()); ++j)
            where_.emplace(boundary_[j], std::make_pair(-1, j));
        for (auto [a, b] : arcs_) {
            partner_.emplace(a, b);
            partner_.emplace(b, a);
        }
    }

    std::vector<Component> compute_components() const
    {
        std::vector<Component> out;
        std::unordered_map<int, bool> seen;
        auto walk_from = [&](int h, Component& comp) {
            // h: half-edge through which we arrive
            while (true) {
                auto [c, k] = locate(h);
                if (c < 0) {
                    comp.last_boundary = k;
                    return;
                }
                if (seen[h])
                    return;
                seen[h] = true;
                comp.entries.push_back(h);
                int out_h = slot_id(c, k + 2);
                seen[out_h] = true;
                h = partner(out_h);
            }
        };
        for (int j = 0; j < static_cast<int>(boundary_.size()); ++j) {
            int b = boundary_[j];
            if (seen[b])
                continue;
            seen[b] = true;
            Component comp;
            comp.closed = false;
            comp.first_boundary = j;
            walk_from(partner(b), comp);
            if (comp.last_boundary >= 0)
                seen[boundary_[comp.last_boundary]] = true;
            out.push_back(std::move(comp));
        }
        std::vector<int> ids;
        for (const auto& c : crossings_)
            for (int h : c.slots)
                ids.push_back(h);
        std::sort(ids.begin(), ids.end());
        for (int h : ids) {
            if (seen[h])
                continue;
            Component comp;
            walk_from(h, comp);
            out.push_back(std::move(comp));
        }
        for (int i = 0; i < free_loops_; ++i) {
            Component comp;
            comp.free_loop = true;
            out.push_back(comp);
        }
        return out;
    }

    const std::unordered_map<int, bool>& entry_info() const
    {
        if (!entry_cache_) {
            std::unordered_map<int, bool> info;
            const auto& comps = components();
            for (std::size_t i = 0; i < comps.size(); ++i) {
                bool forward = (*orientation_)[i] > 0;
                for (int h : comps[i].entries) {
                    auto [c, k] = locate(h);
                    info[h] = forward;
                    info[slot_id(c, k + 2)] = !forward;
                }
            }
            entry_cache_ = std::move(info);
        }
        return *entry_cache_;
    }

    std::vector<Crossing> crossings_;
    std::vector<std::pair<int, int>> arcs_;
    std::vector<int> boundary_;
    int free_loops_ = 0;
    std::optional<std::vector<int>> orientation_;

    std::unordered_map<int, std::pair<int, int>> where_;
    std::unordered_map<int, int> partner_;
    mutable std::optional<std::vector<Component>> components_cache_;
    mutable std::optional<std::unordered_map<int, bool>> entry_cache_;
};

inline std::size_t component_count(const PlanarDiagram& d) { return d.components().size(); }

inline int writhe(const PlanarDiagram& d)
{
    d.require_orientation("writhe");
    int w = 0;
    for (int c = 0; c < static_cast<int>(d.crossing_count()); ++c)
        w += d.crossing_sign(c);
    return w;
}

namespace detail {

// Corner orbits of the rotation system. For tangles the boundary acts as
// an extra vertex (index = crossing_count) with slots NW, NE, SE, SW.
inline std::vector<Face> corner_orbits(const PlanarDiagram& d)
{
    int nc = static_cast<int>(d.crossing_count());
    bool tangle = !d.is_closed();
    int nv = nc + (tangle ? 1 : 0);
    auto slot = [&](int v, int k) { return v < nc ? d.slot_id(v, k) : d.boundary()[((k % 4) + 4) % 4]; };
    auto vertex_of = [&](int h) {
        auto [c, k] = d.locate(h);
        return c < 0 ? std::make_pair(nc, k) : std::make_pair(c, k);
    };
    std::vector<std::array<bool, 4>> seen(nv, {false, false, false, false});
    std::vector<Face> faces;
    for (int v = 0; v < nv; ++v)
        for (int k = 0; k < 4; ++k) {
            if (seen[v][k])
                continue;
            Face f;
            int cv = v, ck = k;
            while (!seen[cv][ck]) {
                seen[cv][ck] = true;
                f.push_back({cv, ck});
                auto [nv2, nk] = vertex_of(d.partner(slot(cv, ck + 1)));
                cv = nv2;
                ck = nk;
            }
            faces.push_back(std::move(f));
        }
    return faces;
}

// Connected pieces of the crossing graph (vertex sets), boundary vertex included for tangles.
inline std::vector<int> piece_labels(const PlanarDiagram& d)
{
    int nc = static_cast<int>(d.crossing_count());
    int nv = nc + (d.is_closed() ? 0 : 1);
    std::vector<int> parent(nv);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x)
            x = parent[x] = parent[parent[x]];
        return x;
    };
    auto vertex_of = [&](int h) {
        int c = d.locate(h).first;
        return c < 0 ? nc : c;
    };
    for (auto [a, b] : d.arcs())
        parent[find(vertex_of(a))] = find(vertex_of(b));
    std::vector<int> label(nv);
    for (int v = 0; v < nv; ++v)
        label[v] = find(v);
    return label;
}

} // namespace detail

inline std::optional<Violation> validate(const PlanarDiagram& d)
{
    std::map<int, int> in_slots, in_arcs;
    for (const auto& c : d.crossings())
        for (int h : c.slots)
            ++in_slots[h];
    if (!d.boundary().empty() && d.boundary().size() != 4)
        return Violation{"incidence", {}, "boundary must have exactly 4 endpoints"};
    for (int h : d.boundary())
        ++in_slots[h];
    for (auto [a, b] : d.arcs()) {
        ++in_arcs[a];
        ++in_arcs[b];
    }
    for (auto [h, n] : in_slots)
        if (n != 1)
            return Violation{"incidence", {h}, "half-edge occurs " + std::to_string(n) + " times in slots"};
    for (auto [h, n] : in_arcs) {
        if (!in_slots.count(h))
            return Violation{"incidence", {h}, "arc uses a half-edge with no slot"};
        if (n != 1)
            return Violation{"incidence", {h}, "half-edge occurs " + std::to_string(n) + " times in arcs"};
    }
    for (auto [h, n] : in_slots)
        if (!in_arcs.count(h))
            return Violation{"incidence", {h}, "half-edge has no arc"};

    if (d.crossing_count() > 0 || !d.is_closed()) {
        auto faces = detail::corner_orbits(d);
        auto label = detail::piece_labels(d);
        std::map<int, std::array<long, 3>> vef; // per piece: V, E, F
        for (std::size_t v = 0; v < label.size(); ++v) {
            vef[label[v]][0] += 1;
            vef[label[v]][1] += 2;
        }
        for (const auto& f : faces)
            vef[label[f.front().crossing]][2] += 1;
        for (auto& [piece, x] : vef) {
            long chi = x[0] - x[1] + x[2];
            if (chi != 2) {
                std::vector<int> ids;
                for (std::size_t v = 0; v < label.size(); ++v)
                    if (label[v] == piece)
                        ids.push_back(static_cast<int>(v));
                return Violation{"Euler", ids, "V - E + F = " + std::to_string(chi)};
            }
        }
    }
    if (!d.empty() && d.components().empty())
        return Violation{"components", {}, "nonempty diagram without components"};
    return std::nullopt;
}

inline void require_valid(const PlanarDiagram& d)
{
    if (auto v = validate(d)) {
        std::string ids;
        for (int h : v->ids)
            ids += " " + std::to_string(h);
        throw PreconditionError("invalid diagram: " + v->kind + " (" + v->detail + ")" + (ids.empty() ? "" : ":" + ids));
    }
}

inline void require_closed(const PlanarDiagram& d, const char* op)
{
    if (!d.is_closed())
        throw PreconditionError(std::string(op) + ": diagram has open endpoints");
}

// Faces of a closed diagram, per connected piece. A piece without crossings
// (free loop) contributes two empty faces.
inline std::vector<Face> faces(const PlanarDiagram& d)
{
    require_closed(d, "faces");
    std::vector<Face> f = d.crossing_count() > 0 ? detail::corner_orbits(d) : std::vector<Face>{};
    for (int i = 0; i < d.free_loops(); ++i) {
        f.emplace_back();
        f.emplace_back();
    }
    return f;
}

// Number of connected pieces of the diagram (crossing pieces plus free loops).
inline int piece_count(const PlanarDiagram& d)
{
    auto label = detail::piece_labels(d);
    std::vector<int> roots(label.begin(), label.end());
    std::sort(roots.begin(), roots.end());
    roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
    return static_cast<int>(roots.size()) + d.free_loops();
}

} // namespace tanglecalc
