#pragma once

#include <array>
#include <map>
#include <vector>

#include "planar_diagram.hpp"
#include "tangle_expr.hpp"

namespace tanglecalc {

// Wires crossings together through port nodes. Each port touches at most two
// things: a crossing slot and/or other ports. Finalizing follows wire chains
// to produce the arc pairing.
class DiagramBuilder {
public:
    struct Ports {
        std::array<int, 4> p{}; // NW, NE, SE, SW
        int& nw() { return p[0]; }
        int& ne() { return p[1]; }
        int& se() { return p[2]; }
        int& sw() { return p[3]; }
    };

    // Single crossing tile; sign +1 puts the SW-NE strand over.
    Ports crossing(int sign)
    {
        int c = static_cast<int>(crossing_count_++);
        Ports t;
        for (int i = 0; i < 4; ++i)
            t.p[i] = new_port();
        // slot order counterclockwise starting on the under strand
        static constexpr std::array<int, 4> pos_slots{0, 3, 2, 1}; // NW->0, NE->3, SE->2, SW->1
        static constexpr std::array<int, 4> neg_slots{3, 2, 1, 0}; // NW->3, NE->2, SE->1, SW->0
        for (int i = 0; i < 4; ++i) {
            int k = sign > 0 ? pos_slots[i] : neg_slots[i];
            link_slot(t.p[i], 4 * c + k);
        }
        return t;
    }

    Ports zero()
    {
        Ports t = fresh();
        connect(t.p[0], t.p[1]);
        connect(t.p[3], t.p[2]);
        return t;
    }

    Ports infinity()
    {
        Ports t = fresh();
        connect(t.p[0], t.p[3]);
        connect(t.p[1], t.p[2]);
        return t;
    }

    Ports sum(Ports a, Ports b)
    {
        connect(a.ne(), b.nw());
        connect(a.se(), b.sw());
        return Ports{{a.nw(), b.ne(), b.se(), a.sw()}};
    }

    // a on top of b
    Ports stack(Ports a, Ports b)
    {
        connect(a.sw(), b.nw());
        connect(a.se(), b.ne());
        return Ports{{a.nw(), a.ne(), b.se(), b.sw()}};
    }

    static Ports rotate(Ports t) { return Ports{{t.ne(), t.se(), t.sw(), t.nw()}}; }

    void close_numerator(Ports t)
    {
        connect(t.nw(), t.ne());
        connect(t.sw(), t.se());
    }
    void close_denominator(Ports t)
    {
        connect(t.nw(), t.sw());
        connect(t.ne(), t.se());
    }

    int new_port()
    {
        ports_.emplace_back();
        return static_cast<int>(ports_.size() - 1);
    }
    Ports fresh()
    {
        Ports t;
        for (int i = 0; i < 4; ++i)
            t.p[i] = new_port();
        return t;
    }

    void connect(int a, int b)
    {
        ports_[a].links.push_back(b);
        ports_[b].links.push_back(a);
    }

    // Open result when `boundary` is given (NW, NE, SE, SW ports), closed otherwise.
    PlanarDiagram finish(const std::optional<Ports>& boundary = std::nullopt) const
    {
        int nc = static_cast<int>(crossing_count_);
        std::vector<Crossing> crossings(nc);
        for (int c = 0; c < nc; ++c)
            for (int k = 0; k < 4; ++k)
                crossings[c].slots[k] = 4 * c + k;
        std::vector<int> bnd;
        std::map<int, int> boundary_id; // port -> half-edge id
        if (boundary) {
            for (int j = 0; j < 4; ++j) {
                bnd.push_back(4 * nc + j);
                boundary_id[boundary->p[j]] = 4 * nc + j;
            }
        }
        std::vector<bool> used(ports_.size(), false);
        std::vector<std::pair<int, int>> arcs;
        auto terminal = [&](int port) -> int {
            if (ports_[port].slot >= 0)
                return ports_[port].slot;
            auto it = boundary_id.find(port);
            return it == boundary_id.end() ? -1 : it->second;
        };
        auto step = [&](int prev, int cur) {
            const auto& l = ports_[cur].links;
            if (l.empty())
                throw PreconditionError("dangling wire in diagram construction");
            return (l.size() == 1 || l[0] != prev) ? l[0] : l[1];
        };
        // Walk from a terminal port through wire-only ports to the next terminal.
        auto walk = [&](int start) {
            int prev = -1, cur = start;
            used[cur] = true;
            while (true) {
                int next = step(prev, cur);
                prev = cur;
                cur = next;
                used[cur] = true;
                if (terminal(cur) >= 0)
                    return cur;
            }
        };
        for (std::size_t p = 0; p < ports_.size(); ++p) {
            if (used[p] || terminal(static_cast<int>(p)) < 0)
                continue;
            int end = walk(static_cast<int>(p));
            arcs.emplace_back(terminal(static_cast<int>(p)), terminal(end));
        }
        int loops = 0;
        for (std::size_t p = 0; p < ports_.size(); ++p) {
            if (used[p])
                continue;
            // remaining ports form closed wire cycles
            int prev = -1, cur = static_cast<int>(p);
            while (!used[cur]) {
                used[cur] = true;
                int next = step(prev, cur);
                prev = cur;
                cur = next;
            }
            ++loops;
        }
        return PlanarDiagram(std::move(crossings), std::move(arcs), std::move(bnd), loops);
    }

    void link_slot(int port, int slot) { ports_[port].slot = slot; }

private:
    struct Port {
        int slot = -1;
        std::vector<int> links;
    };
    std::vector<Port> ports_;
    std::size_t crossing_count_ = 0;
};

namespace detail {

inline DiagramBuilder::Ports build_twists(DiagramBuilder& b, std::int64_t k, bool vertical)
{
    if (k == 0)
        return vertical ? b.infinity() : b.zero();
    int sign = k > 0 ? 1 : -1;
    DiagramBuilder::Ports acc = b.crossing(sign);
    for (std::int64_t i = 1; i < std::abs(k); ++i)
        acc = vertical ? b.stack(acc, b.crossing(sign)) : b.sum(acc, b.crossing(sign));
    return acc;
}

struct BuildResult {
    std::optional<DiagramBuilder::Ports> ports; // nullopt for closed sub-expressions
};

inline BuildResult build(DiagramBuilder& b, const TangleExpr& t);

inline DiagramBuilder::Ports build_open(DiagramBuilder& b, const TangleExpr& t)
{
    BuildResult r = build(b, t);
    if (!r.ports)
        throw PreconditionError("closed link used where a tangle is expected");
    return *r.ports;
}

inline BuildResult build(DiagramBuilder& b, const TangleExpr& t)
{
    switch (t.kind()) {
    case NodeKind::Slot:
        throw PreconditionError("to_planar_diagram: expression contains a slot");
    case NodeKind::Rational: {
        Fraction f = t.fraction();
        if (f.is_infinity())
            return {b.infinity()};
        if (f.num() == 0)
            return {b.zero()};
        return {build_open(b, rational_tangle(f))};
    }
    case NodeKind::HorizontalTwists: {
        auto inner = build_open(b, t.child());
        return {b.sum(inner, build_twists(b, t.twist_count(), false))};
    }
    case NodeKind::VerticalTwists: {
        auto inner = build_open(b, t.child());
        return {b.stack(inner, build_twists(b, t.twist_count(), true))};
    }
    case NodeKind::Sum: {
        auto l = build_open(b, t.child(0));
        auto r = build_open(b, t.child(1));
        return {b.sum(l, r)};
    }
    case NodeKind::Rotate90:
        return {DiagramBuilder::rotate(build_open(b, t.child()))};
    case NodeKind::NumeratorClosure:
        b.close_numerator(build_open(b, t.child()));
        return {};
    case NodeKind::DenominatorClosure:
        b.close_denominator(build_open(b, t.child()));
        return {};
    case NodeKind::Network: {
        const auto& w = t.node().wiring;
        std::map<int, std::vector<int>> by_label;
        for (const auto& box : w.boxes) {
            auto ports = build_open(b, t.child(box.child));
            for (int i = 0; i < 4; ++i)
                by_label[box.labels[i]].push_back(ports.p[i]);
        }
        std::optional<DiagramBuilder::Ports> outer;
        if (w.boundary) {
            outer = b.fresh();
            for (int i = 0; i < 4; ++i)
                by_label[(*w.boundary)[i]].push_back(outer->p[i]);
        }
        for (auto& [label, ends] : by_label) {
            if (ends.size() != 2)
                throw PreconditionError("network arc " + std::to_string(label) + " has " + std::to_string(ends.size())
                                        + " endpoints");
            b.connect(ends[0], ends[1]);
        }
        if (outer)
            return {*outer};
        return {};
    }
    }
    throw PreconditionError("unknown node kind");
}

} // namespace detail

inline PlanarDiagram to_planar_diagram(const TangleExpr& t)
{
    if (t.has_slot())
        throw PreconditionError("to_planar_diagram: expression contains a slot");
    if (t.is_symbolic())
        throw PreconditionError("to_planar_diagram: expression has unbound symbols");
    DiagramBuilder b;
    auto r = detail::build(b, t);
    if (!r.ports)
        return b.finish();
    // boundary ports must be pure wires
    DiagramBuilder::Ports exposed = b.fresh();
    for (int i = 0; i < 4; ++i)
        b.connect(exposed.p[i], r.ports->p[i]);
    return b.finish(exposed);
}

} // namespace tanglecalc
