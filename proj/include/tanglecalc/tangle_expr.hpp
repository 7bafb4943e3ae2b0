#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <cstdlib>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "affine.hpp"
#include "error.hpp"
#include "fraction.hpp"

namespace tanglecalc {

enum class NodeKind {
    Rational,
    VerticalTwists,
    HorizontalTwists,
    Sum,
    Rotate90,
    NumeratorClosure,
    DenominatorClosure,
    Slot,
    Network,
};

// One box of a Network node: child expression `child` placed with its
// NW, NE, SE, SW endpoints on the arcs named by `labels`.
struct NetworkBox {
    std::size_t child = 0;
    std::array<int, 4> labels{};
    friend bool operator==(const NetworkBox&, const NetworkBox&) = default;
};

struct NetworkWiring {
    std::vector<NetworkBox> boxes;
    std::optional<std::array<int, 4>> boundary; // NW, NE, SE, SW when the network is itself a tangle
    friend bool operator==(const NetworkWiring&, const NetworkWiring&) = default;
};

class TangleExpr {
public:
    struct Node {
        NodeKind kind = NodeKind::Slot;
        Affine p;   // numerator or twist count
        Affine q;   // denominator (Rational only)
        std::vector<TangleExpr> children;
        std::string label; // Slot only
        NetworkWiring wiring; // Network only
    };

    TangleExpr() : TangleExpr(make(Node{})) {}

    static TangleExpr rational(Affine p, Affine q)
    {
        Node n;
        n.kind = NodeKind::Rational;
        n.p = std::move(p);
        n.q = std::move(q);
        return make(std::move(n));
    }
    static TangleExpr rational(const Fraction& f) { return rational(Affine(f.num()), Affine(f.den())); }

    static TangleExpr vertical(Affine k, TangleExpr t) { return twist(NodeKind::VerticalTwists, std::move(k), std::move(t)); }
    static TangleExpr horizontal(Affine k, TangleExpr t) { return twist(NodeKind::HorizontalTwists, std::move(k), std::move(t)); }

    static TangleExpr sum(TangleExpr a, TangleExpr b)
    {
        Node n;
        n.kind = NodeKind::Sum;
        n.children = {std::move(a), std::move(b)};
        return make(std::move(n));
    }
    static TangleExpr unary(NodeKind kind, TangleExpr t)
    {
        Node n;
        n.kind = kind;
        n.children = {std::move(t)};
        return make(std::move(n));
    }
    static TangleExpr slot(std::string label = {})
    {
        Node n;
        n.kind = NodeKind::Slot;
        n.label = std::move(label);
        return make(std::move(n));
    }
    static TangleExpr network(std::vector<TangleExpr> children, NetworkWiring wiring)
    {
        Node n;
        n.kind = NodeKind::Network;
        n.children = std::move(children);
        n.wiring = std::move(wiring);
        return make(std::move(n));
    }

    NodeKind kind() const { return node_->kind; }
    const Node& node() const { return *node_; }
    const std::vector<TangleExpr>& children() const { return node_->children; }
    const TangleExpr& child(std::size_t i = 0) const { return node_->children.at(i); }

    // Closed: the root closes up all endpoints (a link, not a tangle).
    bool is_closed() const
    {
        switch (kind()) {
        case NodeKind::NumeratorClosure:
        case NodeKind::DenominatorClosure:
            return true;
        case NodeKind::Network:
            return !node_->wiring.boundary.has_value();
        default:
            return false;
        }
    }

    std::size_t slot_count() const
    {
        if (kind() == NodeKind::Slot)
            return 1;
        std::size_t c = 0;
        for (const auto& ch : children())
            c += ch.slot_count();
        return c;
    }
    bool has_slot() const { return slot_count() > 0; }

    void collect_symbols(std::set<std::string>& out) const
    {
        if (!node_->p.is_constant())
            out.insert(node_->p.var);
        if (!node_->q.is_constant())
            out.insert(node_->q.var);
        for (const auto& ch : children())
            ch.collect_symbols(out);
    }
    bool is_symbolic() const
    {
        std::set<std::string> s;
        collect_symbols(s);
        return !s.empty();
    }

    std::size_t size() const
    {
        std::size_t s = 1;
        for (const auto& ch : children())
            s += ch.size();
        return s;
    }

    friend bool operator==(const TangleExpr& a, const TangleExpr& b)
    {
        if (a.node_ == b.node_)
            return true;
        const Node& x = *a.node_;
        const Node& y = *b.node_;
        return x.kind == y.kind && x.p == y.p && x.q == y.q && x.label == y.label && x.wiring == y.wiring
            && x.children == y.children;
    }

    // Fraction of a symbol-free Rational node.
    Fraction fraction() const
    {
        if (kind() != NodeKind::Rational || !node_->p.is_constant() || !node_->q.is_constant())
            throw PreconditionError("not a concrete rational node");
        return Fraction(node_->p.constant, node_->q.constant);
    }
    std::int64_t twist_count() const
    {
        if (!node_->p.is_constant())
            throw PreconditionError("symbolic twist count '" + node_->p.str() + "'");
        return node_->p.constant;
    }

private:
    explicit TangleExpr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
    static TangleExpr make(Node n) { return TangleExpr(std::make_shared<const Node>(std::move(n))); }
    static TangleExpr twist(NodeKind kind, Affine k, TangleExpr t)
    {
        Node n;
        n.kind = kind;
        n.p = std::move(k);
        n.children = {std::move(t)};
        return make(std::move(n));
    }

    std::shared_ptr<const Node> node_;
};

inline TangleExpr zero_tangle() { return TangleExpr::rational(Fraction(0)); }
inline TangleExpr infinity_tangle() { return TangleExpr::rational(Fraction::infinity()); }

// Terms of the continued fraction p/q = [a0; a1, ..., ak] with every term
// carrying the sign of p/q, stretched to even length by splitting the last term.
inline std::vector<std::int64_t> even_continued_fraction(const Fraction& f)
{
    std::int64_t sign = f.num() < 0 ? -1 : 1;
    std::int64_t p = std::abs(f.num()), q = f.den();
    std::vector<std::int64_t> terms;
    while (q != 0) {
        terms.push_back(sign * (p / q));
        std::int64_t r = p % q;
        p = q;
        q = r;
    }
    if (terms.size() % 2 == 1) {
        std::int64_t last = terms.back();
        std::int64_t s = last < 0 ? -1 : 1;
        terms.back() = last - s;
        terms.push_back(s);
    }
    return terms;
}

// Twist-node expression for p/q: starting from the 1/0 tangle apply
// vt(a_k), ht(a_{k-1}), ..., vt(a_1), ht(a_0). 0 and 1/0 stay leaves.
inline TangleExpr rational_tangle(const Fraction& f)
{
    if (f.is_infinity())
        return infinity_tangle();
    if (f.num() == 0)
        return zero_tangle();
    std::vector<std::int64_t> a = even_continued_fraction(f);
    TangleExpr t = infinity_tangle();
    for (std::size_t i = a.size(); i-- > 0;) {
        if (a[i] == 0)
            continue;
        t = (i % 2 == 1) ? TangleExpr::vertical(a[i], t) : TangleExpr::horizontal(a[i], t);
    }
    return t;
}

inline void require_open(const TangleExpr& t, const char* op)
{
    if (t.is_closed())
        throw PreconditionError(std::string(op) + ": operand is a closed link, not a tangle");
}

inline TangleExpr vertical_twist_box(const TangleExpr& t, Affine k)
{
    require_open(t, "vertical_twist_box");
    return TangleExpr::vertical(std::move(k), t);
}

inline TangleExpr horizontal_twist_box(const TangleExpr& t, Affine k)
{
    require_open(t, "horizontal_twist_box");
    return TangleExpr::horizontal(std::move(k), t);
}

inline TangleExpr tangle_sum(const TangleExpr& a, const TangleExpr& b)
{
    require_open(a, "tangle_sum");
    require_open(b, "tangle_sum");
    if (a.has_slot() && b.has_slot())
        throw PreconditionError("tangle_sum: both operands contain a slot");
    return TangleExpr::sum(a, b);
}

inline TangleExpr rotate90(const TangleExpr& t)
{
    require_open(t, "rotate90");
    return TangleExpr::unary(NodeKind::Rotate90, t);
}

inline TangleExpr numerator_closure(const TangleExpr& t)
{
    require_open(t, "numerator_closure");
    if (t.has_slot())
        throw PreconditionError("numerator_closure: substitute the slot first");
    return TangleExpr::unary(NodeKind::NumeratorClosure, t);
}

inline TangleExpr denominator_closure(const TangleExpr& t)
{
    require_open(t, "denominator_closure");
    if (t.has_slot())
        throw PreconditionError("denominator_closure: substitute the slot first");
    return TangleExpr::unary(NodeKind::DenominatorClosure, t);
}

namespace detail {

inline TangleExpr replace_slot(const TangleExpr& t, const TangleExpr& filling)
{
    if (t.kind() == NodeKind::Slot)
        return filling;
    if (!t.has_slot())
        return t;
    TangleExpr::Node n = t.node();
    for (auto& ch : n.children)
        ch = replace_slot(ch, filling);
    switch (n.kind) {
    case NodeKind::Rational:
        return TangleExpr::rational(n.p, n.q);
    case NodeKind::VerticalTwists:
        return TangleExpr::vertical(n.p, n.children[0]);
    case NodeKind::HorizontalTwists:
        return TangleExpr::horizontal(n.p, n.children[0]);
    case NodeKind::Sum:
        return TangleExpr::sum(n.children[0], n.children[1]);
    case NodeKind::Network:
        return TangleExpr::network(n.children, n.wiring);
    default:
        return TangleExpr::unary(n.kind, n.children[0]);
    }
}

} // namespace detail

inline TangleExpr substitute_slot(const TangleExpr& tmpl, const TangleExpr& filling)
{
    std::size_t slots = tmpl.slot_count();
    if (slots == 0)
        throw PreconditionError("substitute_slot: template has no slot");
    if (slots > 1)
        throw PreconditionError("substitute_slot: template has more than one slot");
    if (filling.has_slot())
        throw PreconditionError("substitute_slot: filling contains a slot");
    require_open(filling, "substitute_slot");
    return detail::replace_slot(tmpl, filling);
}

struct Constraint {
    std::string var;
    std::int64_t min = 0; // var >= min
    friend bool operator==(const Constraint&, const Constraint&) = default;
};

namespace detail {

inline TangleExpr instantiate_node(const TangleExpr& t, const Bindings& b)
{
    TangleExpr::Node n = t.node();
    for (auto& ch : n.children)
        ch = instantiate_node(ch, b);
    Affine p(n.p.eval(b));
    Affine q(n.q.eval(b));
    switch (n.kind) {
    case NodeKind::Rational:
        if (q.constant == 0 && p.constant != 1)
            throw PreconditionError("rational tangle " + std::to_string(p.constant) + "/0 after substitution");
        return TangleExpr::rational(Fraction(p.constant, q.constant));
    case NodeKind::VerticalTwists:
        return TangleExpr::vertical(p, n.children[0]);
    case NodeKind::HorizontalTwists:
        return TangleExpr::horizontal(p, n.children[0]);
    case NodeKind::Sum:
        return TangleExpr::sum(n.children[0], n.children[1]);
    case NodeKind::Slot:
        return t;
    case NodeKind::Network:
        return TangleExpr::network(n.children, n.wiring);
    default:
        return TangleExpr::unary(n.kind, n.children[0]);
    }
}

} // namespace detail

// Evaluate every affine parameter. Constraints are checked before substitution.
inline TangleExpr instantiate(const TangleExpr& t, const Bindings& b, const std::vector<Constraint>& constraints = {})
{
    for (const auto& c : constraints) {
        auto it = b.find(c.var);
        if (it == b.end())
            throw PreconditionError("unbound symbol '" + c.var + "'");
        if (it->second < c.min)
            throw PreconditionError("constraint violated: " + c.var + " >= " + std::to_string(c.min) + " (got "
                                    + std::to_string(it->second) + ")");
    }
    return detail::instantiate_node(t, b);
}

} // namespace tanglecalc
