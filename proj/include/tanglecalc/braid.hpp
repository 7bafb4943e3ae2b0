#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <deque>
#include <optional>
#include <set>
#include <string>
#include <unordered_set>
#include <vector>

#include "affine.hpp"
#include "dsl.hpp"
#include "error.hpp"
#include "planar_diagram.hpp"

namespace tanglecalc {

// Letters are +-i for sigma_i^(+-1), 1 <= i < strands.
struct BraidWord {
    int strands = 1;
    std::vector<int> letters;

    BraidWord() = default;
    BraidWord(int s, std::vector<int> w) : strands(s), letters(std::move(w))
    {
        if (strands < 1)
            throw PreconditionError("braid needs at least one strand");
        for (int l : letters)
            if (l == 0 || std::abs(l) >= strands)
                throw PreconditionError("braid letter " + std::to_string(l) + " out of range for "
                                        + std::to_string(strands) + " strands");
    }

    bool is_positive() const
    {
        return std::all_of(letters.begin(), letters.end(), [](int l) { return l > 0; });
    }
    int exponent_sum() const
    {
        int s = 0;
        for (int l : letters)
            s += l > 0 ? 1 : -1;
        return s;
    }
    friend bool operator==(const BraidWord&, const BraidWord&) = default;
};

// braid(s; i1 i2 ...)
inline std::string format_braid(const BraidWord& w)
{
    std::string out = "braid(" + std::to_string(w.strands) + ";";
    for (int l : w.letters)
        out += " " + std::to_string(l);
    return out + ")";
}

// ---------------------------------------------------------------- templates
//
// Parameterized braid text, a superset of the plain format:
//   braid(<affine strands>; item*)
//   item := ['-'] atom ['^' power]
//   atom := INT | '[' aff '..' aff ']' | '(' item* ')' | '{' item* '}'
//   power := INT | SYMBOL | '(' aff ')'
// '-' negates every letter of the atom, a range lists consecutive generators,
// and braces mark a full-twist region that can be left out.

struct BraidItem {
    enum class Kind { Letter, Range, Group, TwistRegion } kind = Kind::Letter;
    Affine a, b;          // letter value or range bounds
    bool negate = false;
    Affine power{1};
    std::vector<BraidItem> items;
};

struct BraidTemplate {
    Affine strands{1};
    std::vector<BraidItem> items;
    std::vector<Constraint> constraints;
};

namespace detail {

class BraidParser {
public:
    explicit BraidParser(const std::string& text) : s_(text) {}

    BraidTemplate parse()
    {
        BraidTemplate t;
        skip();
        if (s_.compare(pos_, 5, "braid") != 0)
            fail("expected 'braid('", pos_, pos_ + 1);
        pos_ += 5;
        expect('(');
        t.strands = affine_until(";");
        expect(';');
        t.items = items(')');
        expect(')');
        skip();
        if (pos_ != s_.size())
            fail("unexpected '" + std::string(1, s_[pos_]) + "'", pos_, pos_ + 1);
        return t;
    }

private:
    [[noreturn]] void fail(const std::string& what, std::size_t a, std::size_t b) const
    {
        b = std::min(b, s_.size());
        throw ParseError(what, {std::min(a, b), b});
    }

    void skip()
    {
        while (pos_ < s_.size()) {
            if (std::isspace(static_cast<unsigned char>(s_[pos_])))
                ++pos_;
            else if (s_[pos_] == '#')
                while (pos_ < s_.size() && s_[pos_] != '\n')
                    ++pos_;
            else
                break;
        }
    }

    void expect(char c)
    {
        skip();
        if (pos_ >= s_.size() || s_[pos_] != c)
            fail(std::string("expected '") + c + "'", pos_, pos_ + 1);
        ++pos_;
    }

    Affine affine_text(std::size_t a, std::size_t b)
    {
        try {
            return parse_affine(s_.substr(a, b - a));
        } catch (const ParseError& e) {
            fail(e.what(), a + e.span().start, a + e.span().end);
        }
    }

    Affine affine_until(const std::string& stops)
    {
        skip();
        std::size_t a = pos_;
        int depth = 0;
        while (pos_ < s_.size()) {
            char c = s_[pos_];
            if (c == '(')
                ++depth;
            else if (c == ')') {
                if (depth == 0)
                    break;
                --depth;
            } else if (depth == 0 && (stops.find(c) != std::string::npos || s_.compare(pos_, 2, "..") == 0))
                break;
            ++pos_;
        }
        if (a == pos_)
            fail("expected an integer", a, a + 1);
        return affine_text(a, pos_);
    }

    std::vector<BraidItem> items(char close)
    {
        std::vector<BraidItem> out;
        while (true) {
            skip();
            if (pos_ >= s_.size())
                fail(std::string("missing '") + close + "'", pos_, pos_);
            if (s_[pos_] == close)
                return out;
            out.push_back(item());
        }
    }

    BraidItem item()
    {
        BraidItem it;
        skip();
        std::size_t start = pos_;
        if (s_[pos_] == '-') {
            it.negate = true;
            ++pos_;
            skip();
        }
        if (pos_ >= s_.size())
            fail("unexpected end of input", start, pos_);
        char c = s_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t a = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
                ++pos_;
            it.kind = BraidItem::Kind::Letter;
            it.a = affine_text(a, pos_);
            if (it.a.constant == 0)
                fail("braid letters are nonzero", a, pos_);
        } else if (c == '[') {
            ++pos_;
            it.kind = BraidItem::Kind::Range;
            it.a = affine_until("]");
            if (s_.compare(pos_, 2, "..") != 0)
                fail("expected '..' in range", pos_, pos_ + 1);
            pos_ += 2;
            it.b = affine_until("]");
            expect(']');
        } else if (c == '(' || c == '{') {
            ++pos_;
            char close = c == '(' ? ')' : '}';
            it.kind = c == '(' ? BraidItem::Kind::Group : BraidItem::Kind::TwistRegion;
            it.items = items(close);
            expect(close);
        } else {
            fail("expected a letter, range or group", pos_, pos_ + 1);
        }
        skip();
        if (pos_ < s_.size() && s_[pos_] == '^') {
            ++pos_;
            skip();
            if (pos_ < s_.size() && s_[pos_] == '(') {
                ++pos_;
                it.power = affine_until(")");
                expect(')');
            } else {
                std::size_t a = pos_;
                while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
                    ++pos_;
                if (a == pos_)
                    fail("expected a power", a, a + 1);
                it.power = affine_text(a, pos_);
            }
        }
        return it;
    }

    const std::string& s_;
    std::size_t pos_ = 0;
};

inline void expand(const std::vector<BraidItem>& items, const Bindings& b, bool twists, std::vector<int>& out)
{
    for (const auto& it : items) {
        std::int64_t p = it.power.eval(b);
        if (p < 0)
            throw PreconditionError("negative braid power");
        std::vector<int> once;
        switch (it.kind) {
        case BraidItem::Kind::Letter:
            once.push_back(static_cast<int>(it.a.eval(b)));
            break;
        case BraidItem::Kind::Range: {
            std::int64_t lo = it.a.eval(b), hi = it.b.eval(b);
            int step = lo <= hi ? 1 : -1;
            for (std::int64_t i = lo;; i += step) {
                once.push_back(static_cast<int>(i));
                if (i == hi)
                    break;
            }
            break;
        }
        case BraidItem::Kind::TwistRegion:
            if (!twists)
                continue;
            [[fallthrough]];
        case BraidItem::Kind::Group:
            expand(it.items, b, twists, once);
            break;
        }
        if (it.negate)
            for (int& l : once)
                l = -l;
        for (std::int64_t k = 0; k < p; ++k)
            out.insert(out.end(), once.begin(), once.end());
    }
}

} // namespace detail

inline BraidTemplate parse_braid_template(const std::string& text)
{
    BraidTemplate t = detail::BraidParser(text).parse();
    // pragmas as in .tngl files
    std::size_t at = 0;
    while ((at = text.find("#!", at)) != std::string::npos) {
        std::size_t end = text.find('\n', at);
        std::string line = text.substr(at + 2, end == std::string::npos ? std::string::npos : end - at - 2);
        std::istringstream words(line);
        std::string kw, var, op;
        std::int64_t min = 0;
        if (!(words >> kw >> var >> op >> min) || kw != "require" || op != ">=")
            throw ParseError("pragma must read '#! require <symbol> >= <integer>'", {at, end == std::string::npos ? text.size() : end});
        t.constraints.push_back({var, min});
        at += 2;
    }
    return t;
}

// twists=false drops every {...} region.
inline BraidWord instantiate_braid(const BraidTemplate& t, const Bindings& b, bool twists = true)
{
    for (const auto& c : t.constraints) {
        auto it = b.find(c.var);
        if (it != b.end() && it->second < c.min)
            throw PreconditionError("constraint " + c.var + " >= " + std::to_string(c.min) + " violated by "
                                    + c.var + " = " + std::to_string(it->second));
    }
    std::vector<int> letters;
    detail::expand(t.items, b, twists, letters);
    return BraidWord(static_cast<int>(t.strands.eval(b)), std::move(letters));
}

inline BraidWord parse_braid(const std::string& text) { return instantiate_braid(parse_braid_template(text), {}); }

// ---------------------------------------------------------------- closure

// Strands run downward. Positive letters put the strand entering at the top
// right over the one entering at the top left.
inline PlanarDiagram closure(const BraidWord& w)
{
    int s = w.strands;
    std::vector<Crossing> crossings;
    std::vector<std::pair<int, int>> arcs;
    std::vector<int> top(s + 1, -1), dangling(s + 1, -1);
    std::vector<bool> incoming;
    auto attach = [&](int pos, int h) {
        if (dangling[pos] < 0)
            top[pos] = h;
        else
            arcs.emplace_back(dangling[pos], h);
    };
    for (std::size_t c = 0; c < w.letters.size(); ++c) {
        int l = w.letters[c];
        int i = std::abs(l);
        int base = static_cast<int>(4 * c);
        // slot indices of the four corners
        int tl, tr, bl, br;
        if (l > 0) {
            tl = 0; bl = 1; br = 2; tr = 3;
        } else {
            tr = 0; tl = 1; bl = 2; br = 3;
        }
        crossings.push_back(Crossing{{base, base + 1, base + 2, base + 3}});
        attach(i, base + tl);
        attach(i + 1, base + tr);
        dangling[i] = base + bl;
        dangling[i + 1] = base + br;
        for (int k = 0; k < 4; ++k)
            incoming.push_back(k == tl || k == tr);
    }
    int loops = 0;
    for (int p = 1; p <= s; ++p) {
        if (dangling[p] < 0)
            ++loops;
        else
            arcs.emplace_back(dangling[p], top[p]);
    }
    PlanarDiagram d(std::move(crossings), std::move(arcs), {}, loops);
    std::vector<int> orient;
    for (const auto& comp : d.components())
        orient.push_back(comp.free_loop || incoming[comp.entries.front()] ? 1 : -1);
    return d.with_orientation(std::move(orient));
}

// ---------------------------------------------------------------- positivity

struct CancelOptions {
    std::size_t budget = 1000000;
    bool braid_relation = false;
};

struct CancelResult {
    std::optional<BraidWord> witness; // empty means undetermined
    std::size_t states = 0;
};

namespace detail {

// Cancel adjacent inverse pairs, cyclically, to a fixpoint.
inline std::vector<int> cyclic_free_reduce(std::vector<int> w)
{
    std::vector<int> st;
    for (int l : w) {
        if (!st.empty() && st.back() == -l)
            st.pop_back();
        else
            st.push_back(l);
    }
    std::size_t a = 0, b = st.size();
    while (b - a >= 2 && st[a] == -st[b - 1]) {
        ++a;
        --b;
    }
    return {st.begin() + static_cast<std::ptrdiff_t>(a), st.begin() + static_cast<std::ptrdiff_t>(b)};
}

// Least rotation; cyclic shifts are conjugations, so states are cyclic words.
inline std::vector<int> least_rotation(const std::vector<int>& w)
{
    std::vector<int> best = w;
    for (std::size_t r = 1; r < w.size(); ++r) {
        std::vector<int> c(w.begin() + static_cast<std::ptrdiff_t>(r), w.end());
        c.insert(c.end(), w.begin(), w.begin() + static_cast<std::ptrdiff_t>(r));
        if (c < best)
            best = std::move(c);
    }
    return best;
}

struct WordHash {
    std::size_t operator()(const std::vector<int>& w) const
    {
        std::size_t h = 1469598103934665603ULL;
        for (int l : w)
            h = (h ^ static_cast<std::size_t>(l + 1024)) * 1099511628211ULL;
        return h;
    }
};

} // namespace detail

// Breadth-first search over free reduction, far commutation and cyclic
// shifts (plus the braid relation when enabled) for an all-positive word.
inline CancelResult cancel_to_positive(const BraidWord& w, const CancelOptions& opt = {})
{
    if (opt.budget == 0)
        throw PreconditionError("cancel_to_positive: budget must be positive");
    CancelResult res;
    auto norm = [](std::vector<int> v) { return detail::least_rotation(detail::cyclic_free_reduce(std::move(v))); };
    std::unordered_set<std::vector<int>, detail::WordHash> seen;
    std::deque<std::vector<int>> queue;
    auto start = norm(w.letters);
    seen.insert(start);
    queue.push_back(start);
    while (!queue.empty()) {
        auto cur = std::move(queue.front());
        queue.pop_front();
        ++res.states;
        if (std::all_of(cur.begin(), cur.end(), [](int l) { return l > 0; })) {
            res.witness = BraidWord(w.strands, cur);
            return res;
        }
        if (res.states >= opt.budget)
            return res;
        std::size_t n = cur.size();
        auto push = [&](std::vector<int> v) {
            v = norm(std::move(v));
            if (seen.insert(v).second)
                queue.push_back(std::move(v));
        };
        for (std::size_t i = 0; i < n; ++i) {
            std::size_t j = (i + 1) % n;
            if (n < 2)
                break;
            int a = cur[i], b = cur[j];
            if (std::abs(std::abs(a) - std::abs(b)) >= 2) {
                auto v = cur;
                std::swap(v[i], v[j]);
                push(std::move(v));
            }
            if (opt.braid_relation && n >= 3) {
                std::size_t k = (i + 2) % n;
                int c = cur[k];
                if (a == c && std::abs(std::abs(a) - std::abs(b)) == 1 && (a > 0) == (b > 0)) {
                    auto v = cur;
                    v[i] = b;
                    v[j] = a;
                    v[k] = b;
                    push(std::move(v));
                }
            }
        }
    }
    return res;
}

// ---------------------------------------------------------------- genus

struct BraidSurface {
    int crossings = 0;
    int strands = 0;
    int surface_components = 0;
    int closure_components = 0;
    int first_betti = 0;
    std::optional<int> genus; // set when the closure is a knot
};

inline BraidSurface braid_surface(const BraidWord& w)
{
    if (!w.is_positive())
        throw PreconditionError("positive_braid_genus: word has negative letters");
    BraidSurface s;
    s.crossings = static_cast<int>(w.letters.size());
    s.strands = w.strands;
    std::vector<bool> used(w.strands, false);
    for (int l : w.letters)
        used[l] = true;
    s.surface_components = 1;
    for (int i = 1; i < w.strands; ++i)
        if (!used[i])
            ++s.surface_components;
    s.first_betti = s.crossings - s.strands + s.surface_components;
    s.closure_components = static_cast<int>(component_count(closure(w)));
    if (s.closure_components == 1)
        s.genus = s.first_betti / 2;
    return s;
}

// (c - s + 1) / 2 for knots; multi-component closures report b1 instead.
inline int positive_braid_genus(const BraidWord& w)
{
    BraidSurface s = braid_surface(w);
    return s.genus ? *s.genus : s.first_betti;
}

// Positive braids using every generator close to fibered links.
inline bool is_fibered_positive(const BraidWord& w)
{
    if (!w.is_positive())
        return false;
    return braid_surface(w).surface_components == 1;
}

} // namespace tanglecalc
