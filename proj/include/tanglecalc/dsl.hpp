#pragma once

#include <cctype>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "error.hpp"
#include "tangle_expr.hpp"

namespace tanglecalc {

// A parsed .tngl file: one expression plus `#! require n >= 2` lines.
struct TangleFile {
    TangleExpr expr;
    std::vector<Constraint> constraints;
};

namespace detail {

class Parser {
public:
    explicit Parser(const std::string& text) : s_(text) {}

    TangleExpr parse_all()
    {
        TangleExpr e = expr();
        skip();
        if (pos_ != s_.size())
            fail("unexpected '" + std::string(1, s_[pos_]) + "'", pos_, pos_ + 1);
        if (slots_ > 1)
            fail("more than one slot", second_slot_, second_slot_ + 4);
        return e;
    }

    // Affine integer on its own, used by the braid syntax too.
    Affine affine_only()
    {
        Affine a = affine();
        skip();
        if (pos_ != s_.size())
            fail("unexpected '" + std::string(1, s_[pos_]) + "'", pos_, pos_ + 1);
        return a;
    }

    std::size_t pos() const { return pos_; }

private:
    [[noreturn]] void fail(const std::string& what, std::size_t a, std::size_t b) const
    {
        b = std::min(b, s_.size());
        a = std::min(a, b);
        throw ParseError(what, {a, b});
    }

    void skip()
    {
        while (pos_ < s_.size()) {
            if (std::isspace(static_cast<unsigned char>(s_[pos_])))
                ++pos_;
            else if (s_[pos_] == '#') {
                while (pos_ < s_.size() && s_[pos_] != '\n')
                    ++pos_;
            } else
                break;
        }
    }

    bool peek(char c)
    {
        skip();
        return pos_ < s_.size() && s_[pos_] == c;
    }

    void expect(char c)
    {
        skip();
        if (pos_ >= s_.size() || s_[pos_] != c)
            fail(std::string("expected '") + c + "'", pos_, pos_ + 1);
        ++pos_;
    }

    bool keyword(const char* kw)
    {
        skip();
        std::size_t n = std::char_traits<char>::length(kw);
        if (s_.compare(pos_, n, kw) != 0)
            return false;
        // identifiers must not continue past the keyword
        if (pos_ + n < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_ + n])) || s_[pos_ + n] == '_'))
            return false;
        pos_ += n;
        return true;
    }

    TangleExpr expr()
    {
        TangleExpr left = term();
        while (peek('+')) {
            ++pos_;
            left = TangleExpr::sum(left, term());
        }
        return left;
    }

    TangleExpr term()
    {
        skip();
        std::size_t start = pos_;
        if (keyword("slot")) {
            if (++slots_ == 2)
                second_slot_ = start;
            return TangleExpr::slot();
        }
        if (keyword("net")) {
            expect('(');
            return network();
        }
        if (keyword("r")) {
            expect('(');
            TangleExpr t = frac();
            expect(')');
            return t;
        }
        if (keyword("vt") || keyword("ht")) {
            bool vertical = s_[start] == 'v';
            expect('(');
            Affine k = affine();
            expect(',');
            TangleExpr inner = expr();
            expect(')');
            return vertical ? TangleExpr::vertical(k, inner) : TangleExpr::horizontal(k, inner);
        }
        for (auto [kw, kind] : {std::pair{"rot", NodeKind::Rotate90}, std::pair{"N", NodeKind::NumeratorClosure},
                                std::pair{"D", NodeKind::DenominatorClosure}}) {
            if (keyword(kw)) {
                expect('(');
                TangleExpr inner = expr();
                expect(')');
                return TangleExpr::unary(kind, inner);
            }
        }
        if (peek('(')) {
            ++pos_;
            TangleExpr inner = expr();
            expect(')');
            return inner;
        }
        if (pos_ >= s_.size())
            fail("unexpected end of input", pos_, pos_);
        std::size_t e = pos_;
        while (e < s_.size() && std::isalnum(static_cast<unsigned char>(s_[e])))
            ++e;
        fail("unknown term '" + s_.substr(pos_, std::max<std::size_t>(e - pos_, 1)) + "'", pos_,
             std::max(e, pos_ + 1));
    }

    TangleExpr frac()
    {
        skip();
        std::size_t start = pos_;
        Affine p = affine();
        Affine q(1);
        if (peek('/')) {
            ++pos_;
            q = affine();
        }
        if (q.is_constant() && q.constant == 0 && !(p.is_constant() && p.constant == 1))
            fail("zero denominator (only 1/0 is allowed)", start, pos_);
        if (q.is_constant() && p.is_constant() && q.constant < 0)
            fail("negative denominator; put the sign on the numerator", start, pos_);
        if (p.is_constant() && q.is_constant()) {
            if (p.constant == 0 && q.constant != 1)
                fail("zero numerator needs denominator 1", start, pos_);
            return TangleExpr::rational(Fraction(p.constant, q.constant));
        }
        return TangleExpr::rational(p, q);
    }

    // aff := ['-'] aterm {('+'|'-') aterm}
    Affine affine()
    {
        skip();
        std::size_t start = pos_;
        Affine acc;
        bool first = true;
        while (true) {
            skip();
            int sign = 1;
            if (pos_ < s_.size() && (s_[pos_] == '-' || s_[pos_] == '+')) {
                sign = s_[pos_] == '-' ? -1 : 1;
                ++pos_;
            } else if (!first) {
                break;
            }
            Affine t = aterm();
            if (sign < 0)
                t = -t;
            if (!acc.is_constant() && !t.is_constant() && acc.var != t.var)
                fail("affine expressions may use one symbol", start, pos_);
            std::string var = acc.is_constant() ? t.var : acc.var;
            acc = Affine(acc.coef + t.coef, var, acc.constant + t.constant);
            first = false;
            skip();
            if (pos_ >= s_.size() || (s_[pos_] != '+' && s_[pos_] != '-'))
                break;
            // '+' between tangle terms is handled by expr(); only continue when an
            // integer-looking term follows
            std::size_t save = pos_;
            ++pos_;
            skip();
            bool more = pos_ < s_.size()
                && (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '(' || is_symbol_start());
            pos_ = save;
            if (!more)
                break;
        }
        return acc;
    }

    bool is_symbol_start() const
    {
        if (pos_ >= s_.size() || !std::isalpha(static_cast<unsigned char>(s_[pos_])))
            return false;
        std::size_t e = pos_;
        while (e < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[e])) || s_[e] == '_'))
            ++e;
        std::size_t f = e;
        while (f < s_.size() && std::isspace(static_cast<unsigned char>(s_[f])))
            ++f;
        return !(f < s_.size() && s_[f] == '('); // a following '(' means a tangle term
    }

    // aterm := int ['*' ident] | ident | '(' aff ')'
    Affine aterm()
    {
        skip();
        std::size_t start = pos_;
        if (peek('(')) {
            ++pos_;
            Affine a = affine();
            expect(')');
            return a;
        }
        if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
            std::size_t e = pos_;
            while (e < s_.size() && std::isdigit(static_cast<unsigned char>(s_[e])))
                ++e;
            if (e - pos_ > 15)
                fail("integer too large", pos_, e);
            std::int64_t v = std::stoll(s_.substr(pos_, e - pos_));
            pos_ = e;
            if (peek('*')) {
                ++pos_;
                skip();
                std::string id = ident();
                return Affine(v, id, 0);
            }
            return Affine(v);
        }
        if (is_symbol_start())
            return Affine(1, ident(), 0);
        fail("expected an integer", start, start + 1);
    }

    std::string ident()
    {
        std::size_t start = pos_;
        if (pos_ >= s_.size() || !std::isalpha(static_cast<unsigned char>(s_[pos_])))
            fail("expected a symbol", pos_, pos_ + 1);
        while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
            ++pos_;
        return s_.substr(start, pos_ - start);
    }

    int label()
    {
        skip();
        std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
            ++pos_;
        if (start == pos_ || pos_ - start > 9)
            fail("expected an arc label", start, start + 1);
        return std::stoi(s_.substr(start, pos_ - start));
    }

    std::array<int, 4> labels()
    {
        std::array<int, 4> l{};
        for (int i = 0; i < 4; ++i) {
            if (i)
                expect(',');
            l[i] = label();
        }
        return l;
    }

    // net( box(expr; a,b,c,d) , ... [, B(a,b,c,d)] )
    TangleExpr network()
    {
        std::size_t start = pos_;
        std::vector<TangleExpr> children;
        NetworkWiring w;
        do {
            if (keyword("box")) {
                expect('(');
                children.push_back(expr());
                expect(';');
                w.boxes.push_back({children.size() - 1, labels()});
                expect(')');
            } else if (keyword("B")) {
                std::size_t b = pos_;
                if (w.boundary)
                    fail("second boundary in network", b, b + 1);
                expect('(');
                w.boundary = labels();
                expect(')');
            } else {
                skip();
                fail("expected box(...) or B(...)", pos_, pos_ + 1);
            }
        } while (peek(',') && (++pos_, true));
        expect(')');
        std::map<int, int> uses;
        for (const auto& b : w.boxes)
            for (int l : b.labels)
                ++uses[l];
        if (w.boundary)
            for (int l : *w.boundary)
                ++uses[l];
        for (auto [l, n] : uses)
            if (n != 2)
                fail("network arc " + std::to_string(l) + " used " + std::to_string(n) + " times", start, pos_);
        if (w.boxes.empty())
            fail("empty network", start, pos_);
        return TangleExpr::network(std::move(children), std::move(w));
    }

    const std::string& s_;
    std::size_t pos_ = 0;
    int slots_ = 0;
    std::size_t second_slot_ = 0;
};

} // namespace detail

inline TangleExpr parse(const std::string& text) { return detail::Parser(text).parse_all(); }

inline Affine parse_affine(const std::string& text) { return detail::Parser(text).affine_only(); }

// Pragmas come from lines starting with "#!"; plain '#' lines are comments.
inline TangleFile parse_file_text(const std::string& text)
{
    TangleFile f;
    std::istringstream in(text);
    std::string line;
    std::size_t offset = 0;
    while (std::getline(in, line)) {
        std::size_t here = offset;
        offset += line.size() + 1;
        std::size_t p = line.find_first_not_of(" \t");
        if (p == std::string::npos || line.compare(p, 2, "#!") != 0)
            continue;
        std::istringstream words(line.substr(p + 2));
        std::string kw, var, op;
        std::int64_t min = 0;
        if (!(words >> kw >> var >> op >> min) || kw != "require" || op != ">=")
            throw ParseError("pragma must read '#! require <symbol> >= <integer>'", {here, here + line.size()});
        f.constraints.push_back({var, min});
    }
    f.expr = parse(text);
    return f;
}

inline std::string read_text_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline TangleFile parse_file(const std::string& path) { return parse_file_text(read_text_file(path)); }

namespace detail {

inline void format_into(const TangleExpr& t, std::string& out)
{
    const auto& n = t.node();
    switch (n.kind) {
    case NodeKind::Rational:
    {
        bool unit_den = n.q.is_constant() && n.q.constant == 1;
        out += "r(" + (unit_den || n.p.is_constant() ? n.p.str() : "(" + n.p.str() + ")");
        if (!unit_den)
            out += "/" + (n.q.is_constant() ? n.q.str() : "(" + n.q.str() + ")");
    }
        out += ")";
        return;
    case NodeKind::VerticalTwists:
    case NodeKind::HorizontalTwists:
        out += n.kind == NodeKind::VerticalTwists ? "vt(" : "ht(";
        out += n.p.str() + ", ";
        format_into(n.children[0], out);
        out += ")";
        return;
    case NodeKind::Sum:
        format_into(n.children[0], out);
        out += " + ";
        // '+' is left-associative: a right operand that is itself a sum needs parentheses
        if (n.children[1].kind() == NodeKind::Sum) {
            out += "(";
            format_into(n.children[1], out);
            out += ")";
        } else {
            format_into(n.children[1], out);
        }
        return;
    case NodeKind::Rotate90:
    case NodeKind::NumeratorClosure:
    case NodeKind::DenominatorClosure:
        out += n.kind == NodeKind::Rotate90 ? "rot(" : n.kind == NodeKind::NumeratorClosure ? "N(" : "D(";
        format_into(n.children[0], out);
        out += ")";
        return;
    case NodeKind::Slot:
        out += "slot";
        return;
    case NodeKind::Network: {
        out += "net(";
        bool first = true;
        auto lab = [](const std::array<int, 4>& l) {
            return std::to_string(l[0]) + "," + std::to_string(l[1]) + "," + std::to_string(l[2]) + ","
                + std::to_string(l[3]);
        };
        for (const auto& b : n.wiring.boxes) {
            out += first ? "box(" : ", box(";
            first = false;
            format_into(n.children[b.child], out);
            out += "; " + lab(b.labels) + ")";
        }
        if (n.wiring.boundary)
            out += ", B(" + lab(*n.wiring.boundary) + ")";
        out += ")";
        return;
    }
    }
}

} // namespace detail

inline std::string format(const TangleExpr& t)
{
    std::string out;
    detail::format_into(t, out);
    return out;
}

} // namespace tanglecalc
