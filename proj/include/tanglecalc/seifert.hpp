#pragma once

#include <array>
#include <string>
#include <vector>

#include "fraction.hpp"
#include "smith.hpp"

namespace tanglecalc {

// Seifert fibered space over the disk with exceptional fibers beta/alpha.
struct SeifertPiece {
    std::array<Fraction, 2> fibers{Fraction(0), Fraction(0)};

    SeifertPiece() = default;
    SeifertPiece(Fraction a, Fraction b) : fibers{a, b}
    {
        for (const auto& f : fibers)
            if (f.den() == 0)
                throw PreconditionError("Seifert fiber with alpha = 0");
    }
    friend bool operator==(const SeifertPiece&, const SeifertPiece&) = default;
    std::string str() const { return "D2(" + fibers[0].str() + "," + fibers[1].str() + ")"; }
};

// Generators x1, x2, h; rows alpha_i x_i + beta_i h.
struct PiecePresentation {
    Matrix relations;                       // 2 x 3
    std::array<Integer, 3> fiber{0, 0, 1};   // h
    std::array<Integer, 3> section{1, 1, 0}; // x1 + x2
};

inline PiecePresentation piece_presentation(const SeifertPiece& p)
{
    PiecePresentation out;
    for (int i = 0; i < 2; ++i) {
        const Fraction& f = p.fibers[i];
        if (f.den() == 0)
            throw PreconditionError("Seifert fiber with alpha = 0");
        std::vector<Integer> row(3, 0);
        row[i] = f.den();
        row[2] = f.num();
        out.relations.push_back(std::move(row));
    }
    return out;
}

// Column j of g is the image of basis vector j of the first boundary torus
// (0 = fiber, 1 = section) in the (fiber, section) basis of the second.
struct TorusGluing {
    std::array<std::array<std::int64_t, 2>, 2> m{{{1, 0}, {0, 1}}};

    std::int64_t det() const { return m[0][0] * m[1][1] - m[0][1] * m[1][0]; }
    TorusGluing inverse() const
    {
        std::int64_t d = det();
        if (d != 1 && d != -1)
            throw PreconditionError("gluing matrix is not unimodular");
        TorusGluing r;
        r.m = {{{d * m[1][1], -d * m[0][1]}, {-d * m[1][0], d * m[0][0]}}};
        return r;
    }
    // Fiber of the first piece meets the fiber of the second once.
    bool fibers_meet_once() const { return m[1][0] == 1 || m[1][0] == -1; }
    friend bool operator==(const TorusGluing&, const TorusGluing&) = default;
    friend bool operator<(const TorusGluing& a, const TorusGluing& b) { return a.m < b.m; }
    std::string str() const
    {
        return "[[" + std::to_string(m[0][0]) + "," + std::to_string(m[0][1]) + "],[" + std::to_string(m[1][0]) + ","
            + std::to_string(m[1][1]) + "]]";
    }
};

// 6 generators (x1, x2, h, y1, y2, k) and 6 relations.
inline Matrix glued_presentation(const SeifertPiece& p1, const SeifertPiece& p2, const TorusGluing& g)
{
    if (g.det() != 1 && g.det() != -1)
        throw PreconditionError("gluing matrix is not unimodular");
    auto a = piece_presentation(p1), b = piece_presentation(p2);
    Matrix rel;
    for (const auto& r : a.relations)
        rel.push_back({r[0], r[1], r[2], 0, 0, 0});
    for (const auto& r : b.relations)
        rel.push_back({0, 0, 0, r[0], r[1], r[2]});
    for (int j = 0; j < 2; ++j) {
        const auto& src = j == 0 ? a.fiber : a.section;
        std::vector<Integer> row(6, 0);
        for (int i = 0; i < 3; ++i)
            row[i] = src[i];
        for (int i = 0; i < 3; ++i)
            row[3 + i] -= g.m[0][j] * b.fiber[i] + g.m[1][j] * b.section[i];
        rel.push_back(std::move(row));
    }
    return rel;
}

inline AbelianGroup glue_h1(const SeifertPiece& p1, const SeifertPiece& p2, const TorusGluing& g)
{
    return smith_normal_form(glued_presentation(p1, p2, g)).group;
}

// All gluings with entries in [-bound, bound], fibers meeting once, and
// glued H1 equal to target. Sorted by matrix entries.
inline std::vector<TorusGluing> find_gluings(const SeifertPiece& p1, const SeifertPiece& p2,
                                             const AbelianGroup& target, int bound = 5)
{
    if (bound < 1)
        throw PreconditionError("find_gluings: bound must be at least 1");
    std::vector<TorusGluing> out;
    for (std::int64_t a = -bound; a <= bound; ++a)
        for (std::int64_t b = -bound; b <= bound; ++b)
            for (std::int64_t c : {-1, 1})
                for (std::int64_t d = -bound; d <= bound; ++d) {
                    TorusGluing g;
                    g.m = {{{a, b}, {c, d}}};
                    if (g.det() != 1 && g.det() != -1)
                        continue;
                    if (glue_h1(p1, p2, g) == target)
                        out.push_back(g);
                }
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace tanglecalc
