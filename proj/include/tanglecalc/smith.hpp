#pragma once

#include <string>
#include <utility>
#include <vector>

#include "fraction.hpp"

namespace tanglecalc {

using Matrix = std::vector<std::vector<Integer>>;

inline Matrix identity_matrix(std::size_t n)
{
    Matrix m(n, std::vector<Integer>(n, 0));
    for (std::size_t i = 0; i < n; ++i)
        m[i][i] = 1;
    return m;
}

inline Matrix multiply(const Matrix& a, const Matrix& b)
{
    std::size_t r = a.size(), k = b.size(), c = b.empty() ? 0 : b[0].size();
    Matrix out(r, std::vector<Integer>(c, 0));
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < k; ++j) {
            if (a[i][j] == 0)
                continue;
            for (std::size_t l = 0; l < c; ++l)
                out[i][l] += a[i][j] * b[j][l];
        }
    return out;
}

// Exact determinant by fraction-free (Bareiss) elimination.
inline Integer determinant(Matrix a)
{
    std::size_t n = a.size();
    if (n == 0)
        return 1;
    Integer prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a[k][k] == 0) {
            std::size_t p = k + 1;
            while (p < n && a[p][k] == 0)
                ++p;
            if (p == n)
                return 0;
            std::swap(a[k], a[p]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j)
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
        prev = a[k][k];
    }
    return sign * a[n - 1][n - 1];
}

// Finitely generated abelian group Z^rank + Z/d1 + ... with d1 | d2 | ...
struct AbelianGroup {
    std::size_t rank = 0;
    std::vector<Integer> torsion;

    bool is_trivial() const { return rank == 0 && torsion.empty(); }
    bool is_cyclic() const { return rank + torsion.size() <= 1; }
    // Order of the group; 0 stands for infinite.
    Integer order() const
    {
        if (rank > 0)
            return 0;
        Integer o = 1;
        for (const auto& d : torsion)
            o *= d;
        return o;
    }

    std::string str() const
    {
        if (is_trivial())
            return "0";
        std::string out;
        if (rank == 1)
            out = "Z";
        else if (rank > 1)
            out = "Z^" + std::to_string(rank);
        for (const auto& d : torsion)
            out += (out.empty() ? "" : " ⊕ ") + std::string("Z/") + d.str();
        return out;
    }

    friend bool operator==(const AbelianGroup&, const AbelianGroup&) = default;

    static AbelianGroup cyclic(const Integer& d)
    {
        AbelianGroup g;
        if (d == 0)
            g.rank = 1;
        else if (abs(d) != 1)
            g.torsion.push_back(abs(d));
        return g;
    }
};

struct SmithResult {
    Matrix diagonal; // U * m * V
    Matrix U;
    Matrix V;
    std::vector<Integer> invariants; // nonzero diagonal entries, positive, dividing chain
    AbelianGroup group;               // cokernel of the row space: Z^cols / rows
};

namespace detail {

inline void row_add(Matrix& m, std::size_t dst, std::size_t src, const Integer& q)
{
    if (q == 0)
        return;
    for (std::size_t j = 0; j < m[dst].size(); ++j)
        m[dst][j] += q * m[src][j];
}

inline void col_add(Matrix& m, std::size_t dst, std::size_t src, const Integer& q)
{
    if (q == 0)
        return;
    for (auto& row : m)
        row[dst] += q * row[src];
}

inline void col_swap(Matrix& m, std::size_t a, std::size_t b)
{
    for (auto& row : m)
        std::swap(row[a], row[b]);
}

inline Integer floor_div(const Integer& a, const Integer& b)
{
    Integer q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0)))
        --q;
    return q;
}

} // namespace detail

// Smith normal form with unimodular certificates; pivots are chosen with
// minimal absolute value.
inline SmithResult smith_normal_form(const Matrix& m)
{
    std::size_t rows = m.size();
    std::size_t cols = rows ? m[0].size() : 0;
    SmithResult r;
    r.diagonal = m;
    r.U = identity_matrix(rows);
    r.V = identity_matrix(cols);
    Matrix& D = r.diagonal;

    std::size_t t = 0;
    for (; t < rows && t < cols; ++t) {
        while (true) {
            // smallest nonzero entry of the trailing block
            std::size_t pi = rows, pj = cols;
            for (std::size_t i = t; i < rows; ++i)
                for (std::size_t j = t; j < cols; ++j)
                    if (D[i][j] != 0 && (pi == rows || abs(D[i][j]) < abs(D[pi][pj]))) {
                        pi = i;
                        pj = j;
                    }
            if (pi == rows)
                goto done;
            if (pi != t) {
                std::swap(D[pi], D[t]);
                std::swap(r.U[pi], r.U[t]);
            }
            if (pj != t) {
                detail::col_swap(D, pj, t);
                detail::col_swap(r.V, pj, t);
            }
            bool clean = true;
            for (std::size_t i = t + 1; i < rows; ++i) {
                if (D[i][t] == 0)
                    continue;
                Integer q = detail::floor_div(D[i][t], D[t][t]);
                detail::row_add(D, i, t, -q);
                detail::row_add(r.U, i, t, -q);
                if (D[i][t] != 0)
                    clean = false;
            }
            for (std::size_t j = t + 1; j < cols; ++j) {
                if (D[t][j] == 0)
                    continue;
                Integer q = detail::floor_div(D[t][j], D[t][t]);
                detail::col_add(D, j, t, -q);
                detail::col_add(r.V, j, t, -q);
                if (D[t][j] != 0)
                    clean = false;
            }
            if (!clean)
                continue;
            // divisibility: fold an offending row into row t and retry
            bool divides = true;
            for (std::size_t i = t + 1; i < rows && divides; ++i)
                for (std::size_t j = t + 1; j < cols; ++j)
                    if (D[i][j] % D[t][t] != 0) {
                        detail::row_add(D, t, i, 1);
                        detail::row_add(r.U, t, i, 1);
                        divides = false;
                        break;
                    }
            if (divides)
                break;
        }
        if (D[t][t] < 0) {
            for (auto& x : D[t])
                x = -x;
            for (auto& x : r.U[t])
                x = -x;
        }
    }
done:
    for (std::size_t i = 0; i < rows && i < cols; ++i)
        if (D[i][i] != 0)
            r.invariants.push_back(D[i][i]);
    r.group.rank = cols - r.invariants.size();
    for (const auto& d : r.invariants)
        if (d != 1)
            r.group.torsion.push_back(d);
    return r;
}

// Checks U*m*V == diagonal and |det U| = |det V| = 1.
inline bool verify_certificate(const Matrix& m, const SmithResult& r)
{
    if (multiply(multiply(r.U, m), r.V) != r.diagonal)
        return false;
    if (abs(determinant(r.U)) != 1 || abs(determinant(r.V)) != 1)
        return false;
    for (std::size_t i = 0; i < r.diagonal.size(); ++i)
        for (std::size_t j = 0; j < r.diagonal[i].size(); ++j)
            if (i != j && r.diagonal[i][j] != 0)
                return false;
    for (std::size_t i = 0; i + 1 < r.invariants.size(); ++i)
        if (r.invariants[i + 1] % r.invariants[i] != 0)
            return false;
    return true;
}

} // namespace tanglecalc
