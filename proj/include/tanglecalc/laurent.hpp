#pragma once

#include <array>
#include <map>
#include <string>

#include "fraction.hpp"

namespace tanglecalc {

// Integer Laurent polynomial in A. No zero coefficients are stored.
class LaurentPoly {
public:
    LaurentPoly() = default;
    LaurentPoly(long c)
    {
        if (c != 0)
            terms_[0] = c;
    }
    static LaurentPoly monomial(const Integer& c, int exp)
    {
        LaurentPoly p;
        if (c != 0)
            p.terms_[exp] = c;
        return p;
    }
    static LaurentPoly A(int exp) { return monomial(1, exp); }
    // loop value -A^2 - A^-2
    static LaurentPoly delta() { return monomial(-1, 2) + monomial(-1, -2); }

    const std::map<int, Integer>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    Integer coeff(int exp) const
    {
        auto it = terms_.find(exp);
        return it == terms_.end() ? Integer(0) : it->second;
    }
    int min_exp() const { return terms_.empty() ? 0 : terms_.begin()->first; }
    int max_exp() const { return terms_.empty() ? 0 : terms_.rbegin()->first; }

    LaurentPoly& operator+=(const LaurentPoly& o)
    {
        for (const auto& [e, c] : o.terms_)
            add_term(e, c);
        return *this;
    }
    LaurentPoly& operator-=(const LaurentPoly& o)
    {
        for (const auto& [e, c] : o.terms_)
            add_term(e, -c);
        return *this;
    }
    friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
    friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
    LaurentPoly operator-() const
    {
        LaurentPoly r;
        for (const auto& [e, c] : terms_)
            r.terms_[e] = -c;
        return r;
    }
    friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b)
    {
        LaurentPoly r;
        for (const auto& [ea, ca] : a.terms_)
            for (const auto& [eb, cb] : b.terms_)
                r.add_term(ea + eb, ca * cb);
        return r;
    }
    LaurentPoly& operator*=(const LaurentPoly& o) { return *this = *this * o; }

    LaurentPoly pow(int k) const
    {
        LaurentPoly r(1), base = *this;
        for (; k > 0; k >>= 1) {
            if (k & 1)
                r *= base;
            base *= base;
        }
        return r;
    }

    // Substitute A -> A^k (k may be negative).
    LaurentPoly scale_exponents(int k) const
    {
        LaurentPoly r;
        for (const auto& [e, c] : terms_)
            r.terms_[e * k] = c;
        return r;
    }

    friend bool operator==(const LaurentPoly&, const LaurentPoly&) = default;

    // "-1*A^-4 + -1*A^4", ascending exponents; "0" for the zero polynomial.
    std::string str(const char* var = "A") const
    {
        if (terms_.empty())
            return "0";
        std::string out;
        for (const auto& [e, c] : terms_) {
            if (!out.empty())
                out += " + ";
            out += c.str() + "*" + var + "^" + std::to_string(e);
        }
        return out;
    }

private:
    void add_term(int e, const Integer& c)
    {
        if (c == 0)
            return;
        Integer& slot = terms_[e];
        slot += c;
        if (slot == 0)
            terms_.erase(e);
    }

    std::map<int, Integer> terms_;
};

// Z[z]/(z^4 + 1): integers adjoined a primitive 8th root of unity.
struct Cyclotomic8 {
    std::array<Integer, 4> c{};

    static Cyclotomic8 zeta_pow(int e)
    {
        Cyclotomic8 r;
        int k = ((e % 8) + 8) % 8;
        if (k < 4)
            r.c[k] = 1;
        else
            r.c[k - 4] = -1;
        return r;
    }
    Cyclotomic8& operator+=(const Cyclotomic8& o)
    {
        for (int i = 0; i < 4; ++i)
            c[i] += o.c[i];
        return *this;
    }
    Cyclotomic8 operator*(const Integer& s) const
    {
        Cyclotomic8 r = *this;
        for (auto& x : r.c)
            x *= s;
        return r;
    }
};

inline Cyclotomic8 evaluate_at_zeta8(const LaurentPoly& p)
{
    Cyclotomic8 r;
    for (const auto& [e, c] : p.terms())
        r += Cyclotomic8::zeta_pow(e) * c;
    return r;
}

} // namespace tanglecalc
