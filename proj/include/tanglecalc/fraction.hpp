#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <numeric>
#include <ostream>
#include <string>

#include "error.hpp"

namespace tanglecalc {

using Integer = boost::multiprecision::cpp_int;

// Slope p/q with q >= 0, gcd 1, sign on the numerator. 1/0 is the only
// fraction with a zero denominator.
class Fraction {
public:
    Fraction() = default;
    Fraction(std::int64_t p) : num_(p), den_(1) {}
    Fraction(std::int64_t p, std::int64_t q)
    {
        if (p == 0 && q == 0)
            throw PreconditionError("fraction 0/0");
        if (q < 0) {
            p = -p;
            q = -q;
        }
        if (q == 0) {
            num_ = 1;
            den_ = 0;
            return;
        }
        std::int64_t g = std::gcd(p, q);
        num_ = p / g;
        den_ = q / g;
    }

    static Fraction infinity() { return Fraction(1, 0); }

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }
    bool is_infinity() const { return den_ == 0; }
    bool is_integer() const { return den_ == 1; }

    Fraction operator-() const { return is_infinity() ? *this : Fraction(-num_, den_); }

    friend bool operator==(const Fraction&, const Fraction&) = default;

    std::string str() const
    {
        if (den_ == 1)
            return std::to_string(num_);
        return std::to_string(num_) + "/" + std::to_string(den_);
    }

private:
    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
};

inline std::ostream& operator<<(std::ostream& os, const Fraction& f) { return os << f.str(); }

} // namespace tanglecalc
