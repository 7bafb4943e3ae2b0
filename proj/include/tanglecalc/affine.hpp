#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "error.hpp"

namespace tanglecalc {

using Bindings = std::map<std::string, std::int64_t>;

// coef*var + constant. A plain integer has coef == 0 and an empty var.
struct Affine {
    std::int64_t coef = 0;
    std::int64_t constant = 0;
    std::string var;

    Affine() = default;
    Affine(std::int64_t c) : constant(c) {}
    Affine(std::int64_t a, std::string v, std::int64_t c) : coef(a), constant(c), var(std::move(v))
    {
        if (coef == 0)
            var.clear();
    }

    bool is_constant() const { return coef == 0; }

    std::int64_t eval(const Bindings& b) const
    {
        if (coef == 0)
            return constant;
        auto it = b.find(var);
        if (it == b.end())
            throw PreconditionError("unbound symbol '" + var + "'");
        return coef * it->second + constant;
    }

    Affine operator-() const { return Affine(-coef, var, -constant); }

    friend bool operator==(const Affine&, const Affine&) = default;

    // n, -n, n+1, -(n+1), 2*n-3, 7
    std::string str() const
    {
        if (coef == 0)
            return std::to_string(constant);
        if (coef < 0 && constant < 0)
            return "-(" + Affine(-coef, var, -constant).str() + ")";
        std::string s = coef == 1 ? var : coef == -1 ? "-" + var : std::to_string(coef) + "*" + var;
        if (constant > 0)
            s += "+" + std::to_string(constant);
        else if (constant < 0)
            s += std::to_string(constant);
        return s;
    }
};

} // namespace tanglecalc
