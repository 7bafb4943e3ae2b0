#pragma once

#include <atomic>
#include <functional>
#include <set>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "braid.hpp"
#include "cache.hpp"
#include "dsl.hpp"
#include "invariants.hpp"
#include "seifert.hpp"

namespace tanglecalc {

// Same text as fixtures/t_n.tngl and fixtures/k_n.braid; tests keep them in sync.
inline constexpr const char* kTangleTemplate = R"(# T_n as a planar network of twist boxes around the filling disk.
# Box endpoints are listed NW,NE,SE,SW; equal labels are joined.
#! require n >= 2
net(box(ht(n, r(1)); 3,1,5,6),
    box(ht(-n, r(0)); 2,3,9,7),
    box(r(-1); 1,2,12,10),
    box(slot + r(1); 6,4,8,9),
    box(r(-2); 4,5,10,11),
    box(r(-2); 7,8,11,12))
)";

inline constexpr const char* kKnotBraid = R"(# K_n as a closed braid on n+1 strands. Braces mark the full-twist boxes;
# dropping them gives the diagram before the twists are applied.
#! require n >= 2
braid(n+1; -[n..1]^2 {[1..n]^(3*n+3)} -[1..n] {[n..1]^(n+1)} {[1..n-1]^n})
)";

struct BandFraming {
    std::int64_t base = 0;
    std::vector<std::pair<std::int64_t, std::int64_t>> full_twist_contributions; // (multiplier, count)

    std::int64_t total() const
    {
        std::int64_t t = base;
        for (auto [m, c] : full_twist_contributions)
            t += m * c;
        return t;
    }
};

inline void require_family_n(std::int64_t n)
{
    if (n < 2)
        throw PreconditionError("constraint n >= 2 violated by n = " + std::to_string(n));
}

inline std::int64_t base_slope(std::int64_t n) { return 5 * n * n + 5 * n + 1; }

inline std::array<std::int64_t, 3> predicted_slopes(std::int64_t n)
{
    require_family_n(n);
    std::int64_t m = base_slope(n);
    return {m, m + 1, m + 2};
}

inline std::int64_t predicted_genus(std::int64_t n)
{
    require_family_n(n);
    return (5 * n * n - n) / 2;
}

inline BandFraming framing_total(std::int64_t n)
{
    require_family_n(n);
    return BandFraming{-3 * n - 3, {{4, (n + 1) * (n + 1)}, {1, n * n}}};
}

struct Decomposition {
    Fraction slope;
    SeifertPiece first, second;
};

// The three toroidal fillings and their Seifert pieces.
inline std::vector<Decomposition> decompositions(std::int64_t n)
{
    require_family_n(n);
    auto F = [](std::int64_t p, std::int64_t q) { return Fraction(p, q); };
    return {
        {F(0, 1), {F(1, 2), F(1, 3)}, {F(1, n), F(-1, n + 1)}},
        {F(-1, 1), {F(1, 2), F(1, n)}, {F(-1, 2), F(-1, n + 1)}},
        {F(-2, 1), {F(-2, 3), F(1, n + 1)}, {F(-2, 3), F(-1, n)}},
    };
}

struct FamilyRecord {
    std::int64_t n = 0;
    TangleExpr tangle; // concrete, with the filling slot
    std::vector<std::pair<Fraction, TangleExpr>> fillings; // 1/0, 0, -1, -2
    std::vector<Decomposition> decompositions;
    BraidWord braid;          // with the twist boxes
    BraidWord braid_pre_twist; // without them
    std::array<std::int64_t, 3> slopes{};
    std::int64_t genus = 0;
    BandFraming framing;
};

inline const TangleFile& tangle_template()
{
    static const TangleFile f = parse_file_text(kTangleTemplate);
    return f;
}

inline const BraidTemplate& braid_template()
{
    static const BraidTemplate t = parse_braid_template(kKnotBraid);
    return t;
}

inline std::vector<Fraction> family_slopes() { return {Fraction::infinity(), Fraction(0), Fraction(-1), Fraction(-2)}; }

inline FamilyRecord build_family(std::int64_t n)
{
    require_family_n(n);
    const auto& tf = tangle_template();
    FamilyRecord r;
    r.n = n;
    Bindings b{{"n", n}};
    r.tangle = instantiate(tf.expr, b, tf.constraints);
    for (const auto& s : family_slopes())
        r.fillings.emplace_back(s, substitute_slot(r.tangle, rational_tangle(s)));
    r.decompositions = decompositions(n);
    r.braid = instantiate_braid(braid_template(), b, true);
    r.braid_pre_twist = instantiate_braid(braid_template(), b, false);
    r.slopes = predicted_slopes(n);
    r.genus = predicted_genus(n);
    r.framing = framing_total(n);
    return r;
}

// ---------------------------------------------------------------- report

struct CheckResult {
    std::string name;
    std::string expected;
    std::string computed;
    bool pass = false;
    std::string error; // engine error text, if any
};

struct FamilyReport {
    std::int64_t n = 0;
    std::vector<CheckResult> checks;
    bool pass() const
    {
        return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
    }
};

struct UniformGluing {
    std::string name;
    Fraction slope;
    std::vector<TorusGluing> gluings; // common to every n in the range
};

struct VerificationReport {
    std::vector<FamilyReport> per_n;
    std::vector<UniformGluing> uniform;
    bool pass() const
    {
        for (const auto& r : per_n)
            if (!r.pass())
                return false;
        for (const auto& u : uniform)
            if (u.gluings.empty())
                return false;
        return true;
    }
};

struct VerifyOptions {
    std::size_t budget = 1000000;
    int glue_bound = 5;
    unsigned jobs = 1;
    InvariantCache* cache = nullptr;
};

namespace detail {

inline std::string int_str(std::int64_t v) { return std::to_string(v); }

// Runs f and turns engine errors into a failed check.
inline void run_check(FamilyReport& rep, const std::string& name, const std::string& expected,
                      const std::function<std::pair<std::string, bool>()>& f)
{
    CheckResult c{name, expected, "", false, ""};
    try {
        auto [computed, ok] = f();
        c.computed = computed;
        c.pass = ok;
    } catch (const std::exception& e) {
        c.computed = "error";
        c.error = e.what();
    }
    rep.checks.push_back(std::move(c));
}

inline std::string gluing_name(std::size_t k)
{
    return "gluing[" + Fraction(-static_cast<std::int64_t>(k)).str() + "]";
}

inline FamilyReport verify_one(std::int64_t n, const VerifyOptions& opt,
                               std::vector<std::vector<TorusGluing>>* gluings_out)
{
    FamilyReport rep;
    rep.n = n;
    FamilyRecord fam;
    try {
        fam = build_family(n);
    } catch (const std::exception& e) {
        rep.checks.push_back({"constraint", "n >= 2", "n = " + std::to_string(n), false, e.what()});
        return rep;
    }
    std::int64_t m = fam.slopes[0];
    std::vector<std::optional<CachedInvariants>> inv(fam.fillings.size());
    for (std::size_t i = 0; i < fam.fillings.size(); ++i) {
        const auto& [slope, expr] = fam.fillings[i];
        std::string tag = slope.str();
        bool unknot = slope.is_infinity();
        std::int64_t want = unknot ? 1 : m + (-slope.num());
        std::string group = unknot ? "0" : AbelianGroup::cyclic(want).str();
        std::string prefix = unknot ? "unknot" : "slope";
        run_check(rep, prefix + ".det[" + tag + "]", int_str(want), [&] {
            inv[i] = invariants_of(to_planar_diagram(expr), opt.cache);
            return std::pair{inv[i]->determinant.str(), inv[i]->determinant == want && !inv[i]->split};
        });
        run_check(rep, prefix + ".h1[" + tag + "]", group, [&] {
            if (!inv[i])
                inv[i] = invariants_of(to_planar_diagram(expr), opt.cache);
            const auto& g = inv[i]->homology;
            return std::pair{g.str(), g == AbelianGroup::cyclic(want)};
        });
        run_check(rep, "oracle.jones_det[" + tag + "]", int_str(want), [&] {
            Integer dj = det_via_bracket(bracket(expr));
            bool agree = inv[i] && dj == inv[i]->determinant;
            return std::pair{dj.str(), agree && dj == want};
        });
    }
    run_check(rep, "unknot.jones[1/0]", "1", [&] {
        PlanarDiagram d = to_planar_diagram(fam.fillings[0].second).with_default_orientation();
        LaurentPoly v = jones(d);
        bool one = v == LaurentPoly(1);
        return std::pair{one ? std::string("1") : jones_t_string(v), one};
    });

    for (std::size_t k = 0; k < fam.decompositions.size(); ++k) {
        const auto& dec = fam.decompositions[k];
        std::int64_t want = m + static_cast<std::int64_t>(k);
        run_check(rep, gluing_name(k), AbelianGroup::cyclic(want).str(), [&] {
            auto gs = find_gluings(dec.first, dec.second, AbelianGroup::cyclic(want), opt.glue_bound);
            if (gluings_out)
                (*gluings_out)[k] = gs;
            if (gs.empty())
                return std::pair{std::string("no gluing within bound ") + std::to_string(opt.glue_bound), false};
            AbelianGroup h = glue_h1(dec.first, dec.second, gs.front());
            bool match = inv[k + 1] && h.order() == inv[k + 1]->determinant;
            return std::pair{h.str() + " via " + gs.front().str() + " (" + std::to_string(gs.size()) + " found)",
                             match};
        });
    }

    run_check(rep, "braid.writhe_pre_twist", int_str(-3 * n),
              [&] {
                  int w = writhe(closure(fam.braid_pre_twist));
                  return std::pair{int_str(w), w == -3 * n};
              });
    std::optional<BraidWord> witness;
    run_check(rep, "braid.positive", "positive witness", [&] {
        auto r = cancel_to_positive(fam.braid, {opt.budget, false});
        witness = r.witness;
        if (!r.witness)
            return std::pair{"undetermined after " + std::to_string(r.states) + " states", false};
        return std::pair{"length " + std::to_string(r.witness->letters.size()) + ", " + std::to_string(r.states)
                             + " states",
                         true};
    });
    run_check(rep, "braid.genus", int_str(fam.genus), [&] {
        if (!witness)
            return std::pair{std::string("no witness"), false};
        BraidSurface s = braid_surface(*witness);
        int circles = seifert_circles(closure(*witness));
        bool ok = s.genus && *s.genus == fam.genus && circles == witness->strands && is_fibered_positive(*witness);
        return std::pair{s.genus ? int_str(*s.genus) : "b1=" + int_str(s.first_betti), ok};
    });
    run_check(rep, "braid.knot_det_odd", "1 component, odd", [&] {
        PlanarDiagram d = closure(fam.braid);
        auto comps = component_count(d);
        auto v = invariants_of(d, opt.cache);
        bool ok = comps == 1 && v.determinant % 2 == 1;
        return std::pair{std::to_string(comps) + " component(s), det " + v.determinant.str(), ok};
    });
    run_check(rep, "framing.total", int_str(m), [&] {
        auto t = fam.framing.total();
        return std::pair{int_str(t), t == m};
    });
    return rep;
}

} // namespace detail

// Per-n checks run on up to opt.jobs threads; the report order follows the range.
inline VerificationReport verify_family(const std::vector<std::int64_t>& ns, const VerifyOptions& opt = {})
{
    VerificationReport out;
    out.per_n.resize(ns.size());
    std::vector<std::vector<std::vector<TorusGluing>>> gluings(ns.size(), std::vector<std::vector<TorusGluing>>(3));
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < ns.size(); i = next++)
            out.per_n[i] = detail::verify_one(ns[i], opt, &gluings[i]);
    };
    unsigned jobs = std::max(1u, std::min<unsigned>(opt.jobs, static_cast<unsigned>(ns.size())));
    std::vector<std::thread> pool;
    for (unsigned j = 1; j < jobs; ++j)
        pool.emplace_back(worker);
    worker();
    for (auto& t : pool)
        t.join();

    // gluings shared by every valid n
    for (std::size_t k = 0; k < 3; ++k) {
        UniformGluing u{detail::gluing_name(k), Fraction(-static_cast<std::int64_t>(k)), {}};
        bool first = true;
        std::set<TorusGluing> common;
        for (std::size_t i = 0; i < ns.size(); ++i) {
            if (ns[i] < 2)
                continue;
            std::set<TorusGluing> s(gluings[i][k].begin(), gluings[i][k].end());
            if (first) {
                common = std::move(s);
                first = false;
            } else {
                std::set<TorusGluing> keep;
                for (const auto& g : common)
                    if (s.count(g))
                        keep.insert(g);
                common = std::move(keep);
            }
        }
        if (!first) {
            u.gluings.assign(common.begin(), common.end());
            out.uniform.push_back(std::move(u));
        }
    }
    return out;
}

} // namespace tanglecalc
