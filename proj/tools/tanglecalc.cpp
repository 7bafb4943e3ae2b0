// tanglecalc: determinants, family verification and PD/braid export.
//
// Exit codes: 0 pass, 1 check failure, 2 parse error, 3 precondition, 4 I/O.

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <regex>
#include <sstream>
#include <string>

#include "tanglecalc.hpp"

using namespace tanglecalc;
using ojson = nlohmann::ordered_json;

namespace {

enum Exit { kPass = 0, kCheckFailed = 1, kParse = 2, kPrecondition = 3, kIo = 4 };

struct RunConfig {
    std::string path;
    std::string n_range;
    std::string fill;
    std::string format;
    std::string out;
    std::string cache_dir;
    bool no_cache = false;
    bool pre_twist = false;
    unsigned jobs = 1;
    std::size_t budget = 1000000;
    int glue_bound = 5;
};

std::vector<std::int64_t> parse_range(const std::string& text)
{
    static const std::regex re(R"(\s*(-?\d+)\s*(?:\.\.\s*(-?\d+)\s*)?)");
    std::smatch m;
    if (!std::regex_match(text, m, re))
        throw PreconditionError("--n expects A or A..B, got '" + text + "'");
    std::int64_t a = std::stoll(m[1]);
    std::int64_t b = m[2].matched ? std::stoll(m[2]) : a;
    if (b < a)
        throw PreconditionError("--n range is empty: " + text);
    if (b - a > 10000)
        throw PreconditionError("--n range too long: " + text);
    std::vector<std::int64_t> ns;
    for (std::int64_t n = a; n <= b; ++n)
        ns.push_back(n);
    return ns;
}

// "path:line:col: message" followed by the offending line and a caret.
void report_parse_error(const std::string& path, const std::string& text, const ParseError& e)
{
    std::size_t at = std::min(e.span().start, text.size());
    std::size_t line_start = text.rfind('\n', at == 0 ? 0 : at - 1);
    line_start = (line_start == std::string::npos || at == 0) ? 0 : line_start + 1;
    if (at > 0 && text[at - 1] == '\n')
        line_start = at;
    std::size_t line_end = text.find('\n', line_start);
    if (line_end == std::string::npos)
        line_end = text.size();
    std::size_t line_no = 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(line_start), '\n'));
    std::size_t col = at - line_start;
    std::size_t width = std::max<std::size_t>(1, std::min(e.span().end, line_end) - std::min(at, line_end));
    std::cerr << path << ":" << line_no << ":" << col + 1 << ": parse error: " << e.what() << "\n";
    std::cerr << "  " << text.substr(line_start, line_end - line_start) << "\n";
    std::cerr << "  " << std::string(col, ' ') << std::string(width, '^') << "\n";
}

bool is_braid_file(const std::string& path, const std::string& text)
{
    if (path.size() >= 6 && path.compare(path.size() - 6, 6, ".braid") == 0)
        return true;
    std::size_t p = 0;
    while (p < text.size()) {
        if (std::isspace(static_cast<unsigned char>(text[p]))) {
            ++p;
        } else if (text[p] == '#') {
            p = text.find('\n', p);
            if (p == std::string::npos)
                return false;
        } else {
            break;
        }
    }
    return text.compare(p, 6, "braid(") == 0;
}

Bindings bindings_for(const RunConfig& cfg)
{
    Bindings b;
    if (!cfg.n_range.empty()) {
        auto ns = parse_range(cfg.n_range);
        if (ns.size() != 1)
            throw PreconditionError("this command takes a single --n value");
        b["n"] = ns.front();
    }
    return b;
}

Fraction parse_fill(const std::string& s)
{
    TangleExpr t;
    try {
        t = parse("r(" + s + ")");
    } catch (const ParseError& e) {
        throw PreconditionError("--fill expects a fraction p/q: " + std::string(e.what()));
    }
    if (t.kind() != NodeKind::Rational || t.is_symbolic())
        throw PreconditionError("--fill expects a fraction p/q");
    return t.fraction();
}

// A loaded input: either a tangle expression or a braid word.
struct Input {
    std::optional<TangleExpr> expr;
    std::optional<BraidWord> braid;
};

Input load(const RunConfig& cfg, std::string& text)
{
    text = read_text_file(cfg.path);
    Bindings b = bindings_for(cfg);
    Input in;
    if (is_braid_file(cfg.path, text)) {
        in.braid = instantiate_braid(parse_braid_template(text), b, !cfg.pre_twist);
        return in;
    }
    TangleFile f = parse_file_text(text);
    TangleExpr e = f.expr;
    if (!cfg.fill.empty())
        e = substitute_slot(e, rational_tangle(parse_fill(cfg.fill)));
    in.expr = instantiate(e, b, f.constraints);
    return in;
}

PlanarDiagram diagram_of(const Input& in)
{
    if (in.braid)
        return closure(*in.braid);
    return to_planar_diagram(*in.expr);
}

// Integers go out as JSON numbers, everything else as strings.
ojson value_json(const std::string& s)
{
    static const std::regex integer(R"(-?\d{1,18})");
    if (std::regex_match(s, integer))
        return std::stoll(s);
    return s;
}

std::unique_ptr<InvariantCache> make_cache(const RunConfig& cfg)
{
    if (cfg.no_cache)
        return nullptr;
    std::optional<std::string> dir;
    if (!cfg.cache_dir.empty())
        dir = cfg.cache_dir;
    return InvariantCache::from_env(dir);
}

void write_output(const RunConfig& cfg, const std::string& body)
{
    if (cfg.out.empty()) {
        std::cout << body;
        return;
    }
    std::ofstream f(cfg.out, std::ios::binary | std::ios::trunc);
    if (!f)
        throw IoError("cannot write " + cfg.out);
    f << body;
    if (!f)
        throw IoError("write failed for " + cfg.out);
}

int cmd_det(const RunConfig& cfg)
{
    std::string text;
    Input in = load(cfg, text);
    if (in.expr && !in.expr->is_closed())
        throw PreconditionError("expression is an open tangle; close it with N(...) or D(...)");
    PlanarDiagram d = diagram_of(in);
    auto cache = make_cache(cfg);
    CachedInvariants v = invariants_of(d, cache.get());
    std::ostringstream os;
    if (cfg.format == "json") {
        ojson j;
        j["schema"] = 1;
        j["input"] = cfg.path;
        j["crossings"] = d.crossing_count();
        j["components"] = component_count(d);
        j["determinant"] = value_json(v.determinant.str());
        j["h1"] = v.homology.str();
        j["split"] = v.split;
        os << j.dump(2) << "\n";
    } else if (cfg.format == "csv") {
        os << "input,crossings,components,determinant,h1,split\n"
           << cfg.path << "," << d.crossing_count() << "," << component_count(d) << "," << v.determinant.str() << ","
           << v.homology.str() << "," << (v.split ? "true" : "false") << "\n";
    } else {
        os << "det=" << v.determinant.str() << ", H1=" << v.homology.str() << (v.split ? " (split)" : "") << "\n";
    }
    write_output(cfg, os.str());
    return kPass;
}

std::string csv_field(const std::string& s)
{
    if (s.find_first_of(",\"\n") == std::string::npos)
        return s;
    std::string out = "\"";
    for (char c : s)
        out += c == '"' ? std::string("\"\"") : std::string(1, c);
    return out + "\"";
}

std::string render_report(const VerificationReport& rep, const RunConfig& cfg, const std::vector<std::int64_t>& ns)
{
    std::ostringstream os;
    if (cfg.format == "json") {
        ojson j;
        j["schema"] = 1;
        j["config"] = {{"n", cfg.n_range}, {"budget", cfg.budget}, {"glue_bound", cfg.glue_bound}};
        ojson results = ojson::object();
        for (const auto& r : rep.per_n) {
            ojson checks = ojson::object();
            for (const auto& c : r.checks) {
                ojson cj = {{"expected", value_json(c.expected)}, {"computed", value_json(c.computed)}, {"pass", c.pass}};
                if (!c.error.empty())
                    cj["error"] = c.error;
                checks[c.name] = cj;
            }
            results[std::to_string(r.n)] = checks;
        }
        j["results"] = results;
        ojson uni = ojson::array();
        for (const auto& u : rep.uniform) {
            ojson gs = ojson::array();
            for (const auto& g : u.gluings)
                gs.push_back({{g.m[0][0], g.m[0][1]}, {g.m[1][0], g.m[1][1]}});
            uni.push_back({{"name", u.name}, {"slope", u.slope.str()}, {"gluings", gs}});
        }
        j["uniform_gluings"] = uni;
        j["pieces"] = ojson::object();
        for (auto n : ns) {
            if (n < 2)
                continue;
            ojson ps = ojson::array();
            for (const auto& d : decompositions(n))
                ps.push_back({{"slope", d.slope.str()},
                              {"first", {d.first.fibers[0].str(), d.first.fibers[1].str()}},
                              {"second", {d.second.fibers[0].str(), d.second.fibers[1].str()}}});
            j["pieces"][std::to_string(n)] = ps;
        }
        j["pass"] = rep.pass();
        os << j.dump(2) << "\n";
        return os.str();
    }
    if (cfg.format == "csv") {
        os << "n,check,expected,computed,pass,error\n";
        for (const auto& r : rep.per_n)
            for (const auto& c : r.checks)
                os << r.n << "," << csv_field(c.name) << "," << csv_field(c.expected) << "," << csv_field(c.computed)
                   << "," << (c.pass ? "pass" : "FAIL") << "," << csv_field(c.error) << "\n";
        return os.str();
    }
    std::size_t w_name = 5, w_exp = 8, w_got = 8;
    for (const auto& r : rep.per_n)
        for (const auto& c : r.checks) {
            w_name = std::max(w_name, c.name.size());
            w_exp = std::max(w_exp, c.expected.size());
            w_got = std::max(w_got, c.computed.size());
        }
    auto row = [&](const std::string& n, const std::string& a, const std::string& b, const std::string& c,
                   const std::string& d) {
        os << std::left << std::setw(4) << n << "  " << std::setw(static_cast<int>(w_name)) << a << "  "
           << std::setw(static_cast<int>(w_exp)) << b << "  " << std::setw(static_cast<int>(w_got)) << c << "  " << d
           << "\n";
    };
    row("n", "check", "expected", "computed", "result");
    for (const auto& r : rep.per_n)
        for (const auto& c : r.checks)
            row(std::to_string(r.n), c.name, c.expected, c.computed, c.pass ? "pass" : "FAIL " + c.error);
    for (const auto& u : rep.uniform) {
        os << "uniform " << u.name << ":";
        if (u.gluings.empty())
            os << " none";
        for (const auto& g : u.gluings)
            os << " " << g.str();
        os << "\n";
    }
    return os.str();
}

int cmd_verify(const RunConfig& cfg)
{
    if (cfg.n_range.empty())
        throw PreconditionError("verify needs --n");
    auto ns = parse_range(cfg.n_range);
    auto cache = make_cache(cfg);
    VerifyOptions opt;
    opt.budget = cfg.budget;
    opt.glue_bound = cfg.glue_bound;
    opt.jobs = std::max(1u, cfg.jobs);
    opt.cache = cache.get();
    std::cerr << "verifying n = " << ns.front() << ".." << ns.back() << " on " << opt.jobs << " job(s)\n";
    VerificationReport rep = verify_family(ns, opt);
    write_output(cfg, render_report(rep, cfg, ns));
    if (rep.pass())
        return kPass;
    for (const auto& r : rep.per_n)
        for (const auto& c : r.checks)
            if (!c.pass)
                std::cerr << "FAIL n=" << r.n << " " << c.name << ": expected " << c.expected << ", computed "
                          << c.computed << (c.error.empty() ? "" : " (" + c.error + ")") << "\n";
    for (const auto& u : rep.uniform)
        if (u.gluings.empty())
            std::cerr << "FAIL uniform " << u.name << ": no gluing common to every n\n";
    return kCheckFailed;
}

int cmd_export(const RunConfig& cfg)
{
    std::string text;
    Input in = load(cfg, text);
    std::string fmt = cfg.format.empty() ? (in.braid ? "braid" : "pd") : cfg.format;
    if (fmt == "braid") {
        if (!in.braid)
            throw PreconditionError("braid export needs a braid input");
        write_output(cfg, format_braid(*in.braid) + "\n");
        return kPass;
    }
    if (fmt == "tngl") {
        if (!in.expr)
            throw PreconditionError("tngl export needs a tangle input");
        write_output(cfg, format(*in.expr) + "\n");
        return kPass;
    }
    if (fmt != "pd")
        throw PreconditionError("export format must be pd, braid or tngl");
    write_output(cfg, export_pd(diagram_of(in)));
    return kPass;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"tanglecalc: tangle calculus and link invariants"};
    app.require_subcommand(1);
    RunConfig cfg;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--cache-dir", cfg.cache_dir, std::string("Cache directory (overridden by ") + kCacheDirEnv + ")");
        sub->add_flag("--no-cache", cfg.no_cache, "Bypass the invariant cache");
        sub->add_option("-o,--out", cfg.out, "Write the result to this file instead of stdout");
    };

    auto* det = app.add_subcommand("det", "Determinant and H1 of the double branched cover");
    det->add_option("path", cfg.path, ".tngl or .braid file")->required();
    det->add_option("--n", cfg.n_range, "Value for the symbol n");
    det->add_option("--fill", cfg.fill, "Fill the slot with the rational tangle p/q");
    det->add_flag("--pre-twist", cfg.pre_twist, "Drop {...} twist regions of a braid");
    det->add_option("--format", cfg.format, "table, json or csv")->check(CLI::IsMember({"table", "json", "csv"}));
    add_common(det);

    auto* verify = app.add_subcommand("verify", "Run the T_n / K_n verification battery");
    verify->add_option("--n", cfg.n_range, "Range A..B or a single value")->required();
    verify->add_option("--format", cfg.format, "json, table or csv")->check(CLI::IsMember({"table", "json", "csv"}));
    verify->add_option("--jobs", cfg.jobs, "Worker threads");
    verify->add_option("--budget", cfg.budget, "State budget for the positivity search");
    verify->add_option("--glue-bound", cfg.glue_bound, "Entry bound for the gluing search");
    add_common(verify);

    auto* exp = app.add_subcommand("export", "Print PD code, braid text or normalized .tngl");
    exp->add_option("path", cfg.path, ".tngl or .braid file")->required();
    exp->add_option("--n", cfg.n_range, "Value for the symbol n");
    exp->add_option("--fill", cfg.fill, "Fill the slot with the rational tangle p/q");
    exp->add_flag("--pre-twist", cfg.pre_twist, "Drop {...} twist regions of a braid");
    exp->add_option("--format", cfg.format, "pd, braid or tngl")->check(CLI::IsMember({"pd", "braid", "tngl"}));
    add_common(exp);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kPass : kPrecondition;
    }

    try {
        if (*det)
            return cmd_det(cfg);
        if (*verify) {
            if (cfg.format.empty())
                cfg.format = "json";
            return cmd_verify(cfg);
        }
        return cmd_export(cfg);
    } catch (const ParseError& e) {
        std::string text;
        try {
            text = read_text_file(cfg.path);
        } catch (const IoError&) {
        }
        report_parse_error(cfg.path.empty() ? "<input>" : cfg.path, text, e);
        return kParse;
    } catch (const IoError& e) {
        std::cerr << "I/O error: " << e.what() << "\n";
        return kIo;
    } catch (const PreconditionError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kPrecondition;
    } catch (const Error& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kCheckFailed;
    }
}
