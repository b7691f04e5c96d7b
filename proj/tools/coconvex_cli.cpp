// Command-line front end: evaluate polynomials and piecewise functions,
// run smoothness moduli, shape checks, best shape-constrained fits,
// domain/separation predicates, and the built-in replication of the two
// worked examples. Reports are flat "key: value" documents with
// deterministic formatting; the last line is the verdict.
//
// Exit codes: 0 success/holds, 1 a checked property fails, 2 usage or
// input errors.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>

#include "coconvex/approx.hpp"
#include "coconvex/domainsep.hpp"
#include "coconvex/expr.hpp"
#include "coconvex/piecewise.hpp"
#include "coconvex/polynomial.hpp"
#include "coconvex/replication.hpp"
#include "coconvex/report.hpp"
#include "coconvex/shape.hpp"
#include "coconvex/simplex.hpp"
#include "coconvex/smoothness.hpp"

using namespace coconvex;

namespace {

struct GlobalOpts {
    bool quiet = false;
    bool seventeen = false;
};

void emit(const Report& rep, const GlobalOpts& g) {
    std::cout << (g.quiet ? rep.verdict_line() : rep.str());
}

Polynomial parse_poly_arg(const std::string& text) {
    return expr_to_polynomial(parse_expr(text));
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

PiecewiseFn load_fn(const std::string& path) { return parse_piecewise(read_file(path)); }

std::vector<double> parse_csv_numbers(const std::string& text) {
    std::vector<double> out;
    std::string item;
    std::istringstream in(text);
    while (std::getline(in, item, ',')) {
        std::size_t a = item.find_first_not_of(" \t");
        if (a == std::string::npos) continue;
        std::size_t b = item.find_last_not_of(" \t");
        try {
            out.push_back(std::stod(item.substr(a, b - a + 1)));
        } catch (const std::exception&) {
            throw ConfigError("not a number: '" + item + "'");
        }
    }
    return out;
}

Interval parse_interval_text(const std::string& text) {
    std::string t = text;
    for (char& c : t)
        if (c == '[' || c == ']') c = ' ';
    std::vector<double> v = parse_csv_numbers(t);
    if (v.size() != 2) throw ConfigError("expected an interval like [-3, 3], got '" + text + "'");
    return Interval(v[0], v[1]);
}

// Piecewise function sources: "@file" (relative to the config), inline
// pieces separated by ';', or a bare expression with an implied domain.
PiecewiseFn parse_fn_value(const std::string& value, const std::filesystem::path& base,
                           std::optional<Interval> implied_domain) {
    std::string v = value;
    std::size_t a = v.find_first_not_of(" \t");
    std::size_t b = v.find_last_not_of(" \t");
    if (a == std::string::npos) throw ConfigError("empty function value");
    v = v.substr(a, b - a + 1);
    if (v.front() == '@') {
        std::filesystem::path p = v.substr(1);
        if (p.is_relative()) p = base / p;
        return load_fn(p.string());
    }
    if (v.find(':') != std::string::npos) {
        std::string text = v;
        for (char& c : text)
            if (c == ';') c = '\n';
        return parse_piecewise(text);
    }
    if (!implied_domain) throw ConfigError("a bare expression needs a domain: " + v);
    return PiecewiseFn::single(parse_expr(v), *implied_domain);
}

// ---------------------------------------------------------------------
// key = value configuration files for the domain checks

struct ConfigFile {
    std::map<std::string, std::string> kv;
    std::filesystem::path dir;

    bool has(const std::string& k) const { return kv.count(k) > 0; }
    const std::string& get(const std::string& k) const {
        auto it = kv.find(k);
        if (it == kv.end()) throw ConfigError("missing config key: " + k);
        return it->second;
    }
    double number(const std::string& k) const {
        try {
            return std::stod(get(k));
        } catch (const std::exception&) {
            throw ConfigError("config key '" + k + "' is not a number");
        }
    }
};

ConfigFile parse_config(const std::string& path) {
    ConfigFile cfg;
    cfg.dir = std::filesystem::path(path).parent_path();
    std::istringstream in(read_file(path));
    std::string line;
    while (std::getline(in, line)) {
        if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
        std::size_t eq = line.find('=');
        if (eq == std::string::npos) continue;
        auto trim = [](std::string s) {
            std::size_t a = s.find_first_not_of(" \t");
            if (a == std::string::npos) return std::string();
            std::size_t b = s.find_last_not_of(" \t");
            return s.substr(a, b - a + 1);
        };
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (key.empty()) throw ConfigError("empty key in config line: " + line);
        cfg.kv[key] = value;
    }
    return cfg;
}

struct DomainCheckInputs {
    Polynomial p;
    Interval domain{-1.0, 1.0};
    std::optional<double> witness;
    std::vector<double> y;
    PiecewiseFn f = PiecewiseFn::single(Expr::constant(0.0), Interval(-1.0, 1.0));
    PiecewiseFn fpp = PiecewiseFn::single(Expr::constant(0.0), Interval(-1.0, 1.0));
    JacksonConfig jackson;
};

DomainCheckInputs inputs_from_example(const std::string& id) {
    ExampleDefs d = id == "example1" ? example1_defs()
                  : id == "example2" ? example2_defs()
                                     : throw UnknownExample(id);
    DomainCheckInputs in{d.p, d.domain, d.t_witness, d.y_points, d.f, d.fpp,
                         example_jackson_config(d)};
    return in;
}

DomainCheckInputs inputs_from_config(const std::string& path) {
    ConfigFile cfg = parse_config(path);
    DomainCheckInputs in;
    in.p = parse_poly_arg(cfg.get("poly"));
    in.domain = parse_interval_text(cfg.get("domain"));
    if (cfg.has("witness")) in.witness = cfg.number("witness");
    if (cfg.has("y")) in.y = parse_csv_numbers(cfg.get("y"));
    in.f = parse_fn_value(cfg.get("f"), cfg.dir, in.domain);
    in.fpp = parse_fn_value(cfg.get("fpp"), cfg.dir, in.domain);

    JacksonConfig jc;
    int k = cfg.has("k") ? static_cast<int>(cfg.number("k")) : 2;
    int r = cfg.has("r") ? static_cast<int>(cfg.number("r")) : 2;
    double t = cfg.has("t") ? cfg.number("t") : 0.5;
    std::string mode = cfg.has("modulus") ? cfg.get("modulus") : "replication";
    if (mode == "standard") {
        jc.route = StandardRoute{ModulusSpec{k, r, t, ModulusMode::Standard,
                                             Interval(-1.0, 1.0), std::nullopt}};
    } else if (mode == "replication") {
        jc.route = ReplicationRoute{ModulusSpec{k, r, t, ModulusMode::Replication, in.domain,
                                                cfg.number("h")}};
    } else if (mode == "quoted-delta") {
        jc.route = QuotedDeltaRoute{cfg.number("delta"), in.domain};
    } else {
        throw ConfigError("modulus must be standard, replication or quoted-delta");
    }

    std::string dev = cfg.has("deviation") ? cfg.get("deviation") : "sup";
    if (dev.rfind("point", 0) == 0) {
        jc.deviation = PointwiseDeviation{std::stod(dev.substr(5))};
    } else if (dev == "sup") {
        jc.deviation = SupDeviationOver{in.domain};
    } else {
        throw ConfigError("deviation must be 'sup' or 'point <x0>'");
    }
    if (cfg.has("n")) jc.n_override = static_cast<int>(cfg.number("n"));
    if (cfg.has("exclude")) jc.guard.points = parse_csv_numbers(cfg.get("exclude"));
    in.jackson = jc;
    return in;
}

void put_jackson(Report& rep, const std::string& prefix, const JacksonReport& jr) {
    rep.put(prefix + ".deviation", jr.deviation);
    rep.put(prefix + ".n", jr.n);
    rep.put(prefix + ".omega", jr.omega);
    rep.put(prefix + ".c", jr.c);
    rep.put(prefix + ".degenerate", jr.degenerate);
}

void put_counterexample(Report& rep, const Counterexample& ce) {
    rep.put("counterexample.x", ce.x);
    rep.put("counterexample.y", ce.y);
    rep.put("counterexample.lambda", ce.lambda);
    rep.put("counterexample.lhs", ce.lhs);
    rep.put("counterexample.rhs", ce.rhs);
    rep.put("counterexample.orientation", ce.orientation);
}

// ---------------------------------------------------------------------

int cmd_eval(const std::string& poly, const std::string& fn, double x, const GlobalOpts& g) {
    Report rep(g.seventeen);
    rep.put("command", "eval");
    double value = 0.0;
    if (!poly.empty()) {
        Polynomial p = parse_poly_arg(poly);
        rep.put("input.poly", poly);
        rep.put("input.x", x);
        value = p(x);
    } else {
        PiecewiseFn f = load_fn(fn);
        rep.put("input.fn", fn);
        rep.put("input.x", x);
        value = f(x);
    }
    rep.put("value", value);
    rep.put("verdict", "ok");
    emit(rep, g);
    return 0;
}

int cmd_roots(const std::string& poly, double lo, double hi, const GlobalOpts& g) {
    Report rep(g.seventeen);
    rep.put("command", "roots");
    rep.put("input.poly", poly);
    rep.put("input.interval", Interval(lo, hi));
    rep.put_list("roots", real_roots(parse_poly_arg(poly), Interval(lo, hi)));
    rep.put("verdict", "ok");
    emit(rep, g);
    return 0;
}

int cmd_inflect(const std::string& poly, double lo, double hi, const GlobalOpts& g) {
    Report rep(g.seventeen);
    rep.put("command", "inflect");
    rep.put("input.poly", poly);
    rep.put("input.interval", Interval(lo, hi));
    rep.put_list("inflection_points", inflection_points(parse_poly_arg(poly), Interval(lo, hi)));
    rep.put("verdict", "ok");
    emit(rep, g);
    return 0;
}

int cmd_preimage(const std::string& poly, double tlo, double thi, double lo, double hi,
                 const GlobalOpts& g) {
    Report rep(g.seventeen);
    rep.put("command", "preimage");
    rep.put("input.poly", poly);
    rep.put("input.target", Interval(tlo, thi));
    rep.put("input.domain", Interval(lo, hi));
    auto segs = preimage_interval(parse_poly_arg(poly), Interval(tlo, thi), Interval(lo, hi));
    rep.put("components.count", static_cast<int>(segs.size()));
    for (std::size_t i = 0; i < segs.size(); ++i)
        rep.put("components." + std::to_string(i), segs[i]);
    rep.put("verdict", "ok");
    emit(rep, g);
    return 0;
}

int cmd_modulus(const std::string& fn, const std::string& poly, int k, int r, double t,
                const std::string& mode, double h, std::optional<double> lo,
                std::optional<double> hi, const std::string& exclude, const GlobalOpts& g) {
    Report rep(g.seventeen);
    rep.put("command", "modulus");
    PiecewiseFn f = !fn.empty() ? load_fn(fn)
                                : PiecewiseFn::from_polynomial(
                                      parse_poly_arg(poly),
                                      Interval(lo.value_or(-1.0), hi.value_or(1.0)));
    if (!fn.empty())
        rep.put("input.fn", fn);
    else
        rep.put("input.poly", poly);
    rep.put("input.k", k);
    rep.put("input.r", r);
    rep.put("input.t", t);
    rep.put("input.mode", mode);

    SingularGuard guard;
    if (!exclude.empty()) guard.points = parse_csv_numbers(exclude);

    double value = 0.0;
    if (mode == "standard") {
        ModulusSpec spec{k, r, t, ModulusMode::Standard, Interval(-1.0, 1.0), std::nullopt};
        value = dt_modulus_standard(f, spec, guard);
    } else if (mode == "replication") {
        Interval iv(lo.value_or(f.domain().lo), hi.value_or(f.domain().hi));
        ModulusSpec spec{k, r, t, ModulusMode::Replication, iv, h};
        rep.put("input.h", h);
        rep.put("input.interval", iv);
        value = dt_modulus_replication(f, spec, guard);
    } else {
        throw ConfigError("mode must be standard or replication");
    }
    rep.put("value", value);
    rep.put("verdict", "ok");
    emit(rep, g);
    return 0;
}

int cmd_convexity(const std::string& poly, const std::string& fn, double lo, double hi,
                  int pairs, const GlobalOpts& g) {
    Report rep(g.seventeen);
    rep.put("command", "convexity");
    Interval I(lo, hi);
    ShapeVerdict v;
    bool certified = false;
    if (!poly.empty()) {
        Polynomial p = parse_poly_arg(poly);
        rep.put("input.poly", poly);
        v = in_delta2(p, YPartition({}, I));
        certified = true;
    } else {
        PiecewiseFn f = load_fn(fn);
        rep.put("input.fn", fn);
        v = secant_convexity_test(f, I, pairs, default_lambda_grid());
    }
    rep.put("input.interval", I);
    rep.put("certified", certified);
    rep.put("holds", v.holds);
    if (v.counterexample) put_counterexample(rep, *v.counterexample);
    rep.put("verdict", v.holds ? "holds" : "fails");
    emit(rep, g);
    return v.holds ? 0 : 1;
}

int cmd_delta2(const std::string& poly, const std::string& fn, const std::string& ycsv,
               double lo, double hi, int samples, const GlobalOpts& g) {
    Report rep(g.seventeen);
    rep.put("command", "delta2");
    Interval I(lo, hi);
    YPartition Y(parse_csv_numbers(ycsv), I);
    ShapeVerdict v;
    bool certified = false;
    if (!poly.empty()) {
        rep.put("input.poly", poly);
        v = in_delta2(parse_poly_arg(poly), Y);
        certified = true;
    } else {
        rep.put("input.fn", fn);
        v = in_delta2(load_fn(fn), Y, samples);
    }
    rep.put("input.interval", I);
    rep.put_list("input.y", Y.points);
    std::string pattern;
    for (int s : sign_pattern(Y)) pattern += s > 0 ? "+" : "-";
    rep.put("sign_pattern", pattern);
    rep.put("certified", certified);
    rep.put("holds", v.holds);
    if (v.counterexample) put_counterexample(rep, *v.counterexample);
    rep.put("verdict", v.holds ? "holds" : "fails");
    emit(rep, g);
    return v.holds ? 0 : 1;
}

int cmd_approx(const std::string& fn, const std::string& poly, int n, const std::string& ycsv,
               std::optional<int> grid, double lo, double hi, const GlobalOpts& g) {
    Report rep(g.seventeen);
    rep.put("command", "approx");
    Interval I(lo, hi);
    PiecewiseFn f = !fn.empty() ? load_fn(fn)
                                : PiecewiseFn::from_polynomial(parse_poly_arg(poly), I);
    if (!fn.empty())
        rep.put("input.fn", fn);
    else
        rep.put("input.poly", poly);
    rep.put("input.n", n);
    YPartition Y(parse_csv_numbers(ycsv), I);
    rep.put_list("input.y", Y.points);
    rep.put("input.interval", I);
    ApproxResult res = grid ? best_shape_approx(f, n, Y, *grid)
                            : best_shape_approx_auto(f, n, Y);
    rep.put("grid_size", res.grid_size);
    rep.put("epsilon", res.epsilon);
    rep.put_list("coefficients", res.poly.coeffs());
    rep.put_list("active_points", res.active_points);
    rep.put("verdict", "ok");
    emit(rep, g);
    return 0;
}

int cmd_jackson(double deviation, int n, double omega, const GlobalOpts& g) {
    Report rep(g.seventeen);
    rep.put("command", "jackson");
    rep.put("input.deviation", deviation);
    rep.put("input.n", n);
    rep.put("input.omega", omega);
    try {
        JacksonReport jr = jackson_constant(deviation, n, omega);
        rep.put("c", jr.c);
        rep.put("degenerate", jr.degenerate);
        rep.put("verdict", "ok");
        emit(rep, g);
        return 0;
    } catch (const InconsistentDegenerate&) {
        rep.put("degenerate", true);
        rep.put("note", "omega is zero with a positive deviation; no finite constant works");
        rep.put("verdict", "fail");
        emit(rep, g);
        return 1;
    }
}

int cmd_check_dcp(const std::string& example, const std::string& config, const GlobalOpts& g) {
    DomainCheckInputs in =
        !example.empty() ? inputs_from_example(example) : inputs_from_config(config);
    DcpReport rep = check_dcp(in.p, in.domain, in.witness, in.f, in.fpp, in.jackson);

    Report out(g.seventeen);
    out.put("command", "check-dcp");
    out.put("input.domain", in.domain);
    out.put("prop1.convex_on_domain", rep.prop1_compact);
    out.put("prop2.sup_over_domain", rep.sup_over_domain);
    out.put("prop2.witness_found", rep.prop2_witness.has_value());
    if (rep.prop2_witness) {
        out.put("prop2.witness_t", rep.prop2_witness->t);
        out.put("prop2.witness_margin", rep.prop2_witness->margin);
    }
    put_jackson(out, "prop3", rep.prop3);
    out.put("overall", rep.overall);
    out.put("verdict", rep.overall ? "pass" : "fail");
    emit(out, g);
    return rep.overall ? 0 : 1;
}

int cmd_check_dccp(const std::string& example, const std::string& config, const GlobalOpts& g) {
    DomainCheckInputs in =
        !example.empty() ? inputs_from_example(example) : inputs_from_config(config);
    DccpReport rep = check_dccp(in.p, in.domain, YPartition(in.y, in.domain), in.f, in.fpp,
                                in.jackson);

    Report out(g.seventeen);
    out.put("command", "check-dccp");
    out.put("input.domain", in.domain);
    out.put("prop1.changes_convexity", rep.prop1_changes_convexity);
    out.put("prop2.declared.count", static_cast<int>(rep.prop2_declared.size()));
    for (std::size_t i = 0; i < rep.prop2_declared.size(); ++i) {
        const std::string k = "prop2.declared." + std::to_string(i);
        out.put(k + ".y", rep.prop2_declared[i].y);
        out.put(k + ".abs_value", rep.prop2_declared[i].abs_value);
        out.put(k + ".within_half", rep.prop2_declared[i].within_half);
    }
    out.put_list("prop2.verified.inflections", rep.prop2_verified.inflections);
    for (std::size_t i = 0; i < rep.prop2_verified.within_half.size(); ++i)
        out.put("prop2.verified.within_half." + std::to_string(i),
                static_cast<bool>(rep.prop2_verified.within_half[i]));
    out.put("prop2.verified.match_with_declared", rep.prop2_verified.match_with_declared);
    put_jackson(out, "prop3", rep.prop3);
    out.put("overall_declared", rep.overall_declared);
    out.put("overall_verified", rep.overall_verified);
    out.put("verdict", rep.overall_declared ? "pass" : "fail");
    emit(out, g);
    return rep.overall_declared ? 0 : 1;
}

int cmd_separate(bool strict, bool strong, bool support, const std::string& poly, double lo,
                 double hi, std::optional<double> x, const std::string& poly2,
                 std::optional<double> d2lo, std::optional<double> d2hi,
                 const std::string& hbar, const std::string& tspec, std::optional<double> x0,
                 std::optional<double> alpha, const GlobalOpts& g) {
    Report rep(g.seventeen);
    rep.put("command", "separate");
    Polynomial p = parse_poly_arg(poly);
    Interval D1(lo, hi);
    SeparationVerdict v;

    if (strict) {
        if (!x) throw ConfigError("--strict needs --x");
        rep.put("mode", "strict");
        rep.put("input.poly", poly);
        rep.put("input.domain", D1);
        rep.put("input.x", *x);
        v = strictly_separates(p, D1, *x);
    } else if (support) {
        if (!x0 || !alpha) throw ConfigError("--support needs --x0 and --alpha");
        rep.put("mode", "support");
        rep.put("input.poly", poly);
        rep.put("input.domain", D1);
        rep.put("input.x0", *x0);
        rep.put("input.alpha", *alpha);
        v = supporting_hyperplane(p, D1, *x0, *alpha);
    } else if (strong) {
        if (poly2.empty() || !d2lo || !d2hi)
            throw ConfigError("--strong needs --poly2, --d2-lo and --d2-hi");
        Polynomial q = parse_poly_arg(poly2);
        Interval D2(*d2lo, *d2hi);
        rep.put("mode", "strong");
        rep.put("input.poly", poly);
        rep.put("input.domain", D1);
        rep.put("input.poly2", poly2);
        rep.put("input.domain2", D2);
        if (hbar.empty()) {
            v = strongly_separated(p, D1, q, D2);
        } else {
            PiecewiseFn h = PiecewiseFn::single(parse_expr(hbar), Interval(0.0, 1.0));
            rep.put("input.hbar", hbar);
            rep.put("input.t", tspec);
            std::optional<double> t;
            if (tspec != "all") t = std::stod(tspec);
            v = strongly_separated(p, D1, q, D2, h, t);
        }
    } else {
        throw ConfigError("choose one of --strict, --strong, --support");
    }

    rep.put("inf_lhs", v.inf_lhs);
    rep.put("sup_rhs", v.sup_rhs);
    if (v.b) rep.put("b", *v.b);
    if (!v.failed_ts.empty()) rep.put_list("failed_t", v.failed_ts);
    rep.put("holds", v.holds);
    rep.put("verdict", v.holds ? "holds" : "fails");
    emit(rep, g);
    return v.holds ? 0 : 1;
}

int cmd_replicate(const std::string& example_id, const GlobalOpts& g) {
    std::vector<ReplicationRow> rows = run_replication(example_id);
    Report rep(g.seventeen);
    rep.put("command", "replicate");
    rep.put("example", example_id);
    rep.put("rows.count", static_cast<int>(rows.size()));
    bool all = true;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const std::string k = "rows." + std::to_string(i);
        rep.put(k + ".label", rows[i].label);
        rep.put(k + ".computed", rows[i].computed);
        rep.put(k + ".reference_value", rows[i].reference_value);
        rep.put(k + ".tolerance", rows[i].tolerance);
        rep.put(k + ".pass", rows[i].pass);
        rep.put(k + ".note", rows[i].provenance_note);
        all = all && rows[i].pass;
    }
    rep.put("all_pass", all);
    rep.put("verdict", all ? "pass" : "fail");
    emit(rep, g);
    return all ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"shape-constrained polynomial approximation toolkit"};
    app.require_subcommand(1);
    app.fallthrough(false);

    GlobalOpts g;
    app.add_flag("--quiet", g.quiet, "print only the verdict line");
    app.add_flag("--float17", g.seventeen, "format floats with 17 significant digits");

    // shared option storage
    std::string poly, poly2, fn, mode = "standard", ycsv, exclude, hbar, tspec = "all";
    std::string example, config, example_pos;
    double x = 0.0, lo = -1.0, hi = 1.0, tlo = 0.0, thi = 0.0, t = 0.5, h = 0.0;
    double deviation = 0.0, omega = 0.0;
    std::optional<double> xopt, d2lo, d2hi, x0, alpha, mlo, mhi;
    std::optional<int> grid;
    int k = 2, r = 2, n = 1, pairs = 200, samples = 200;
    bool strict = false, strong = false, support = false;

    auto* c_eval = app.add_subcommand("eval", "evaluate a polynomial or piecewise function");
    c_eval->add_option("--poly", poly, "polynomial expression");
    c_eval->add_option("--fn", fn, "piecewise function file");
    c_eval->add_option("--x", x, "evaluation point")->required();

    auto* c_roots = app.add_subcommand("roots", "real roots inside an interval");
    c_roots->add_option("--poly", poly)->required();
    c_roots->add_option("--lo", lo)->required();
    c_roots->add_option("--hi", hi)->required();

    auto* c_inflect = app.add_subcommand("inflect", "inflection points inside an interval");
    c_inflect->add_option("--poly", poly)->required();
    c_inflect->add_option("--lo", lo)->required();
    c_inflect->add_option("--hi", hi)->required();

    auto* c_pre = app.add_subcommand("preimage", "preimage of a value interval");
    c_pre->add_option("--poly", poly)->required();
    c_pre->add_option("--target-lo", tlo)->required();
    c_pre->add_option("--target-hi", thi)->required();
    c_pre->add_option("--lo", lo)->required();
    c_pre->add_option("--hi", hi)->required();

    auto* c_mod = app.add_subcommand("modulus", "weighted smoothness modulus");
    c_mod->set_help_flag("--help", "print help");  // frees -h for the step option
    c_mod->add_option("--fn", fn);
    c_mod->add_option("--poly", poly);
    c_mod->add_option("--k", k)->required();
    c_mod->add_option("--r", r);
    c_mod->add_option("--t", t)->required();
    c_mod->add_option("--mode", mode)->check(CLI::IsMember({"standard", "replication"}));
    c_mod->add_option("--h", h);
    c_mod->add_option("--lo", mlo);
    c_mod->add_option("--hi", mhi);
    c_mod->add_option("--exclude", exclude, "singular points to avoid, comma separated");

    auto* c_cvx = app.add_subcommand("convexity", "secant-inequality convexity test");
    c_cvx->add_option("--poly", poly);
    c_cvx->add_option("--fn", fn);
    c_cvx->add_option("--lo", lo)->required();
    c_cvx->add_option("--hi", hi)->required();
    c_cvx->add_option("--pairs", pairs);

    auto* c_d2 = app.add_subcommand("delta2", "coconvexity class membership");
    c_d2->add_option("--poly", poly);
    c_d2->add_option("--fn", fn);
    c_d2->add_option("--y", ycsv, "change-of-convexity points, comma separated");
    c_d2->add_option("--lo", lo)->required();
    c_d2->add_option("--hi", hi)->required();
    c_d2->add_option("--samples", samples);

    auto* c_ap = app.add_subcommand("approx", "best shape-constrained fit");
    c_ap->add_option("--fn", fn);
    c_ap->add_option("--poly", poly);
    c_ap->add_option("--n", n)->required();
    c_ap->add_option("--y", ycsv);
    c_ap->add_option("--grid", grid);
    c_ap->add_option("--lo", lo)->required();
    c_ap->add_option("--hi", hi)->required();

    auto* c_jk = app.add_subcommand("jackson", "constant from a Jackson-type bound");
    c_jk->add_option("--deviation", deviation)->required();
    c_jk->add_option("--n", n)->required();
    c_jk->add_option("--omega", omega)->required();

    auto* c_dcp = app.add_subcommand("check-dcp", "domain-of-convex-polynomial check");
    c_dcp->add_option("--example", example)->check(CLI::IsMember({"example1", "example2"}));
    c_dcp->add_option("--config", config);

    auto* c_dccp = app.add_subcommand("check-dccp", "domain-of-coconvex-polynomial check");
    c_dccp->add_option("--example", example)->check(CLI::IsMember({"example1", "example2"}));
    c_dccp->add_option("--config", config);

    auto* c_sep = app.add_subcommand("separate", "hyperplane separation predicates");
    c_sep->add_flag("--strict", strict);
    c_sep->add_flag("--strong", strong);
    c_sep->add_flag("--support", support);
    c_sep->add_option("--poly", poly)->required();
    c_sep->add_option("--lo", lo)->required();
    c_sep->add_option("--hi", hi)->required();
    c_sep->add_option("--x", xopt);
    c_sep->add_option("--poly2", poly2);
    c_sep->add_option("--d2-lo", d2lo);
    c_sep->add_option("--d2-hi", d2hi);
    c_sep->add_option("--hbar", hbar);
    c_sep->add_option("--t", tspec, "a value in [0,1] or 'all'");
    c_sep->add_option("--x0", x0);
    c_sep->add_option("--alpha", alpha);

    auto* c_rep = app.add_subcommand("replicate", "replicate a built-in worked example");
    c_rep->add_option("example", example_pos, "example1 or example2")->required();

    // let --quiet / --float17 appear after the subcommand as well
    for (CLI::App* sub : app.get_subcommands([](const CLI::App*) { return true; }))
        sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (c_eval->parsed()) {
            if (poly.empty() == fn.empty())
                throw ConfigError("eval needs exactly one of --poly or --fn");
            return cmd_eval(poly, fn, x, g);
        }
        if (c_roots->parsed()) return cmd_roots(poly, lo, hi, g);
        if (c_inflect->parsed()) return cmd_inflect(poly, lo, hi, g);
        if (c_pre->parsed()) return cmd_preimage(poly, tlo, thi, lo, hi, g);
        if (c_mod->parsed()) {
            if (poly.empty() == fn.empty())
                throw ConfigError("modulus needs exactly one of --poly or --fn");
            if (mode == "replication" && !c_mod->count("--h"))
                throw ConfigError("replication mode needs --h");
            return cmd_modulus(fn, poly, k, r, t, mode, h, mlo, mhi, exclude, g);
        }
        if (c_cvx->parsed()) {
            if (poly.empty() == fn.empty())
                throw ConfigError("convexity needs exactly one of --poly or --fn");
            return cmd_convexity(poly, fn, lo, hi, pairs, g);
        }
        if (c_d2->parsed()) {
            if (poly.empty() == fn.empty())
                throw ConfigError("delta2 needs exactly one of --poly or --fn");
            return cmd_delta2(poly, fn, ycsv, lo, hi, samples, g);
        }
        if (c_ap->parsed()) {
            if (poly.empty() == fn.empty())
                throw ConfigError("approx needs exactly one of --poly or --fn");
            return cmd_approx(fn, poly, n, ycsv, grid, lo, hi, g);
        }
        if (c_jk->parsed()) return cmd_jackson(deviation, n, omega, g);
        if (c_dcp->parsed()) {
            if (example.empty() == config.empty())
                throw ConfigError("check-dcp needs exactly one of --example or --config");
            return cmd_check_dcp(example, config, g);
        }
        if (c_dccp->parsed()) {
            if (example.empty() == config.empty())
                throw ConfigError("check-dccp needs exactly one of --example or --config");
            return cmd_check_dccp(example, config, g);
        }
        if (c_sep->parsed())
            return cmd_separate(strict, strong, support, poly, lo, hi, xopt, poly2, d2lo,
                                d2hi, hbar, tspec, x0, alpha, g);
        if (c_rep->parsed()) return cmd_replicate(example_pos, g);
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
