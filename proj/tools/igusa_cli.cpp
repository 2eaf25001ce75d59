// Command-line front end: parse a polynomial or a built-in series family,
// dispatch to the engines, and emit deterministic JSON reports.

#include "igusa/igusa.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

namespace {

using igusa::Int;
using igusa::Json;

int exit_code_for(const igusa::Error& e) {
    switch (e.category()) {
    case igusa::ErrorCategory::Validation: return 2;
    case igusa::ErrorCategory::Precondition: return 3;
    case igusa::ErrorCategory::Resource: return 4;
    case igusa::ErrorCategory::Internal: return 1;
    }
    return 1;
}

Json load_input(const std::string& arg) {
    std::string text = arg;
    if (!arg.empty() && arg[0] != '{') {
        std::ifstream in(arg);
        if (!in) throw igusa::ParseError("cannot open input file '" + arg + "'");
        std::ostringstream buf;
        buf << in.rdbuf();
        text = buf.str();
    }
    try {
        return Json::parse(text);
    } catch (const std::exception& e) {
        throw igusa::ParseError(e.what());
    }
}

struct Options {
    std::string input;      // file path or inline JSON
    std::string family;     // builtin family shortcut
    long long p = 0;
    long M = 6;
    long d_min = 0;
    long d_max = 8;
    std::string engine = "newton";
    long depth_limit = 24;
    long long enum_limit = 10'000'000;
    int max_vars = 4;
    long box = 10;
    double s_real = 1.0;
    bool latex = false;
    bool trace = false;
};

igusa::PrimeContext make_context(const Options& o) {
    return igusa::PrimeContext(Int(o.p), o.enum_limit, o.max_vars);
}

igusa::ParsedInput parse_job_input(const Options& o) {
    if (!o.family.empty()) {
        Json j;
        j["family"] = o.family;
        j["p"] = o.p;
        return igusa::parse_input(j, Int(o.p));
    }
    if (o.input.empty()) throw igusa::ParseError("no input given (use --input or --family)");
    return igusa::parse_input(load_input(o.input), Int(o.p));
}

int cmd_newton(const Options& o) {
    auto ctx = make_context(o);
    auto in = parse_job_input(o);
    igusa::NewtonPolyhedron P;
    if (in.is_series) {
        auto gens = igusa::minimal_support(in.series);
        auto modp = igusa::reduce_mod(in.series, 1, ctx.p);
        P = igusa::build_polyhedron(gens, in.series.vars(), modp.support(), ctx.max_vars);
    } else {
        P = igusa::build_polyhedron(in.poly(), ctx.max_vars);
    }
    Json out = igusa::render_polyhedron(P);
    auto report = igusa::verify_partition(P, o.box);
    out["partition_check"] = Json{{"box", o.box}, {"pass", report.pass},
                                  {"points", report.points_checked}};
    std::cout << out.dump(2) << "\n";
    return 0;
}

int cmd_check_nondegenerate(const Options& o) {
    auto ctx = make_context(o);
    auto in = parse_job_input(o);
    igusa::PolySeries f = in.is_series ? igusa::reduce_mod(in.series, 1, ctx.p) : in.poly();
    igusa::NewtonPolyhedron P;
    if (in.is_series) {
        auto gens = igusa::minimal_support(in.series);
        P = igusa::build_polyhedron(gens, in.series.vars(), f.support(), ctx.max_vars);
    } else {
        P = igusa::build_polyhedron(f, ctx.max_vars);
    }
    Json out;
    out["p"] = ctx.p.str();
    auto witness = igusa::find_degenerate_face(f, P, ctx);
    out["nondegenerate"] = !witness.has_value();
    if (witness) {
        Json w;
        w["face"] = witness->face_id;
        w["point"] = igusa::render_ivec(witness->point);
        out["witness"] = std::move(w);
    } else {
        out["witness"] = nullptr;
    }
    Json faces = Json::array();
    for (const auto& tau : P.faces) {
        Json jf;
        jf["id"] = tau.id;
        jf["face_polynomial"] = igusa::poly_display(igusa::face_polynomial(f, tau).poly);
        jf["N"] = igusa::count_face_zeros(f, tau, ctx).n_tau;
        faces.push_back(std::move(jf));
    }
    out["faces"] = std::move(faces);
    std::cout << out.dump(2) << "\n";
    return 0;
}

int cmd_zeta(const Options& o) {
    auto ctx = make_context(o);
    auto in = parse_job_input(o);
    auto breakdown = igusa::igusa_zeta_newton_detailed(in.poly(), ctx);
    Json out = igusa::render_zeta(breakdown.zeta, o.latex);
    Json faces = Json::array();
    for (const auto& c : breakdown.contributions) {
        Json jf;
        jf["face"] = c.face_id;
        jf["N"] = c.n_tau;
        jf["unit_box"] = igusa::render_zeta(c.unit_box);
        if (!c.cone.is_zero()) jf["cone_sum"] = igusa::render_zeta(c.cone);
        faces.push_back(std::move(jf));
    }
    out["faces"] = std::move(faces);
    std::cout << out.dump(2) << "\n";
    return 0;
}

int cmd_zeta1(const Options& o) {
    auto ctx = make_context(o);
    auto in = parse_job_input(o);
    auto result = igusa::one_var_zeta_detailed(in.poly(), ctx, o.depth_limit);
    Json out = igusa::render_zeta(result.zeta, o.latex);
    Json leaves = Json::array();
    for (const auto& leaf : result.leaves) {
        Json jl;
        jl["center"] = leaf.center.str();
        jl["m"] = leaf.m;
        jl["status"] = igusa::ball_kind_name(leaf.status.kind);
        if (leaf.status.kind == igusa::BallKind::ConstantNorm) jl["v"] = leaf.status.v0;
        if (leaf.status.kind == igusa::BallKind::DominantTerm) {
            jl["n0"] = leaf.status.n0;
            jl["v_b"] = leaf.status.v_b;
        }
        jl["value"] = igusa::render_zeta(leaf.value);
        leaves.push_back(std::move(jl));
    }
    out["balls"] = std::move(leaves);
    if (o.trace) out["trace"] = igusa::render_ball_node(result.tree);
    std::cout << out.dump(2) << "\n";
    return 0;
}

int cmd_oracle_count(const Options& o) {
    auto ctx = make_context(o);
    auto in = parse_job_input(o);
    auto C = igusa::count_solutions(in.poly(), ctx, o.M);
    Json out = igusa::render_counts(C);
    out["M"] = o.M;
    std::cout << out.dump(2) << "\n";
    return 0;
}

int cmd_truncate_scan(const Options& o) {
    auto ctx = make_context(o);
    auto in = parse_job_input(o);
    igusa::ScanEngine engine;
    if (o.engine == "newton") engine = igusa::ScanEngine::Newton;
    else if (o.engine == "onevar") engine = igusa::ScanEngine::OneVar;
    else throw igusa::ValidationError("engine must be 'newton' or 'onevar'");

    auto scan = igusa::scan(in.series, ctx, o.d_min, o.d_max, engine, o.depth_limit);
    Json out;
    out["p"] = ctx.p.str();
    out["engine"] = o.engine;
    if (!in.series.family_tag().empty()) out["family"] = in.series.family_tag();
    Json results = Json::array();
    for (const auto& entry : scan.results) {
        Json je;
        je["D"] = entry.D;
        if (entry.zeta) je["zeta"] = igusa::render_zeta(*entry.zeta, o.latex);
        else je["error"] = entry.error;
        results.push_back(std::move(je));
    }
    out["results"] = std::move(results);
    Json verdict;
    switch (scan.verdict.kind) {
    case igusa::ScanVerdict::Kind::StabilizedAt:
        verdict["kind"] = "stabilized";
        verdict["N"] = scan.verdict.N;
        break;
    case igusa::ScanVerdict::Kind::NonStabilizing:
        verdict["kind"] = "non-stabilizing";
        verdict["proof"] = scan.verdict.proof_tag;
        break;
    case igusa::ScanVerdict::Kind::Inconclusive:
        verdict["kind"] = "inconclusive";
        break;
    }
    if (!scan.verdict.note.empty()) verdict["note"] = scan.verdict.note;
    out["verdict"] = std::move(verdict);
    std::cout << out.dump(2) << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact Igusa local zeta functions of polynomials and restricted power series"};
    app.require_subcommand(1);

    Options o;
    app.add_option("--enum-limit", o.enum_limit, "max points any enumeration may visit")
        ->envname("IGUSA_ENUM_LIMIT")
        ->capture_default_str();
    app.add_option("--max-vars", o.max_vars, "variable-count ceiling for polyhedra")
        ->envname("IGUSA_MAX_VARS")
        ->capture_default_str();
    app.add_option("--depth-limit", o.depth_limit, "ball recursion depth ceiling")
        ->envname("IGUSA_DEPTH_LIMIT")
        ->capture_default_str();

    auto add_common = [&](CLI::App* sub, bool family_ok) {
        sub->fallthrough(); // global ceilings may follow the subcommand name
        sub->add_option("--p", o.p, "prime p")->required();
        sub->add_option("--input", o.input, "input file path or inline JSON");
        if (family_ok)
            sub->add_option("--family", o.family, "built-in series family (counterexample, x2tail)");
    };

    auto* newton = app.add_subcommand("newton", "Newton polyhedron, faces and cones as JSON");
    add_common(newton, true);
    newton->add_option("--box", o.box, "partition check box bound")->capture_default_str();

    auto* nondeg = app.add_subcommand("check-nondegenerate",
                                      "per-face non-degeneracy verdicts and N_tau table");
    add_common(nondeg, true);

    auto* zeta = app.add_subcommand("zeta", "Z_f(s) via the Newton-polyhedron formula");
    add_common(zeta, false);
    zeta->add_flag("--latex", o.latex, "add a LaTeX rendering in terms of p^{-s}");

    auto* zeta1 = app.add_subcommand("zeta1", "Z_f(s) via one-variable ball decomposition");
    add_common(zeta1, false);
    zeta1->add_flag("--latex", o.latex, "add a LaTeX rendering in terms of p^{-s}");
    zeta1->add_flag("--trace", o.trace, "include the ball decomposition tree");

    auto* oracle = app.add_subcommand("oracle-count", "congruence counts N_m and series oracle");
    add_common(oracle, false);
    oracle->add_option("--M", o.M, "count solutions mod p^m for m <= M")->capture_default_str();

    auto* tscan = app.add_subcommand("truncate-scan", "compare Z_{f_D} across truncation degrees");
    add_common(tscan, true);
    tscan->add_option("--d-min", o.d_min, "first truncation degree")->capture_default_str();
    tscan->add_option("--d-max", o.d_max, "last truncation degree")->capture_default_str();
    tscan->add_option("--engine", o.engine, "newton | onevar")->capture_default_str();
    tscan->add_flag("--latex", o.latex, "add LaTeX renderings");

    CLI11_PARSE(app, argc, argv);

    try {
        if (newton->parsed()) return cmd_newton(o);
        if (nondeg->parsed()) return cmd_check_nondegenerate(o);
        if (zeta->parsed()) return cmd_zeta(o);
        if (zeta1->parsed()) return cmd_zeta1(o);
        if (oracle->parsed()) return cmd_oracle_count(o);
        if (tscan->parsed()) return cmd_truncate_scan(o);
    } catch (const igusa::Error& e) {
        Json err;
        err["error"] = e.what();
        std::cerr << err.dump(2) << "\n";
        return exit_code_for(e);
    } catch (const std::exception& e) {
        Json err;
        err["error"] = e.what();
        std::cerr << err.dump(2) << "\n";
        return 1;
    }
    return 1;
}
