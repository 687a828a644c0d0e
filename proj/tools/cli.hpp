#pragma once

// polybound command line: argument grammar and dispatch. The entry point is
// run(), kept separate from main() so tests can drive it in-process.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "polybound/polybound.hpp"

namespace polybound::cli {

enum Exit : int { ok = 0, usage = 2, mismatch = 3 };

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace detail {

inline std::uint64_t parse_uint(const std::string& flag, const std::string& text)
{
    try {
        const auto v = parse_integer_list(text);
        if (v.size() == 1) return v.front();
    } catch (const std::invalid_argument&) {
    }
    throw UsageError(flag + ": not a decimal integer: '" + text + "'");
}

inline std::vector<std::uint64_t> parse_list(const std::string& flag, const std::string& text)
{
    try {
        return parse_integer_list(text);
    } catch (const std::invalid_argument& e) {
        throw UsageError(flag + ": " + e.what());
    }
}

inline Format parse_format(const std::string& s)
{
    if (s == "exact") return Format::exact;
    if (s == "log2") return Format::log2;
    throw UsageError("--format: expected exact|log2, got '" + s + "'");
}

inline void print_trace(std::ostream& out, const IBoundTrace& t, Format f, int indent)
{
    const std::string pad(2 * indent, ' ');
    out << pad << "I_" << t.level << " " << polybound::detail::echo(t.profile) << " = " << render(t.total, f) << "\n";
    if (t.is_leaf()) return;
    out << pad << "  base factor: " << render(t.base_factor, f) << "\n";
    out << pad << "  [G/G_1 : J] <= " << render(t.index_J, f) << ", profile(J) = " << polybound::detail::echo(t.profile_J) << "\n";
    print_trace(out, *t.sub_J, f, indent + 1);
    out << pad << "  [J : K] <= " << render(t.index_K, f) << ", profile(K) = " << polybound::detail::echo(t.profile_K) << "\n";
    print_trace(out, *t.sub_K, f, indent + 1);
}

inline void print_discrepancy(std::ostream& out, const std::string& label, const Log2Discrepancy& d)
{
    out << label << ": depth " << d.depth << ", " << d.value << "\n";
}

} // namespace detail

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Upper bounds for trivializing central extensions of polysurface groups "
                 "and Kodaira fibration cover degrees",
                 "polybound"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all", "Print help for all subcommands");

    std::string format_s = "exact";
    bool json = false;
    std::string out_file;
    auto common = [&](CLI::App* sub, bool with_format = true) {
        if (with_format) sub->add_option("--format", format_s, "exact|log2")->capture_default_str();
        sub->add_flag("--json", json, "Emit a JSON report");
        sub->add_option("--out", out_file, "Also write the JSON report to FILE");
    };

    // hall
    std::string index_s, rank_s;
    auto* hall = app.add_subcommand("hall", "Number of index-d subgroups of the free group of rank n");
    hall->add_option("--index", index_s, "d")->required();
    hall->add_option("--rank", rank_s, "n")->required();
    common(hall);

    // gl-order
    std::string gl_rank_s;
    bool literal = false;
    auto* gl = app.add_subcommand("gl-order", "|GL(m, F_2)| = |Out((Z/2)^m)|");
    gl->add_option("--rank", gl_rank_s, "m")->required();
    gl->add_flag("--literal-out-product", literal,
                 "Analyse the product with 2^m as upper limit instead of evaluating it");
    common(gl);

    // genus-bound
    std::string genus_s, gindex_s;
    auto* gb = app.add_subcommand("genus-bound", "Genus bound d(g-1)+1 for an index-d subgroup");
    gb->add_option("--genus", genus_s, "g")->required();
    gb->add_option("--index", gindex_s, "d")->required();
    common(gb);

    // ibound
    std::string factors_s, profile_s;
    bool trace = false;
    auto* ib = app.add_subcommand("ibound", "Canonical recursion I_n(A, G)");
    ib->add_option("--invariant-factors", factors_s, "e.g. 2,2,4")->required();
    ib->add_option("--profile", profile_s, "genus profile, e.g. 2,3")->required();
    ib->add_flag("--trace", trace, "Print the recursion tree");
    common(ib);

    // compare-closed-forms
    std::string which = "i2";
    auto* cf = app.add_subcommand("compare-closed-forms", "Canonical recursion vs literal closed form");
    cf->add_option("--which", which, "i2|i3")->capture_default_str();
    cf->add_option("--invariant-factors", factors_s, "e.g. 2")->required();
    cf->add_option("--profile", profile_s, "length 2 for i2, length 3 for i3")->required();
    common(cf);

    // cover-degree
    std::string dim_s, fiber_s, preset_s = "proof", base_s;
    std::vector<std::string> overrides;
    bool show_stages = false;
    auto* cd = app.add_subcommand("cover-degree", "Degree bound for X_2 -> X");
    cd->add_option("--dim", dim_s, "n >= 2")->required();
    cd->add_option("--genus", fiber_s, "fiber genus g >= 2")->required();
    cd->add_option("--preset", preset_s, "proof|statement|kunneth")->capture_default_str();
    cd->add_option("--override", overrides, "k=v with k in g1_mu, g1_mua, g1_rho");
    cd->add_option("--base-profile", base_s, "genus profile of the base, length n-1 (default all 2)");
    cd->add_flag("--stages", show_stages, "Print every stage factor");
    common(cd);

    // example
    std::string ex_dim_s, ex_genus_s, mu_s = "2", mua_s = "2", rho_s = "2";
    bool compare = false;
    auto* ex = app.add_subcommand("example", "Worked examples at n = 2, 3, 4, evaluated literally");
    ex->add_option("--dim", ex_dim_s, "2, 3 or 4")->required();
    ex->add_option("--genus", ex_genus_s, "fiber genus g >= 2")->required();
    ex->add_option("--mu", mu_s, "g1(ker mu) at n=3, g3(ker mu) at n=4")->capture_default_str();
    ex->add_option("--mua", mua_s, "g1(ker mu_a) / g3(ker mu_a)")->capture_default_str();
    ex->add_option("--rho", rho_s, "g1(ker rho) / g3(ker rho)")->capture_default_str();
    ex->add_flag("--compare", compare, "Compare against the pipeline with propagated parameters");
    ex->add_option("--preset", preset_s, "pipeline preset for --compare")->capture_default_str();
    common(ex);

    // verify
    std::string suite, max_s;
    auto* vf = app.add_subcommand("verify", "Check formulas against brute-force oracles");
    vf->add_option("--suite", suite, "hall|gl|sections|euler")->required();
    vf->add_option("--max", max_s, "trim the suite's grid");
    common(vf, false);

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return Exit::ok;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return Exit::ok;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return Exit::usage;
    }

    using detail::parse_uint;
    try {
        const Budget budget = Budget::from_env();
        const Format fmt = detail::parse_format(format_s);
        nlohmann::json report;
        std::ostringstream text;
        int code = Exit::ok;

        if (hall->parsed()) {
            const auto d = parse_uint("--index", index_s), n = parse_uint("--rank", rank_s);
            if (d == 0 || n == 0) throw UsageError("hall: --index and --rank must be >= 1");
            const BoundValue v = hall_count(d, n, budget);
            text << render(v, fmt) << "\n";
            report = {{"command", "hall"}, {"index", d}, {"rank", n}, {"value", to_json(v)},
                      {"formula_ref", "N(d,n) = d (d!)^(n-1) - sum_{i<d} ((d-i)!)^(n-1) N(i,n)"}};
        } else if (gl->parsed()) {
            const auto m = parse_uint("--rank", gl_rank_s);
            if (literal) {
                const LiteralOutProduct lp = literal_out_product(m, budget);
                text << "rank: " << m << "\n"
                     << "factor count (order 2^m): " << render(lp.factor_count, fmt) << "\n"
                     << "positive factors: i = 1.." << lp.positive_factors << "\n"
                     << "zero factor: i = " << lp.zero_factor_index << "\n"
                     << "literal product: not evaluated (zero factor, then negative factors)\n"
                     << "rank reading |GL(m,F_2)|: " << render(lp.rank_reading, fmt) << "\n";
                report = {{"command", "gl-order"},
                          {"rank", m},
                          {"literal_out_product",
                           {{"factor_count", to_json(lp.factor_count)},
                            {"positive_factors", lp.positive_factors},
                            {"zero_factor_index", lp.zero_factor_index},
                            {"evaluated", false}}},
                          {"value", to_json(lp.rank_reading)},
                          {"formula_ref", "prod_{i=1}^{m} (2^m - 2^{i-1})"}};
            } else {
                const BoundValue v = out_order_elementary_2(m, budget);
                text << render(v, fmt) << "\n";
                report = {{"command", "gl-order"}, {"rank", m}, {"value", to_json(v)},
                          {"formula_ref", "prod_{i=1}^{m} (2^m - 2^{i-1})"}};
            }
        } else if (gb->parsed()) {
            const auto g = parse_uint("--genus", genus_s), d = parse_uint("--index", gindex_s);
            const BoundValue v = genus_bound(g, BoundValue::exact(d, budget), budget);
            text << render(v, fmt) << "\n";
            report = {{"command", "genus-bound"}, {"genus", g}, {"index", d}, {"value", to_json(v)},
                      {"formula_ref", "g' <= d(g-1)+1"}};
        } else if (ib->parsed()) {
            const FiniteAbelianGroup a(detail::parse_list("--invariant-factors", factors_s));
            const GenusProfile p(detail::parse_list("--profile", profile_s));
            const auto t = i_bound(a, p, budget);
            if (trace)
                detail::print_trace(text, *t, fmt, 0);
            else
                text << render(t->total, fmt) << "\n";
            report = {{"command", "ibound"}, {"group", to_json(a)}, {"value", to_json(t->total)},
                      {"trace", to_json(*t)}};
        } else if (cf->parsed()) {
            if (which != "i2" && which != "i3") throw UsageError("--which: expected i2|i3, got '" + which + "'");
            const FiniteAbelianGroup a(detail::parse_list("--invariant-factors", factors_s));
            const GenusProfile p(detail::parse_list("--profile", profile_s));
            const std::size_t want = which == "i2" ? 2 : 3;
            if (p.length() != want)
                throw UsageError("--profile: --which " + which + " needs length " + std::to_string(want));
            const ClosedFormComparison c = closed_form_compare(a, p, budget);
            text << "canonical: " << render(c.canonical, fmt) << "\n"
                 << "literal: " << render(c.literal, fmt) << "\n";
            if (c.i3)
                text << "g_a: " << render(c.i3->g_a, fmt) << "\n"
                     << "g_b: " << render(c.i3->g_b, fmt) << "\n";
            text << "verdict: " << to_string(c.verdict) << "\n";
            detail::print_discrepancy(text, "log2 discrepancy", c.discrepancy);
            report = to_json(c);
            report["command"] = "compare-closed-forms";
            report["which"] = which;
        } else if (cd->parsed() || (ex->parsed() && compare)) {
            PipelineInputs inp;
            const bool is_cd = cd->parsed();
            inp.dim = parse_uint("--dim", is_cd ? dim_s : ex_dim_s);
            inp.fiber_genus = parse_uint("--genus", is_cd ? fiber_s : ex_genus_s);
            const auto preset = parse_rank_preset(preset_s);
            if (!preset) throw UsageError("--preset: expected proof|statement|kunneth, got '" + preset_s + "'");
            inp.preset = *preset;
            if (!base_s.empty()) inp.base_profile = GenusProfile(detail::parse_list("--base-profile", base_s));
            for (const auto& o : overrides) {
                const auto eq = o.find('=');
                if (eq == std::string::npos) throw UsageError("--override: expected k=v, got '" + o + "'");
                inp.genus_overrides[o.substr(0, eq)] = parse_uint("--override " + o.substr(0, eq), o.substr(eq + 1));
            }
            if (is_cd) {
                const BoundReport r = total_degree_bound(inp, budget);
                if (show_stages) {
                    for (const auto& s : r.stages)
                        text << s.name << ": " << render(s.factor, fmt) << "  [" << s.formula_ref << "]\n";
                    text << "total: ";
                }
                text << render(r.total, fmt) << "\n";
                if (show_stages)
                    for (const auto& n : r.notes) text << "note: " << n << "\n";
                report = to_json(r);
                report["command"] = "cover-degree";
            } else {
                const ExampleComparison c = compare_with_example(inp, budget);
                text << "pipeline: " << render(c.pipeline.total, fmt) << "\n"
                     << "example: " << render(c.example.value, fmt) << "\n";
                for (const auto& [k, v] : c.parameters) text << k << ": " << render(v, fmt) << "\n";
                text << "verdict: " << to_string(c.verdict) << "\n";
                detail::print_discrepancy(text, "log2 discrepancy", c.discrepancy);
                for (const auto& [k, d] : c.factor_discrepancies) detail::print_discrepancy(text, k, d);
                report = to_json(c);
                report["command"] = "example";
            }
        } else if (ex->parsed()) {
            const auto n = parse_uint("--dim", ex_dim_s), g = parse_uint("--genus", ex_genus_s);
            nlohmann::json params;
            if (n == 2) {
                const auto preset = parse_rank_preset(preset_s);
                if (!preset) throw UsageError("--preset: expected proof|statement|kunneth, got '" + preset_s + "'");
                const BoundValue v = example_n2_closed_form(g, *preset, budget);
                text << render(v, fmt) << "\n";
                report = {{"command", "example"}, {"dim", n}, {"fiber_genus", g}, {"preset", to_string(*preset)},
                          {"value", to_json(v)},
                          {"formula_ref", "2^{4g+2} |GL(4g-2)| |GL(2g)| |GL(rank_L)|"}};
            } else if (n == 3 || n == 4) {
                const BoundValue mu = BoundValue::exact(parse_uint("--mu", mu_s), budget);
                const BoundValue mua = BoundValue::exact(parse_uint("--mua", mua_s), budget);
                const BoundValue rho = BoundValue::exact(parse_uint("--rho", rho_s), budget);
                const ExampleEvaluation e =
                    n == 3 ? example_n3(g, mu, mua, rho, budget) : example_n4(g, mu, mua, rho, budget);
                text << (n == 3 ? "U: " : "T: ") << render(e.exponent, Format::exact) << "\n"
                     << "value: " << render(e.value, fmt) << "\n"
                     << "I_a: " << render(e.I_a, fmt) << "\n"
                     << "I_b: " << render(e.I_b, fmt) << "\n"
                     << "I_c: " << render(e.I_c, fmt) << "\n";
                report = to_json(e);
                report["command"] = "example";
                report["dim"] = n;
                report["fiber_genus"] = g;
            } else {
                throw UsageError("--dim: expected 2, 3 or 4, got '" + ex_dim_s + "'");
            }
        } else if (vf->parsed()) {
            std::optional<std::uint64_t> max;
            if (!max_s.empty()) max = parse_uint("--max", max_s);
            if (suite != "hall" && suite != "gl" && suite != "sections" && suite != "euler")
                throw UsageError("--suite: expected hall|gl|sections|euler, got '" + suite + "'");
            const VerifyReport r = verify_suite(suite, max);
            text << "suite " << r.suite << ": " << r.checked << " checks, " << r.mismatches.size()
                 << " mismatches\n";
            for (const auto& m : r.mismatches) text << "  " << m << "\n";
            report = to_json(r);
            report["command"] = "verify";
            if (!r.ok()) code = Exit::mismatch;
        }

        if (json)
            out << report.dump(2) << "\n";
        else
            out << text.str();
        if (!out_file.empty()) {
            std::ofstream f(out_file);
            if (!f) throw UsageError("--out: cannot open '" + out_file + "'");
            f << report.dump(2) << "\n";
        }
        return code;
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return Exit::usage;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return Exit::usage;
    } catch (const std::domain_error& e) {
        err << "error: " << e.what() << "\n";
        return Exit::usage;
    }
}

} // namespace polybound::cli
