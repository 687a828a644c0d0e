#pragma once

// Text and JSON rendering of bound values, traces and reports.

#include <string>

#include <nlohmann/json.hpp>

#include "polybound/bound_value.hpp"
#include "polybound/extension_bounds.hpp"
#include "polybound/kodaira_pipeline.hpp"
#include "polybound/verify.hpp"

namespace polybound {

enum class Format { exact, log2 };

inline nlohmann::json to_json(const BoundValue& v)
{
    if (v.is_exact()) return {{"kind", "exact"}, {"decimal", v.exact_value().get_str()}};
    if (v.is_tower())
        return {{"kind", "tower"}, {"level", v.level()}, {"log2_magnitude", v.magnitude().to_fraction()}};
    return {{"kind", "beyond"}};
}

/// exact: decimal, or 2^x (x an integer or p/q) nested per tower level.
/// log2: up-rounded log2 with 6 decimals; deeper towers keep 2^(...) around it,
/// adding levels until the innermost number is below 2^64.
inline std::string render(const BoundValue& v, Format f)
{
    if (v.is_beyond()) return f == Format::exact ? "beyond-representable" : "inf";
    if (f == Format::exact) {
        if (v.is_exact()) return v.exact_value().get_str();
        const Magnitude& m = v.magnitude();
        std::string s = m.is_integer() ? "2^" + m.floor().get_str() : "2^(" + m.to_fraction() + ")";
        for (int k = 1; k < v.level(); ++k) s = "2^(" + s + ")";
        return s;
    }
    if (v.is_zero()) return "-inf";
    if (v.is_exact()) return log2_upper(v).to_decimal_up();
    // big magnitudes would print as huge decimals; take further logs instead
    Magnitude x = v.magnitude();
    int wraps = v.level() - 1;
    while (!x.le_pow2(64)) {
        x = log2_up(x);
        ++wraps;
    }
    std::string s = x.to_decimal_up();
    for (int k = 0; k < wraps; ++k) s = "2^(" + s + ")";
    return s;
}

inline nlohmann::json to_json(const PropagatedProfile& p)
{
    nlohmann::json a = nlohmann::json::array();
    for (const auto& g : p) a.push_back(to_json(g));
    return a;
}

inline nlohmann::json to_json(const FiniteAbelianGroup& a)
{
    nlohmann::json runs = nlohmann::json::array();
    for (const auto& r : a.runs()) runs.push_back({{"factor", r.factor}, {"multiplicity", r.multiplicity}});
    return {{"invariant_factors", runs}, {"exponent", a.exponent()}, {"rank", a.rank()}};
}

inline nlohmann::json to_json(const IBoundTrace& t)
{
    nlohmann::json j{{"level", t.level}, {"profile", to_json(t.profile)}, {"total", to_json(t.total)}};
    if (t.is_leaf()) {
        j["formula_ref"] = "I_1 = e(A)";
        return j;
    }
    j["formula_ref"] = "I_n = e^3 |A|^{2e g1} (e!)^{2 g1 + r} * I_{n-1}(A, J) * I_{n-1}(A, K)";
    j["base_factor"] = to_json(t.base_factor);
    j["index_J"] = to_json(t.index_J);
    j["profile_J"] = to_json(t.profile_J);
    j["index_K"] = to_json(t.index_K);
    j["profile_K"] = to_json(t.profile_K);
    j["sub_J"] = to_json(*t.sub_J);
    j["sub_K"] = to_json(*t.sub_K);
    return j;
}

inline nlohmann::json to_json(const Log2Discrepancy& d) { return {{"depth", d.depth}, {"value", d.value}}; }

inline nlohmann::json to_json(const ClosedFormComparison& c)
{
    nlohmann::json j{{"n", c.n},
                     {"canonical", to_json(c.canonical)},
                     {"literal", to_json(c.literal)},
                     {"verdict", to_string(c.verdict)},
                     {"log2_discrepancy", to_json(c.discrepancy)}};
    if (c.i3) {
        j["g_a"] = to_json(c.i3->g_a);
        j["g_b"] = to_json(c.i3->g_b);
    }
    return j;
}

inline nlohmann::json to_json(const PipelineInputs& in)
{
    nlohmann::json ov = nlohmann::json::object();
    for (const auto& [k, v] : in.genus_overrides) ov[k] = v;
    return {{"dim", in.dim},
            {"fiber_genus", in.fiber_genus},
            {"base_profile", in.effective_base_profile().genera()},
            {"preset", to_string(in.preset)},
            {"overrides", ov}};
}

inline nlohmann::json to_json(const StageBound& s)
{
    nlohmann::json echo = nlohmann::json::object();
    for (const auto& [k, v] : s.inputs_echo) echo[k] = v;
    return {{"name", s.name}, {"factor", to_json(s.factor)}, {"formula_ref", s.formula_ref}, {"inputs", echo}};
}

inline nlohmann::json to_json(const BoundReport& r)
{
    nlohmann::json stages = nlohmann::json::array();
    for (const auto& s : r.stages) stages.push_back(to_json(s));
    return {{"inputs", to_json(r.inputs)},
            {"stages", stages},
            {"total", to_json(r.total)},
            {"preset", to_string(r.inputs.preset)},
            {"notes", r.notes}};
}

inline nlohmann::json to_json(const ExampleEvaluation& e)
{
    return {{"exponent", to_json(e.exponent)},
            {"value", to_json(e.value)},
            {"I_a", to_json(e.I_a)},
            {"I_b", to_json(e.I_b)},
            {"I_c", to_json(e.I_c)}};
}

inline nlohmann::json to_json(const ExampleComparison& c)
{
    nlohmann::json params = nlohmann::json::object();
    for (const auto& [k, v] : c.parameters) params[k] = to_json(v);
    nlohmann::json factors = nlohmann::json::object();
    for (const auto& [k, v] : c.factor_discrepancies) factors[k] = to_json(v);
    return {{"dim", c.dim},
            {"pipeline", to_json(c.pipeline)},
            {"example", to_json(c.example)},
            {"parameters", params},
            {"verdict", to_string(c.verdict)},
            {"log2_discrepancy", to_json(c.discrepancy)},
            {"factor_discrepancies", factors}};
}

inline nlohmann::json to_json(const VerifyReport& r)
{
    return {{"suite", r.suite}, {"checked", r.checked}, {"ok", r.ok()}, {"mismatches", r.mismatches}};
}

} // namespace polybound
