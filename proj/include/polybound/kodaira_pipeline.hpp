#pragma once

// Degree bound for the cover X_2 -> X of an n-dimensional iterated Kodaira
// fibration with fiber genus g, stage by stage, plus literal evaluators for
// the worked examples at n = 2, 3, 4.

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "polybound/bound_value.hpp"
#include "polybound/counting.hpp"
#include "polybound/extension_bounds.hpp"
#include "polybound/group_model.hpp"

namespace polybound {

enum class RankPreset { statement, proof, kunneth_sum };

inline const char* to_string(RankPreset p)
{
    switch (p) {
    case RankPreset::statement: return "statement";
    case RankPreset::proof: return "proof";
    case RankPreset::kunneth_sum: return "kunneth";
    }
    return "proof";
}

inline std::optional<RankPreset> parse_rank_preset(const std::string& s)
{
    if (s == "statement") return RankPreset::statement;
    if (s == "proof") return RankPreset::proof;
    if (s == "kunneth" || s == "kunneth_sum") return RankPreset::kunneth_sum;
    return std::nullopt;
}

// rank_L below is a machine integer; 2^(4g) (g - 1) stays under 2^64 up to g = 15.
inline constexpr std::uint64_t max_fiber_genus = 15;

inline void require_fiber_genus(std::uint64_t g)
{
    if (g < 2) throw std::invalid_argument("fiber genus must be >= 2, got " + std::to_string(g));
    if (g > max_fiber_genus)
        throw std::invalid_argument("fiber genus " + std::to_string(g) + " exceeds supported maximum " +
                                    std::to_string(max_fiber_genus));
}

/// rank of H_1(L, Z/2) under each of the three readings.
///   statement: 2g + 2^(2g+1)(g-1) + 3
///   proof:     2g + 2^(4g)(g-1) + 3
///   kunneth:   (4g-2) + (2^(4g)(g-1) + 2) + 1
inline std::uint64_t rank_L(std::uint64_t g, RankPreset preset)
{
    require_fiber_genus(g);
    switch (preset) {
    case RankPreset::statement: return 2 * g + (std::uint64_t{1} << (2 * g + 1)) * (g - 1) + 3;
    case RankPreset::proof: return 2 * g + (std::uint64_t{1} << (4 * g)) * (g - 1) + 3;
    case RankPreset::kunneth_sum: return 4 * g + 1 + (std::uint64_t{1} << (4 * g)) * (g - 1);
    }
    throw std::invalid_argument("unknown preset");
}

/// Q(g) = |H_1(L, Z/2)| = 2^rank_L.
inline BoundValue q_of_g(std::uint64_t g, RankPreset preset, const Budget& budget = {})
{
    return pow(BoundValue::exact(2), BoundValue::exact(rank_L(g, preset)), budget);
}

/// O(g) = |H_1(R', Z/2)| = 2^(4g-2).
inline BoundValue o_of_g(std::uint64_t g, const Budget& budget = {})
{
    require_fiber_genus(g);
    return pow(BoundValue::exact(2), BoundValue::exact(4 * g - 2), budget);
}

/// Override keys: replace the propagated first genus of a kernel profile.
inline const std::vector<std::string>& override_keys()
{
    static const std::vector<std::string> keys{"g1_mu", "g1_mua", "g1_rho"};
    return keys;
}

struct PipelineInputs {
    std::uint64_t dim = 2;
    std::uint64_t fiber_genus = 2;
    std::optional<GenusProfile> base_profile;  // length dim-1; all 2s when absent
    RankPreset preset = RankPreset::proof;
    std::map<std::string, std::uint64_t> genus_overrides;

    GenusProfile effective_base_profile() const
    {
        if (base_profile) return *base_profile;
        return GenusProfile(std::vector<std::uint64_t>(dim - 1, 2));
    }

    void validate() const
    {
        if (dim < 2) throw std::invalid_argument("dim must be >= 2, got " + std::to_string(dim));
        require_fiber_genus(fiber_genus);
        if (base_profile && base_profile->length() != dim - 1)
            throw std::invalid_argument("base profile must have length dim-1 = " + std::to_string(dim - 1));
        for (const auto& [k, v] : genus_overrides) {
            bool known = false;
            for (const auto& key : override_keys()) known = known || key == k;
            if (!known) throw std::invalid_argument("unknown override '" + k + "'");
            if (v < 2) throw std::invalid_argument("override " + k + " must be >= 2, got " + std::to_string(v));
        }
    }
};

struct StageBound {
    std::string name;
    BoundValue factor;
    std::string formula_ref;
    std::vector<std::pair<std::string, std::string>> inputs_echo;
};

/// Stage data kept alongside the factors for reporting and comparisons.
struct PipelineDetail {
    std::vector<StageBound> stages;
    PropagatedProfile base;
    PropagatedProfile ker_mu, ya, ker_mua, yprime, ker_rho;
    BoundValue gl_2g, gl_4g2, gl_rank;
    BoundValue I_a, I_b, I_c;  // I_{n-1} for ker mu_a, ker rho, ker mu
    std::uint64_t rank = 0;
};

namespace detail {

inline std::string echo(const BoundValue& v)
{
    if (v.is_exact()) return v.exact_value().get_str();
    if (v.is_tower()) return "tower(" + std::to_string(v.level()) + ", " + v.magnitude().to_fraction() + ")";
    return "beyond";
}

inline std::string echo(const PropagatedProfile& p)
{
    std::string s = "[";
    for (std::size_t i = 0; i < p.size(); ++i) s += (i ? "," : "") + echo(p[i]);
    return s + "]";
}

inline PropagatedProfile apply_override(PropagatedProfile p, const PipelineInputs& inp, const std::string& key,
                                        const Budget& budget)
{
    auto it = inp.genus_overrides.find(key);
    if (it != inp.genus_overrides.end()) p.front() = BoundValue::exact(it->second, budget);
    return p;
}

} // namespace detail

inline PipelineDetail pipeline_detail(const PipelineInputs& inp, const Budget& budget = {})
{
    inp.validate();
    const std::uint64_t g = inp.fiber_genus;
    PipelineDetail d;
    d.rank = rank_L(g, inp.preset);
    d.base = to_propagated(inp.effective_base_profile());
    d.gl_2g = out_order_elementary_2(2 * g, budget);
    d.gl_4g2 = out_order_elementary_2(4 * g - 2, budget);
    d.gl_rank = out_order_elementary_2(d.rank, budget);
    const auto a1 = FiniteAbelianGroup::elementary(2, 2 * g);
    const auto a2 = FiniteAbelianGroup::elementary(2, 4 * g - 2);
    const auto a3 = FiniteAbelianGroup::elementary(2, d.rank);

    // Xa -> X
    d.ker_mu = detail::apply_override(subgroup_profile(d.base, d.gl_2g, budget), inp, "g1_mu", budget);
    d.I_c = i_bound(a1, d.ker_mu, budget)->total;
    StageBound s1{"Xa->X", mul(d.gl_2g, d.I_c, budget),
                  "|Out((Z/2)^{2g})| * I_{n-1}((Z/2)^{2g}, ker mu)",
                  {{"A", a1.to_string()}, {"out_order", detail::echo(d.gl_2g)},
                   {"profile(ker mu)", detail::echo(d.ker_mu)}, {"I_c", detail::echo(d.I_c)}}};

    // Xb -> Xa
    StageBound s2{"Xb->Xa", BoundValue::exact(2), "double cover f: Xb -> Xa", {{"degree", "2"}}};

    // X' -> Xb; fibers now have genus 2g-1
    d.ya = subgroup_profile(d.base, s1.factor, budget);
    d.ker_mua = detail::apply_override(subgroup_profile(d.ya, d.gl_4g2, budget), inp, "g1_mua", budget);
    d.I_a = i_bound(a2, d.ker_mua, budget)->total;
    StageBound s3{"X'->Xb", mul(d.gl_4g2, d.I_a, budget),
                  "|Out((Z/2)^{4g-2})| * I_{n-1}((Z/2)^{4g-2}, ker mu_a)",
                  {{"A", a2.to_string()}, {"out_order", detail::echo(d.gl_4g2)},
                   {"profile(Y_a)", detail::echo(d.ya)}, {"profile(ker mu_a)", detail::echo(d.ker_mua)},
                   {"I_a", detail::echo(d.I_a)}}};

    // X'' -> X'
    StageBound s4{"X''->X'", o_of_g(g, budget), "|H_1(R', Z/2)| = O(g) = 2^{4g-2}",
                  {{"O(g)", detail::echo(o_of_g(g, budget))}}};

    // X_2 -> X''
    d.yprime = subgroup_profile(d.ya, s3.factor, budget);
    d.ker_rho = detail::apply_override(subgroup_profile(d.yprime, d.gl_rank, budget), inp, "g1_rho", budget);
    d.I_b = i_bound(a3, d.ker_rho, budget)->total;
    StageBound s5{"X2->X''", mul(d.gl_rank, d.I_b, budget),
                  "|Out(H_1(L, Z/2))| * I_{n-1}(H_1(L, Z/2), ker rho)",
                  {{"A", "Z/2^" + std::to_string(d.rank)}, {"rank_L", std::to_string(d.rank)},
                   {"out_order", detail::echo(d.gl_rank)}, {"profile(Y')", detail::echo(d.yprime)},
                   {"profile(ker rho)", detail::echo(d.ker_rho)}, {"I_b", detail::echo(d.I_b)}}};

    d.stages = {std::move(s1), std::move(s2), std::move(s3), std::move(s4), std::move(s5)};
    return d;
}

inline std::vector<StageBound> stage_bounds(const PipelineInputs& inp, const Budget& budget = {})
{
    return pipeline_detail(inp, budget).stages;
}

struct BoundReport {
    PipelineInputs inputs;
    std::vector<StageBound> stages;
    BoundValue total;
    std::vector<std::string> notes;
};

inline BoundReport make_report(const PipelineInputs& inp, PipelineDetail d, const Budget& budget = {})
{
    BoundReport r;
    r.inputs = inp;
    r.total = BoundValue::exact(1);
    for (const auto& s : d.stages) r.total = mul(r.total, s.factor, budget);
    r.stages = std::move(d.stages);

    const std::uint64_t g = inp.fiber_genus;
    r.notes.push_back("2^{4g-1} = 2 * 2^{4g-2}: stage Xb->Xa times stage X''->X'");
    r.notes.push_back("I_a = I_{n-1}((Z/2)^{4g-2}, ker mu_a), I_b = I_{n-1}(H_1(L,Z/2), ker rho), "
                      "I_c = I_{n-1}((Z/2)^{2g}, ker mu)");
    r.notes.push_back("fiber genus after Xb->Xa: 2g-1 = " + std::to_string(2 * g - 1));
    r.notes.push_back("fiber genus of X'': 2^{4g-2}(2g-2)+1 = " +
                      mpz_class((mpz_class(1) << (4 * g - 2)) * (2 * g - 2) + 1).get_str());
    r.notes.push_back("rank H_1(L,Z/2): statement " + std::to_string(rank_L(g, RankPreset::statement)) +
                      ", proof " + std::to_string(rank_L(g, RankPreset::proof)) + ", kunneth " +
                      std::to_string(rank_L(g, RankPreset::kunneth_sum)) + "; using " + to_string(inp.preset));
    r.notes.push_back("out-order products run over i = 1..rank, not 1..Q(g)");
    if (inp.genus_overrides.empty())
        r.notes.push_back("kernel genera from worst-case propagation of base profile " +
                          detail::echo(to_propagated(inp.effective_base_profile())));
    else
        r.notes.push_back("kernel first genera overridden");
    return r;
}

inline BoundReport total_degree_bound(const PipelineInputs& inp, const Budget& budget = {})
{
    return make_report(inp, pipeline_detail(inp, budget), budget);
}

// ---------------------------------------------------------------------------
// Worked examples, evaluated literally

/// 2^{4g+2} |GL(4g-2)| |GL(2g)| |GL(rank_L)|.
inline BoundValue example_n2_closed_form(std::uint64_t g, RankPreset preset, const Budget& budget = {})
{
    require_fiber_genus(g);
    return product({pow(BoundValue::exact(2), BoundValue::exact(4 * g + 2), budget),
                    out_order_elementary_2(4 * g - 2, budget), out_order_elementary_2(2 * g, budget),
                    out_order_elementary_2(rank_L(g, preset), budget)},
                   budget);
}

struct ExampleEvaluation {
    BoundValue exponent;  // U or T
    BoundValue value;
    BoundValue I_a, I_b, I_c;
};

namespace detail {

struct Poly {
    const Budget& budget;
    BoundValue c(std::uint64_t v) const { return BoundValue::exact(v, budget); }
    BoundValue c(const mpz_class& v) const { return BoundValue::exact(v, budget); }
    BoundValue add(std::initializer_list<BoundValue> xs) const
    {
        BoundValue acc = c(0);
        for (const auto& x : xs) acc = polybound::add(acc, x, budget);
        return acc;
    }
    BoundValue mul(const BoundValue& a, const BoundValue& b) const { return polybound::mul(a, b, budget); }
    BoundValue two_to(const BoundValue& e) const { return pow(c(2), e, budget); }
};

inline BoundValue example_products(std::uint64_t g, const Budget& budget)
{
    return product({out_order_elementary_2(4 * g - 2, budget), out_order_elementary_2(2 * g, budget),
                    out_order_elementary_2(rank_L(g, RankPreset::proof), budget)},
                   budget);
}

} // namespace detail

/// n = 3:
///   U = 8(2g-1) g1(ker mu_a) + 8g + 8g g1(ker mu) + 4 g1(ker rho) + (2g + 2^{2g+1}(g-1) + 3) + 13
///   value = 2^U * [three out-order products] * Q(g)^{4 g1(ker rho)}
/// I_a = 2^{8(2g-1) g1a + 2 g1a + 4g + 3}
/// I_b = 2^{2 g1rho + (2g + 2^{2g+1}(g-1) + 3) + 5} * Q(g)^{4 g1rho}
/// I_c = 2^{8g g1mu + 2 g1mu + 2g + 5}
inline ExampleEvaluation example_n3(std::uint64_t g, const BoundValue& g1_mu, const BoundValue& g1_mua,
                                    const BoundValue& g1_rho, const Budget& budget = {})
{
    require_fiber_genus(g);
    const detail::Poly P{budget};
    const std::uint64_t stmt = rank_L(g, RankPreset::statement);
    const BoundValue q = q_of_g(g, RankPreset::proof, budget);
    const BoundValue q_pow = pow(q, P.mul(P.c(4), g1_rho), budget);

    ExampleEvaluation ev;
    ev.exponent = P.add({P.mul(P.c(8 * (2 * g - 1)), g1_mua), P.c(8 * g), P.mul(P.c(8 * g), g1_mu),
                         P.mul(P.c(4), g1_rho), P.c(stmt), P.c(13)});
    ev.value = product({P.two_to(ev.exponent), detail::example_products(g, budget), q_pow}, budget);
    ev.I_a = P.two_to(P.add({P.mul(P.c(8 * (2 * g - 1)), g1_mua), P.mul(P.c(2), g1_mua), P.c(4 * g + 3)}));
    ev.I_b = P.mul(P.two_to(P.add({P.mul(P.c(2), g1_rho), P.c(stmt), P.c(5)})), q_pow);
    ev.I_c = P.two_to(P.add({P.mul(P.c(8 * g), g1_mu), P.mul(P.c(2), g1_mu), P.c(2 * g + 5)}));
    return ev;
}

/// n = 4:
///   T = 38g + 27 + 2(2g + 2^{2g+1}(g-1) + 3) + g3(ker rho) + (8g+1) g3(ker mu) + (32g-15) g3(ker mu_a)
///   value = 2^T * [three out-order products] * Q(g)^{4 g3(ker rho)}
/// I_a = 2^{8(4g-2) g3a + 24g + g3a + 1}
/// I_b = 2^{13 + 2(2g + 2^{2g+1}(g-1) + 3) + g3rho} * Q(g)^{4 g3rho}
/// I_c = 2^{8g g3mu + 12g + g3mu + 13}
inline ExampleEvaluation example_n4(std::uint64_t g, const BoundValue& g3_mu, const BoundValue& g3_mua,
                                    const BoundValue& g3_rho, const Budget& budget = {})
{
    require_fiber_genus(g);
    const detail::Poly P{budget};
    const std::uint64_t stmt = rank_L(g, RankPreset::statement);
    const BoundValue q = q_of_g(g, RankPreset::proof, budget);
    const BoundValue q_pow = pow(q, P.mul(P.c(4), g3_rho), budget);

    ExampleEvaluation ev;
    ev.exponent = P.add({P.c(38 * g + 27), P.c(2 * stmt), g3_rho, P.mul(P.c(8 * g + 1), g3_mu),
                         P.mul(P.c(32 * g - 15), g3_mua)});
    ev.value = product({P.two_to(ev.exponent), detail::example_products(g, budget), q_pow}, budget);
    ev.I_a = P.two_to(P.add({P.mul(P.c(8 * (4 * g - 2)), g3_mua), P.c(24 * g), g3_mua, P.c(1)}));
    ev.I_b = P.mul(P.two_to(P.add({P.c(13 + 2 * stmt), g3_rho})), q_pow);
    ev.I_c = P.two_to(P.add({P.mul(P.c(8 * g), g3_mu), P.c(12 * g), g3_mu, P.c(13)}));
    return ev;
}

inline BoundValue example_n3_U(std::uint64_t g, std::uint64_t g1_mu, std::uint64_t g1_mua, std::uint64_t g1_rho,
                               const Budget& budget = {})
{
    return example_n3(g, BoundValue::exact(g1_mu), BoundValue::exact(g1_mua), BoundValue::exact(g1_rho), budget)
        .value;
}

inline BoundValue example_n4_T(std::uint64_t g, std::uint64_t g3_mu, std::uint64_t g3_mua, std::uint64_t g3_rho,
                               const Budget& budget = {})
{
    return example_n4(g, BoundValue::exact(g3_mu), BoundValue::exact(g3_mua), BoundValue::exact(g3_rho), budget)
        .value;
}

// ---------------------------------------------------------------------------
// Pipeline vs literal example

struct ExampleComparison {
    std::uint64_t dim = 0;
    BoundReport pipeline;
    ExampleEvaluation example;
    std::vector<std::pair<std::string, BoundValue>> parameters;
    Verdict verdict = Verdict::indeterminate;
    Log2Discrepancy discrepancy;
    std::vector<std::pair<std::string, Log2Discrepancy>> factor_discrepancies;
};

/// Feeds the pipeline's own kernel genera into the literal example formula. At n = 4 the
/// g3 parameters are g1 + g_a + g_b of each kernel profile, g_a and g_b at their
/// literal bounds.
inline ExampleComparison compare_with_example(const PipelineInputs& inp, const Budget& budget = {})
{
    if (inp.dim != 3 && inp.dim != 4) throw std::invalid_argument("example comparison needs dim 3 or 4");
    const PipelineDetail d = pipeline_detail(inp, budget);
    ExampleComparison c;
    c.dim = inp.dim;
    c.pipeline = make_report(inp, d, budget);
    const std::uint64_t g = inp.fiber_genus;
    if (inp.dim == 3) {
        c.parameters = {{"g1_mu", d.ker_mu[0]}, {"g1_mua", d.ker_mua[0]}, {"g1_rho", d.ker_rho[0]}};
        c.example = example_n3(g, d.ker_mu[0], d.ker_mua[0], d.ker_rho[0], budget);
    } else {
        auto g3 = [&](const FiniteAbelianGroup& a, const PropagatedProfile& p) {
            return i3_literal(a, p[0], p[1], budget).g_sum;
        };
        const BoundValue mu = g3(FiniteAbelianGroup::elementary(2, 2 * g), d.ker_mu);
        const BoundValue mua = g3(FiniteAbelianGroup::elementary(2, 4 * g - 2), d.ker_mua);
        const BoundValue rho = g3(FiniteAbelianGroup::elementary(2, d.rank), d.ker_rho);
        c.parameters = {{"g3_mu", mu}, {"g3_mua", mua}, {"g3_rho", rho}};
        c.example = example_n4(g, mu, mua, rho, budget);
    }
    c.verdict = compare_bounds(c.example.value, c.pipeline.total);
    c.discrepancy = log2_discrepancy(c.example.value, c.pipeline.total);
    c.factor_discrepancies = {{"I_a", log2_discrepancy(c.example.I_a, d.I_a)},
                              {"I_b", log2_discrepancy(c.example.I_b, d.I_b)},
                              {"I_c", log2_discrepancy(c.example.I_c, d.I_c)}};
    return c;
}

} // namespace polybound
