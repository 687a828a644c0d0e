#pragma once

// Index bounds for subgroups trivializing central extensions
// 1 -> A -> Gamma -> G -> 1 of polysurface groups G, and literal evaluators
// for the closed forms at lengths 2 and 3.

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "polybound/bound_value.hpp"
#include "polybound/group_model.hpp"

namespace polybound {

namespace detail {

inline BoundValue minus_one_upper(const BoundValue& g, const Budget& budget)
{
    if (g.is_exact()) {
        if (g.exact_value() < 1) throw std::invalid_argument("genus must be >= 1");
        return BoundValue::exact(mpz_class(g.exact_value() - 1), budget);
    }
    return g;
}

inline void require_genus(const BoundValue& g, const char* what)
{
    if (g.is_exact() && g.exact_value() < 2) throw std::invalid_argument(std::string(what) + " must be >= 2");
}

} // namespace detail

/// e(A)^k * |A|^(2 e(A) g1) * (e(A)!)^(extra_r * |r(A)| + factorial_g1_coeff * g1).
/// Every bound of this section has that shape; the named wrappers below fix k.
inline BoundValue extension_factor(const FiniteAbelianGroup& a, const BoundValue& g1, std::uint64_t e_power,
                                   const Budget& budget = {})
{
    const BoundValue e = BoundValue::exact(a.exponent());
    const BoundValue ord = a.order(budget);
    const BoundValue two_e_g1 = mul(BoundValue::exact(2 * a.exponent()), g1, budget);
    const BoundValue fact_exp = add(mul(BoundValue::exact(2), g1, budget), BoundValue::exact(a.rank()), budget);
    return product({pow(e, BoundValue::exact(e_power), budget),
                    pow(ord, two_e_g1, budget),
                    pow(factorial(e, budget), fact_exp, budget)},
                   budget);
}

/// I_1(A, G) = e(A).
inline BoundValue i1(const FiniteAbelianGroup& a) { return BoundValue::exact(a.exponent()); }

/// |A|^(2e g1) * e * (e!)^(2 g1 + r): bound on [Gamma : N_Gamma(i(G_1'))].
inline BoundValue normalizer_index_bound(const FiniteAbelianGroup& a, const BoundValue& g1, const Budget& budget = {})
{
    detail::require_genus(g1, "g1");
    return extension_factor(a, g1, 1, budget);
}

/// |A|^(2e g1) * e^2 * (e!)^(2 g1 + r): bound on the index of J in G/G_1.
inline BoundValue index_bound_J(const FiniteAbelianGroup& a, const BoundValue& g1, const Budget& budget = {})
{
    detail::require_genus(g1, "g1");
    return extension_factor(a, g1, 2, budget);
}

/// e^3 |A|^(2e g1) (e!)^(2 g1 + r): the per-level factor of the I_n recursion.
inline BoundValue recursion_base_factor(const FiniteAbelianGroup& a, const BoundValue& g1, const Budget& budget = {})
{
    detail::require_genus(g1, "g1");
    return extension_factor(a, g1, 3, budget);
}

/// One node of the I_n recursion. Leaves (length 1) have no J/K data:
/// index_J = index_K = 1, empty profiles, null sub-traces.
struct IBoundTrace {
    std::size_t level = 0;
    PropagatedProfile profile;
    BoundValue base_factor;
    BoundValue index_J;
    PropagatedProfile profile_J;
    BoundValue index_K;
    PropagatedProfile profile_K;
    std::shared_ptr<const IBoundTrace> sub_J;
    std::shared_ptr<const IBoundTrace> sub_K;
    BoundValue total;

    bool is_leaf() const { return sub_J == nullptr; }
};

/// Memo table for i_bound, confined to one computation. Keys are
/// (invariant factors, exact profile); tower-valued profiles are not cached.
class IBoundCache {
public:
    using Key = std::pair<std::vector<FiniteAbelianGroup::Run>, std::vector<mpz_class>>;

    static std::optional<Key> key_for(const FiniteAbelianGroup& a, const PropagatedProfile& p)
    {
        std::vector<mpz_class> genera;
        genera.reserve(p.size());
        for (const auto& g : p) {
            if (!g.is_exact()) return std::nullopt;
            genera.push_back(g.exact_value());
        }
        return Key{a.runs(), std::move(genera)};
    }

    std::shared_ptr<const IBoundTrace> find(const Key& k) const
    {
        auto it = entries_.find(k);
        return it == entries_.end() ? nullptr : it->second;
    }
    void insert(Key k, std::shared_ptr<const IBoundTrace> t) { entries_.emplace(std::move(k), std::move(t)); }
    std::size_t size() const { return entries_.size(); }

private:
    std::map<Key, std::shared_ptr<const IBoundTrace>> entries_;
};

/// Canonical recursion with worst-case genus propagation:
///   n = 1: e(A)
///   n > 1: B * I_{n-1}(A, J) * I_{n-1}(A, K), where J has index
///          index_bound_J in G/G_1 and K has index I_{n-1}(A, J) in J.
inline std::shared_ptr<const IBoundTrace> i_bound(const FiniteAbelianGroup& a, const PropagatedProfile& p,
                                                  const Budget& budget, IBoundCache& cache)
{
    if (p.empty()) throw std::invalid_argument("i_bound needs a nonempty profile");
    const auto key = IBoundCache::key_for(a, p);
    if (key) {
        if (auto hit = cache.find(*key)) return hit;
    }

    auto t = std::make_shared<IBoundTrace>();
    t->level = p.size();
    t->profile = p;
    if (p.size() == 1) {
        t->base_factor = i1(a);
        t->index_J = t->index_K = BoundValue::exact(1);
        t->total = i1(a);
    } else {
        const BoundValue& g1 = p.front();
        t->base_factor = recursion_base_factor(a, g1, budget);
        t->index_J = index_bound_J(a, g1, budget);
        t->profile_J = subgroup_profile(quotient_profile(p), t->index_J, budget);
        t->sub_J = i_bound(a, t->profile_J, budget, cache);
        t->index_K = t->sub_J->total;
        t->profile_K = subgroup_profile(t->profile_J, t->index_K, budget);
        t->sub_K = i_bound(a, t->profile_K, budget, cache);
        t->total = product({t->base_factor, t->sub_J->total, t->sub_K->total}, budget);
    }
    if (key) cache.insert(*key, t);
    return t;
}

inline std::shared_ptr<const IBoundTrace> i_bound(const FiniteAbelianGroup& a, const PropagatedProfile& p,
                                                  const Budget& budget = {})
{
    IBoundCache cache;
    return i_bound(a, p, budget, cache);
}

inline std::shared_ptr<const IBoundTrace> i_bound(const FiniteAbelianGroup& a, const GenusProfile& p,
                                                  const Budget& budget = {})
{
    return i_bound(a, to_propagated(p), budget);
}

/// e^5 |A|^(2e g1) (e!)^(2 g1 + r): the length-2 closed form.
inline BoundValue i2_closed_form(const FiniteAbelianGroup& a, const BoundValue& g1, const Budget& budget = {})
{
    detail::require_genus(g1, "g1");
    return extension_factor(a, g1, 5, budget);
}

/// The literal length-3 closed form with g_a, g_b at their closed-form bounds.
struct I3Literal {
    BoundValue g_a;
    BoundValue g_b;
    BoundValue g_sum; // g1 + g_a + g_b
    BoundValue value;
};

inline I3Literal i3_literal(const FiniteAbelianGroup& a, const BoundValue& g1, const BoundValue& g_j2,
                            const Budget& budget = {})
{
    detail::require_genus(g1, "g1");
    detail::require_genus(g_j2, "g(J2/J1)");
    const BoundValue e = BoundValue::exact(a.exponent());
    const BoundValue r = BoundValue::exact(a.rank());
    const BoundValue ord = a.order(budget);
    const BoundValue e_fact = factorial(e, budget);
    const BoundValue two_e = BoundValue::exact(2 * a.exponent());
    const BoundValue one = BoundValue::exact(1);
    const BoundValue gj2_minus_1 = detail::minus_one_upper(g_j2, budget);

    auto term = [&](std::uint64_t e_power, const BoundValue& genus_sum, const BoundValue& fact_exp) {
        return product({pow(e, BoundValue::exact(e_power), budget),
                        pow(ord, mul(two_e, genus_sum, budget), budget),
                        pow(e_fact, fact_exp, budget)},
                       budget);
    };

    I3Literal out;
    // g_a <= e^2 |A|^(2e g1) (e!)^(2 g1 + r) (g(J2/J1) - 1) + 1
    const BoundValue fa = add(mul(BoundValue::exact(2), g1, budget), r, budget);
    out.g_a = add(mul(term(2, g1, fa), gj2_minus_1, budget), one, budget);

    // g_b <= e^7 |A|^(2e (g1 + g_a)) (e!)^(4r + g1 + g_a) (g(J2/J1) - 1) + 1
    const BoundValue g1a = add(g1, out.g_a, budget);
    const BoundValue fb = add(mul(BoundValue::exact(4), r, budget), g1a, budget);
    out.g_b = add(mul(term(7, g1a, fb), gj2_minus_1, budget), one, budget);

    // I_3 = e^13 |A|^(2e S) (e!)^(6r + S), S = g1 + g_a + g_b
    out.g_sum = add(g1a, out.g_b, budget);
    const BoundValue f3 = add(mul(BoundValue::exact(6), r, budget), out.g_sum, budget);
    out.value = term(13, out.g_sum, f3);
    return out;
}

/// 8 |A|^(4 g1) 2^(2 g1 + r): the base factor specialized to e(A) = 2.
inline BoundValue e2_base_factor_check(const FiniteAbelianGroup& a, const BoundValue& g1, const Budget& budget = {})
{
    if (a.exponent() != 2) throw std::invalid_argument("e2_base_factor_check needs e(A) = 2, got " +
                                                       std::to_string(a.exponent()));
    detail::require_genus(g1, "g1");
    const BoundValue two = BoundValue::exact(2);
    return product({BoundValue::exact(8),
                    pow(a.order(budget), mul(BoundValue::exact(4), g1, budget), budget),
                    pow(two, add(mul(two, g1, budget), BoundValue::exact(a.rank()), budget), budget)},
                   budget);
}

// ---------------------------------------------------------------------------
// Comparisons between two bound values

enum class Verdict { agree, literal_smaller, literal_larger, indeterminate };

inline const char* to_string(Verdict v)
{
    switch (v) {
    case Verdict::agree: return "agree";
    case Verdict::literal_smaller: return "paper-literal-smaller";
    case Verdict::literal_larger: return "paper-literal-larger";
    case Verdict::indeterminate: return "indeterminate";
    }
    return "indeterminate";
}

/// log^depth(literal) - log^depth(canonical) as a signed decimal, where depth is
/// the smallest number of base-2 logarithms that brings both values to
/// fixed-point range. Both logs are upper bounds, so the difference is an estimate.
struct Log2Discrepancy {
    int depth = 0;
    std::string value;
};

namespace detail {

inline std::optional<Magnitude> iterated_log2(const BoundValue& v, int depth)
{
    if (v.is_beyond() || v.is_zero()) return std::nullopt;
    Magnitude m;
    int have;
    if (v.is_exact()) {
        m = Magnitude::from_integer(v.exact_value());
        have = 0;
    } else {
        m = v.magnitude();
        have = v.level();
    }
    for (; have < depth; ++have) {
        // below 1 the next logarithm would be negative; pin it at 0
        m = m.le_integer(1) ? Magnitude{} : log2_up(m);
    }
    return m;
}

inline std::string signed_decimal(const Magnitude& a, const Magnitude& b)
{
    if (a < b) {
        return "-" + Magnitude::from_numerator(mpz_class(b.numerator() - a.numerator())).to_decimal_up();
    }
    return Magnitude::from_numerator(mpz_class(a.numerator() - b.numerator())).to_decimal_up();
}

} // namespace detail

inline Verdict compare_bounds(const BoundValue& literal, const BoundValue& canonical)
{
    if (literal.is_beyond() || canonical.is_beyond()) return Verdict::indeterminate;
    if (literal == canonical) return Verdict::agree;
    return literal < canonical ? Verdict::literal_smaller : Verdict::literal_larger;
}

inline Log2Discrepancy log2_discrepancy(const BoundValue& literal, const BoundValue& canonical)
{
    Log2Discrepancy d;
    if (literal.is_beyond() || canonical.is_beyond()) {
        d.value = "indeterminate";
        return d;
    }
    if (literal.is_zero() || canonical.is_zero()) {
        d.value = "undefined";
        return d;
    }
    d.depth = std::max({1, literal.level(), canonical.level()});
    auto a = detail::iterated_log2(literal, d.depth);
    auto b = detail::iterated_log2(canonical, d.depth);
    // keep the reported difference short: take more logs while either side is huge
    while (d.depth < detail::beyond_level && !(a->le_pow2(64) && b->le_pow2(64))) {
        ++d.depth;
        a = detail::iterated_log2(literal, d.depth);
        b = detail::iterated_log2(canonical, d.depth);
    }
    d.value = detail::signed_decimal(*a, *b);
    return d;
}

struct ClosedFormComparison {
    std::size_t n = 0;
    BoundValue canonical;
    BoundValue literal;
    Verdict verdict = Verdict::indeterminate;
    Log2Discrepancy discrepancy;
    std::optional<I3Literal> i3;  // g_a, g_b echoes at n = 3
};

/// Canonical recursion vs the closed form for the same (A, profile), n in {2, 3}.
inline ClosedFormComparison closed_form_compare(const FiniteAbelianGroup& a, const GenusProfile& p,
                                                const Budget& budget = {})
{
    if (p.length() != 2 && p.length() != 3)
        throw std::invalid_argument("closed-form comparison needs profile length 2 or 3");
    ClosedFormComparison c;
    c.n = p.length();
    c.canonical = i_bound(a, p, budget)->total;
    const BoundValue g1 = BoundValue::exact(p[0]);
    if (c.n == 2) {
        c.literal = i2_closed_form(a, g1, budget);
    } else {
        c.i3 = i3_literal(a, g1, BoundValue::exact(p[1]), budget);
        c.literal = c.i3->value;
    }
    c.verdict = compare_bounds(c.literal, c.canonical);
    c.discrepancy = log2_discrepancy(c.literal, c.canonical);
    return c;
}

} // namespace polybound
