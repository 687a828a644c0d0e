#pragma once

// Exact counting formulas: Hall's recursion for subgroups of free groups,
// |GL(m, F_2)| = |Out((Z/2)^m)|, and complement counts in A + (surface group).

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "polybound/bound_value.hpp"
#include "polybound/group_model.hpp"

namespace polybound {

/// N(d, n), the number of index-d subgroups of the free group of rank n:
/// N(d,n) = d (d!)^(n-1) - sum_{i<d} ((d-i)!)^(n-1) N(i,n).
inline mpz_class hall_count_exact(std::uint64_t d, std::uint64_t n)
{
    if (d == 0 || n == 0) throw std::invalid_argument("hall_count needs d >= 1 and n >= 1");
    // fact_pow[k] = (k!)^(n-1)
    std::vector<mpz_class> fact_pow(d + 1);
    mpz_class fact = 1;
    for (std::uint64_t k = 0; k <= d; ++k) {
        if (k > 0) fact *= k;
        mpz_pow_ui(fact_pow[k].get_mpz_t(), fact.get_mpz_t(), n - 1);
    }
    std::vector<mpz_class> memo(d + 1);
    for (std::uint64_t k = 1; k <= d; ++k) {
        mpz_class v = fact_pow[k] * k;
        for (std::uint64_t i = 1; i < k; ++i) v -= fact_pow[k - i] * memo[i];
        memo[k] = v;
    }
    return memo[d];
}

inline BoundValue hall_count(std::uint64_t d, std::uint64_t n, const Budget& budget = {})
{
    return BoundValue::exact(hall_count_exact(d, n), budget);
}

/// d (d!)^(n-1), the upper bound substituted for N(d, n).
inline BoundValue hall_upper(std::uint64_t d, std::uint64_t n, const Budget& budget = {})
{
    if (d == 0 || n == 0) throw std::invalid_argument("hall_upper needs d >= 1 and n >= 1");
    const BoundValue dd = BoundValue::exact(d);
    return mul(dd, pow(factorial(dd, budget), BoundValue::exact(n - 1), budget), budget);
}

namespace detail {

// Product of the range [lo, hi) of a factor generator by balanced splitting.
template <class Factor>
mpz_class product_tree(std::uint64_t lo, std::uint64_t hi, const Factor& factor)
{
    if (hi - lo <= 16) {
        mpz_class acc = 1;
        for (std::uint64_t i = lo; i < hi; ++i) acc *= factor(i);
        return acc;
    }
    const std::uint64_t mid = lo + (hi - lo) / 2;
    return product_tree(lo, mid, factor) * product_tree(mid, hi, factor);
}

} // namespace detail

/// |GL(m, F_2)| = 2^(m(m-1)/2) * prod_{j=1..m} (2^j - 1).
inline mpz_class gl2_order_exact(std::uint64_t m)
{
    if (m == 0) return 1;
    mpz_class odd = detail::product_tree(1, m + 1, [](std::uint64_t j) {
        mpz_class t = (mpz_class(1) << j) - 1;
        return t;
    });
    return odd << (m * (m - 1) / 2);
}

/// |Out((Z/2)^m)| = |GL(m, F_2)| = prod_{i=1..m} (2^m - 2^(i-1)); m is the rank.
/// Outside the budget the bound 2^(m^2) is returned as a tower.
inline BoundValue out_order_elementary_2(std::uint64_t m, const Budget& budget = {})
{
    const mpz_class m2 = mpz_class(m) * m;
    // |GL(m,2)| > 2^(m^2 - 2), so this branch never hides a value inside the budget.
    if (m2 > mpz_class(budget.bits) + 2) return BoundValue::tower(1, Magnitude::from_integer(m2), budget);
    return BoundValue::exact(gl2_order_exact(m), budget);
}

/// |A|^(2 g'): complements of A in A + (genus-g' surface group) lifting a
/// fixed generating set.
inline BoundValue complement_count_bound(const FiniteAbelianGroup& a, const BoundValue& gprime,
                                         const Budget& budget = {})
{
    if (gprime.is_exact() && gprime.exact_value() < 1) throw std::invalid_argument("g' must be >= 1");
    return pow(a.order(budget), mul(BoundValue::exact(2), gprime, budget), budget);
}

/// Structure of the product prod_{i=1..Q} (Q - 2^(i-1)) with Q = 2^rank taken
/// literally (order as both base and upper limit). Never a positive count:
/// the factor at i = rank + 1 vanishes and later factors are negative.
struct LiteralOutProduct {
    std::uint64_t rank = 0;
    BoundValue factor_count;          // Q = 2^rank
    std::uint64_t positive_factors = 0;
    std::uint64_t zero_factor_index = 0;
    BoundValue rank_reading;          // |GL(rank, F_2)|, the coherent reading
};

inline LiteralOutProduct literal_out_product(std::uint64_t rank, const Budget& budget = {})
{
    LiteralOutProduct r;
    r.rank = rank;
    r.factor_count = pow(BoundValue::exact(2), BoundValue::exact(rank), budget);
    r.positive_factors = rank;
    r.zero_factor_index = rank + 1;
    r.rank_reading = out_order_elementary_2(rank, budget);
    return r;
}

} // namespace polybound
