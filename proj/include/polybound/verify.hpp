#pragma once

// Oracle-vs-formula sweeps behind `verify --suite ...`.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "polybound/counting.hpp"
#include "polybound/group_model.hpp"
#include "polybound/oracles.hpp"

namespace polybound {

struct VerifyReport {
    std::string suite;
    std::uint64_t checked = 0;
    std::vector<std::string> mismatches;

    bool ok() const { return mismatches.empty(); }

    void check(const std::string& label, const mpz_class& formula, const mpz_class& oracle)
    {
        ++checked;
        if (formula != oracle)
            mismatches.push_back(label + ": formula " + formula.get_str() + " != oracle " + oracle.get_str());
    }
};

/// N(d, n) against permutation enumeration on d <= 5, n <= 3 and d = 6, n = 2.
/// `max_d` trims the grid.
inline VerifyReport verify_hall(std::optional<std::uint64_t> max_d = std::nullopt)
{
    const std::uint64_t cap = max_d.value_or(6);
    if (cap > 6) throw std::invalid_argument("hall suite --max is at most 6");
    VerifyReport r{"hall"};
    for (unsigned n = 1; n <= 3; ++n)
        for (unsigned d = 1; d <= cap; ++d) {
            if (d == 6 && n != 2) continue;
            r.check("N(" + std::to_string(d) + "," + std::to_string(n) + ")", hall_count_exact(d, n),
                    mpz_class(static_cast<unsigned long>(oracles::count_free_subgroups_bruteforce(d, n))));
        }
    return r;
}

/// |GL(m, F_2)| against matrix enumeration, m <= 4.
inline VerifyReport verify_gl(std::optional<std::uint64_t> max_m = std::nullopt)
{
    const std::uint64_t cap = max_m.value_or(4);
    if (cap > 4) throw std::invalid_argument("gl suite --max is at most 4");
    VerifyReport r{"gl"};
    for (unsigned m = 0; m <= cap; ++m) {
        const BoundValue v = out_order_elementary_2(m);
        r.check("|GL(" + std::to_string(m) + ",2)|", v.exact_value(),
                mpz_class(static_cast<unsigned long>(oracles::count_gl2_bruteforce(m))));
    }
    return r;
}

/// Every invariant-factor shape with |A| <= 8.
inline std::vector<std::vector<std::uint64_t>> small_abelian_shapes(std::uint64_t max_order)
{
    std::vector<std::vector<std::uint64_t>> out{{}};
    // extend divisibility chains d_1 | d_2 | ... with product <= max_order
    std::vector<std::vector<std::uint64_t>> frontier{{}};
    while (!frontier.empty()) {
        std::vector<std::vector<std::uint64_t>> next;
        for (const auto& chain : frontier) {
            std::uint64_t ord = 1;
            for (auto f : chain) ord *= f;
            const std::uint64_t last = chain.empty() ? 1 : chain.back();
            for (std::uint64_t f = std::max<std::uint64_t>(2, last); ord * f <= max_order; f += last) {
                if (f % last != 0) continue;
                auto c = chain;
                c.push_back(f);
                out.push_back(c);
                next.push_back(c);
            }
        }
        frontier.swap(next);
    }
    return out;
}

/// |A|^(2g') against enumeration of complements, |A| <= 8, 2g' <= `max_rank` (default 6).
inline VerifyReport verify_sections(std::optional<std::uint64_t> max_rank = std::nullopt)
{
    const std::uint64_t cap = max_rank.value_or(6);
    if (cap > 6) throw std::invalid_argument("sections suite --max is at most 6");
    VerifyReport r{"sections"};
    for (const auto& shape : small_abelian_shapes(8)) {
        const FiniteAbelianGroup a(shape);
        for (std::uint64_t k = 2; k <= cap; k += 2) {
            const BoundValue formula = complement_count_bound(a, BoundValue::exact(k / 2));
            r.check("(" + a.to_string() + ", " + std::to_string(k) + ")", formula.exact_value(),
                    mpz_class(static_cast<unsigned long>(oracles::count_sections_bruteforce(shape, k))));
        }
    }
    return r;
}

/// d(g-1)+1 against the Euler characteristic, 2 <= g <= 10, 1 <= d <= `max_d` (default 100);
/// plus genus_bound(g, 1) = g for g <= 100.
inline VerifyReport verify_euler(std::optional<std::uint64_t> max_d = std::nullopt)
{
    const std::uint64_t cap = max_d.value_or(100);
    if (cap < 1 || cap > 100) throw std::invalid_argument("euler suite --max is in 1..100");
    VerifyReport r{"euler"};
    for (std::int64_t g = 2; g <= 10; ++g)
        for (std::int64_t d = 1; d <= static_cast<std::int64_t>(cap); ++d) {
            const BoundValue formula = genus_bound(static_cast<std::uint64_t>(g), BoundValue::exact(d));
            r.check("g'(" + std::to_string(g) + "," + std::to_string(d) + ")", formula.exact_value(),
                    mpz_class(static_cast<long>(oracles::euler_char_cover_oracle(g, d))));
        }
    for (std::uint64_t g = 2; g <= 100; ++g)
        r.check("g'(" + std::to_string(g) + ",1)", genus_bound(g, BoundValue::exact(1)).exact_value(),
                mpz_class(static_cast<unsigned long>(g)));
    return r;
}

inline VerifyReport verify_suite(const std::string& suite, std::optional<std::uint64_t> max = std::nullopt)
{
    if (suite == "hall") return verify_hall(max);
    if (suite == "gl") return verify_gl(max);
    if (suite == "sections") return verify_sections(max);
    if (suite == "euler") return verify_euler(max);
    throw std::invalid_argument("unknown suite '" + suite + "' (expected hall|gl|sections|euler)");
}

} // namespace polybound
