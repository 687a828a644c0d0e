#pragma once

// Brute-force counters used to check the closed formulas. Nothing here calls
// into the formula headers; only machine integers and gmpxx are shared.

#include <algorithm>
#include <array>
#include <cstdint>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace polybound::oracles {

/// Number of index-d subgroups of the free group F_n, counted as transitive
/// actions of F_n on {0..d-1} (n-tuples of permutations) divided by (d-1)!.
inline std::uint64_t count_free_subgroups_bruteforce(unsigned d, unsigned n)
{
    if (d < 1 || d > 6 || n < 1 || n > 3)
        throw std::invalid_argument("free-subgroup oracle budget is 1 <= d <= 6, 1 <= n <= 3");
    std::vector<std::array<std::uint8_t, 6>> perms;
    std::array<std::uint8_t, 6> p{0, 1, 2, 3, 4, 5};
    do perms.push_back(p);
    while (std::next_permutation(p.begin(), p.begin() + d));

    const unsigned masks = 1u << d;
    // image[k][S] = pi_k(S) as a bitmask
    std::vector<std::uint8_t> image(perms.size() * masks);
    for (std::size_t k = 0; k < perms.size(); ++k)
        for (unsigned s = 0; s < masks; ++s) {
            unsigned t = 0;
            for (unsigned i = 0; i < d; ++i)
                if (s >> i & 1) t |= 1u << perms[k][i];
            image[k * masks + s] = static_cast<std::uint8_t>(t);
        }

    const std::uint64_t np = perms.size();
    const unsigned full = masks - 1;
    std::uint64_t transitive = 0;
    std::array<std::uint64_t, 3> idx{0, 0, 0};
    for (;;) {
        unsigned reach = 1, prev = 0;
        while (reach != prev) {
            prev = reach;
            for (unsigned j = 0; j < n; ++j) reach |= image[idx[j] * masks + reach];
        }
        if (reach == full) ++transitive;
        unsigned j = 0;
        while (j < n && ++idx[j] == np) idx[j++] = 0;
        if (j == n) break;
    }
    std::uint64_t fact = 1;
    for (unsigned i = 2; i < d; ++i) fact *= i;
    if (transitive % fact != 0) throw std::logic_error("transitive count not divisible by (d-1)!");
    return transitive / fact;
}

/// Invertible m x m matrices over F_2, by enumerating all 2^(m^2) of them.
inline std::uint64_t count_gl2_bruteforce(unsigned m)
{
    if (m > 4) throw std::invalid_argument("GL oracle budget is m <= 4");
    const std::uint64_t total = std::uint64_t{1} << (m * m);
    std::uint64_t count = 0;
    for (std::uint64_t bits = 0; bits < total; ++bits) {
        std::array<unsigned, 4> rows{};
        for (unsigned r = 0; r < m; ++r) rows[r] = (bits >> (r * m)) & ((1u << m) - 1);
        unsigned rank = 0;
        for (unsigned col = 0; col < m; ++col) {
            unsigned pivot = rank;
            while (pivot < m && !(rows[pivot] >> col & 1)) ++pivot;
            if (pivot == m) continue;
            std::swap(rows[pivot], rows[rank]);
            for (unsigned r = 0; r < m; ++r)
                if (r != rank && (rows[r] >> col & 1)) rows[r] ^= rows[rank];
            ++rank;
        }
        if (rank == m) ++count;
    }
    return count;
}

/// Distinct complements {(phi(v), v)} of A in A + Z^k, one per assignment of
/// A-components phi(e_i) to the k standard generators. Complements are told
/// apart by their elements over the window v in {0,1}^k.
inline std::uint64_t count_sections_bruteforce(const std::vector<std::uint64_t>& invariant_factors, unsigned k)
{
    std::uint64_t order = 1;
    for (auto f : invariant_factors) {
        if (f < 1) throw std::invalid_argument("invariant factors must be positive");
        order *= f;
    }
    if (order > 8 || k > 6) throw std::invalid_argument("sections oracle budget is |A| <= 8, rank <= 6");

    // elements of A as mixed-radix codes
    auto add = [&](std::uint64_t x, std::uint64_t y) {
        std::uint64_t out = 0, scale = 1;
        for (auto f : invariant_factors) {
            out += ((x % f + y % f) % f) * scale;
            x /= f;
            y /= f;
            scale *= f;
        }
        return out;
    };

    std::uint64_t assignments = 1;
    for (unsigned i = 0; i < k; ++i) assignments *= order;

    std::set<std::vector<std::uint64_t>> windows;
    std::vector<std::uint64_t> images(k);
    for (std::uint64_t code = 0; code < assignments; ++code) {
        std::uint64_t c = code;
        for (unsigned i = 0; i < k; ++i) {
            images[i] = c % order;
            c /= order;
        }
        std::vector<std::uint64_t> window(std::size_t{1} << k);
        for (std::uint64_t v = 0; v < window.size(); ++v) {
            std::uint64_t a = 0;
            for (unsigned i = 0; i < k; ++i)
                if (v >> i & 1) a = add(a, images[i]);
            window[v] = a;
        }
        windows.insert(std::move(window));
    }
    return windows.size();
}

/// Genus of a degree-d cover of a genus-g surface from chi' = d (2 - 2g).
inline std::int64_t euler_char_cover_oracle(std::int64_t g, std::int64_t d)
{
    if (g < 0 || g > 10 || d < 1 || d > 100) throw std::invalid_argument("Euler oracle budget is g <= 10, d <= 100");
    const std::int64_t chi = d * (2 - 2 * g);
    return 1 - chi / 2;
}

/// Exponent and minimal generating-set size of Z/d_1 + ... + Z/d_k computed
/// from the element table. Orders up to 32.
struct GroupFacts {
    std::uint64_t order;
    std::uint64_t exponent;
    unsigned min_generators;
};

inline GroupFacts abelian_group_facts_bruteforce(const std::vector<std::uint64_t>& factors)
{
    std::uint64_t order = 1;
    for (auto f : factors) order *= f;
    if (order > 32) throw std::invalid_argument("group oracle budget is |A| <= 32");

    auto add = [&](std::uint64_t x, std::uint64_t y) {
        std::uint64_t out = 0, scale = 1;
        for (auto f : factors) {
            out += ((x % f + y % f) % f) * scale;
            x /= f;
            y /= f;
            scale *= f;
        }
        return out;
    };

    GroupFacts facts{order, 1, 0};
    for (std::uint64_t x = 0; x < order; ++x) {
        std::uint64_t k = 1, y = x;
        while (y != 0) {
            y = add(y, x);
            ++k;
        }
        facts.exponent = std::lcm(facts.exponent, k);
    }
    if (order == 1) return facts;

    const std::uint64_t full = (std::uint64_t{1} << order) - 1;
    auto closure = [&](const std::vector<std::uint64_t>& gens) {
        std::uint64_t seen = 1;  // identity
        std::vector<std::uint64_t> frontier{0};
        while (!frontier.empty()) {
            std::vector<std::uint64_t> next;
            for (auto x : frontier)
                for (auto g : gens) {
                    const std::uint64_t y = add(x, g);
                    if (!(seen >> y & 1)) {
                        seen |= std::uint64_t{1} << y;
                        next.push_back(y);
                    }
                }
            frontier.swap(next);
        }
        return seen;
    };

    // search generating multisets pick[0] <= pick[1] <= ... by size
    for (unsigned size = 1;; ++size) {
        std::vector<std::uint64_t> pick(size, 1);
        for (;;) {
            if (closure(pick) == full) {
                facts.min_generators = size;
                return facts;
            }
            int i = static_cast<int>(size) - 1;
            while (i >= 0 && pick[i] == order - 1) --i;
            if (i < 0) break;
            ++pick[i];
            for (unsigned j = i + 1; j < size; ++j) pick[j] = pick[i];
        }
    }
}

} // namespace polybound::oracles
