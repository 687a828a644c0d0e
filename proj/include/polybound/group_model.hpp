#pragma once

// Finite abelian groups by invariant factors, polysurface groups by genus
// profiles, and genus propagation to finite-index subgroups.

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "polybound/bound_value.hpp"

namespace polybound {

/// Finite abelian group Z/d_1 + ... + Z/d_k with d_1 | d_2 | ... | d_k, d_i >= 2.
/// Stored run-length encoded so that (Z/2)^m with very large m stays cheap.
class FiniteAbelianGroup {
public:
    struct Run {
        std::uint64_t factor;
        std::uint64_t multiplicity;
        friend bool operator==(const Run&, const Run&) = default;
        friend auto operator<=>(const Run&, const Run&) = default;
    };

    /// The trivial group.
    FiniteAbelianGroup() = default;

    explicit FiniteAbelianGroup(const std::vector<std::uint64_t>& invariant_factors)
    {
        for (auto d : invariant_factors) push(d, 1);
    }

    static FiniteAbelianGroup from_runs(const std::vector<Run>& runs)
    {
        FiniteAbelianGroup a;
        for (const auto& r : runs) a.push(r.factor, r.multiplicity);
        return a;
    }

    /// (Z/p)^rank
    static FiniteAbelianGroup elementary(std::uint64_t p, std::uint64_t rank)
    {
        FiniteAbelianGroup a;
        if (rank > 0) a.push(p, rank);
        return a;
    }

    const std::vector<Run>& runs() const { return runs_; }

    /// Expanded list; only sensible for groups of modest rank.
    std::vector<std::uint64_t> invariant_factors() const
    {
        std::vector<std::uint64_t> out;
        for (const auto& r : runs_) out.insert(out.end(), r.multiplicity, r.factor);
        return out;
    }

    /// e(A): the largest invariant factor (1 for the trivial group).
    std::uint64_t exponent() const { return runs_.empty() ? 1 : runs_.back().factor; }

    /// |r(A)|: number of invariant factors, the minimal number of generators.
    std::uint64_t rank() const
    {
        std::uint64_t k = 0;
        for (const auto& r : runs_) k += r.multiplicity;
        return k;
    }

    BoundValue order(const Budget& budget = {}) const
    {
        BoundValue acc = BoundValue::exact(1);
        for (const auto& r : runs_)
            acc = mul(acc, pow(BoundValue::exact(r.factor), BoundValue::exact(r.multiplicity), budget), budget);
        return acc;
    }

    std::string to_string() const
    {
        if (runs_.empty()) return "1";
        std::string s;
        for (const auto& r : runs_) {
            if (!s.empty()) s += " + ";
            s += "Z/" + std::to_string(r.factor);
            if (r.multiplicity > 1) s += "^" + std::to_string(r.multiplicity);
        }
        return s;
    }

    friend bool operator==(const FiniteAbelianGroup&, const FiniteAbelianGroup&) = default;
    friend auto operator<=>(const FiniteAbelianGroup&, const FiniteAbelianGroup&) = default;

private:
    void push(std::uint64_t d, std::uint64_t mult)
    {
        if (d < 2) throw std::invalid_argument("invariant factor " + std::to_string(d) + " is < 2");
        if (mult == 0) return;
        if (!runs_.empty()) {
            auto& last = runs_.back();
            if (d % last.factor != 0)
                throw std::invalid_argument("invariant factors must form a divisibility chain: " +
                                            std::to_string(last.factor) + " does not divide " +
                                            std::to_string(d));
            if (d == last.factor) {
                last.multiplicity += mult;
                return;
            }
        }
        runs_.push_back(Run{d, mult});
    }

    std::vector<Run> runs_;
};

/// Genera [g_1, ..., g_n] of the successive surface quotients, each >= 2.
class GenusProfile {
public:
    explicit GenusProfile(std::vector<std::uint64_t> genera) : genera_(std::move(genera))
    {
        if (genera_.empty()) throw std::invalid_argument("genus profile must be nonempty");
        for (auto g : genera_)
            if (g < 2) throw std::invalid_argument("genus " + std::to_string(g) + " is < 2");
    }

    std::size_t length() const { return genera_.size(); }
    const std::vector<std::uint64_t>& genera() const { return genera_; }
    std::uint64_t operator[](std::size_t i) const { return genera_.at(i); }

    friend bool operator==(const GenusProfile&, const GenusProfile&) = default;

private:
    std::vector<std::uint64_t> genera_;
};

/// A genus profile after propagation to a finite-index subgroup; entries can be towers.
using PropagatedProfile = std::vector<BoundValue>;

inline PropagatedProfile to_propagated(const GenusProfile& p)
{
    PropagatedProfile out;
    out.reserve(p.length());
    for (auto g : p.genera()) out.push_back(BoundValue::exact(g));
    return out;
}

/// d * (g - 1) + 1: genus bound for an index-d subgroup of a genus-g surface group.
/// For tower-valued g the factor g - 1 is bounded by g.
inline BoundValue genus_bound(const BoundValue& g, const BoundValue& d, const Budget& budget = {})
{
    if (g.is_exact() && g.exact_value() < 2) throw std::invalid_argument("genus must be >= 2");
    if (d.is_zero()) throw std::invalid_argument("subgroup index must be >= 1");
    const BoundValue g_minus_1 = g.is_exact() ? BoundValue::exact(mpz_class(g.exact_value() - 1), budget) : g;
    return add(mul(d, g_minus_1, budget), BoundValue::exact(1), budget);
}

inline BoundValue genus_bound(std::uint64_t g, const BoundValue& d, const Budget& budget = {})
{
    if (g < 2) throw std::invalid_argument("genus " + std::to_string(g) + " is < 2");
    return genus_bound(BoundValue::exact(g), d, budget);
}

inline PropagatedProfile subgroup_profile(const PropagatedProfile& p, const BoundValue& d, const Budget& budget = {})
{
    PropagatedProfile out;
    out.reserve(p.size());
    for (const auto& g : p) out.push_back(genus_bound(g, d, budget));
    return out;
}

inline PropagatedProfile subgroup_profile(const GenusProfile& p, const BoundValue& d, const Budget& budget = {})
{
    return subgroup_profile(to_propagated(p), d, budget);
}

/// Profile of G/G_1: drop the first entry.
inline PropagatedProfile quotient_profile(const PropagatedProfile& p)
{
    if (p.size() < 2) throw std::invalid_argument("quotient profile needs length >= 2");
    return PropagatedProfile(p.begin() + 1, p.end());
}

inline GenusProfile quotient_profile(const GenusProfile& p)
{
    if (p.length() < 2) throw std::invalid_argument("quotient profile needs length >= 2");
    return GenusProfile(std::vector<std::uint64_t>(p.genera().begin() + 1, p.genera().end()));
}

/// Comma-separated decimal integers, e.g. "2,3,4". No signs, no exponents.
inline std::vector<std::uint64_t> parse_integer_list(std::string_view text)
{
    std::vector<std::uint64_t> out;
    if (text.empty()) throw std::invalid_argument("empty integer list");
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t comma = std::min(text.find(',', pos), text.size());
        const std::string_view item = text.substr(pos, comma - pos);
        std::uint64_t v = 0;
        const auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
        if (item.empty() || ec != std::errc{} || ptr != item.data() + item.size())
            throw std::invalid_argument("not a decimal integer: '" + std::string(item) + "'");
        out.push_back(v);
        pos = comma + 1;
    }
    return out;
}

inline GenusProfile parse_genus_profile(std::string_view text) { return GenusProfile(parse_integer_list(text)); }

inline FiniteAbelianGroup parse_invariant_factors(std::string_view text)
{
    return FiniteAbelianGroup(parse_integer_list(text));
}

} // namespace polybound
