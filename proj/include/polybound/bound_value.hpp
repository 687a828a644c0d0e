#pragma once

// BoundValue: exact nonnegative integers inside a bit budget, escalating to
// up-rounded exponent towers outside it. Every operation returns a value that
// is >= the true mathematical result.
//
// Normal forms under budget B:
//   Exact(n)      n <= 2^B
//   Tower(k, x)   represents 2^2^...^x (k twos), B < x <= 2^B, 1 <= k <= 4
//   Beyond        anything above Tower(4, 2^B); compares above every finite value
// The level ranges are disjoint, so ordering is lexicographic on (level, x).

#include <compare>
#include <cstdint>
#include <cstdlib>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <utility>

#include <gmpxx.h>

#include "polybound/magnitude.hpp"

namespace polybound {

inline constexpr int max_tower_level = 4;

/// Exact-value bit budget. Default 2^20 bits.
struct Budget {
    std::uint64_t bits = std::uint64_t{1} << 20;

    static constexpr std::uint64_t max_bits = std::uint64_t{1} << 40;
    static constexpr const char* env_var = "POLYBOUND_BIT_BUDGET";

    /// Reads POLYBOUND_BIT_BUDGET (decimal bit count); default when unset.
    static Budget from_env()
    {
        Budget b;
        if (const char* s = std::getenv(env_var); s != nullptr && *s != '\0') {
            std::string text(s);
            if (text.find_first_not_of("0123456789") != std::string::npos)
                throw std::invalid_argument(std::string(env_var) + ": not a decimal integer: " + text);
            b.bits = std::stoull(text);
            b.validate();
        }
        return b;
    }

    void validate() const
    {
        if (bits < 2 || bits > max_bits) throw std::invalid_argument("bit budget must lie in [2, 2^40]");
    }
};

namespace detail {

inline constexpr int beyond_level = max_tower_level + 1;

// Working representation shared by all operations: value = exp2^level(mag).
// Level 0 holds a plain fixed-point number, which need not be an integer.
struct Tier {
    int level = 0;
    Magnitude mag;

    bool beyond() const { return level >= beyond_level; }
    bool is_zero() const { return level == 0 && mag.is_zero(); }
    bool le_one() const { return level == 0 && mag.le_integer(1); }
};

inline Tier tier_beyond() { return Tier{beyond_level, Magnitude{}}; }
inline Tier tier_int(std::uint64_t n) { return Tier{0, Magnitude::from_integer(n)}; }

// Valid for normalized tiers only.
inline bool tier_less(const Tier& a, const Tier& b)
{
    if (a.level != b.level) return a.level < b.level;
    return a.mag < b.mag;
}

inline Tier normalize(Tier t, const Budget& budget)
{
    const mpz_class floor_bits(budget.bits);
    for (;;) {
        if (t.beyond()) return tier_beyond();
        if (t.level == 0) {
            if (t.mag.le_pow2(budget.bits)) return t;
            t = Tier{1, log2_up(t.mag)};
            continue;
        }
        if (t.mag.le_integer(floor_bits)) {
            t = Tier{t.level - 1, exp2_up(t.mag)};
            continue;
        }
        if (!t.mag.le_pow2(budget.bits)) {
            t = Tier{t.level + 1, log2_up(t.mag)};
            continue;
        }
        return t;
    }
}

// Requires value >= 1.
inline Tier tier_log2(const Tier& t)
{
    if (t.beyond()) return tier_beyond();
    if (t.level == 0) return Tier{0, log2_up(t.mag)};
    return Tier{t.level - 1, t.mag};
}

inline Tier tier_exp2(const Tier& t, const Budget& budget)
{
    if (t.beyond()) return tier_beyond();
    if (t.level == 0) {
        if (t.mag.le_integer(mpz_class(budget.bits))) return Tier{0, exp2_up(t.mag)};
        return Tier{1, t.mag};
    }
    if (t.level + 1 > max_tower_level) return tier_beyond();
    return Tier{t.level + 1, t.mag};
}

inline Tier tier_add(Tier a, Tier b, const Budget& budget)
{
    if (a.beyond() || b.beyond()) return tier_beyond();
    if (tier_less(a, b)) std::swap(a, b);
    if (b.is_zero()) return a;
    if (a.level == 0) return normalize(Tier{0, a.mag + b.mag}, budget);

    // a + b <= 2^(log2 a + log2(1 + b/a)); logs are upper bounds, which keeps
    // the sum an upper bound even if rounding reorders them.
    const Tier la = tier_log2(a);
    const Tier lb = b.le_one() ? Tier{0, Magnitude{}} : tier_log2(b);
    if (la.level == 0 && lb.level == 0) {
        const bool a_hi = !(la.mag < lb.mag);
        const Magnitude& hi = a_hi ? la.mag : lb.mag;
        const Magnitude& lo = a_hi ? lb.mag : la.mag;
        const Magnitude d = Magnitude::from_numerator(mpz_class(hi.numerator() - lo.numerator()));
        const Magnitude s = hi + log2_one_plus_exp2_neg_up(d);
        return tier_exp2(normalize(Tier{0, s}, budget), budget);
    }
    const Tier& hi = tier_less(la, lb) ? lb : la;
    return tier_exp2(tier_add(hi, tier_int(1), budget), budget);
}

inline Tier tier_mul(Tier a, Tier b, const Budget& budget)
{
    if (a.is_zero() || b.is_zero()) return Tier{};
    if (a.beyond() || b.beyond()) return tier_beyond();
    if (a.level == 0 && b.level == 0) return normalize(Tier{0, mul_up(a.mag, b.mag)}, budget);
    if (tier_less(a, b)) std::swap(a, b);
    if (b.le_one()) return a;
    return tier_exp2(tier_add(tier_log2(a), tier_log2(b), budget), budget);
}

inline Tier tier_pow(const Tier& base, const Tier& e, const Budget& budget)
{
    if (e.is_zero()) return tier_int(1);
    if (base.is_zero()) return Tier{};
    if (base.le_one()) return base;
    if (base.beyond() || e.beyond()) return tier_beyond();
    if (base.level == 0 && e.level == 0 && base.mag.is_integer() && e.mag.is_integer()) {
        const mpz_class b = base.mag.floor();
        const mpz_class n = e.mag.floor();
        // b^n >= 2^(n (bits-1)); anything not provably past the budget is computed exactly
        const std::uint64_t bits = detail::bit_length(b);
        if (mpz_fits_ulong_p(n.get_mpz_t()) && mpz_class(n * (bits - 1)) <= mpz_class(budget.bits)) {
            mpz_class r;
            mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), n.get_ui());
            return normalize(Tier{0, Magnitude::from_integer(r)}, budget);
        }
    }
    return tier_exp2(tier_mul(e, tier_log2(base), budget), budget);
}

// Requires an integer-valued argument.
inline Tier tier_factorial(const Tier& n, const Budget& budget)
{
    if (n.beyond()) return tier_beyond();
    if (n.level == 0) {
        const mpz_class v = n.mag.ceil();
        if (v <= 1) return tier_int(1);
        if (!log2_factorial_exceeds(v, budget.bits)) {
            mpz_class r;
            mpz_fac_ui(r.get_mpz_t(), v.get_ui());
            return normalize(Tier{0, Magnitude::from_integer(r)}, budget);
        }
        return tier_exp2(normalize(Tier{0, log2_factorial_up(v)}, budget), budget);
    }
    // n! <= n^n at tower scale.
    return tier_exp2(tier_mul(n, tier_log2(n), budget), budget);
}

} // namespace detail

class BoundValue {
public:
    enum class Kind { exact, tower, beyond };

    /// Exact zero.
    BoundValue() = default;

    static BoundValue exact(const mpz_class& n, const Budget& budget = {})
    {
        if (sgn(n) < 0) throw std::domain_error("BoundValue must be nonnegative");
        return from_tier(detail::normalize(detail::Tier{0, Magnitude::from_integer(n)}, budget));
    }
    static BoundValue exact(std::uint64_t n, const Budget& budget = {}) { return exact(mpz_class(n), budget); }

    /// Tower(level, x); normalized, so a value that fits a lower level moves down.
    static BoundValue tower(int level, const Magnitude& x, const Budget& budget = {})
    {
        if (level < 1 || level > max_tower_level) throw std::invalid_argument("tower level must lie in [1, 4]");
        return from_tier(detail::normalize(detail::Tier{level, x}, budget));
    }

    static BoundValue beyond()
    {
        BoundValue v;
        v.kind_ = Kind::beyond;
        return v;
    }

    Kind kind() const { return kind_; }
    bool is_exact() const { return kind_ == Kind::exact; }
    bool is_tower() const { return kind_ == Kind::tower; }
    bool is_beyond() const { return kind_ == Kind::beyond; }
    bool is_zero() const { return is_exact() && sgn(exact_) == 0; }

    const mpz_class& exact_value() const
    {
        if (!is_exact()) throw std::logic_error("exact_value() on a non-exact BoundValue");
        return exact_;
    }
    int level() const { return kind_ == Kind::exact ? 0 : kind_ == Kind::tower ? level_ : detail::beyond_level; }
    const Magnitude& magnitude() const { return mag_; }

    detail::Tier tier() const
    {
        switch (kind_) {
        case Kind::exact: return detail::Tier{0, Magnitude::from_integer(exact_)};
        case Kind::tower: return detail::Tier{level_, mag_};
        case Kind::beyond: break;
        }
        return detail::tier_beyond();
    }

    static BoundValue from_tier(const detail::Tier& t)
    {
        BoundValue v;
        if (t.beyond()) {
            v.kind_ = Kind::beyond;
        } else if (t.level == 0) {
            v.exact_ = t.mag.ceil();
        } else {
            v.kind_ = Kind::tower;
            v.level_ = t.level;
            v.mag_ = t.mag;
        }
        return v;
    }

    friend bool operator==(const BoundValue& a, const BoundValue& b)
    {
        if (a.kind_ != b.kind_) return false;
        switch (a.kind_) {
        case Kind::exact: return a.exact_ == b.exact_;
        case Kind::tower: return a.level_ == b.level_ && a.mag_ == b.mag_;
        case Kind::beyond: return true;
        }
        return false;
    }

    /// Total order on values normalized under one budget.
    friend std::strong_ordering operator<=>(const BoundValue& a, const BoundValue& b)
    {
        if (auto c = a.level() <=> b.level(); c != 0) return c;
        if (a.is_exact()) {
            const int c = cmp(a.exact_, b.exact_);
            return c < 0 ? std::strong_ordering::less
                 : c > 0 ? std::strong_ordering::greater
                         : std::strong_ordering::equal;
        }
        if (a.is_tower()) return a.mag_ <=> b.mag_;
        return std::strong_ordering::equal;
    }

private:
    Kind kind_ = Kind::exact;
    mpz_class exact_{0};
    int level_ = 0;
    Magnitude mag_;
};

inline BoundValue add(const BoundValue& a, const BoundValue& b, const Budget& budget = {})
{
    return BoundValue::from_tier(detail::tier_add(a.tier(), b.tier(), budget));
}

inline BoundValue mul(const BoundValue& a, const BoundValue& b, const Budget& budget = {})
{
    return BoundValue::from_tier(detail::tier_mul(a.tier(), b.tier(), budget));
}

/// 0^0 = 1.
inline BoundValue pow(const BoundValue& base, const BoundValue& exponent, const Budget& budget = {})
{
    return BoundValue::from_tier(detail::tier_pow(base.tier(), exponent.tier(), budget));
}

/// Exact n! inside the budget; Robbins' Stirling bound for large exact n;
/// n! <= n^n for tower-valued n.
inline BoundValue factorial(const BoundValue& n, const Budget& budget = {})
{
    return BoundValue::from_tier(detail::tier_factorial(n.tier(), budget));
}

/// 2^x for a value x (exact or tower); used for literal 2^U style factors.
inline BoundValue exp2(const BoundValue& x, const Budget& budget = {})
{
    return BoundValue::from_tier(detail::tier_exp2(detail::normalize(x.tier(), budget), budget));
}

/// Left-to-right product.
inline BoundValue product(std::initializer_list<BoundValue> factors, const Budget& budget = {})
{
    BoundValue acc = BoundValue::exact(1);
    for (const auto& f : factors) acc = mul(acc, f, budget);
    return acc;
}

/// Upper bound on log2(a) on the 2^-32 grid. Defined for Exact values >= 1 and
/// level-1 towers; deeper towers have logarithms that are themselves towers.
inline Magnitude log2_upper(const BoundValue& a)
{
    if (a.is_zero()) throw std::domain_error("log2 of zero");
    if (a.is_exact()) return log2_up(a.exact_value());
    if (a.is_tower() && a.level() == 1) return a.magnitude();
    throw std::domain_error("log2 of a level-" + std::to_string(a.level()) +
                            " value is not a fixed-point rational");
}

} // namespace polybound
