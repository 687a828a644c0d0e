#pragma once

// Fixed-point nonnegative rationals with denominator 2^32, plus the directed
// (upward) rounding kernels that every tower operation is built on.

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>

#include <gmpxx.h>
#include <mpfr.h>

namespace polybound {

namespace detail {

inline std::uint64_t bit_length(const mpz_class& n)
{
    if (sgn(n) == 0) return 0;
    return mpz_sizeinbase(n.get_mpz_t(), 2);
}

inline bool is_power_of_two(const mpz_class& n)
{
    return sgn(n) > 0 && mpz_popcount(n.get_mpz_t()) == 1;
}

// RAII wrapper; MPFR has no C++ value type of its own.
class Mpfr {
public:
    explicit Mpfr(mpfr_prec_t prec) { mpfr_init2(v_, prec); }
    ~Mpfr() { mpfr_clear(v_); }
    Mpfr(const Mpfr&) = delete;
    Mpfr& operator=(const Mpfr&) = delete;

    mpfr_ptr get() { return v_; }
    mpfr_srcptr get() const { return v_; }

private:
    mpfr_t v_;
};

} // namespace detail

/// Nonnegative rational `num / 2^32`. Used as the magnitude of tower values
/// and as the result type of upper-rounded logarithms.
class Magnitude {
public:
    static constexpr unsigned frac_bits = 32;

    Magnitude() = default;

    static Magnitude from_integer(const mpz_class& n)
    {
        if (sgn(n) < 0) throw std::domain_error("magnitude must be nonnegative");
        return from_numerator(mpz_class(n << frac_bits));
    }
    static Magnitude from_integer(std::uint64_t n) { return from_integer(mpz_class(n)); }

    static Magnitude from_numerator(mpz_class num)
    {
        if (sgn(num) < 0) throw std::domain_error("magnitude must be nonnegative");
        Magnitude m;
        m.num_ = std::move(num);
        return m;
    }

    /// One unit in the last place, 2^-32.
    static Magnitude ulp() { return from_numerator(mpz_class(1)); }

    const mpz_class& numerator() const { return num_; }

    bool is_zero() const { return sgn(num_) == 0; }
    bool is_integer() const { return mpz_scan1(num_.get_mpz_t(), 0) >= frac_bits || is_zero(); }

    mpz_class floor() const { return mpz_class(num_ >> frac_bits); }
    mpz_class ceil() const
    {
        mpz_class q;
        mpz_cdiv_q_2exp(q.get_mpz_t(), num_.get_mpz_t(), frac_bits);
        return q;
    }

    /// x <= n for an integer n.
    bool le_integer(const mpz_class& n) const { return num_ <= mpz_class(n << frac_bits); }

    /// x <= 2^e, checked by bit length so that 2^e is never materialized.
    bool le_pow2(std::uint64_t e) const
    {
        const std::uint64_t bits = detail::bit_length(num_);
        const std::uint64_t limit = e + frac_bits + 1; // bit length of 2^(e+32)
        if (bits < limit) return true;
        if (bits > limit) return false;
        return detail::is_power_of_two(num_);
    }

    friend Magnitude operator+(const Magnitude& a, const Magnitude& b)
    {
        return from_numerator(mpz_class(a.num_ + b.num_));
    }

    /// Product rounded up onto the 2^-32 grid.
    friend Magnitude mul_up(const Magnitude& a, const Magnitude& b)
    {
        mpz_class p = a.num_ * b.num_;
        mpz_cdiv_q_2exp(p.get_mpz_t(), p.get_mpz_t(), frac_bits);
        return from_numerator(std::move(p));
    }

    friend bool operator==(const Magnitude& a, const Magnitude& b) { return a.num_ == b.num_; }
    friend std::strong_ordering operator<=>(const Magnitude& a, const Magnitude& b)
    {
        const int c = cmp(a.num_, b.num_);
        return c < 0 ? std::strong_ordering::less
             : c > 0 ? std::strong_ordering::greater
                     : std::strong_ordering::equal;
    }

    /// Reduced fraction "p/q" with q a power of two.
    std::string to_fraction() const
    {
        if (is_zero()) return "0/1";
        const auto tz = mpz_scan1(num_.get_mpz_t(), 0);
        const unsigned shift = tz < frac_bits ? static_cast<unsigned>(tz) : frac_bits;
        mpz_class p = num_ >> shift;
        mpz_class q = mpz_class(1) << (frac_bits - shift);
        return p.get_str() + "/" + q.get_str();
    }

    /// Decimal with `places` digits after the point, rounded up.
    std::string to_decimal_up(unsigned places = 6) const
    {
        mpz_class scale;
        mpz_ui_pow_ui(scale.get_mpz_t(), 10, places);
        mpz_class t = num_ * scale;
        mpz_cdiv_q_2exp(t.get_mpz_t(), t.get_mpz_t(), frac_bits);
        mpz_class ip = t / scale;
        mpz_class fp = t % scale;
        std::string frac = fp.get_str();
        if (places == 0) return ip.get_str();
        return ip.get_str() + "." + std::string(places - frac.size(), '0') + frac;
    }

    /// Nearest double, for diagnostics only (never used on a soundness path).
    double approx() const
    {
        detail::Mpfr t(64);
        mpfr_set_z(t.get(), num_.get_mpz_t(), MPFR_RNDN);
        mpfr_div_2ui(t.get(), t.get(), frac_bits, MPFR_RNDN);
        return mpfr_get_d(t.get(), MPFR_RNDN);
    }

private:
    mpz_class num_{0};
};

namespace detail {

inline Magnitude magnitude_from_mpfr_up(mpfr_srcptr v)
{
    Mpfr t(mpfr_get_prec(v));
    mpfr_mul_2ui(t.get(), v, Magnitude::frac_bits, MPFR_RNDU); // exact scaling
    mpz_class num;
    mpfr_get_z(num.get_mpz_t(), t.get(), MPFR_RNDU);
    if (sgn(num) < 0) num = 0;
    return Magnitude::from_numerator(std::move(num));
}

inline void mpfr_set_magnitude(mpfr_ptr out, const Magnitude& x, mpfr_rnd_t rnd)
{
    mpfr_set_z(out, x.numerator().get_mpz_t(), rnd);
    mpfr_div_2ui(out, out, Magnitude::frac_bits, rnd);
}

// Number of leading bits kept when taking the logarithm of a wide integer.
inline constexpr std::uint64_t log_mantissa_bits = 192;

/// Upper bound on log2(n) for an integer n >= 1, as an MPFR value.
/// Only the top bits of n are read; n < (top + 1) * 2^shift.
inline void log2_up_integer(mpfr_ptr out, const mpz_class& n)
{
    if (sgn(n) <= 0) throw std::domain_error("log2 of a nonpositive value");
    const std::uint64_t bits = bit_length(n);
    mpz_class top = n;
    std::uint64_t shift = 0;
    if (bits > log_mantissa_bits) {
        shift = bits - log_mantissa_bits;
        top = n >> shift;
        if (mpz_scan1(n.get_mpz_t(), 0) < shift) top += 1;
    }
    Mpfr t(log_mantissa_bits + 128);
    mpfr_set_z(t.get(), top.get_mpz_t(), MPFR_RNDU); // exact: top has <= 193 bits
    mpfr_log2(out, t.get(), MPFR_RNDU);
    mpfr_add_ui(out, out, shift, MPFR_RNDU);
}

} // namespace detail

/// log2(x) rounded up onto the grid. Requires x >= 1.
inline Magnitude log2_up(const Magnitude& x)
{
    if (x.numerator() < (mpz_class(1) << Magnitude::frac_bits))
        throw std::domain_error("log2_up requires x >= 1");
    detail::Mpfr r(detail::log_mantissa_bits + 128);
    detail::log2_up_integer(r.get(), x.numerator());
    mpfr_sub_ui(r.get(), r.get(), Magnitude::frac_bits, MPFR_RNDU);
    return detail::magnitude_from_mpfr_up(r.get());
}

/// log2(n) rounded up onto the grid for an integer n >= 1.
inline Magnitude log2_up(const mpz_class& n)
{
    detail::Mpfr r(detail::log_mantissa_bits + 128);
    detail::log2_up_integer(r.get(), n);
    return detail::magnitude_from_mpfr_up(r.get());
}

/// 2^x rounded up onto the grid. The integer part of x must fit in 64 bits;
/// callers only use this below the exact bit budget.
inline Magnitude exp2_up(const Magnitude& x)
{
    if (!x.le_pow2(62)) throw std::domain_error("exp2_up argument too large");
    const std::uint64_t ip = x.floor().get_ui();
    const mpz_class frac = x.numerator() - (mpz_class(ip) << Magnitude::frac_bits);
    if (sgn(frac) == 0) return Magnitude::from_numerator(mpz_class(1) << (ip + Magnitude::frac_bits));

    const mpfr_prec_t prec = static_cast<mpfr_prec_t>(ip + Magnitude::frac_bits + 64);
    detail::Mpfr f(64);
    mpfr_set_z(f.get(), frac.get_mpz_t(), MPFR_RNDU);
    mpfr_div_2ui(f.get(), f.get(), Magnitude::frac_bits, MPFR_RNDU); // exact
    detail::Mpfr v(prec);
    mpfr_exp2(v.get(), f.get(), MPFR_RNDU);
    mpfr_mul_2ui(v.get(), v.get(), ip, MPFR_RNDU); // exact
    return detail::magnitude_from_mpfr_up(v.get());
}

/// Upper bound on log2(1 + 2^-d) for d >= 0. Used when adding two values
/// whose logarithms differ by d.
inline Magnitude log2_one_plus_exp2_neg_up(const Magnitude& d)
{
    if (!d.le_integer(64)) return Magnitude::ulp(); // true value < 2^-63
    detail::Mpfr nd(128);
    detail::mpfr_set_magnitude(nd.get(), d, MPFR_RNDD); // exact for d <= 64
    mpfr_neg(nd.get(), nd.get(), MPFR_RNDU);
    detail::Mpfr t(128);
    mpfr_exp2(t.get(), nd.get(), MPFR_RNDU);
    mpfr_add_ui(t.get(), t.get(), 1, MPFR_RNDU);
    mpfr_log2(t.get(), t.get(), MPFR_RNDU);
    return detail::magnitude_from_mpfr_up(t.get());
}

/// True when log2(n!) > bits is certain, from n! >= (n/e)^n rounded down.
inline bool log2_factorial_exceeds(const mpz_class& n, std::uint64_t bits)
{
    if (n <= 1) return false;
    detail::Mpfr lo(128), t(128);
    mpfr_set_z(lo.get(), n.get_mpz_t(), MPFR_RNDD);
    mpfr_log2(lo.get(), lo.get(), MPFR_RNDD);
    mpfr_const_log2(t.get(), MPFR_RNDD);           // ln 2, low
    mpfr_ui_div(t.get(), 1, t.get(), MPFR_RNDU);     // log2 e, high
    mpfr_sub(lo.get(), lo.get(), t.get(), MPFR_RNDD);
    if (mpfr_sgn(lo.get()) <= 0) return false;
    mpfr_mul_z(lo.get(), lo.get(), n.get_mpz_t(), MPFR_RNDD);
    return mpfr_cmp_ui(lo.get(), bits) > 0;
}


/// Upper bound on log2(n!) for n >= 1 from Robbins' form of Stirling's
/// formula: n! <= sqrt(2 pi n) (n/e)^n e^(1/(12n)).
inline Magnitude log2_factorial_up(const mpz_class& n)
{
    if (sgn(n) <= 0) throw std::domain_error("log2_factorial_up requires n >= 1");
    constexpr mpfr_prec_t prec = 256;
    using detail::Mpfr;

    // n rounded up stays an integer: below 2^256 it is exact, above it the ulp is >= 1.
    Mpfr nn(prec);
    mpfr_set_z(nn.get(), n.get_mpz_t(), MPFR_RNDU);

    Mpfr ln2_up(prec), ln2_dn(prec), log2e_dn(prec), log2e_up(prec);
    mpfr_const_log2(ln2_up.get(), MPFR_RNDU);
    mpfr_const_log2(ln2_dn.get(), MPFR_RNDD);
    mpfr_ui_div(log2e_dn.get(), 1, ln2_up.get(), MPFR_RNDD);
    mpfr_ui_div(log2e_up.get(), 1, ln2_dn.get(), MPFR_RNDU);

    // (n + 1/2) log2 n
    Mpfr lead(prec), lg(prec);
    mpfr_log2(lg.get(), nn.get(), MPFR_RNDU);
    mpfr_add_d(lead.get(), nn.get(), 0.5, MPFR_RNDU);
    mpfr_mul(lead.get(), lead.get(), lg.get(), MPFR_RNDU);

    // n log2 e, rounded down because it is subtracted
    Mpfr linear(prec);
    mpfr_mul(linear.get(), nn.get(), log2e_dn.get(), MPFR_RNDD);

    // log2 sqrt(2 pi)
    Mpfr c(prec);
    mpfr_const_pi(c.get(), MPFR_RNDU);
    mpfr_mul_ui(c.get(), c.get(), 2, MPFR_RNDU);
    mpfr_log2(c.get(), c.get(), MPFR_RNDU);
    mpfr_div_ui(c.get(), c.get(), 2, MPFR_RNDU);

    // log2(e) / (12 n)
    Mpfr tail(prec);
    mpfr_mul_ui(tail.get(), nn.get(), 12, MPFR_RNDD);
    mpfr_div(tail.get(), log2e_up.get(), tail.get(), MPFR_RNDU);

    Mpfr r(prec);
    mpfr_sub(r.get(), lead.get(), linear.get(), MPFR_RNDU);
    mpfr_add(r.get(), r.get(), c.get(), MPFR_RNDU);
    mpfr_add(r.get(), r.get(), tail.get(), MPFR_RNDU);
    return detail::magnitude_from_mpfr_up(r.get());
}

} // namespace polybound
