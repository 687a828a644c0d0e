#pragma once

// Random add/mul/pow/factorial trees over small exact leaves, evaluated once
// with plain mpz arithmetic and once through BoundValue under a given budget.

#include <algorithm>
#include <cmath>
#include <memory>
#include <random>

#include "polybound/bound_value.hpp"
#include "support/independent.hpp"

namespace ref {

struct Expr {
    enum Op { leaf, add, mul, pow, fact } op = leaf;
    unsigned long value = 0;
    std::unique_ptr<Expr> l, r;
};

inline std::unique_ptr<Expr> random_expr(std::mt19937_64& rng, int depth)
{
    auto e = std::make_unique<Expr>();
    std::uniform_int_distribution<int> pick(0, 9);
    const int k = depth == 0 ? 0 : pick(rng);
    if (k <= 2) {
        e->value = std::uniform_int_distribution<unsigned long>(0, 300)(rng);
    } else if (k <= 4) {
        e->op = Expr::mul;
        e->l = random_expr(rng, depth - 1);
        e->r = random_expr(rng, depth - 1);
    } else if (k == 5) {
        e->op = Expr::add;
        e->l = random_expr(rng, depth - 1);
        e->r = random_expr(rng, depth - 1);
    } else if (k <= 7) {
        e->op = Expr::pow;
        e->l = random_expr(rng, depth - 1);
        e->r = std::make_unique<Expr>();
        e->r->value = std::uniform_int_distribution<unsigned long>(0, 400)(rng);
    } else {
        e->op = Expr::fact;
        e->l = std::make_unique<Expr>();
        e->l->value = std::uniform_int_distribution<unsigned long>(0, 2000)(rng);
    }
    return e;
}

// Rough log2 of the value, so oversized trees are skipped before evaluation.
inline double log2_estimate(const Expr& e)
{
    switch (e.op) {
    case Expr::leaf: return e.value <= 1 ? 0.0 : std::log2(double(e.value));
    case Expr::add: return std::max(log2_estimate(*e.l), log2_estimate(*e.r)) + 1;
    case Expr::mul: return log2_estimate(*e.l) + log2_estimate(*e.r);
    case Expr::pow: return log2_estimate(*e.l) * double(e.r->value);
    case Expr::fact: return e.l->value <= 1 ? 0.0 : double(e.l->value) * std::log2(double(e.l->value));
    }
    return 0;
}

inline mpz_class eval_exact(const Expr& e)
{
    switch (e.op) {
    case Expr::leaf: return e.value;
    case Expr::add: return eval_exact(*e.l) + eval_exact(*e.r);
    case Expr::mul: return eval_exact(*e.l) * eval_exact(*e.r);
    case Expr::pow: return ipow(eval_exact(*e.l), e.r->value);
    case Expr::fact: return fact(e.l->value);
    }
    return 0;
}

inline polybound::BoundValue eval_bound(const Expr& e, const polybound::Budget& b)
{
    using polybound::BoundValue;
    switch (e.op) {
    case Expr::leaf: return BoundValue::exact(e.value, b);
    case Expr::add: return polybound::add(eval_bound(*e.l, b), eval_bound(*e.r, b), b);
    case Expr::mul: return polybound::mul(eval_bound(*e.l, b), eval_bound(*e.r, b), b);
    case Expr::pow: return polybound::pow(eval_bound(*e.l, b), BoundValue::exact(e.r->value, b), b);
    case Expr::fact: return polybound::factorial(BoundValue::exact(e.l->value, b), b);
    }
    return {};
}

inline std::size_t bit_count(const mpz_class& v) { return mpz_sizeinbase(v.get_mpz_t(), 2); }

struct SoundnessTally {
    int checked = 0, towers = 0, exact_mismatch = 0, underestimates = 0, overshoots = 0;
    double worst_overshoot_ratio = 0;  // (overshoot) / (1e-6 log2 + 1)
};

/// Draws expressions until `count` with exact values under `max_bits` bits were checked.
inline SoundnessTally tower_soundness(int count, std::uint64_t seed, const polybound::Budget& tiny,
                                      std::size_t max_bits = 400000)
{
    std::mt19937_64 rng(seed);
    SoundnessTally t;
    while (t.checked < count) {
        const auto e = random_expr(rng, 4);
        if (log2_estimate(*e) > 2.0 * max_bits) continue;
        const mpz_class exact = eval_exact(*e);
        if (bit_count(exact) > max_bits) continue;
        ++t.checked;
        const polybound::BoundValue v = eval_bound(*e, tiny);
        if (v.is_exact()) {
            if (v.exact_value() != exact) ++t.exact_mismatch;
            continue;
        }
        ++t.towers;
        if (!v.is_tower() || v.level() != 1) {
            ++t.underestimates;  // deeper than the exact value allows; count as failure
            continue;
        }
        if (!fixed_ge_log2(v.magnitude().numerator(), exact)) ++t.underestimates;
        const double lx = log2_mpfr(exact);
        const double over = v.magnitude().approx() - lx;
        const double allowed = 1e-6 * lx + 1;
        if (over > allowed) ++t.overshoots;
        t.worst_overshoot_ratio = std::max(t.worst_overshoot_ratio, over / allowed);
    }
    return t;
}

} // namespace ref
