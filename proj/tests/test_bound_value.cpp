#include <gtest/gtest.h>

#include <cmath>

#include "polybound/bound_value.hpp"
#include "support/independent.hpp"

using namespace polybound;

namespace {

BoundValue ex(unsigned long v, const Budget& b = {}) { return BoundValue::exact(v, b); }

} // namespace

TEST(BoundValue, MulZero) { EXPECT_EQ(mul(ex(0), ex(7)), ex(0)); }

TEST(BoundValue, MulPowersOfTwo)
{
    const BoundValue r = mul(ex(1024), ex(1024));
    ASSERT_TRUE(r.is_exact());
    EXPECT_EQ(r.exact_value(), ref::pow2(20));
}

TEST(BoundValue, TowerTimesTwo)
{
    const Budget small{1 << 16};
    const BoundValue t = BoundValue::tower(1, Magnitude::from_integer(69169), small);
    ASSERT_TRUE(t.is_tower());
    const BoundValue r = mul(t, ex(2, small), small);
    ASSERT_TRUE(r.is_tower());
    EXPECT_EQ(r.level(), 1);
    EXPECT_EQ(r.magnitude(), Magnitude::from_integer(69170));

    // same product with a budget that holds it exactly
    const Budget big{1 << 17};
    const BoundValue e = mul(BoundValue::exact(ref::pow2(69169), big), ex(2, big), big);
    ASSERT_TRUE(e.is_exact());
    EXPECT_EQ(e.exact_value(), ref::pow2(69170));
}

TEST(BoundValue, PowSmall)
{
    EXPECT_EQ(pow(ex(2), ex(0)), ex(1));
    EXPECT_EQ(pow(ex(0), ex(0)), ex(1));
    EXPECT_EQ(pow(ex(4), ex(8)), ex(65536));
}

TEST(BoundValue, PowTowerExponent)
{
    const Budget b{128};
    const BoundValue e = BoundValue::tower(1, Magnitude::from_integer(263), b);
    const BoundValue r = pow(ex(2, b), e, b);
    ASSERT_TRUE(r.is_tower());
    EXPECT_EQ(r.level(), 2);
    EXPECT_EQ(r.magnitude(), Magnitude::from_integer(263));

    // default budget holds 2^263 exactly, so 2^(2^263) is Tower(1, 2^263)
    const BoundValue e2 = BoundValue::exact(ref::pow2(263));
    const BoundValue r2 = pow(ex(2), e2);
    ASSERT_TRUE(r2.is_tower());
    EXPECT_EQ(r2.level(), 1);
    EXPECT_EQ(r2.magnitude(), Magnitude::from_integer(ref::pow2(263)));
}

TEST(BoundValue, Factorial)
{
    EXPECT_EQ(factorial(ex(0)), ex(1));
    EXPECT_EQ(factorial(ex(2)), ex(2));
    ASSERT_TRUE(factorial(ex(20)).is_exact());
    EXPECT_EQ(factorial(ex(20)).exact_value(), mpz_class("2432902008176640000"));
}

TEST(BoundValue, FactorialOutOfBudgetIsUpperBound)
{
    const Budget b{256};
    const BoundValue f = factorial(ex(200, b), b);
    ASSERT_TRUE(f.is_tower());
    const double exact = ref::log2_mpfr(ref::fact(200));
    EXPECT_GE(f.magnitude().approx(), exact);
    EXPECT_LE(f.magnitude().approx(), exact + 1.0);
}

TEST(BoundValue, Log2Upper)
{
    EXPECT_TRUE(log2_upper(ex(1)).is_zero());
    EXPECT_EQ(log2_upper(ex(1024)), Magnitude::from_integer(10));
    const Magnitude l6 = log2_upper(ex(6));
    const double lo = ref::log2_mpfr(mpz_class(6));
    EXPECT_GE(l6.approx(), lo);
    EXPECT_LE(l6.approx(), lo + std::ldexp(1.0, -32) + 1e-15);
    EXPECT_THROW(log2_upper(ex(0)), std::domain_error);
}

TEST(BoundValue, NormalizationRoundTrip)
{
    // a tower whose value fits the budget is brought back to Exact
    const BoundValue t = BoundValue::tower(1, Magnitude::from_integer(100));
    ASSERT_TRUE(t.is_exact());
    EXPECT_EQ(t.exact_value(), ref::pow2(100));
    const BoundValue t2 = BoundValue::tower(2, Magnitude::from_integer(5));
    ASSERT_TRUE(t2.is_exact());
    EXPECT_EQ(t2.exact_value(), ref::pow2(32));
}

TEST(BoundValue, OrderingAcrossKinds)
{
    const Budget b{64};
    const BoundValue big = BoundValue::exact(ref::pow2(64), b);
    const BoundValue t1 = BoundValue::tower(1, Magnitude::from_integer(65), b);
    const BoundValue t2 = BoundValue::tower(2, Magnitude::from_integer(65), b);
    EXPECT_LT(big, t1);
    EXPECT_LT(t1, t2);
    EXPECT_LT(t2, BoundValue::beyond());
    EXPECT_EQ(BoundValue::beyond(), BoundValue::beyond());
}

TEST(BoundValue, SaturatesBeyondLevelFour)
{
    const Budget b{4};
    BoundValue v = ex(3, b);
    for (int i = 0; i < 8; ++i) v = pow(ex(2, b), v, b);
    EXPECT_TRUE(v.is_beyond());
    EXPECT_TRUE(mul(v, ex(2, b), b).is_beyond());
}

TEST(BoundValue, BudgetFromEnv)
{
    ::setenv(Budget::env_var, "4096", 1);
    EXPECT_EQ(Budget::from_env().bits, 4096u);
    ::setenv(Budget::env_var, "1e5", 1);
    EXPECT_THROW(Budget::from_env(), std::invalid_argument);
    ::unsetenv(Budget::env_var);
    EXPECT_EQ(Budget::from_env().bits, std::uint64_t{1} << 20);
}

TEST(BoundValue, DeterministicAcrossGrouping)
{
    const Budget b{64};
    const BoundValue x = factorial(ex(40, b), b), y = pow(ex(3, b), ex(50, b), b), z = ex(12345, b);
    const BoundValue l = mul(mul(x, y, b), z, b);
    const BoundValue l2 = mul(mul(x, y, b), z, b);
    EXPECT_EQ(l, l2);
    EXPECT_EQ(l.magnitude().numerator(), l2.magnitude().numerator());
}
