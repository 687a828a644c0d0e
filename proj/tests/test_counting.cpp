#include <gtest/gtest.h>

#include "polybound/counting.hpp"
#include "support/independent.hpp"

using namespace polybound;

TEST(Hall, SpotValues)
{
    EXPECT_EQ(hall_count_exact(1, 5), 1);
    EXPECT_EQ(hall_count_exact(2, 2), 3);
    EXPECT_EQ(hall_count_exact(3, 2), 13);
    EXPECT_EQ(hall_count_exact(2, 1), 1);
    EXPECT_EQ(hall_count_exact(4, 2), 71);
    EXPECT_THROW(hall_count_exact(0, 2), std::invalid_argument);
}

TEST(Hall, UpperBoundDominates)
{
    for (std::uint64_t d = 1; d <= 8; ++d)
        for (std::uint64_t n = 1; n <= 4; ++n)
            EXPECT_LE(hall_count(d, n), hall_upper(d, n)) << d << "," << n;
}

TEST(GL, SmallOrders)
{
    EXPECT_EQ(gl2_order_exact(0), 1);
    EXPECT_EQ(gl2_order_exact(1), 1);
    EXPECT_EQ(gl2_order_exact(2), 6);
    EXPECT_EQ(gl2_order_exact(3), 168);
    EXPECT_EQ(gl2_order_exact(4), 20160);
}

TEST(GL, MatchesDirectProduct)
{
    for (unsigned long m : {5ul, 17ul, 64ul, 263ul})
        EXPECT_EQ(gl2_order_exact(m), ref::gl_direct(m)) << m;
}

TEST(GL, OutOfBudgetIsSquareBound)
{
    const Budget b{1000};
    const BoundValue v = out_order_elementary_2(40, b);
    ASSERT_TRUE(v.is_tower());
    EXPECT_EQ(v.magnitude(), Magnitude::from_integer(1600));
    EXPECT_TRUE(out_order_elementary_2(31, b).is_exact());
}

TEST(Complements, Bound)
{
    EXPECT_EQ(complement_count_bound(FiniteAbelianGroup({2}), BoundValue::exact(2)).exact_value(), 16);
    EXPECT_EQ(complement_count_bound(FiniteAbelianGroup({2, 2}), BoundValue::exact(1)).exact_value(), 16);
    EXPECT_THROW(complement_count_bound(FiniteAbelianGroup({2}), BoundValue::exact(0)), std::invalid_argument);
}

TEST(LiteralOutProduct, Structure)
{
    const auto lp = literal_out_product(263);
    EXPECT_EQ(lp.positive_factors, 263u);
    EXPECT_EQ(lp.zero_factor_index, 264u);
    EXPECT_EQ(lp.factor_count.exact_value(), ref::pow2(263));
    EXPECT_EQ(lp.rank_reading.exact_value(), ref::gl_direct(263));
    // the factor at i = rank + 1 really is zero: 2^m - 2^m
    EXPECT_EQ(ref::pow2(263) - ref::pow2(264 - 1), 0);
}
