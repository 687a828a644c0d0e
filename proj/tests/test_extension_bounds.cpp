#include <gtest/gtest.h>

#include "polybound/extension_bounds.hpp"
#include "support/independent.hpp"

using namespace polybound;

namespace {
BoundValue ex(unsigned long v) { return BoundValue::exact(v); }
}

TEST(ExtensionBounds, I1IsExponent)
{
    EXPECT_EQ(i1(FiniteAbelianGroup({2, 6})), ex(6));
    EXPECT_EQ(i_bound(FiniteAbelianGroup({3}), GenusProfile({5}))->total, ex(3));
}

TEST(ExtensionBounds, NamedFactors)
{
    const FiniteAbelianGroup a({2});
    // |A|^(2e g1) e (e!)^(2g1+r) at g1 = 2: 2^8 * 2 * 2^5
    EXPECT_EQ(normalizer_index_bound(a, ex(2)).exact_value(), ref::pow2(14));
    EXPECT_EQ(index_bound_J(a, ex(2)).exact_value(), ref::pow2(15));
    EXPECT_EQ(recursion_base_factor(a, ex(2)).exact_value(), ref::pow2(16));
}

TEST(ExtensionBounds, I2ForZ2)
{
    const auto t = i_bound(FiniteAbelianGroup({2}), GenusProfile({2, 2}));
    ASSERT_TRUE(t->total.is_exact());
    EXPECT_EQ(t->total.exact_value(), ref::pow2(18));
    EXPECT_EQ(i2_closed_form(FiniteAbelianGroup({2}), ex(2)).exact_value(), ref::pow2(18));
}

TEST(ExtensionBounds, TraceRecomputesTotal)
{
    const auto t = i_bound(FiniteAbelianGroup({2, 2}), GenusProfile({2, 3, 2}));
    ASSERT_FALSE(t->is_leaf());
    EXPECT_EQ(product({t->base_factor, t->sub_J->total, t->sub_K->total}), t->total);
    EXPECT_EQ(t->index_K, t->sub_J->total);
    EXPECT_EQ(t->profile_J.size(), 2u);
    EXPECT_EQ(t->sub_J->level, 2u);
}

TEST(ExtensionBounds, I3Literal)
{
    const auto r = i3_literal(FiniteAbelianGroup({2}), ex(2), ex(2));
    ASSERT_TRUE(r.g_a.is_exact());
    EXPECT_EQ(r.g_a.exact_value(), ref::pow2(15) + 1);
    ASSERT_TRUE(r.g_b.is_exact());
    EXPECT_EQ(r.g_b.exact_value(), ref::pow2(163866) + 1);
    const mpz_class s = 2 + ref::pow2(15) + 1 + ref::pow2(163866) + 1;
    ASSERT_TRUE(r.value.is_tower());
    EXPECT_EQ(r.value.level(), 1);
    EXPECT_EQ(r.value.magnitude(), Magnitude::from_integer(mpz_class(5 * s + 19)));
}

TEST(ExtensionBounds, E2Check)
{
    EXPECT_EQ(e2_base_factor_check(FiniteAbelianGroup({2, 2, 2, 2}), ex(2)).exact_value(), ref::pow2(43));
    EXPECT_EQ(e2_base_factor_check(FiniteAbelianGroup({2, 2, 2, 2}), ex(2)),
              recursion_base_factor(FiniteAbelianGroup({2, 2, 2, 2}), ex(2)));
    EXPECT_THROW(e2_base_factor_check(FiniteAbelianGroup({4}), ex(2)), std::invalid_argument);
}

TEST(ExtensionBounds, CompareN2Agrees)
{
    const auto c = closed_form_compare(FiniteAbelianGroup({2, 4}), GenusProfile({3, 2}));
    EXPECT_EQ(c.verdict, Verdict::agree);
    EXPECT_EQ(c.discrepancy.value, "0.000000");
}

TEST(ExtensionBounds, CompareN3Populated)
{
    const auto c = closed_form_compare(FiniteAbelianGroup({2}), GenusProfile({2, 2, 2}));
    EXPECT_NE(c.verdict, Verdict::indeterminate);
    EXPECT_FALSE(c.discrepancy.value.empty());
    EXPECT_GE(c.discrepancy.depth, 1);
    ASSERT_TRUE(c.i3.has_value());
}

TEST(ExtensionBounds, CompareRejectsOtherLengths)
{
    EXPECT_THROW(closed_form_compare(FiniteAbelianGroup({2}), GenusProfile({2})), std::invalid_argument);
}

TEST(ExtensionBounds, MemoDoesNotChangeResult)
{
    const FiniteAbelianGroup a({3});
    const PropagatedProfile p = to_propagated(GenusProfile({2, 2, 2}));
    IBoundCache cache;
    const auto t1 = i_bound(a, p, Budget{}, cache);
    const auto t2 = i_bound(a, p, Budget{}, cache);
    EXPECT_EQ(t1.get(), t2.get());
    EXPECT_EQ(i_bound(a, p)->total, t1->total);
}

TEST(ExtensionBounds, Discrepancy)
{
    const auto d = log2_discrepancy(ex(8), ex(2));
    EXPECT_EQ(d.depth, 1);
    EXPECT_EQ(d.value, "2.000000");
    EXPECT_EQ(log2_discrepancy(ex(2), ex(8)).value, "-2.000000");
    EXPECT_EQ(log2_discrepancy(BoundValue::beyond(), ex(8)).value, "indeterminate");
}
