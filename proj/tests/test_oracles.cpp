#include <gtest/gtest.h>

#include "polybound/oracles.hpp"
#include "polybound/verify.hpp"

using namespace polybound;
using namespace polybound::oracles;

TEST(Oracles, FreeSubgroups)
{
    EXPECT_EQ(count_free_subgroups_bruteforce(1, 3), 1u);
    EXPECT_EQ(count_free_subgroups_bruteforce(2, 2), 3u);
    EXPECT_EQ(count_free_subgroups_bruteforce(3, 2), 13u);
    EXPECT_EQ(count_free_subgroups_bruteforce(4, 1), 1u);
    EXPECT_THROW(count_free_subgroups_bruteforce(7, 2), std::invalid_argument);
    EXPECT_THROW(count_free_subgroups_bruteforce(3, 4), std::invalid_argument);
}

TEST(Oracles, GL)
{
    EXPECT_EQ(count_gl2_bruteforce(0), 1u);
    EXPECT_EQ(count_gl2_bruteforce(1), 1u);
    EXPECT_EQ(count_gl2_bruteforce(2), 6u);
    EXPECT_EQ(count_gl2_bruteforce(3), 168u);
    EXPECT_EQ(count_gl2_bruteforce(4), 20160u);
    EXPECT_THROW(count_gl2_bruteforce(5), std::invalid_argument);
}

TEST(Oracles, Sections)
{
    EXPECT_EQ(count_sections_bruteforce({2}, 2), 4u);
    EXPECT_EQ(count_sections_bruteforce({2}, 4), 16u);
    EXPECT_EQ(count_sections_bruteforce({2, 2}, 2), 16u);
    EXPECT_THROW(count_sections_bruteforce({3, 3}, 2), std::invalid_argument);
}

TEST(Oracles, Euler)
{
    EXPECT_EQ(euler_char_cover_oracle(2, 1), 2);
    EXPECT_EQ(euler_char_cover_oracle(2, 3), 4);
    EXPECT_EQ(euler_char_cover_oracle(5, 2), 9);
}

TEST(Oracles, GroupFacts)
{
    const auto f = abelian_group_facts_bruteforce({2, 4});
    EXPECT_EQ(f.order, 8u);
    EXPECT_EQ(f.exponent, 4u);
    EXPECT_EQ(f.min_generators, 2u);
}

TEST(Verify, SmallSuitesPass)
{
    for (const char* s : {"gl", "sections", "euler"}) {
        const auto r = verify_suite(s);
        EXPECT_TRUE(r.ok()) << s;
        EXPECT_GT(r.checked, 0u);
    }
    const auto h = verify_suite("hall", 4);
    EXPECT_TRUE(h.ok());
    EXPECT_THROW(verify_suite("bogus"), std::invalid_argument);
}

TEST(Verify, ShapeEnumeration)
{
    // 1, Z/2..Z/8, Z/2+Z/2, Z/2+Z/4, Z/2^3
    EXPECT_EQ(small_abelian_shapes(8).size(), 11u);
}

TEST(Verify, MismatchIsReported)
{
    VerifyReport r{"x"};
    r.check("a", 1, 2);
    EXPECT_FALSE(r.ok());
    EXPECT_EQ(r.mismatches.front(), "a: formula 1 != oracle 2");
}
