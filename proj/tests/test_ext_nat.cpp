#include <sstream>

#include <gtest/gtest.h>

#include "pursuit/ext_nat.hpp"

using pursuit::ExtNat;

TEST(ExtNat, InfinityIsGreatest)
{
    EXPECT_LT(ExtNat{ 0 }, ExtNat{ 1 });
    EXPECT_LT(ExtNat{ 1'000'000 }, ExtNat::infinity());
    EXPECT_EQ(ExtNat::infinity(), ExtNat::infinity());
    EXPECT_TRUE(ExtNat::infinity().is_infinite());
    EXPECT_TRUE(ExtNat{ 7 }.is_finite());
}

TEST(ExtNat, Arithmetic)
{
    EXPECT_EQ(ExtNat{ 3 }.successor(), ExtNat{ 4 });
    EXPECT_EQ(ExtNat::infinity().successor(), ExtNat::infinity());
    EXPECT_EQ(ExtNat{ 0 }.half_up(), ExtNat{ 0 });
    EXPECT_EQ(ExtNat{ 1 }.half_up(), ExtNat{ 1 });
    EXPECT_EQ(ExtNat{ 4 }.half_up(), ExtNat{ 2 });
    EXPECT_EQ(ExtNat{ 5 }.half_up(), ExtNat{ 3 });
    EXPECT_EQ(ExtNat::infinity().half_up(), ExtNat::infinity());
}

TEST(ExtNat, ValueOfInfinityThrows)
{
    EXPECT_THROW((void)ExtNat::infinity().value(), std::logic_error);
    EXPECT_EQ(ExtNat{ 12 }.value(), 12u);
}

TEST(ExtNat, Printing)
{
    std::ostringstream os;
    os << ExtNat{ 2 } << ' ' << ExtNat::infinity();
    EXPECT_EQ(os.str(), "2 inf");
}
