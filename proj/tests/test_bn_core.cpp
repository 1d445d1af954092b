#include <gtest/gtest.h>

#include "bnchain/bn_core.hpp"
#include "bnchain/tableau.hpp"

using namespace bnchain;

TEST(Rho, Examples) {
    EXPECT_EQ(rho(BnParams::make(8, 1, 4)), -2);
    EXPECT_EQ(rho(BnParams::make(7, 2, 6)), -2);
    EXPECT_EQ(rho(BnParams::make(10, 1, 7)), 2);
    EXPECT_EQ(codimension(BnParams::make(10, 1, 7)), 0);
    EXPECT_EQ(codimension(BnParams::make(8, 1, 4)), 2);
}

TEST(Params, RejectsMalformed) {
    EXPECT_THROW(BnParams::make(1, 1, 1), OutOfRangeError);
    EXPECT_THROW(BnParams::make(5, 0, 3), OutOfRangeError);
    EXPECT_THROW(BnParams::make(5, 1, 0), OutOfRangeError);
    EXPECT_THROW(BnParams::make(5, 1, 9), OutOfRangeError); // beta = -3
}

TEST(SerreDual, Examples) {
    EXPECT_EQ(serre_dual(BnParams::make(14, 4, 15)), BnParams::make(14, 2, 11));
    EXPECT_EQ(serre_dual(BnParams::make(7, 2, 6)), BnParams::make(7, 2, 6));
    EXPECT_EQ(serre_dual(BnParams::make(10, 1, 7)), BnParams::make(10, 3, 11));
}

TEST(SerreDual, DegenerateDualIsAnError) {
    // beta = 1 gives dual dimension 0
    EXPECT_THROW((void)serre_dual(BnParams::make(5, 1, 5)), OutOfRangeError);
}

TEST(SerreDual, InvolutionAndRhoPreserved) {
    for (Int g = 2; g <= 30; ++g) {
        for (Int r = 1; r <= 8; ++r) {
            for (Int d = 1; d <= 2 * g; ++d) {
                BnParams p;
                try {
                    p = BnParams::make(g, r, d);
                    (void)serre_dual(p);
                } catch (const OutOfRangeError&) {
                    continue;
                }
                EXPECT_EQ(serre_dual(serre_dual(p)), p);
                EXPECT_EQ(rho(serre_dual(p)), rho(p));
            }
        }
    }
}

TEST(Canonical, RecordsDualization) {
    const auto a = canonical(BnParams::make(10, 3, 11));
    EXPECT_TRUE(a.dualized);
    EXPECT_EQ(a.params, BnParams::make(10, 1, 7));
    const auto b = canonical(BnParams::make(10, 1, 7));
    EXPECT_FALSE(b.dualized);
    EXPECT_LE(b.params.alpha(), b.params.beta());
}

TEST(KjDecompose, Examples) {
    EXPECT_EQ(kj_decompose(7), (TriangularDecomposition{7, 3, 1}));
    EXPECT_EQ(kj_decompose(11), (TriangularDecomposition{11, 4, 1}));
    EXPECT_EQ(kj_decompose(0), (TriangularDecomposition{0, 0, 0}));
    EXPECT_THROW((void)kj_decompose(-1), OutOfRangeError);
}

TEST(KjDecompose, InvariantsUpTo200) {
    for (Int e = 0; e <= 200; ++e) {
        const auto [ee, k, j] = kj_decompose(e);
        EXPECT_LE(k * (k + 1) / 2, e);
        EXPECT_LT(e, (k + 1) * (k + 2) / 2);
        EXPECT_EQ(j, e - k * (k + 1) / 2);
        EXPECT_GE(j, 0);
        EXPECT_LE(j, k);
    }
}

TEST(MaxDistanceBound, Examples) {
    EXPECT_EQ(max_distance_bound(5, 6, 7), 41);
    EXPECT_EQ(max_distance_bound(5, 6, 1), 9);
    EXPECT_EQ(max_distance_bound(5, 5, 11), 40);
    EXPECT_EQ(max_distance_bound(3, 4, 0), 0);
}

TEST(MaxDistanceBound, NamesTheViolatedBound) {
    try {
        (void)max_distance_bound(3, 3, 4);
        FAIL() << "expected an error";
    } catch (const OutOfRangeError& e) {
        EXPECT_NE(std::string(e.what()).find("(alpha^2-2)/2"), std::string::npos);
    }
    try {
        (void)max_distance_bound(3, 5, 6);
        FAIL() << "expected an error";
    } catch (const OutOfRangeError& e) {
        EXPECT_NE(std::string(e.what()).find("(alpha+2)(alpha-1)/2"), std::string::npos);
    }
    EXPECT_THROW((void)max_distance_bound(5, 4, 1), OutOfRangeError);
}

TEST(MaxDistanceBound, MatchesExhaustiveOptimumUpToSix) {
    for (int alpha = 1; alpha <= 6; ++alpha) {
        for (int beta = alpha; beta <= 6; ++beta) {
            for (int e = 0; e <= max_separable_codimension(alpha, beta); ++e) {
                const auto best = max_distance_exhaustive(alpha, beta, e);
                ASSERT_TRUE(best.has_value()) << alpha << "x" << beta << " e=" << e;
                EXPECT_EQ(*best, max_distance_bound(alpha, beta, e)) << alpha << "x" << beta << " e=" << e;
            }
        }
    }
}

TEST(ExistenceRanges, Examples) {
    const auto a = existence_ranges(4, 8, 21);
    EXPECT_EQ(a.e, 11);
    EXPECT_TRUE(a.staircase);
    EXPECT_FALSE(a.separation);
    EXPECT_TRUE(a.petri);

    const auto b = existence_ranges(5, 7, 19);
    EXPECT_EQ(b.e, 16);
    EXPECT_EQ(b.e, b.g - 3);
    EXPECT_TRUE(b.staircase);
    EXPECT_TRUE(b.petri);

    const auto c = existence_ranges(2, 2, 1);
    EXPECT_FALSE(c.staircase);
    EXPECT_FALSE(c.petri);
}

TEST(Checked, OverflowIsAnError) {
    EXPECT_THROW(checked::mul(Int{1} << 62, 4), std::overflow_error);
    EXPECT_THROW(checked::add(std::numeric_limits<Int>::max(), 1), std::overflow_error);
    EXPECT_EQ(checked::sub(5, 7), -2);
}
