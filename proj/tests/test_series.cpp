#include <gtest/gtest.h>

#include "support.hpp"

using namespace bnchain;
using support::fixture_filling;

namespace {

const BnParams kTorsionPairParams = BnParams::make(10, 1, 7);
const ChainSpec kTorsionPairChain(10, {{5, 3}});

LimitSeriesTable torsion_pair_series() {
    return filling_to_series(fixture_filling("torsion_pair_2x4_g10.json"), kTorsionPairParams, kTorsionPairChain);
}

} // namespace

TEST(FillingToSeries, TorsionPairSectionOrders) {
    const auto t = torsion_pair_series();
    // (u, v) of the two sections on each component
    const std::vector<std::array<std::pair<Int, Int>, 2>> expected = {
        {{{0, 6}, {1, 5}}}, {{{1, 5}, {2, 4}}}, {{{2, 5}, {3, 3}}}, {{{2, 5}, {4, 2}}}, {{{2, 5}, {5, 2}}},
        {{{2, 5}, {5, 1}}}, {{{2, 4}, {6, 0}}}, {{{3, 3}, {7, 0}}}, {{{4, 2}, {7, 0}}}, {{{5, 1}, {7, 0}}}};
    for (int i = 1; i <= 10; ++i) {
        for (int j = 0; j <= 1; ++j) {
            EXPECT_EQ(t.u_at(i, j), expected[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j)].first) << i << "," << j;
            EXPECT_EQ(t.v_at(i, j), expected[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j)].second) << i << "," << j;
        }
    }
}

TEST(FillingToSeries, TorsionPairBundles) {
    const auto t = torsion_pair_series();
    const auto special = [](Int a, Int b) { return LineBundleDescriptor::special(a, b); };
    const auto generic = LineBundleDescriptor::generic(7);
    const std::vector<LineBundleDescriptor> expected = {generic,          generic,          special(2, 5), special(2, 5),
                                                        special(2, 5),    special(2, 5),    generic,       special(7, 0),
                                                        special(7, 0),    special(7, 0)};
    EXPECT_EQ(t.bundles, expected);
    // L5 = O(2P+5Q) = O(5P+2Q) through 3(P-Q) = 0
    EXPECT_TRUE(same_special_bundle(t.bundles[4], 5, 2, 3));
    EXPECT_FALSE(same_special_bundle(t.bundles[4], 5, 2, std::nullopt));
    EXPECT_EQ(t.u_at(5, 1) - t.u_at(5, 0), 3);
}

TEST(FillingToSeries, BoundaryVanishingIsZeroToR) {
    const auto t = torsion_pair_series();
    EXPECT_EQ(t.u_at(1, 0), 0);
    EXPECT_EQ(t.u_at(1, 1), 1);
    EXPECT_EQ(t.v_at(10, 0), 1);
    EXPECT_EQ(t.v_at(10, 1), 0);
    EXPECT_TRUE(check_series_invariants(t).valid());
}

TEST(FillingToSeries, NoRepeatsFullSumsExactlyWhereIndicesSit) {
    const Filling f = optimal_separation_filling(3, 4, 0);
    const BnParams p = BnParams::make(12, 2, 12 - 4 + 2);
    const auto t = filling_to_series(f, p, ChainSpec(12));
    EXPECT_TRUE(check_series_invariants(t).valid());
    for (int i = 1; i <= 12; ++i) {
        for (int j = 0; j < 3; ++j) {
            bool present = false;
            for (int row = 1; row <= 4; ++row) present = present || f.at(row, j + 1) == i;
            EXPECT_EQ(t.u_at(i, j) + t.v_at(i, j), present ? p.d : p.d - 1);
        }
    }
}

TEST(FillingToSeries, ShapeMismatchAndInvalidFilling) {
    const Filling f = fixture_filling("torsion_pair_2x4_g10.json");
    EXPECT_THROW((void)filling_to_series(f, BnParams::make(10, 1, 6), kTorsionPairChain), MalformedInputError);
    EXPECT_THROW((void)filling_to_series(f, kTorsionPairParams, ChainSpec(10)), MalformedInputError);
}

TEST(SeriesToFilling, RoundTripOnFixtures) {
    for (const auto& name : support::figure_fixtures()) {
        const Filling f = fixture_filling(name);
        const BnParams p = BnParams::make(f.g(), f.alpha() - 1, f.g() - f.beta() + f.alpha() - 1);
        const auto t = filling_to_series(f, p, minimal_torsion_chain(f));
        EXPECT_TRUE(check_series_invariants(t).valid()) << name;
        EXPECT_EQ(series_to_filling(t), f) << name;
    }
}

TEST(SeriesToFilling, AllSumsBelowDegreeCannotFill) {
    auto t = torsion_pair_series();
    for (std::size_t i = 0; i < t.u.size(); ++i) {
        for (std::size_t j = 0; j < 2; ++j) t.v[i][j] = t.p.d - 1 - t.u[i][j];
    }
    EXPECT_FALSE(check_series_invariants(t).valid());
    EXPECT_THROW((void)series_to_filling(t), MalformedInputError);
}

TEST(SeriesInvariants, DetectTampering) {
    auto t = torsion_pair_series();
    t.u[3][1] += 1;
    const auto report = check_series_invariants(t);
    EXPECT_TRUE(report.has(ViolationKind::Refinedness));

    auto s = torsion_pair_series();
    s.bundles[7] = LineBundleDescriptor::generic(7);
    EXPECT_TRUE(check_series_invariants(s).has(ViolationKind::BundleMismatch));

    auto b = torsion_pair_series();
    b.v[9][0] = 7; // v at Q_g must be r - j
    EXPECT_TRUE(check_series_invariants(b).has(ViolationKind::BoundaryVanishing));
}

TEST(EllipticComponent, Examples) {
    EXPECT_TRUE(elliptic_component_check({2, 5}, {5, 2}, 7, LineBundleDescriptor::special(2, 5), 3).valid());
    EXPECT_TRUE(elliptic_component_check({0, 1}, {6, 5}, 7, LineBundleDescriptor::generic(7), std::nullopt).valid());
    const auto bad = elliptic_component_check({2, 5}, {5, 2}, 7, LineBundleDescriptor::generic(7), std::nullopt);
    EXPECT_FALSE(bad.valid());
    EXPECT_TRUE(bad.has(ViolationKind::BundleMismatch));
    EXPECT_TRUE(bad.has(ViolationKind::MissingTorsion));
}

TEST(EllipticComponent, TorsionMustDivideGap) {
    const auto r = elliptic_component_check({2, 5}, {5, 2}, 7, LineBundleDescriptor::special(2, 5), 2);
    EXPECT_TRUE(r.has(ViolationKind::TorsionDivisibility));
    const auto over = elliptic_component_check({2, 6}, {5, 2}, 7, LineBundleDescriptor::special(2, 5), 3);
    EXPECT_TRUE(over.has(ViolationKind::SumExceedsDegree));
}

TEST(LineBundle, SpecialNeedsNonNegativeOrders) {
    EXPECT_THROW((void)LineBundleDescriptor::special(-1, 8), MalformedInputError);
    EXPECT_EQ(LineBundleDescriptor::special(2, 5).degree, 7);
}

TEST(Series, RoundTripAndPropagationOnEnumeratedFillings) {
    const std::vector<std::pair<BnParams, ChainSpec>> cases = {
        {BnParams::make(10, 1, 7), ChainSpec(10, {{5, 3}})},
        {BnParams::make(6, 2, 6), ChainSpec(6, {{3, 2}, {4, 2}})},
        {BnParams::make(8, 2, 7), ChainSpec(8, {{2, 3}, {5, 2}})},
    };
    for (const auto& [p, chain] : cases) {
        for (const auto& f : enumerate_fillings(p, chain)) {
            const auto t = filling_to_series(f, p, chain);
            ASSERT_TRUE(check_series_invariants(t).valid());
            EXPECT_EQ(series_to_filling(t), f);
            for (int i = 2; i <= p.g; ++i) {
                for (int j = 0; j < p.alpha(); ++j) {
                    bool prev_in_col = false;
                    for (int row = 1; row <= f.beta(); ++row) prev_in_col = prev_in_col || f.at(row, j + 1) == i - 1;
                    EXPECT_EQ(t.u_at(i, j), t.u_at(i - 1, j) + (prev_in_col ? 0 : 1));
                }
            }
        }
    }
}
