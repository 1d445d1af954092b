#include <gtest/gtest.h>

#include "support.hpp"

using namespace bnchain;
using support::fixture_filling;

namespace {

BnParams params_of(const Filling& f) { return BnParams::make(f.g(), f.alpha() - 1, f.g() - f.beta() + f.alpha() - 1); }

bool all_hold(const std::vector<CheckRecord>& checks) {
    for (const auto& c : checks) {
        if (!c.holds) return false;
    }
    return true;
}

} // namespace

TEST(Relations, Evaluate) {
    EXPECT_TRUE(evaluate_relation(3, "==", 3));
    EXPECT_TRUE(evaluate_relation(3, "<", 4));
    EXPECT_TRUE(evaluate_relation(4, ">=", 4));
    EXPECT_FALSE(evaluate_relation(5, "<=", 4));
    std::vector<CheckRecord> checks;
    EXPECT_THROW(require_check(checks, "bad", 1, "==", 2), CertificateError);
    ASSERT_EQ(checks.size(), 1u);
    EXPECT_FALSE(checks.front().holds);
}

TEST(Petri, CornerSquareHasOneProductPerComponent) {
    const Filling f = fixture_filling("corner_square_5x5_g15.json");
    const auto cert = petri_certificate(f, params_of(f), minimal_torsion_chain(f));
    EXPECT_EQ(cert.products.size(), 15u);
    EXPECT_TRUE(cert.dual_checked);
    EXPECT_TRUE(all_hold(cert.checks));
}

TEST(Petri, NoRepeatsGivesEveryBox) {
    const Filling f = optimal_separation_filling(3, 4, 0);
    const auto cert = petri_certificate(f, params_of(f), ChainSpec(12));
    EXPECT_EQ(cert.products.size(), 12u);
    std::set<std::pair<int, int>> boxes;
    for (const auto& prod : cert.products) boxes.insert({prod.j, prod.i});
    EXPECT_EQ(boxes.size(), 12u);
}

TEST(Petri, StaircaseLayoutCounts) {
    const Filling f = fixture_filling("staircase_4x8_g21.json");
    auto cert = petri_certificate(f, params_of(f), minimal_torsion_chain(f));
    EXPECT_EQ(cert.products.size(), 21u);
    check_petri_layout_counts(cert, staircase_layout(4, 8, 21));
    EXPECT_TRUE(all_hold(cert.checks));
}

TEST(Petri, ProductsSitAtUpperOccurrences) {
    const Filling f = fixture_filling("staircase_5x7_g19.json");
    const auto cert = petri_certificate(f, params_of(f), minimal_torsion_chain(f));
    const auto occ = occurrences(f);
    for (const auto& prod : cert.products) {
        EXPECT_EQ(f.at(prod.j, prod.i), prod.k);
        EXPECT_EQ((Cell{prod.j, prod.i}), occ.at(prod.k).front());
    }
}

TEST(Petri, DroppingAProductLosesAComponent) {
    const Filling f = fixture_filling("staircase_4x8_g17.json");
    const auto cert = petri_certificate(f, params_of(f), minimal_torsion_chain(f));
    for (std::size_t drop = 0; drop < cert.products.size(); ++drop) {
        std::set<int> ks;
        for (std::size_t n = 0; n < cert.products.size(); ++n) {
            if (n != drop) ks.insert(cert.products[n].k);
        }
        EXPECT_EQ(static_cast<Int>(ks.size()), f.g() - 1);
        EXPECT_EQ(ks.count(cert.products[drop].k), 0u);
    }
}

TEST(Petri, MissingIndicesAreRefused) {
    const Filling f = fixture_filling("torsion_pair_2x4_g10.json");
    EXPECT_THROW((void)petri_certificate(f, BnParams::make(10, 1, 7), ChainSpec(10, {{5, 3}})), CertificateError);
}

TEST(MaxRank, SmallestCase) {
    const auto cert = maxrank_m2_certificate(1);
    EXPECT_EQ(cert.g, 3);
    EXPECT_EQ(cert.d, 2);
    ASSERT_EQ(cert.steps.size(), 3u);
    EXPECT_EQ(cert.steps[0].eliminated, (std::pair<int, int>{1, 1}));
    EXPECT_EQ(cert.steps[1].eliminated, (std::pair<int, int>{1, 2}));
    EXPECT_EQ(cert.steps[2].eliminated, (std::pair<int, int>{2, 2}));
    EXPECT_EQ(cert.degree_distribution, (std::vector<Int>{1, 2, 1}));
}

TEST(MaxRank, DegreeDistribution) {
    const auto cert = maxrank_m2_certificate(4);
    EXPECT_EQ(cert.g, 15);
    EXPECT_EQ(cert.degree_distribution.front(), 1);
    EXPECT_EQ(cert.degree_distribution.back(), 1);
    Int total = 0;
    for (Int x : cert.degree_distribution) total += x;
    EXPECT_EQ(total, 2 * cert.d);
}

TEST(MaxRank, UniqueSurvivorFromSeries) {
    for (int r = 1; r <= 6; ++r) {
        const auto cert = maxrank_m2_certificate(r);
        EXPECT_TRUE(cert.table_divergences.empty()) << r;
        const int n = r + 1;
        const BnParams p = BnParams::make(cert.g, r, cert.d);
        const Filling f = triangular_corner_filling(r);
        const auto series = filling_to_series(f, p, minimal_torsion_chain(f));
        std::set<std::pair<int, int>> eliminated;
        Int before = 0;
        for (int k = 1; k <= cert.g; ++k) {
            const Int deg = cert.degree_distribution[static_cast<std::size_t>(k - 1)];
            const Int after = 2 * cert.d - before - deg;
            std::vector<std::pair<int, int>> survivors;
            for (int i = 1; i <= n; ++i) {
                for (int j = i; j <= n; ++j) {
                    if (eliminated.count({i, j}) != 0) continue;
                    const Int op = series.u_at(k, i - 1) + series.u_at(k, j - 1);
                    const Int oq = series.v_at(k, i - 1) + series.v_at(k, j - 1);
                    if (op >= before && oq >= after) survivors.push_back({i, j});
                }
            }
            ASSERT_EQ(survivors.size(), 1u) << "r=" << r << " k=" << k;
            EXPECT_EQ(survivors.front(), cert.steps[static_cast<std::size_t>(k - 1)].eliminated);
            eliminated.insert(survivors.front());
            before += deg;
        }
        EXPECT_EQ(static_cast<int>(eliminated.size()), n * (n + 1) / 2);
    }
}

TEST(MaxRank, RejectsNonPositiveR) { EXPECT_THROW((void)maxrank_m2_certificate(0), OutOfRangeError); }

TEST(Distinctness, ElevenOneSixAgainstElevenTwoNine) {
    const auto v = distinctness_check(BnParams::make(11, 1, 6), BnParams::make(11, 2, 9));
    EXPECT_EQ(v.verdict, Verdict::Distinct);
    EXPECT_EQ(v.A1, 6);
    EXPECT_EQ(v.bound2, 5);
    const auto c = confirm_distinct_by_enumeration(BnParams::make(11, 1, 6), BnParams::make(11, 2, 9));
    EXPECT_TRUE(c.confirmed);
}

TEST(Distinctness, Symmetric) {
    const auto a = distinctness_check(BnParams::make(11, 1, 6), BnParams::make(11, 2, 9));
    const auto b = distinctness_check(BnParams::make(11, 2, 9), BnParams::make(11, 1, 6));
    EXPECT_EQ(a.verdict, b.verdict);
    EXPECT_EQ(a.A1, b.A1);
    EXPECT_EQ(a.bound2, b.bound2);
}

TEST(Distinctness, DualAndSameParameters) {
    EXPECT_EQ(distinctness_check(BnParams::make(14, 4, 15), BnParams::make(14, 2, 11)).verdict, Verdict::SerreDualPair);
    EXPECT_EQ(distinctness_check(BnParams::make(8, 1, 4), BnParams::make(8, 1, 4)).verdict, Verdict::SameParameters);
}

TEST(Distinctness, NonNegativeRhoIsAnError) {
    EXPECT_THROW((void)distinctness_check(BnParams::make(10, 1, 7), BnParams::make(10, 3, 11)), OutOfRangeError);
}

TEST(Distinctness, InconclusiveCases) {
    const auto e = distinctness_check(BnParams::make(10, 1, 5), BnParams::make(10, 2, 7));
    EXPECT_EQ(e.verdict, Verdict::Inconclusive);
    EXPECT_NE(e.reason.find("codimensions differ"), std::string::npos);
    EXPECT_EQ(distinctness_check(BnParams::make(8, 1, 4), BnParams::make(11, 1, 6)).verdict, Verdict::Inconclusive);
}

TEST(Distinctness, SquareLimitsDisagree) {
    const auto h = distinctness_hypothesis(BnParams::make(7, 2, 6));
    EXPECT_TRUE(h.square);
    EXPECT_EQ(h.theorem_limit, -1);
    EXPECT_EQ(h.lemma_limit, 3);
    EXPECT_TRUE(h.limits_disagree);
    EXPECT_FALSE(h.holds);
}

TEST(Inclusions, UpToFour) {
    const auto cs = inclusion_candidates(4);
    ASSERT_EQ(cs.size(), 6u);
    struct Row {
        int t;
        BnParams smaller, larger_oriented;
        InclusionStatus status;
    };
    const std::vector<Row> expected = {
        {0, BnParams::make(8, 1, 4), BnParams::make(8, 2, 7), InclusionStatus::KnownInclusion},
        {0, BnParams::make(19, 2, 14), BnParams::make(19, 3, 17), InclusionStatus::ExcludedByCitedWork},
        {0, BnParams::make(34, 3, 28), BnParams::make(34, 4, 31), InclusionStatus::OpenCandidate},
        {1, BnParams::make(7, 2, 6), BnParams::make(7, 1, 4), InclusionStatus::KnownInclusion},
        {1, BnParams::make(14, 3, 13), BnParams::make(14, 2, 11), InclusionStatus::OpenCandidate},
        {1, BnParams::make(23, 4, 22), BnParams::make(23, 3, 20), InclusionStatus::OpenCandidate},
    };
    for (std::size_t n = 0; n < cs.size(); ++n) {
        EXPECT_EQ(cs[n].family, expected[n].t) << n;
        EXPECT_EQ(cs[n].smaller, expected[n].smaller) << n;
        EXPECT_EQ(cs[n].larger_oriented, expected[n].larger_oriented) << n;
        EXPECT_EQ(cs[n].status, expected[n].status) << n;
        std::vector<CheckRecord> checks;
        EXPECT_TRUE(verify_inclusion_system(cs[n].smaller, cs[n].larger, checks));
    }
}

TEST(Inclusions, MisprintedTargetsFailTheSystem) {
    // M^2_{14,9} and M^2_{23,20} do not have rho = -1
    EXPECT_NE(rho(BnParams::make(14, 2, 9)), -1);
    EXPECT_NE(rho(BnParams::make(23, 2, 20)), -1);
    std::vector<CheckRecord> checks;
    EXPECT_FALSE(verify_inclusion_system(BnParams::make(14, 3, 13), BnParams::make(14, 2, 9), checks));
}

TEST(Inclusions, GrowsWithAlphaMax) {
    EXPECT_THROW((void)inclusion_candidates(1), OutOfRangeError);
    const auto two = inclusion_candidates(2);
    for (const auto& c : two) {
        EXPECT_LE(std::max(canonical(c.smaller).params.r, c.larger_oriented.r), 2);
    }
    EXPECT_LT(two.size(), inclusion_candidates(4).size());
    EXPECT_LE(inclusion_candidates(4).size(), inclusion_candidates(6).size());
}
