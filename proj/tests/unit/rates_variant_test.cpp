#include "kmbqkd/rates_variant.hpp"

#include <gtest/gtest.h>

#include <cmath>

#include "kmbqkd/errors.hpp"
#include "kmbqkd/qstate.hpp"
#include "support/angles.hpp"
#include "support/enumeration_oracle.hpp"
#include "support/unsimplified_rates.hpp"

namespace {

using namespace kmbqkd;
using testing_support::AngleSource;
using testing_support::deg;

constexpr double kIdentityTol = 1e-9;

const VariantParams kSymmetricEvanE{deg(90), deg(90), deg(90), 0, 0};

TEST(VariantIter, Examples) {
    EXPECT_NEAR(variant_iter(kSymmetricEvanE), 1.0 / 3.0, kIdentityTol);
    EXPECT_NEAR(variant_iter({0, 0, 0, 0, 0}), 0.0, kIdentityTol);
    const auto brute = oracle::enumerate(true, deg(90), deg(90), deg(90), std::array<double, 2>{0, 0});
    EXPECT_NEAR(brute.iter, 1.0 / 3.0, kIdentityTol);
}

TEST(VariantIter, EvanInEBasisDropsTheETerm) {
    AngleSource angle(31);
    for (int n = 0; n < 200; ++n) {
        const double t1 = angle(), t2 = angle(), p2 = angle();
        const double cf = std::pow(std::cos(t1 / 2), 2);
        const auto h = basis_from_angles(t2, p2, BasisLabel::H);
        const double ch = overlap_prob(basis_from_angles(0, 0, BasisLabel::E).state1, h.state1);
        EXPECT_NEAR(variant_iter({t1, t2, p2, 0, 0}), 2.0 / 3.0 * (cf * (1 - cf) + ch * (1 - ch)), kIdentityTol);
    }
}

TEST(VariantQb, Examples) {
    EXPECT_NEAR(variant_qb(kSymmetricEvanE), 2.5 / 9.0, kIdentityTol);
    EXPECT_NEAR(variant_qb({0, 0, 0, 0, 0}), 0.0, kIdentityTol);
}

TEST(VariantQber, Examples) {
    EXPECT_NEAR(variant_qber(kSymmetricEvanE), 0.4, kIdentityTol);
    EXPECT_THROW(variant_qber({0, 0, 0, 0, 0}), UndefinedRateError);
    EXPECT_FALSE(try_variant_qber({0, 0, 0, 0, 0}).has_value());
    EXPECT_THROW(variant_rates({0, 0, 0, 0, 0}), UndefinedRateError);
}

TEST(VariantQber, ZeroIterMeansZeroQber) {
    // f = h = (0, 1) and Evan measures in e: every overlap is 0 or 1.
    const VariantParams p{deg(180), deg(180), 0, 0, 0};
    EXPECT_NEAR(variant_iter(p), 0.0, kIdentityTol);
    ASSERT_GT(variant_qb(p), kNoDetectedBitsFloor);
    EXPECT_NEAR(variant_qber(p), 0.0, kIdentityTol);
}

TEST(VariantEta, Examples) {
    EXPECT_NEAR(variant_eta(deg(90), deg(90), deg(90)), 1.0 / 6.0, kIdentityTol);
    EXPECT_NEAR(variant_eta(0, 0, 0), 0.0, kIdentityTol);
    EXPECT_NEAR(variant_eta(deg(120), deg(240), 0), 0.25, kIdentityTol);
}

TEST(VariantEta, DenseSweepNeverExceedsQuarter) {
    double best = 0;
    for (int a = 0; a < 360; a += 4)
        for (int b = 0; b < 360; b += 4)
            for (int c = 0; c < 360; c += 10) best = std::max(best, variant_eta(deg(a), deg(b), deg(c)));
    EXPECT_LE(best, 0.25 + kIdentityTol);
    EXPECT_NEAR(best, 0.25, 1e-3);
}

TEST(VariantEtaEvan, EqualsQb) {
    EXPECT_NEAR(variant_eta_evan(kSymmetricEvanE), 2.5 / 9.0, kIdentityTol);
    EXPECT_EQ(variant_eta_evan({0, 0, 0, 0, 0}), 0.0);
    AngleSource angle(32);
    for (int n = 0; n < 100; ++n) {
        const VariantParams p{angle(), angle(), angle(), angle(), angle()};
        EXPECT_EQ(variant_eta_evan(p), variant_qb(p));
    }
}

TEST(VariantProperties, SimplifiedFormsMatchLongHandSums) {
    AngleSource angle(33);
    for (int n = 0; n < 1000; ++n) {
        const VariantParams p{angle(), angle(), angle(), angle(), angle()};
        const auto b = unsimplified::make(p.theta1, p.theta2, p.phi2, p.theta3, p.phi3);
        EXPECT_NEAR(variant_iter(p), unsimplified::variant_iter(b), kIdentityTol);
        EXPECT_NEAR(variant_iter(p), unsimplified::variant_iter_quartic(b), kIdentityTol);
        EXPECT_NEAR(variant_qb(p), unsimplified::variant_qb(b), kIdentityTol);
        EXPECT_NEAR(variant_qb(p), unsimplified::variant_qb_paired(b), kIdentityTol);
        EXPECT_NEAR(variant_eta(p.theta1, p.theta2, p.phi2), unsimplified::variant_eta(b), kIdentityTol);
        EXPECT_NEAR(variant_eta(p.theta1, p.theta2, p.phi2), unsimplified::variant_eta_overlaps(b), kIdentityTol);
    }
}

TEST(VariantProperties, MatchesExactEnumeration) {
    AngleSource angle(34);
    for (int n = 0; n < 300; ++n) {
        const VariantParams p{angle(), angle(), angle(), angle(), angle()};
        const auto brute =
            oracle::enumerate(true, p.theta1, p.theta2, p.phi2, std::array<double, 2>{p.theta3, p.phi3});
        EXPECT_NEAR(variant_iter(p), brute.iter, kIdentityTol);
        EXPECT_NEAR(variant_qb(p), brute.key_rate, kIdentityTol);
        if (auto q = try_variant_qber(p)) EXPECT_NEAR(*q, brute.qber, kIdentityTol);
        const auto quiet = oracle::enumerate(true, p.theta1, p.theta2, p.phi2, std::nullopt);
        EXPECT_NEAR(variant_eta(p.theta1, p.theta2, p.phi2), quiet.key_rate, kIdentityTol);
    }
}

TEST(VariantProperties, QberIdentity) {
    AngleSource angle(35);
    for (int n = 0; n < 2000; ++n) {
        const VariantParams p{angle(), angle(), angle(), angle(), angle()};
        if (auto q = try_variant_qber(p)) EXPECT_NEAR(*q * 3 * variant_qb(p), variant_iter(p), kIdentityTol);
    }
}

TEST(VariantProperties, InvariantUnderReflectionSwappingEAndF) {
    // Reflecting the x-z great circle about the e/f bisector maps e <-> f,
    // h(theta2) -> h(theta1 - theta2) and g(theta3) -> g(theta1 - theta3).
    for (int t1 = 0; t1 < 360; t1 += 30)
        for (int t2 = 0; t2 < 360; t2 += 30)
            for (int t3 = 0; t3 < 360; t3 += 15) {
                const VariantParams p{deg(t1), deg(t2), 0, deg(t3), 0};
                const VariantParams r{deg(t1), deg(t1) - deg(t2), 0, deg(t1) - deg(t3), 0};
                EXPECT_NEAR(variant_iter(p), variant_iter(r), kIdentityTol);
                EXPECT_NEAR(variant_qb(p), variant_qb(r), kIdentityTol);
            }
}

TEST(VariantProperties, OutputsStayInRange) {
    AngleSource angle(36);
    for (int n = 0; n < 5000; ++n) {
        const VariantParams p{angle(), angle(), angle(), angle(), angle()};
        const double iter = variant_iter(p);
        EXPECT_GE(iter, 0.0);
        EXPECT_LE(iter, 0.5);
        EXPECT_GE(variant_qb(p), 0.0);
        EXPECT_LE(variant_qb(p), 1.0);
        EXPECT_LE(variant_eta(p.theta1, p.theta2, p.phi2), 0.25 + kIdentityTol);
        if (auto q = try_variant_qber(p)) {
            EXPECT_GE(*q, 0.0);
            EXPECT_LE(*q, 1.0);
        }
    }
}

}  // namespace
