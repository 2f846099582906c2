#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "conesmooth/widths.hpp"

using namespace conesmooth;

TEST_CASE("width set basics") {
    WidthSet B(0.5);
    CHECK(B.is_natural());
    CHECK(B.sin_beta(0) == Catch::Approx(0.5));
    for (int k = 0; k + 1 <= 20; ++k) {
        CHECK(B.beta(k) < kPi / 4.0);
        CHECK(B.beta(k + 1) < B.beta(k));
    }
    CHECK_THROWS_AS(WidthSet(0.71, 1.0), std::domain_error);  // 0.71 > sqrt(2)/2
    CHECK_THROWS_AS(B.sin_beta(65), std::out_of_range);
}

TEST_CASE("DNP criterion") {
    CHECK(dnp_check(WidthSet(0.5), WidthSet(0.5)));
    // (B(varsigma, c), B(varsigma, c')): DNP iff (c/c') varsigma <= sqrt(2)/2
    CHECK(dnp_check(WidthSet(0.5, 1.2), WidthSet(0.5, 1.0)));   // 0.6 < 0.707
    CHECK_FALSE(dnp_check_raw(0.6, 1.2, 0.6, 0.85));            // 0.72/0.85 > 0.707
    CHECK_FALSE(dnp_check_raw(0.71, 1.0, 0.71, 1.0));           // 0.71 > 0.707 outright
}

TEST_CASE("induced link widths are the natural set; idempotent iff natural") {
    WidthSet B(0.3, 1.5);
    for (int k : {0, 1, 3}) {
        const auto induced = induced_link_widths(B, k, 5);
        for (int j = 0; j < 5; ++j)
            CHECK(std::sin(induced[j]) == Catch::Approx(std::pow(0.3, j + 1)).epsilon(1e-12));
    }
    // j = 0 term is always varsigma
    CHECK(std::sin(induced_link_widths(B, 0, 1)[0]) == Catch::Approx(0.3).epsilon(1e-12));
    // fixed point exactly for the natural set
    WidthSet N(0.3);
    const auto ind = induced_link_widths(N, 2, 4);
    for (int j = 0; j < 4; ++j) CHECK(ind[j] == Catch::Approx(N.beta(j)).epsilon(1e-12));
    CHECK_FALSE(is_natural(B));
    CHECK(is_natural(N));
}

TEST_CASE("radius schedule: ordering and gap laws") {
    const double varsigma = 0.1, c = 1.5;
    for (double r : {6.0, 12.0, 30.0}) {
        RadiusSchedule S(r, 4, varsigma, c);
        CHECK(S.r_k(-1) == r);
        for (int k = 0; k <= 4; ++k) CHECK(S.r_k(k) > S.r_k(k - 1));
        for (int k = 0; k <= S.m - 2; ++k) {
            CHECK(S.r_mk(k) < S.s_mk(k));
            if (k > 0) CHECK(S.s_mk(k) < S.s_mk(k - 1));
        }
    }
    // increasing in r
    RadiusSchedule A(6.0, 3, varsigma, c), B(7.0, 3, varsigma, c);
    for (int k = 0; k <= 1; ++k) {
        CHECK(B.r_k(k) > A.r_k(k));
        CHECK(B.s_mk(k) > A.s_mk(k));
    }
}

TEST_CASE("gap law: s'_{m,k} - s_{m,k} > log(c'/c) - 1") {
    const double varsigma = 0.2;
    for (double r : {2.0, 5.0, 20.0})
        for (double c : {1.0, 1.3})
            for (double cp : {2.0, 3.0}) {
                RadiusSchedule S(r, 4, varsigma, c), Sp(r, 4, varsigma, cp);
                for (int k = 0; k <= 2; ++k)
                    CHECK(Sp.s_mk(k) - S.s_mk(k) > std::log(cp / c) - 1.0);
            }
}

TEST_CASE("large-r cut asymptotics: s_{m,k} - r_{m-2} - log sin beta_k -> 0 monotonely") {
    const double varsigma = 0.2, c = 1.2;
    double prev_gap = -1e9;
    for (double r : {2.0, 3.0, 4.0, 6.0}) {
        RadiusSchedule S(r, 3, varsigma, c);
        const double gap = S.s_mk(0) - S.r_k(1) - std::log(S.beta.sin_beta(0));
        CHECK(gap > 0.0);
        if (prev_gap > -1e8) CHECK(gap < prev_gap);
        prev_gap = gap;
    }
    CHECK(std::abs(prev_gap) < 1e-3);
}

TEST_CASE("schedule angles on spheres of the cone are defined and bounded") {
    const double xi = 0.5;
    RadiusSchedule S(6.0, 3, 0.005, 1.1);  // c*varsigma < e^{-(4+xi)}
    const double t_lo = S.r_k(1) - (2.0 + xi);
    for (double t : {t_lo, t_lo + 1.0, S.r_k(1), S.r_k(1) + 3.0}) {
        for (int k = 0; k <= 1; ++k) {
            const double st = S.sin_theta_mk(k, t);
            const double sp = S.sin_phi_mk(k, t);
            CHECK(st > 0.0);
            CHECK(st < 1.0);
            CHECK(sp < std::sqrt(2.0) / 2.0);
            // c'' = sinh(r_{m-2})/sinh(t) < 4 e^{2+xi} for t >= r_{m-2}-(2+xi)
            const double cpp = st / S.alpha.sin_beta(k);
            CHECK(cpp < 4.0 * std::exp(2.0 + xi));
        }
    }
}
