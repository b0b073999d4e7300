#include <catch2/catch_amalgamated.hpp>

#include "eitmem/wigner.hpp"
#include "oracles.hpp"

#include <cmath>

using eitmem::wigner::clebsch_gordan;
using eitmem::wigner::wigner_3j;
using eitmem::wigner::wigner_6j;

TEST_CASE("CG selection rule: M != m1 + m2 gives zero", "[wigner]") {
    CHECK(clebsch_gordan(1, 1, 1, 0, 2, 0) == 0.0);
    CHECK(clebsch_gordan(0.5, 0.5, 0.5, 0.5, 1, 0) == 0.0);
    CHECK(clebsch_gordan(3, 2, 1, 1, 4, 2) == 0.0);
}

TEST_CASE("CG stretched state is unity", "[wigner]") {
    CHECK(clebsch_gordan(0.5, 0.5, 0.5, 0.5, 1, 1) == Catch::Approx(1.0).margin(1e-14));
    CHECK(clebsch_gordan(3, 3, 1, 1, 4, 4) == Catch::Approx(1.0).margin(1e-14));
    CHECK(clebsch_gordan(4, 4, 1, 1, 5, 5) == Catch::Approx(1.0).margin(1e-14));
}

TEST_CASE("CG spin-half coupling matches brute-force construction", "[wigner]") {
    // expected value computed with the independent ladder oracle
    const double want = oracle::clebsch_gordan_ladder(0.5, 0.5, 0.5, -0.5, 1, 0);
    CHECK(want == Catch::Approx(1.0 / std::sqrt(2.0)).margin(1e-12));
    CHECK(clebsch_gordan(0.5, 0.5, 0.5, -0.5, 1, 0) ==
          Catch::Approx(0.7071067811865476).margin(1e-13));
}

TEST_CASE("CG agrees with ladder oracle across Cs-relevant momenta", "[wigner]") {
    for (double j1 : {0.5, 1.0, 1.5, 2.0, 3.0, 3.5, 4.0}) {
        for (double j2 : {0.5, 1.0, 1.5}) {
            for (double J = std::abs(j1 - j2); J <= j1 + j2 + 0.1; J += 1.0) {
                for (double m1 = -j1; m1 <= j1 + 0.1; m1 += 1.0) {
                    for (double m2 = -j2; m2 <= j2 + 0.1; m2 += 1.0) {
                        const double M = m1 + m2;
                        if (std::abs(M) > J + 0.1) continue;
                        const double got = clebsch_gordan(j1, m1, j2, m2, J, M);
                        const double want =
                            oracle::clebsch_gordan_ladder(j1, m1, j2, m2, J, M);
                        INFO("j1=" << j1 << " m1=" << m1 << " j2=" << j2
                                   << " m2=" << m2 << " J=" << J);
                        CHECK(got == Catch::Approx(want).margin(1e-11));
                    }
                }
            }
        }
    }
}

TEST_CASE("CG orthonormality over J", "[wigner]") {
    for (double j1 = 0.5; j1 <= 5.0 + 0.1; j1 += 0.5) {
        for (double j2 : {0.5, 1.0, 1.5, 2.0}) {
            if (std::abs(std::round(2 * (j1 + j2)) - 2 * (j1 + j2)) > 0.1) continue;
            for (double m1 = -j1; m1 <= j1 + 0.1; m1 += 1.0) {
                for (double m2 = -j2; m2 <= j2 + 0.1; m2 += 1.0) {
                    double sum = 0.0;
                    for (double J = std::abs(j1 - j2); J <= j1 + j2 + 0.1; J += 1.0) {
                        if (std::abs(m1 + m2) > J + 0.1) continue;
                        const double c = clebsch_gordan(j1, m1, j2, m2, J, m1 + m2);
                        sum += c * c;
                    }
                    INFO("j1=" << j1 << " j2=" << j2 << " m1=" << m1 << " m2=" << m2);
                    CHECK(sum == Catch::Approx(1.0).margin(1e-11));
                }
            }
        }
    }
}

TEST_CASE("CG rejects malformed momenta", "[wigner]") {
    CHECK_THROWS_AS(clebsch_gordan(0.3, 0.3, 1, 0, 1, 0.3), std::invalid_argument);
    CHECK_THROWS_AS(clebsch_gordan(1, 2, 1, 0, 2, 2), std::invalid_argument);
    CHECK_THROWS_AS(clebsch_gordan(1, 0.5, 1, 0, 2, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(clebsch_gordan(-1, 0, 1, 0, 1, 0), std::invalid_argument);
}

TEST_CASE("6-j symbols match the four-3j contraction oracle", "[wigner]") {
    // the D2 hyperfine reductions actually used downstream
    for (double f : {3.0, 4.0}) {
        for (double fe : {2.0, 3.0, 4.0, 5.0}) {
            const double got = wigner_6j(0.5, 1.5, 1.0, fe, f, 3.5);
            const double want = oracle::wigner_6j_msum(0.5, 1.5, 1.0, fe, f, 3.5);
            INFO("F=" << f << " F'=" << fe);
            CHECK(got == Catch::Approx(want).margin(1e-11));
        }
    }
    // a few generic ones
    CHECK(wigner_6j(1, 1, 1, 1, 1, 1) ==
          Catch::Approx(oracle::wigner_6j_msum(1, 1, 1, 1, 1, 1)).margin(1e-12));
    CHECK(wigner_6j(2, 1, 1, 1, 2, 1) ==
          Catch::Approx(oracle::wigner_6j_msum(2, 1, 1, 1, 2, 1)).margin(1e-12));
    CHECK(wigner_6j(1.5, 0.5, 1, 0.5, 1.5, 1) ==
          Catch::Approx(oracle::wigner_6j_msum(1.5, 0.5, 1, 0.5, 1.5, 1)).margin(1e-12));
    CHECK(wigner_6j(3, 2, 1, 2, 3, 2) ==
          Catch::Approx(oracle::wigner_6j_msum(3, 2, 1, 2, 3, 2)).margin(1e-12));
}

TEST_CASE("3-j symmetry sanity", "[wigner]") {
    // even permutation invariance on a nontrivial symbol
    const double a = wigner_3j(2, 1, 1, -1, 1, 0);
    const double b = wigner_3j(1, -1, 1, 0, 2, 1);
    CHECK(a == Catch::Approx(b).margin(1e-13));
}
