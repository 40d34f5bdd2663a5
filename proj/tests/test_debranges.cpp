#include <doctest.h>
#include <extremal/debranges.hpp>
#include <extremal/errors.hpp>
#include <extremal/variational.hpp>

#include <cmath>
#include <random>

using namespace extremal;

TEST_CASE("omega and the V matrix") {
    DetProblem p{1.0, 0.0, 3};
    CHECK(std::abs(p.omega() - std::polar(1.0, M_PI / 3)) < 1e-15);
    const VMatrix v = v_matrix(DetProblem{1.5, 0.3, 3}, 0.21);
    REQUIRE(v.entries.rows() == 3);
    // Hankel: depends on l + j only
    CHECK(v.entries(0, 2) == doctest::Approx(v.entries(1, 1)).epsilon(1e-13));
    CHECK(v.entries(1, 2) == doctest::Approx(v.entries(2, 1)).epsilon(1e-13));
    CHECK(v.entries(0, 1) == doctest::Approx(v.entries(1, 0)).epsilon(1e-13));
    CHECK(v.maxImag < 1e-12);
    // k = 1: V = C(alpha + lambda) - C(alpha - lambda)
    const double d = 1.5, a = 0.3, l = 0.1;
    const VMatrix v1 = v_matrix(DetProblem{d, a, 1}, l);
    CHECK(v1.entries(0, 0) ==
          doctest::Approx(std::tan(M_PI * d * (a + l)) - std::tan(M_PI * d * (a - l))).epsilon(1e-13));
    CHECK_THROWS_AS(v_matrix(DetProblem{1.0, 0.5, 1}, 0.0), Error);
}

TEST_CASE("k = 1 determinant product is sin(2 pi delta lambda)") {
    for (double d : {1.0, 4.0 / 3.0})
        for (double a : {0.0, 0.5, 1.7})
            for (double l = 0.0; l < 2.0; l += 0.05)
                CHECK(det_product(DetProblem{d, a, 1}, l) ==
                      doctest::Approx(std::sin(2 * M_PI * d * l)).epsilon(1e-9).scale(1.0));
}

TEST_CASE("determinant root for k = 1 is 1/(2 delta)") {
    for (double a = 0.0; a <= 2.0; a += 0.05) {
        const auto s = detroot_value(DetProblem{1.0, a, 1});
        CHECK(s.lambda0 == doctest::Approx(0.5).epsilon(1e-11));
    }
}

TEST_CASE("midpoints of A-zeros") {
    CHECK(midpoint_value(1.0, 1) == doctest::Approx(0.5));
    CHECK(midpoint_value(2.0, 3) == doctest::Approx(0.25));
    CHECK(midpoint_value(1.0, -2) == doctest::Approx(0.5));
}

TEST_CASE("k = 2, 3: determinant, sequence and variational routes agree") {
    for (int k : {2, 3})
        for (double a : {0.0, 0.35}) {
            const double det = detroot_value(DetProblem{1.0, a, k}).aValue;
            const double seq = sequence_oracle(1.0, a, k, 200, 4);
            ProblemSpec p;
            p.delta = 1.0;
            p.alpha = a;
            p.k = k;
            const double var = variational_value(p).aValue;
            INFO("k " << k << " alpha " << a);
            CHECK(seq == doctest::Approx(det).epsilon(1e-8));
            CHECK(var == doctest::Approx(det).epsilon(1e-8));
        }
}

TEST_CASE("sequence oracle without closure decreases with N") {
    double prev = 1e300;
    for (long N : {50L, 100L, 200L}) {
        const double v = sequence_oracle(1.0, 0.2, 2, N, 0);
        CHECK(v <= prev * (1 + 1e-12));
        prev = v;
    }
    CHECK_THROWS_AS(sequence_oracle(1.0, 0.0, 3, 2, 0), Error);
}

TEST_CASE("partial-fraction identity") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(-2, 2);
    for (int k = 1; k <= 4; ++k)
        for (int s = 0; s < 2 * k; ++s)
            for (int i = 0; i < 5; ++i) {
                const cplx x(u(rng), u(rng)), y(u(rng), u(rng));
                double scale = 1;
                for (int r = 0; r < 2 * k; ++r) scale += 1 / std::abs(x - std::polar(1.0, M_PI * r / k) * y);
                CHECK(partial_fraction_check(k, s, x, y) <= 1e-12 * scale);
            }
}
