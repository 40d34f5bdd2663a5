#include <doctest.h>
#include <extremal/errors.hpp>
#include <extremal/pw_core.hpp>

#include <cmath>
#include <random>

using namespace extremal;

TEST_CASE("sinc nodes") {
    CHECK(sinc_node(1.0, 0, 0.0) == 1.0);
    CHECK(sinc_node(2.0, 3, 1.5) == 1.0);
    CHECK(sinc_node(1.0, 0, 0.5) == doctest::Approx(2.0 / M_PI).epsilon(1e-15));
    CHECK(std::abs(sinc_node(1.0, 2, 5.0)) < 1e-16);
}

TEST_CASE("unweighted kernel") {
    for (double d : {0.5, 1.0, 4.0 / 3.0, 2.0}) {
        CHECK(pw_kernel(d, 0.0, 0.0).real() == doctest::Approx(d));
        for (double x : {0.01, 0.3, 1.7}) {
            const double a = 0.37;
            CHECK(pw_kernel(d, a + x, a - x).real() ==
                  doctest::Approx(std::sin(2 * M_PI * d * x) / (2 * M_PI * x)).epsilon(1e-13));
        }
        for (long m = -3; m <= 3; ++m)
            for (long n = -3; n <= 3; ++n)
                CHECK(std::abs(pw_kernel(d, m / d, n / d) - (m == n ? d : 0.0)) < 1e-13);
    }
    // near-diagonal branch against the series of sin
    const double d = 1.3, h = 1e-9;
    const double exact = d - std::pow(M_PI * d, 3) * h * h / (6 * M_PI * M_PI * M_PI) * M_PI * M_PI;
    CHECK(pw_kernel(d, 0.2, 0.2 + h).real() == doctest::Approx(exact).epsilon(1e-14));
}

TEST_CASE("companion functions and their zeros") {
    for (double d : {1.0, 4.0 / 3.0, 1.5, 2.0}) {
        const PwStructure pw{d};
        CHECK(pw.c_coeff() == doctest::Approx(M_PI * d));
        for (long n = 1; n <= 20; ++n) {
            CHECK(pw.a_zero(-n) == -pw.a_zero(n));
            CHECK(std::abs(pw.A(pw.a_zero(n))) < 1e-12);
            CHECK(std::abs(std::abs(pw.dA(pw.a_zero(n))) - M_PI * d) < 1e-12);
            const double c = -pw.dA(pw.a_zero(n)) / pw.B(pw.a_zero(n)).real();
            CHECK(c == doctest::Approx(M_PI * d).epsilon(1e-12));
        }
        CHECK_THROWS_AS(pw.a_zero(0), Error);
    }
}

TEST_CASE("sine subtraction and kernel consistency on random points") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-3, 3);
    for (int i = 0; i < 100; ++i) {
        const double d = 0.5 + (u(rng) + 3) / 4;
        const PwStructure pw{d};
        const double x = u(rng), y = u(rng);
        CHECK(std::abs((pw.B(x) * pw.A(y) - pw.A(x) * pw.B(y)).real() - std::sin(M_PI * d * (x - y))) <
              1e-12);
        const cplx w{u(rng), u(rng) / 3}, z{u(rng), u(rng) / 3};
        const cplx p1 = pw.B(z) * pw.A(std::conj(w)), p2 = pw.A(z) * pw.B(std::conj(w));
        const cplx lhs = M_PI * (z - std::conj(w)) * pw_kernel(d, w, z);
        CHECK(std::abs(lhs - (p1 - p2)) <= 1e-12 * (1 + std::abs(p1) + std::abs(p2)));
    }
}

TEST_CASE("partial sums of the tangent series") {
    CHECK(std::abs(c_series_partial(1.0, 0.0, 1000)) == 0.0);
    CHECK(std::abs(c_series_partial(1.0, 0.25, 100000) - 1.0) < 1e-4);
    CHECK(std::abs(c_series_partial(2.0, 0.1, 100000) - std::tan(0.2 * M_PI)) < 1e-4);
    // error decays like 1/M: fit C on M = 1e3 and check it bounds M = 1e4, 1e5
    const double z = 0.3;
    const double e3 = std::abs(c_series_partial(1.0, z, 1000) - std::tan(M_PI * z));
    const double C = e3 * 1000;
    for (long M : {10000L, 100000L})
        CHECK(std::abs(c_series_partial(1.0, z, M) - std::tan(M_PI * z)) <= 1.01 * C / M);
    CHECK_THROWS_AS(c_series_partial(1.0, 0.5, 10), Error);
}
