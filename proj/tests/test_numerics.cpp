#include <doctest.h>
#include <extremal/errors.hpp>
#include <extremal/numerics.hpp>
#include <extremal/pw_core.hpp>

#include <boost/math/quadrature/gauss.hpp>

#include <cmath>
#include <random>

using namespace extremal;

namespace {

Mat random_spd(std::mt19937_64& rng, int n) {
    std::normal_distribution<double> nd;
    Mat A(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) A(i, j) = nd(rng);
    return A * A.transpose() + 0.1 * Mat::Identity(n, n);
}

}  // namespace

TEST_CASE("smallest generalized eigenpair, trivial cases") {
    Mat M = Eigen::Vector3d(3, 1, 2).asDiagonal();
    const EigResult r = smallest_generalized_eig(M, Mat::Identity(3, 3));
    CHECK(r.value == doctest::Approx(1.0));
    CHECK(std::abs(std::abs(r.vector(1)) - r.vector.norm()) < 1e-12);

    std::mt19937_64 rng(1);
    const Mat N = random_spd(rng, 6);
    CHECK(smallest_generalized_eig(2.0 * N, N).value == doctest::Approx(2.0).epsilon(1e-12));
    CHECK_THROWS_AS(smallest_generalized_eig(M, -Mat::Identity(3, 3)), Error);
}

TEST_CASE("smallest generalized eigenvalue lies below a million sampled quotients") {
    std::mt19937_64 rng(2);
    const Mat M = random_spd(rng, 8), N = random_spd(rng, 8);
    const EigResult r = smallest_generalized_eig(M, N);
    CHECK(r.residualNorm <= 1e-8 * M.norm());
    std::normal_distribution<double> nd;
    double best = 1e300;
    Vec v(8);
    for (int t = 0; t < 1000000; ++t) {
        for (int i = 0; i < 8; ++i) v(i) = nd(rng);
        best = std::min(best, v.dot(M * v) / v.dot(N * v));
    }
    CHECK(r.value <= best);
}

TEST_CASE("restriction to a principal submatrix never lowers the minimum") {
    std::mt19937_64 rng(3);
    for (int t = 0; t < 20; ++t) {
        const Mat M = random_spd(rng, 10), N = random_spd(rng, 10);
        const double full = smallest_generalized_eig(M, N).value;
        const double sub = smallest_generalized_eig(M.topLeftCorner(6, 6), N.topLeftCorner(6, 6)).value;
        CHECK(sub >= full - 1e-12 * std::abs(full));
    }
}

TEST_CASE("factored form agrees with the direct eigensolve") {
    std::mt19937_64 rng(4);
    std::normal_distribution<double> nd;
    Mat F(12, 9);
    for (int i = 0; i < 12; ++i)
        for (int j = 0; j < 9; ++j) F(i, j) = nd(rng);
    const Mat N = random_spd(rng, 9);
    const double a = smallest_factored_eig(F, N).value;
    const double b = smallest_generalized_eig(F.transpose() * F, N).value;
    CHECK(a == doctest::Approx(b).epsilon(1e-10));
    // wide factor: the quotient has a null direction
    CHECK(std::abs(smallest_factored_eig(F.topRows(5), N).value) < 1e-12);
}

TEST_CASE("nullspace bases") {
    Mat C(1, 2);
    C << 1, 1;
    const Mat Z = nullspace_basis(C);
    REQUIRE(Z.cols() == 1);
    CHECK(std::abs(std::abs(Z(0, 0)) - std::sqrt(0.5)) < 1e-14);
    CHECK(std::abs(Z(0, 0) + Z(1, 0)) < 1e-14);

    const Mat Z0 = nullspace_basis(Mat::Zero(2, 5));
    CHECK(Z0.cols() == 5);
    CHECK((Z0.transpose() * Z0 - Mat::Identity(5, 5)).norm() < 1e-12);

    std::mt19937_64 rng(5);
    std::normal_distribution<double> nd;
    Mat R(3, 10);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 10; ++j) R(i, j) = nd(rng);
    const Mat Zr = nullspace_basis(R);
    CHECK(Zr.cols() == 7);
    CHECK((R * Zr).norm() <= 1e-12);
    CHECK((Zr.transpose() * Zr - Mat::Identity(7, 7)).norm() <= 1e-12);

    CHECK_THROWS_AS(nullspace_basis(Mat::Identity(3, 3)), Error);
}

TEST_CASE("Lanczos top eigenvector") {
    std::mt19937_64 rng(6);
    const Mat A = random_spd(rng, 40);
    const Vec v = lanczos_top([&](const Vec& x) { return Vec(A * x); }, Vec::Ones(40));
    Eigen::SelfAdjointEigenSolver<Mat> es(A);
    CHECK(v.dot(A * v) / v.squaredNorm() == doctest::Approx(es.eigenvalues()(39)).epsilon(1e-12));
}

TEST_CASE("first positive zero") {
    const double d = 2.0;
    auto f = [&](double x) { return std::sin(2 * M_PI * d * x) / (2 * M_PI * x); };
    const RootResult r = first_positive_zero(f, std::min(1 / (8 * d), 0.01), 4 / d, 1e-13);
    CHECK(std::abs(r.root - 0.25) <= 1e-13);
    CHECK(!r.tangential);
    CHECK(std::abs(first_positive_zero([](double x) { return x - 1; }, 0.01, 4, 1e-13).root - 1) <= 1e-13);
    CHECK(std::abs(first_positive_zero([](double x) { return std::cos(M_PI * x); }, 0.01, 4, 1e-13).root -
                   0.5) <= 1e-13);
    // touching zero without a sign change is reported
    const RootResult t = first_positive_zero([](double x) { return (x - 0.7) * (x - 0.7); }, 0.01, 4, 1e-13);
    CHECK(t.tangential);
    CHECK(std::abs(t.root - 0.7) < 1e-4);
    CHECK_THROWS_AS(first_positive_zero([](double) { return 1.0; }, 0.01, 1, 1e-13), Error);
    // the scan bracket holding the sign change is reported with the root
    const RootResult b = first_positive_zero([](double x) { return std::exp(x) - 3; }, 0.01, 4, 1e-12);
    CHECK(b.bracket.fLo * b.bracket.fHi <= 0);
    CHECK(b.bracket.hi - b.bracket.lo <= 0.01 + 1e-15);
    CHECK(b.bracket.lo <= b.root);
    CHECK(b.root <= b.bracket.hi);
    CHECK(b.root == doctest::Approx(std::log(3.0)).epsilon(1e-12));
}

TEST_CASE("adaptive quadrature against independent rules") {
    CHECK(adaptive_quad([](double x) { return x; }, 0, 1, 1e-14) == doctest::Approx(0.5).epsilon(1e-14));
    auto s2 = [](double x) { return sinc(x) * sinc(x); };
    const double a = adaptive_quad(s2, -10, 10, 1e-12);
    double b = 0;  // composite 20-point Gauss-Legendre on unit panels
    for (int j = -10; j < 10; ++j)
        b += boost::math::quadrature::gauss<double, 20>::integrate(s2, double(j), double(j + 1));
    CHECK(std::abs(a - b) < 1e-8);
    // over [-T, T], T integer, the integral is (2/pi) Si(2 pi T); asymptotic series for Si
    const double X = 20 * M_PI;
    const double si = M_PI / 2 - (1 - 2 / (X * X) + 24 / std::pow(X, 4) - 720 / std::pow(X, 6)) / X;
    CHECK(a == doctest::Approx(2 / M_PI * si).epsilon(1e-11));
    // integral of sin(2 pi x)/(2 pi x) over [-1, 1] equals Si(2 pi)/pi
    const double q = adaptive_quad([](double x) { return sinc(2 * x); }, -1, 1, 1e-13);
    double series = 0, term = 2 * M_PI;  // Si(x) = sum (-1)^k x^{2k+1}/((2k+1)(2k+1)!)
    for (int k = 0; k < 40; ++k) {
        series += term / (2 * k + 1);
        term *= -(2 * M_PI) * (2 * M_PI) / ((2 * k + 2) * (2 * k + 3));
    }
    CHECK(std::abs(q - series / M_PI) < 1e-10);
    CHECK_THROWS_AS(adaptive_quad([](double x) { return 1 / std::sqrt(std::abs(x)); }, -1, 1, 1e-15), Error);
}
