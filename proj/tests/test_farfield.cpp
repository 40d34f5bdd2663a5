#include <doctest.h>
#include <extremal/errors.hpp>
#include <extremal/farfield.hpp>

#include <cmath>

using namespace extremal;

namespace {

// weighted inner product of the node functions e_m, e_n
double gram_entry(SymmetryGroup g, double delta, long m, long n) {
    const WeightSpec w = weight_params(g);
    double v = (m == n ? 1.0 / delta : 0.0) + w.gamma * sin_weight_entry(delta, m, n);
    if (m == 0 && n == 0) v += w.eta;
    return v;
}

double sgn(long n) { return n % 2 ? -1.0 : 1.0; }

}  // namespace

TEST_CASE("augmented window-tail entries match brute-force sums") {
    const double delta = 1.5, alpha = 0.3;
    const NodeWindow win{-8, 8};
    const std::vector<int> powers{2, 3};
    for (auto g : {SymmetryGroup::Sp, SymmetryGroup::SOeven, SymmetryGroup::U}) {
        const AugmentedGram A = assemble_augmented(g, delta, win, alpha, powers);
        const long N = win.size(), P = 2;
        REQUIRE(A.size() == N + 2 * P);
        const double a = delta * alpha;
        const long L = 200000;
        double worst = 0;
        for (long r = 0; r < N; r += 3) {
            const long m = win.nMin + r;
            for (long i = 0; i < P; ++i) {
                double right = 0, left = 0;
                for (long n = win.nMax + 1; n <= win.nMax + L; ++n)
                    right += sgn(n) * std::pow(n - a, -powers[i]) * gram_entry(g, delta, m, n);
                for (long n = win.nMin - 1; n >= win.nMin - L; --n)
                    left += sgn(n) * std::pow(a - n, -powers[i]) * gram_entry(g, delta, m, n);
                worst = std::max(worst, std::abs(A.entries(r, N + i) - right * A.tailScale(i)));
                worst = std::max(worst, std::abs(A.entries(r, N + P + i) - left * A.tailScale(P + i)));
            }
        }
        INFO(group_name(g));
        CHECK(worst <= 1e-9);
    }
}

TEST_CASE("augmented tail-tail entries match brute-force double sums") {
    const double delta = 4.0 / 3.0, alpha = -0.4;
    const NodeWindow win{-6, 6};
    const AugmentedGram A = assemble_augmented(SymmetryGroup::Sp, delta, win, alpha, {2, 3});
    const long N = win.size();
    const double a = delta * alpha;
    const long L = 2500;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            double s = 0;
            for (long n = win.nMax + 1; n <= win.nMax + L; ++n)
                for (long m = win.nMax + 1; m <= win.nMax + L; ++m)
                    s += sgn(n + m) * std::pow(n - a, -(2 + i)) * std::pow(m - a, -(2 + j)) *
                         gram_entry(SymmetryGroup::Sp, delta, n, m);
            CHECK(A.entries(N + i, N + j) == doctest::Approx(s * A.tailScale(i) * A.tailScale(j)).epsilon(1e-6));
        }
}

TEST_CASE("tails are normalized and the augmented Gram is positive definite") {
    const AugmentedGram A = assemble_augmented(SymmetryGroup::U, 2.0, {-10, 10}, 1.0, {1, 2, 3, 4});
    for (long i = A.window_size(); i < A.size(); ++i) CHECK(A.entries(i, i) == doctest::Approx(1.0));
    for (auto g : kAllGroups) {
        const AugmentedGram B = assemble_augmented(g, 1.5, {-20, 20}, 2.0, {2, 3, 4, 5});
        Eigen::LLT<Mat> llt(B.entries);
        CHECK(llt.info() == Eigen::Success);
    }
    CHECK_THROWS_AS(assemble_augmented(SymmetryGroup::U, 1.0, {-5, 5}, 30.0, {2}), Error);
    CHECK_THROWS_AS(assemble_augmented(SymmetryGroup::U, 1.0, {-5, 5}, 0.0, {0}), Error);
}

TEST_CASE("basis evaluation: node functions and tail sequences") {
    const double delta = 1.5;
    const AugmentedGram A = assemble_augmented(SymmetryGroup::Sp, delta, {-10, 10}, 0.0, {2});
    // at a window node only that node function is nonzero
    const Vec v = A.eval(3.0 / delta);
    CHECK(v(13) == doctest::Approx(1.0));
    for (long i = 0; i < A.window_size(); ++i)
        if (i != 13) CHECK(std::abs(v(i)) < 1e-12);
    CHECK(std::abs(v(A.window_size())) < 1e-12);
    CHECK(std::abs(v(A.window_size() + 1)) < 1e-12);
    const AugmentedGram B = assemble_augmented(SymmetryGroup::Sp, delta, {-10, 10}, 0.0, {});
    CHECK_NOTHROW(B.eval(100.0));
}
