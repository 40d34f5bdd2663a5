#include "extremal/debranges.hpp"

#include <cmath>
#include <numbers>
#include <optional>
#include <random>
#include <sstream>

#include "extremal/errors.hpp"
#include "extremal/numerics.hpp"

namespace extremal {

using std::numbers::pi;

cplx DetProblem::omega() const { return std::polar(1.0, pi / double(k)); }

namespace {

// distance from x to the nearest pole of tan(pi delta x)
double pole_distance(double delta, double x) {
    const double t = delta * x - 0.5;
    return std::abs(t - std::round(t)) / delta;
}

cplx unit(int k, long e) { return std::polar(1.0, pi * double(e) / double(k)); }

// sum over r != 0, k; these arguments are off the real axis
Mat v_regular(const DetProblem& p, double lambda) {
    const int k = p.k;
    Mat V = Mat::Zero(k, k);
    std::vector<cplx> h(2 * k, 0.0);  // Hankel: depends on l + j - 1 in 1..2k-1
    const PwStructure pw{p.delta};
    for (int r = 1; r < 2 * k; ++r) {
        if (r == k) continue;
        const cplx c = pw.C(p.alpha + unit(k, r) * lambda);
        for (int e = 1; e < 2 * k; ++e) h[e] += unit(k, -long(r) * e) * c;
    }
    for (int l = 1; l <= k; ++l)
        for (int j = 1; j <= k; ++j) V(l - 1, j - 1) = h[l + j - 1].real();
    return V;
}

}  // namespace

VMatrix v_matrix(const DetProblem& p, double lambda) {
    const int k = p.k;
    for (double x : {p.alpha + lambda, p.alpha - lambda}) {
        if (pole_distance(p.delta, x) < 1e-8) {
            std::ostringstream os;
            os << "C evaluated within 1e-8 of the pole near " << x << " (r = "
               << (x == p.alpha + lambda ? 0 : k) << ")";
            throw Error("pole", os.str());
        }
    }
    const PwStructure pw{p.delta};
    std::vector<cplx> h(2 * k, 0.0);
    for (int r = 0; r < 2 * k; ++r) {
        const cplx c = pw.C(p.alpha + unit(k, r) * lambda);
        for (int e = 1; e < 2 * k; ++e) h[e] += unit(k, -long(r) * e) * c;
    }
    VMatrix V;
    V.lambdaArg = lambda;
    V.entries.resize(k, k);
    double big = 0.0;
    for (int e = 1; e < 2 * k; ++e) {
        V.maxImag = std::max(V.maxImag, std::abs(h[e].imag()));
        big = std::max(big, std::abs(h[e]));
    }
    if (V.maxImag > 1e-9 * (1.0 + big)) {
        std::ostringstream os;
        os << "V matrix imaginary residue " << V.maxImag << " above tolerance";
        throw Error("imag_residue", os.str());
    }
    for (int l = 1; l <= k; ++l)
        for (int j = 1; j <= k; ++j) V.entries(l - 1, j - 1) = h[l + j - 1].real();
    return V;
}

double det_product(const DetProblem& p, double lambda) {
    const int k = p.k;
    const Mat Vr = v_regular(p, lambda);
    Mat P0 = Mat::Ones(k, k), Pk(k, k);
    for (int l = 1; l <= k; ++l)
        for (int j = 1; j <= k; ++j) Pk(l - 1, j - 1) = ((l + j - 1) % 2) ? -1.0 : 1.0;
    auto f = [&](double a, double b) { return Mat(Vr + a * P0 + b * Pk).determinant(); };
    const double f00 = f(0, 0), f10 = f(1, 0), f01 = f(0, 1), f11 = f(1, 1);
    const double x = pi * p.delta * (p.alpha + lambda), y = pi * p.delta * (p.alpha - lambda);
    const double Ap = std::cos(x), Bp = std::sin(x), Am = std::cos(y), Bm = std::sin(y);
    return Ap * Am * f00 + Bp * Am * (f10 - f00) + Ap * Bm * (f01 - f00) +
           Bp * Bm * (f11 - f10 - f01 + f00);
}

ExtremalSolution detroot_value(const DetProblem& p, const DetOptions& opt) {
    if (p.k < 1) throw Error("usage", "k must be at least 1");
    const double step =
        opt.scanStep > 0 ? opt.scanStep : 0.5 * std::min(1.0 / (8.0 * p.delta), 0.01);
    const double lmax = opt.lambdaMax > 0
                            ? opt.lambdaMax
                            : std::max(4.0 / p.delta, 2.0 * std::abs(p.alpha) + 4.0 / p.delta);
    auto f = [&](double l) { return det_product(p, l); };
    const RootResult r = first_positive_zero(f, step, lmax, opt.tol);
    ExtremalSolution s;
    s.route = Route::debranges;
    s.k = p.k;
    s.lambda0 = r.root;
    s.aValue = std::pow(r.root, 2.0 * p.k);
    s.tangential = r.tangential;
    s.residual = std::abs(f(r.root));
    if (r.tangential) s.warnings.push_back("determinant zero is tangential (no sign change)");
    return s;
}

double sequence_oracle(double delta, double alpha, int k, long N, int tails) {
    if (N <= k) throw Error("usage", "truncation must exceed k");
    const int P = std::max(0, tails);
    const long W = 2 * N;
    std::vector<double> d(W);
    for (long i = 0; i < N; ++i) {
        d[i] = -(double(N - i) - 0.5) / delta - alpha;  // n = -N..-1
        d[N + i] = (double(i + 1) - 0.5) / delta - alpha;  // n = 1..N
    }
    const long D = W + 2 * P;
    const double a = delta * alpha;
    // tails n > N: xi_n - alpha = (n - aR)/delta; n < -N: -(|n| - aL)/delta
    const double aR = a + 0.5, aL = 0.5 - a;
    if (P > 0 && (double(N + 1) - aR < 1.0 || double(N + 1) - aL < 1.0))
        throw Error("window", "truncation too small to attach far-field sequences");
    std::optional<TailSide> R, L;
    std::vector<double> scR(P), scL(P);
    if (P > 0) {
        R.emplace(aR, N + 1, 0.0, 1.0, 2 * (k + P) + 2);
        L.emplace(aL, N + 1, 0.0, 1.0, 2 * (k + P) + 2);
        for (int i = 0; i < P; ++i) {
            const int s = k + 1 + i;
            scR[i] = 1.0 / std::sqrt(R->zeta0(2 * s));
            scL[i] = 1.0 / std::sqrt(L->zeta0(2 * s));
        }
    }

    Mat C = Mat::Zero(k, D);
    for (long j = 0; j < W; ++j)
        for (int l = 1; l <= k; ++l) C(l - 1, j) = std::pow(d[j], double(k - l));
    for (int l = 1; l <= k; ++l) {
        const double dl = std::pow(delta, double(l - k));
        for (int i = 0; i < P; ++i) {
            const int t = 1 + i + l;  // s - k + l
            C(l - 1, W + i) = scR[i] * dl * R->zeta0(t);
            C(l - 1, W + P + i) = scL[i] * dl * ((k - l) % 2 ? -1.0 : 1.0) * L->zeta0(t);
        }
    }

    // Numerator and denominator are block diagonal: the window part is diagonal and each
    // tail a small P x P block. With y = M^{1/2} a the numerator becomes |y|^2 and the
    // constraints C M^{-1/2} have bounded entries d^{-l}; 1/value is then the top
    // eigenvalue of W = M^{-1/2} N M^{-1/2} on their kernel.
    double dmin = 1e300;
    for (long j = 0; j < W; ++j) dmin = std::min(dmin, std::abs(d[j]));
    Mat Mt[2], Nt[2], Rt[2];
    if (P > 0) {
        const double d2k = std::pow(delta, -2.0 * k);
        for (int side = 0; side < 2; ++side) {
            const TailSide& T = side == 0 ? *R : *L;
            const auto& sc = side == 0 ? scR : scL;
            Mt[side].resize(P, P);
            Nt[side].resize(P, P);
            for (int i = 0; i < P; ++i)
                for (int j = 0; j < P; ++j) {
                    Mt[side](i, j) = sc[i] * sc[j] * d2k * T.zeta0(2 + i + j);
                    Nt[side](i, j) = sc[i] * sc[j] * T.zeta0(2 * k + 2 + i + j);
                }
            Rt[side] = Mat(Eigen::LLT<Mat>(Mt[side]).matrixU());
        }
    }
    if (dmin < 1e-9 / delta) {
        // a node sits on alpha: M is singular, fall back to the dense square-root form
        Mat F = Mat::Zero(D, D), Nd = Mat::Identity(D, D);
        for (long j = 0; j < W; ++j) F(j, j) = std::pow(d[j], double(k));
        for (int side = 0; side < 2 && P > 0; ++side) {
            F.block(W + side * P, W + side * P, P, P) = Rt[side];
            Nd.block(W + side * P, W + side * P, P, P) = Nt[side];
        }
        const Mat Z = nullspace_basis(C);
        return smallest_factored_eig(F * Z, Z.transpose() * Nd * Z).value;
    }
    Vec dk(W);
    for (long j = 0; j < W; ++j) dk(j) = std::pow(d[j], double(k));
    // a = M^{-1/2} y
    auto unscale = [&](const Vec& y) {
        Vec a(D);
        a.head(W) = y.head(W).array() / dk.array();
        for (int side = 0; side < 2 && P > 0; ++side)
            a.segment(W + side * P, P) =
                Rt[side].triangularView<Eigen::Upper>().solve(y.segment(W + side * P, P));
        return a;
    };
    auto applyN = [&](const Vec& a) {
        Vec b = a;
        for (int side = 0; side < 2 && P > 0; ++side)
            b.segment(W + side * P, P) = Nt[side] * a.segment(W + side * P, P);
        return b;
    };
    // M^{-1/2} applied from the left is the transpose of unscale
    auto unscaleT = [&](const Vec& b) {
        Vec y(D);
        y.head(W) = b.head(W).array() / dk.array();
        for (int side = 0; side < 2 && P > 0; ++side)
            y.segment(W + side * P, P) =
                Rt[side].transpose().triangularView<Eigen::Lower>().solve(b.segment(W + side * P, P));
        return y;
    };
    Mat Cy(k, D);
    for (int l = 0; l < k; ++l) Cy.row(l) = unscaleT(C.row(l).transpose()).transpose();
    Eigen::HouseholderQR<Mat> qrC(Cy.transpose());
    const Mat Q = qrC.householderQ() * Mat::Identity(D, k);
    auto project = [&](Vec v) { return Vec(v - Q * (Q.transpose() * v)); };
    auto op = [&](const Vec& y) { return project(unscaleT(applyN(unscale(project(y))))); };

    std::mt19937_64 rng(12345);
    std::uniform_real_distribution<double> uni(0.5, 1.5);
    Vec y0(D);
    for (long j = 0; j < D; ++j) y0(j) = uni(rng);
    const Vec y = lanczos_top(op, project(y0));
    const Vec yy = project(y);
    return yy.squaredNorm() / unscale(yy).dot(applyN(unscale(yy)));
}

double partial_fraction_check(int k, int s, cplx x, cplx y) {
    const cplx lhs = 2.0 * double(k) * std::pow(x, 2 * k - s - 1) * std::pow(y, s) /
                     (std::pow(x, 2 * k) - std::pow(y, 2 * k));
    cplx rhs = 0.0;
    for (int r = 0; r < 2 * k; ++r) rhs += unit(k, -long(r) * s) / (x - unit(k, r) * y);
    return std::abs(lhs - rhs);
}

double midpoint_value(double delta, long i) {
    const PwStructure pw{delta};
    return 0.5 * (pw.a_zero(i + 1) - pw.a_zero(i));
}

}  // namespace extremal
