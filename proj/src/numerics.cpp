#include "extremal/numerics.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <sstream>

#include "extremal/errors.hpp"

namespace extremal {

namespace {

Eigen::LLT<Mat> factor_spd(const Mat& N) {
    Eigen::LLT<Mat> llt(N);
    if (llt.info() != Eigen::Success) {
        // locate the breakdown for the message: first leading minor that fails
        long pivot = N.rows();
        for (long j = 1; j <= N.rows(); ++j) {
            Eigen::LLT<Mat> part(N.topLeftCorner(j, j));
            if (part.info() != Eigen::Success) {
                pivot = j - 1;
                break;
            }
        }
        std::ostringstream os;
        os << "Cholesky factorization broke down at pivot " << pivot;
        throw Error("factorization", os.str());
    }
    return llt;
}

}  // namespace

EigResult smallest_generalized_eig(const Mat& M, const Mat& N) {
    if (M.rows() != N.rows() || M.cols() != N.cols() || M.rows() != M.cols())
        throw Error("dimension", "eigenproblem matrices must be square and of equal size");
    auto llt = factor_spd(N);
    const Mat Linv_M = llt.matrixL().solve(M);
    const Mat H = llt.matrixL().solve(Linv_M.transpose());  // L^-1 M L^-T
    Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (H + H.transpose()));
    EigResult r;
    r.value = es.eigenvalues()(0);
    r.vector = llt.matrixU().solve(es.eigenvectors().col(0));
    r.residualNorm = (M * r.vector - r.value * (N * r.vector)).norm() / r.vector.norm();
    return r;
}

EigResult smallest_factored_eig(const Mat& F, const Mat& N) {
    if (F.cols() != N.rows() || N.rows() != N.cols())
        throw Error("dimension", "factor and denominator sizes disagree");
    auto llt = factor_spd(N);
    // H = F L^-T  <=>  H^T = L^-1 F^T
    const Mat H = llt.matrixL().solve(F.transpose()).transpose();
    Eigen::JacobiSVD<Mat> svd(H, Eigen::ComputeThinV);
    const long last = svd.singularValues().size() - 1;
    EigResult r;
    double smin = svd.singularValues()(last);
    Vec u = svd.matrixV().col(last);
    if (H.rows() < H.cols()) {
        // wide factor: the smallest quotient is 0 on the complement of the row space
        smin = 0.0;
        Eigen::FullPivLU<Mat> lu(H);
        u = lu.kernel().col(0).normalized();
    }
    r.value = smin * smin;
    r.vector = llt.matrixU().solve(u);
    const Vec Fv = F * r.vector;
    r.residualNorm = (F.transpose() * Fv - r.value * (N * r.vector)).norm() / r.vector.norm();
    return r;
}

Mat nullspace_basis(const Mat& C) {
    const long n = C.cols();
    if (C.rows() == 0) return Mat::Identity(n, n);
    Mat Cs = C;
    for (long i = 0; i < Cs.rows(); ++i) {
        const double s = Cs.row(i).norm();
        if (s > 0) Cs.row(i) /= s;
    }
    Eigen::ColPivHouseholderQR<Mat> qr(Cs.transpose());
    qr.setThreshold(1e-10);
    const long r = qr.rank();
    if (r >= n) throw Error("trivial_kernel", "constraints leave no feasible directions");
    const Mat Q = qr.householderQ() * Mat::Identity(n, n);
    return Q.rightCols(n - r);
}

Vec lanczos_top(const std::function<Vec(const Vec&)>& op, const Vec& start, double tol,
                long maxIter) {
    const long n = start.size();
    const long m = std::min(n, maxIter);
    Mat V(n, m);
    std::vector<double> alpha, beta;
    V.col(0) = start.normalized();
    Vec best = V.col(0);
    for (long j = 0; j < m; ++j) {
        Vec w = op(V.col(j));
        alpha.push_back(V.col(j).dot(w));
        // full reorthogonalization, twice for safety
        for (int pass = 0; pass < 2; ++pass) w -= V.leftCols(j + 1) * (V.leftCols(j + 1).transpose() * w);
        const double b = w.norm();
        Eigen::SelfAdjointEigenSolver<Mat> es;
        Mat T = Mat::Zero(j + 1, j + 1);
        for (long i = 0; i <= j; ++i) {
            T(i, i) = alpha[i];
            if (i > 0) T(i, i - 1) = T(i - 1, i) = beta[i - 1];
        }
        es.compute(T);
        const double theta = es.eigenvalues()(j);
        const Vec s = es.eigenvectors().col(j);
        best = V.leftCols(j + 1) * s;
        if (b * std::abs(s(j)) <= tol * std::abs(theta) || b <= 1e-300 || j + 1 == m) break;
        beta.push_back(b);
        V.col(j + 1) = w / b;
    }
    return best;
}

RootResult first_positive_zero(const std::function<double(double)>& f, double scanStep,
                               double lambdaMax, double tol) {
    if (!(scanStep > 0) || !(tol > 0)) throw Error("usage", "scanStep and tol must be positive");
    auto bisect = [&](double lo, double hi, double flo, double fhi) {
        RootResult r;
        r.bracket = {lo, hi, flo, fhi};
        while (hi - lo > tol) {
            const double mid = 0.5 * (lo + hi);
            const double fm = f(mid);
            if (fm == 0.0) {
                lo = hi = mid;
                break;
            }
            if ((fm < 0) == (flo < 0)) {
                lo = mid;
                flo = fm;
            } else {
                hi = mid;
            }
        }
        r.root = 0.5 * (lo + hi);
        return r;
    };

    double x0 = scanStep, f0 = f(x0);
    double xm = 0.0, fm = f0;  // previous point (xm == 0 means none yet)
    double scale = std::abs(f0);
    if (f0 == 0.0) return RootResult{x0, false, {x0, x0, 0.0, 0.0}};
    for (long i = 2;; ++i) {
        const double x1 = i * scanStep;
        if (x1 > lambdaMax + 0.5 * scanStep) break;
        const double f1 = f(x1);
        scale = std::max(scale, std::abs(f1));
        if (f1 == 0.0) return RootResult{x1, false, {x1, x1, 0.0, 0.0}};
        if ((f0 < 0) != (f1 < 0)) return bisect(x0, x1, f0, f1);
        // local minimum of |f| without a sign change: look closer
        if (xm > 0 && std::abs(f0) < std::abs(fm) && std::abs(f0) <= std::abs(f1) &&
            std::abs(f0) < 1e-2 * scale) {
            double a = xm, b = x1;
            const double g = 0.5 * (std::sqrt(5.0) - 1.0);
            double c = b - g * (b - a), d = a + g * (b - a);
            double fc = f(c), fd = f(d);
            while (b - a > tol) {
                if ((fc < 0) != (f0 < 0)) {
                    RootResult r = bisect(c > x0 ? x0 : xm, c, c > x0 ? f0 : fm, fc);
                    return r;
                }
                if ((fd < 0) != (f0 < 0)) {
                    return bisect(d > x0 ? x0 : xm, d, d > x0 ? f0 : fm, fd);
                }
                if (std::abs(fc) < std::abs(fd)) {
                    b = d;
                    d = c;
                    fd = fc;
                    c = b - g * (b - a);
                    fc = f(c);
                } else {
                    a = c;
                    c = d;
                    fc = fd;
                    d = a + g * (b - a);
                    fd = f(d);
                }
            }
            const double xt = 0.5 * (a + b);
            const double ft = f(xt);
            if (std::abs(ft) <= 1e-10 * scale) {
                RootResult r;
                r.root = xt;
                r.tangential = true;
                r.bracket = {a, b, ft, ft};
                return r;
            }
        }
        xm = x0;
        fm = f0;
        x0 = x1;
        f0 = f1;
    }
    std::ostringstream os;
    os << "no sign change or touching zero in (0, " << lambdaMax << "]";
    throw Error("no_root", os.str());
}

double adaptive_quad(const std::function<double(double)>& f, double a, double b, double tol) {
    using GK = boost::math::quadrature::gauss_kronrod<double, 31>;
    // boost's tolerance is relative to the L1 norm; convert the absolute target
    double err = 0.0, l1 = 0.0;
    GK::integrate(f, a, b, 0, 1.0, &err, &l1);
    const double rel = l1 > 0 ? tol / l1 : 1.0;
    const double v = GK::integrate(f, a, b, 30, rel, &err, &l1);
    if (!(err <= tol)) {
        std::ostringstream os;
        os << "adaptive quadrature error estimate " << err << " exceeds " << tol;
        throw Error("max_subdivision", os.str());
    }
    return v;
}

}  // namespace extremal
