#pragma once
#include <Eigen/Dense>
#include <functional>

namespace extremal {

using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;

struct EigResult {
    double value = 0.0;
    Vec vector;
    double residualNorm = 0.0;  // |M v - value N v| / |v|
};

// smallest lambda of M v = lambda N v via Cholesky of N and a dense symmetric eigensolve
EigResult smallest_generalized_eig(const Mat& M, const Mat& N);

// same problem with M = F^T F given by its factor: lambda = sigma_min(F L^-T)^2,
// N = L L^T. Keeps full relative accuracy when M itself would be ill-conditioned.
EigResult smallest_factored_eig(const Mat& F, const Mat& N);

// orthonormal basis of ker C; rank threshold 1e-10*|C| on row-normalized C
Mat nullspace_basis(const Mat& C);

// eigenvector of the largest eigenvalue of a symmetric operator given by its action;
// Lanczos with full reorthogonalization, stopped on the Ritz residual
Vec lanczos_top(const std::function<Vec(const Vec&)>& op, const Vec& start, double tol = 1e-14,
                long maxIter = 400);

struct RootBracket {
    double lo, hi, fLo, fHi;
};

struct RootResult {
    double root = 0.0;
    bool tangential = false;  // zero found without a sign change
    RootBracket bracket{};
};

// scans scanStep, 2 scanStep, ... up to lambdaMax for the first sign change (or a
// touching zero), then bisects to width tol; throws "no_root" otherwise
RootResult first_positive_zero(const std::function<double(double)>& f, double scanStep,
                               double lambdaMax, double tol);

// adaptive Gauss-Kronrod; throws "max_subdivision" if the error estimate stays above tol
double adaptive_quad(const std::function<double(double)>& f, double a, double b, double tol);

}  // namespace extremal
