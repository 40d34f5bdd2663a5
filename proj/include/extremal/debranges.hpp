#pragma once
#include "extremal/pw_core.hpp"
#include "extremal/solution.hpp"

namespace extremal {

struct DetProblem {
    double delta = 1.0;
    double alpha = 0.0;
    int k = 1;
    cplx omega() const;  // e^{i pi/k}
};

struct VMatrix {
    double lambdaArg = 0.0;
    Mat entries;           // real parts; the imaginary residue is checked, then dropped
    double maxImag = 0.0;  // largest |Im| seen before dropping
};

// (V)_{lj} = sum_{r<2k} omega^{-r(l+j-1)} C(alpha + omega^r lambda), C = tan(pi delta .)
// throws "pole" if alpha +- lambda is within 1e-8 of a pole
VMatrix v_matrix(const DetProblem& p, double lambda);

// A(alpha+lambda) A(alpha-lambda) det V(lambda), evaluated as an entire function:
// V is affine in C(alpha+lambda) and C(alpha-lambda) through two rank-one terms, so the
// A-factors can be multiplied through before any pole is reached.
double det_product(const DetProblem& p, double lambda);

struct DetOptions {
    double scanStep = 0.0;   // 0: half the kernel default
    double lambdaMax = 0.0;  // 0: kernel default
    double tol = 1e-13;
};

ExtremalSolution detroot_value(const DetProblem& p, const DetOptions& opt = {});

// min sum a_n^2 (xi_n - alpha)^{2k} / sum a_n^2 over 0 < |n| <= N with the k moment
// conditions; `tails` > 0 adds that many far-field sequences (xi_n - alpha)^{-s} per side
double sequence_oracle(double delta, double alpha, int k, long N, int tails = 0);

// |2k x^{2k-s-1} y^s/(x^{2k} - y^{2k}) - sum_r omega^{-rs}/(x - omega^r y)|
double partial_fraction_check(int k, int s, cplx x, cplx y);

// (xi_{i+1} - xi_i)/2
double midpoint_value(double delta, long i);

}  // namespace extremal
