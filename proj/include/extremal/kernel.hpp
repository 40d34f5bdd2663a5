#pragma once
#include <memory>

#include "extremal/pw_core.hpp"
#include "extremal/solution.hpp"

namespace extremal {

// K_O = K_U - (1/2) K_U(w,0) K_U(0,z) / (1 + (1/2) K_U(0,0))
cplx kernel_O_closed(double delta, cplx w, cplx z);

// Reproducing kernel of G, either in closed form (U, O) or as the kernel of the
// windowed basis (plus far-field tails) under the weighted inner product.
class KernelSurrogate {
public:
    enum class Backing { ClosedU, ClosedO, GramInverse };

    static KernelSurrogate closed(SymmetryGroup g, double delta);
    static KernelSurrogate numeric(SymmetryGroup g, double delta, NodeWindow window, double center,
                                   int tails);

    SymmetryGroup group() const { return group_; }
    double delta() const { return delta_; }
    Backing backing() const { return backing_; }
    const AugmentedGram* gram() const { return gram_.get(); }

    // real arguments only
    double operator()(double w, double z) const;

private:
    SymmetryGroup group_ = SymmetryGroup::U;
    double delta_ = 1.0;
    Backing backing_ = Backing::ClosedU;
    std::shared_ptr<const AugmentedGram> gram_;
    std::shared_ptr<const Eigen::LLT<Mat>> llt_;
};

// window covering [alpha - lambdaMax, alpha + lambdaMax] and 0 with a 30-node margin
NodeWindow kernel_window(double delta, double alpha, double lambdaMax);

KernelSurrogate kernel_numeric(SymmetryGroup g, double delta, NodeWindow window, double center = 0.0,
                               int tails = 4);

struct ScanOptions {
    double scanStep = 0.0;   // 0: min(1/(8 delta), 0.01)
    double lambdaMax = 0.0;  // 0: max(4/delta, 2|alpha| + 4/delta)
    double tol = 1e-13;
};

double default_scan_step(double delta);
double default_lambda_max(double delta, double alpha);

// first positive zero of x -> K(alpha + x, alpha - x); aValue = lambda0^2
ExtremalSolution extremal_via_kernel(SymmetryGroup g, double delta, double alpha,
                                     const KernelSurrogate& K, const ScanOptions& opt = {});

// convenience: closed form for U and O, numeric otherwise
ExtremalSolution kernel_value(SymmetryGroup g, double delta, double alpha, int tails = 4,
                              bool forceNumeric = false, const ScanOptions& opt = {});

}  // namespace extremal
