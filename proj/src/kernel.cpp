#include "extremal/kernel.hpp"

#include <cmath>
#include <sstream>

#include "extremal/errors.hpp"
#include "extremal/numerics.hpp"

namespace extremal {

cplx kernel_O_closed(double delta, cplx w, cplx z) {
    const cplx kw0 = pw_kernel(delta, w, 0.0);
    const cplx k0z = pw_kernel(delta, 0.0, z);
    return pw_kernel(delta, w, z) - 0.5 * kw0 * k0z / (1.0 + 0.5 * delta);
}

KernelSurrogate KernelSurrogate::closed(SymmetryGroup g, double delta) {
    KernelSurrogate K;
    K.group_ = g;
    K.delta_ = delta;
    if (g == SymmetryGroup::U)
        K.backing_ = Backing::ClosedU;
    else if (g == SymmetryGroup::O)
        K.backing_ = Backing::ClosedO;
    else
        throw Error("usage", "closed-form kernels exist here only for U and O");
    return K;
}

KernelSurrogate KernelSurrogate::numeric(SymmetryGroup g, double delta, NodeWindow window,
                                         double center, int tails) {
    KernelSurrogate K;
    K.group_ = g;
    K.delta_ = delta;
    K.backing_ = Backing::GramInverse;
    std::vector<int> pw;
    for (int i = 1; i <= tails; ++i) pw.push_back(i);
    auto G = std::make_shared<AugmentedGram>(assemble_augmented(g, delta, window, center, pw));
    auto llt = std::make_shared<Eigen::LLT<Mat>>(G->entries);
    if (llt->info() != Eigen::Success)
        throw Error("factorization", "kernel Gram is not positive definite");
    K.gram_ = G;
    K.llt_ = llt;
    return K;
}

double KernelSurrogate::operator()(double w, double z) const {
    switch (backing_) {
        case Backing::ClosedU: return std::real(pw_kernel(delta_, w, z));
        case Backing::ClosedO: return std::real(kernel_O_closed(delta_, w, z));
        case Backing::GramInverse: break;
    }
    const Vec pw = gram_->eval(w);
    const Vec yw = llt_->matrixL().solve(pw);
    if (w == z) return yw.squaredNorm();
    const Vec yz = llt_->matrixL().solve(gram_->eval(z));
    return yw.dot(yz);
}

NodeWindow kernel_window(double delta, double alpha, double lambdaMax) {
    const double lo = std::min(0.0, alpha - lambdaMax), hi = std::max(0.0, alpha + lambdaMax);
    return {long(std::floor(delta * lo)) - 30, long(std::ceil(delta * hi)) + 30};
}

KernelSurrogate kernel_numeric(SymmetryGroup g, double delta, NodeWindow window, double center,
                               int tails) {
    return KernelSurrogate::numeric(g, delta, window, center, tails);
}

double default_scan_step(double delta) { return std::min(1.0 / (8.0 * delta), 0.01); }

double default_lambda_max(double delta, double alpha) {
    return std::max(4.0 / delta, 2.0 * std::abs(alpha) + 4.0 / delta);
}

ExtremalSolution extremal_via_kernel(SymmetryGroup g, double delta, double alpha,
                                     const KernelSurrogate& K, const ScanOptions& opt) {
    if (K.group() != g || K.delta() != delta)
        throw Error("usage", "kernel surrogate was built for a different problem");
    const double step = opt.scanStep > 0 ? opt.scanStep : default_scan_step(delta);
    const double lmax = opt.lambdaMax > 0 ? opt.lambdaMax : default_lambda_max(delta, alpha);
    if (const AugmentedGram* G = K.gram()) {
        const double lo = double(G->window.nMin + 30) / delta, hi = double(G->window.nMax - 30) / delta;
        if (alpha - lmax < lo - 1e-12 || alpha + lmax > hi + 1e-12 || lo > 0 || hi < 0)
            throw Error("window", "kernel window does not cover the scan range with a 30-node margin");
    }
    auto f = [&](double x) { return K(alpha + x, alpha - x); };
    RootResult r;
    try {
        r = first_positive_zero(f, step, lmax, opt.tol);
    } catch (const Error& e) {
        std::ostringstream os;
        os << e.what() << " (kernel scan ceiling " << lmax << ")";
        throw Error(e.code(), os.str());
    }
    ExtremalSolution s;
    s.route = Route::kernel;
    s.k = 1;
    s.lambda0 = r.root;
    s.aValue = r.root * r.root;
    s.tangential = r.tangential;
    s.residual = std::abs(f(r.root));
    s.nodes = K.gram() ? K.gram()->window.size() : 0;
    if (r.tangential) s.warnings.push_back("first kernel zero is tangential (no sign change)");
    return s;
}

ExtremalSolution kernel_value(SymmetryGroup g, double delta, double alpha, int tails,
                              bool forceNumeric, const ScanOptions& opt) {
    if (!forceNumeric && (g == SymmetryGroup::U || g == SymmetryGroup::O))
        return extremal_via_kernel(g, delta, alpha, KernelSurrogate::closed(g, delta), opt);
    const double lmax = opt.lambdaMax > 0 ? opt.lambdaMax : default_lambda_max(delta, alpha);
    const NodeWindow w = kernel_window(delta, alpha, lmax);
    return extremal_via_kernel(g, delta, alpha, kernel_numeric(g, delta, w, alpha, tails), opt);
}

}  // namespace extremal
