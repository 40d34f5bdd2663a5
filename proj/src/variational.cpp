#include "extremal/variational.hpp"

#include <cmath>
#include <sstream>

#include "extremal/errors.hpp"

namespace extremal {

std::string route_name(Route r) {
    switch (r) {
        case Route::variational: return "variational";
        case Route::kernel: return "kernel";
        case Route::debranges: return "debranges";
        case Route::sequence: return "sequence";
    }
    return "?";
}

namespace {

double ipow(double x, int p) {
    double r = 1.0;
    for (int i = 0; i < p; ++i) r *= x;
    return r;
}

}  // namespace

NodeWindow default_window(double delta, double alpha) {
    const double L = 12.0 / delta + 4.0;
    return {long(std::floor(delta * (std::min(0.0, alpha) - L))),
            long(std::ceil(delta * (std::max(0.0, alpha) + L)))};
}

NodeWindow centered_window(double delta, double alpha, long nodes) {
    const long c = std::lround(0.5 * delta * alpha);
    const long lo = c - (nodes - 1) / 2;
    NodeWindow w{lo, lo + nodes - 1};
    if (!w.contains(0) || delta * alpha < double(w.nMin) + 1 || delta * alpha > double(w.nMax) - 1)
        throw Error("window", "requested node count cannot cover both 0 and alpha");
    return w;
}

Mat moment_constraints(double delta, double alpha, int k, NodeWindow window) {
    const long N = window.size();
    if (N <= k) throw Error("usage", "window must hold more than k nodes");
    Mat C(k, N);
    for (long j = 0; j < N; ++j) {
        const long n = window.nMin + j;
        const double d = double(n) / delta - alpha;
        const double sign = (n % 2 == 0) ? 1.0 : -1.0;
        for (int l = 1; l <= k; ++l) C(l - 1, j) = sign * ipow(d, k - l);
    }
    return C;
}

// Numerator: for coefficients in ker C, (x - alpha)^k f has node coefficients d_n^k v_n,
// and a tail function of power s turns into the one of power s - k. So the numerator
// form is |R Y c|^2 with R the Cholesky factor of the Gram over the shifted basis.
ExtremalSolution variational_value(const ProblemSpec& p) {
    if (p.k < 1) throw Error("usage", "k must be at least 1");
    if (!(p.delta > 0)) throw Error("usage", "delta must be positive");
    const NodeWindow w = p.window ? *p.window : default_window(p.delta, p.alpha);
    const int k = p.k;
    const long N = w.size();
    if (N < k + 2) throw Error("usage", "window must hold at least k + 2 nodes");
    const int P = std::max(0, p.tails);
    std::vector<int> denPow, numPow;
    for (int i = 1; i <= P; ++i) {
        denPow.push_back(k + i);
        numPow.push_back(i);
    }
    auto den = std::make_shared<AugmentedGram>(
        assemble_augmented(p.group, p.delta, w, p.alpha, denPow));
    const AugmentedGram num = assemble_augmented(p.group, p.delta, w, p.alpha, numPow);
    const long D = den->size();

    // constraints, extended to the tails: sum_T (-1)^n t_n d_n^{k-l}
    Mat C = Mat::Zero(k, D);
    C.leftCols(N) = moment_constraints(p.delta, p.alpha, k, w);
    for (int l = 1; l <= k; ++l) {
        const double dl = std::pow(p.delta, double(l - k));
        for (int i = 0; i < P; ++i) {
            const int t = denPow[i] - k + l;
            C(l - 1, N + i) = den->tailScale(i) * dl * den->right->zeta0(t);
            C(l - 1, N + P + i) =
                den->tailScale(P + i) * dl * ((k - l) % 2 ? -1.0 : 1.0) * den->left->zeta0(t);
        }
    }

    Mat Y = Mat::Zero(D, D);
    for (long j = 0; j < N; ++j) Y(j, j) = ipow(double(w.nMin + j) / p.delta - p.alpha, k);
    const double dk = std::pow(p.delta, -double(k));
    for (int i = 0; i < P; ++i) {
        Y(N + i, N + i) = den->tailScale(i) * dk / num.tailScale(i);
        Y(N + P + i, N + P + i) = (k % 2 ? -1.0 : 1.0) * den->tailScale(P + i) * dk / num.tailScale(P + i);
    }

    const Mat Z = nullspace_basis(C);
    Eigen::LLT<Mat> lltNum(num.entries);
    const Mat Rnum = lltNum.matrixU();
    const Mat F = Rnum * Y * Z;
    const Mat Nden = Z.transpose() * den->entries * Z;
    const EigResult e = smallest_factored_eig(F, Nden);

    ExtremalSolution s;
    s.route = Route::variational;
    s.k = k;
    s.aValue = e.value;
    s.lambda0 = std::pow(e.value, 1.0 / (2.0 * k));
    s.nodes = N;
    Vec c = Z * e.vector;
    c /= std::sqrt(c.dot(den->entries * c));
    s.coeffs = c.head(N);
    s.tailCoeffs = c.tail(2 * P);
    const Vec Fc = Rnum * (Y * c);
    s.numeratorNorm = Fc.squaredNorm();
    const double scale = std::max(1e-300, F.squaredNorm());
    s.residual = e.residualNorm / scale;
    s.basis = den;
    const WeightedGram base = assemble_gram(p.group, p.delta, w);
    if (!base.warning.empty()) s.warnings.push_back(base.warning);
    if (!(s.aValue > 0)) {
        std::ostringstream os;
        os << "non-positive Rayleigh quotient " << s.aValue;
        throw Error("solver", os.str());
    }
    return s;
}

std::vector<double> extremizer_samples(const ExtremalSolution& sol, const std::vector<double>& xs) {
    if (!sol.basis || sol.coeffs.size() == 0)
        throw Error("usage", "solution carries no extremizer coefficients");
    Vec c(sol.coeffs.size() + sol.tailCoeffs.size());
    c << sol.coeffs, sol.tailCoeffs;
    std::vector<double> out;
    out.reserve(xs.size());
    for (double x : xs) out.push_back(sol.basis->eval(x).dot(c));
    return out;
}

double theorem1_bound(SymmetryGroup g, double delta, double alpha) {
    ProblemSpec p;
    p.group = g;
    p.delta = delta;
    p.alpha = alpha;
    const double r = std::sqrt(variational_value(p).aValue);
    if (g == SymmetryGroup::O || g == SymmetryGroup::SOodd) return std::min(r, std::abs(alpha));
    return r;
}

}  // namespace extremal
