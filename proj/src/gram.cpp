#include "extremal/gram.hpp"

#include <atomic>
#include <cmath>
#include <mutex>
#include <numbers>
#include <sstream>

#include "extremal/errors.hpp"

namespace extremal {

using std::numbers::pi;

namespace {

struct Corruption {
    std::atomic<bool> on{false};
    long m = 0, n = 0;
    double shift = 0.0;
};
Corruption g_corrupt;

// g(j) = (1 - cos(theta j))/j with theta = 2 pi/delta, g(0) = 0
double gfun(double theta, long j) {
    if (j == 0) return 0.0;
    const double t = 0.5 * theta * double(j);
    const double s = std::sin(t);
    return 2.0 * s * s / double(j);
}

}  // namespace

// Spectral picture: e_m has transform (1/delta) e^{-2 pi i m xi/delta} on |xi| <= delta/2,
// the weight has transform 1/2 on [-1, 1]. With u = xi/delta the entry is
//   S_mn = 1/2 * integral over {|u - v| <= 1/delta} in [-1/2, 1/2]^2 of e^{-2 pi i (m u - n v)}.
// For delta <= 1 the band holds the whole square; otherwise subtract the two corner
// triangles (legs h = 1 - 1/delta), whose integrals reduce to the elementary expressions
// below. Only cos and sin of theta*j at integers enter, except on the diagonal, where
// the corner leg shows up as the factor 2 pi h = 2 pi - theta.
double sin_weight_entry(double delta, long m, long n) {
    double v = 0.0;
    if (delta <= 1.0) {
        v = (m == 0 && n == 0) ? 0.5 : 0.0;
    } else {
        const double theta = 2.0 * pi / delta;
        const double c = 1.0 / (4.0 * pi * pi);
        const double sign = ((m + n) % 2 == 0) ? 1.0 : -1.0;
        if (m == n) {
            if (m == 0) {
                v = 1.0 / delta - 0.5 / (delta * delta);
            } else {
                const double j = double(n);
                const double t = theta * j;
                v = c * ((1.0 - std::cos(t)) / (j * j) + (2.0 * pi - theta) * std::sin(t) / j);
            }
        } else {
            v = sign * c * (gfun(theta, m) - gfun(theta, n)) / double(n - m);
        }
    }
    if (g_corrupt.on.load(std::memory_order_relaxed)) {
        if ((m == g_corrupt.m && n == g_corrupt.n) || (m == g_corrupt.n && n == g_corrupt.m))
            v += g_corrupt.shift;
    }
    return v;
}

void corrupt_sin_weight_for_testing(long m, long n, double shift) {
    g_corrupt.m = m;
    g_corrupt.n = n;
    g_corrupt.shift = shift;
    g_corrupt.on = true;
}

void clear_sin_weight_corruption() { g_corrupt.on = false; }

WeightedGram assemble_gram(SymmetryGroup g, double delta, NodeWindow window) {
    if (!(delta > 0)) throw Error("usage", "bandwidth must be positive");
    if (window.size() < 1) throw Error("window", "empty node window");
    const WeightSpec w = weight_params(g);
    if (w.eta > 0 && !window.contains(0))
        throw Error("window", "the point mass at 0 needs node 0 inside the window");
    const long N = window.size();
    WeightedGram G;
    G.window = window;
    G.delta = delta;
    G.group = g;
    G.entries = Mat::Identity(N, N) / delta;
    if (w.gamma != 0) {
        for (long i = 0; i < N; ++i)
            for (long j = i; j < N; ++j) {
                const double s = w.gamma * sin_weight_entry(delta, window.nMin + i, window.nMin + j);
                G.entries(i, j) += s;
                if (j != i) G.entries(j, i) += s;
            }
    }
    if (w.eta > 0) G.entries(-window.nMin, -window.nMin) += w.eta;

    Eigen::LLT<Mat> llt(G.entries);
    if (llt.info() != Eigen::Success) {
        std::ostringstream os;
        os << "weighted Gram for " << group_name(g) << ", delta=" << delta << ", window ["
           << window.nMin << "," << window.nMax << "] is not positive definite";
        throw Error("factorization", os.str());
    }
    const Vec piv = Mat(llt.matrixL()).diagonal();
    const double minPiv = piv.minCoeff();
    if (minPiv * minPiv < 1e-10) {
        std::ostringstream os;
        os << "Gram nearly singular: smallest Cholesky pivot^2 = " << minPiv * minPiv;
        G.warning = os.str();
    }
    return G;
}

double gram_min_eig(const WeightedGram& G) {
    Eigen::SelfAdjointEigenSolver<Mat> es(G.entries, Eigen::EigenvaluesOnly);
    return es.eigenvalues()(0);
}

}  // namespace extremal
