#include "extremal/farfield.hpp"

#include <boost/math/special_functions/digamma.hpp>
#include <boost/math/special_functions/factorials.hpp>
#include <boost/math/special_functions/polygamma.hpp>
#include <cmath>
#include <complex>
#include <numbers>
#include <sstream>

#include "extremal/errors.hpp"
#include "extremal/pw_core.hpp"

namespace extremal {

using std::numbers::pi;

namespace {

constexpr int kSeries = 40;  // expansion terms; ratio <= 1/4 gives ~1e-24
constexpr long kOsc = 1024;  // direct terms of oscillating sums

double hurwitz(int t, double x) {
    const double v =
        boost::math::polygamma(t - 1, x) / boost::math::factorial<double>(unsigned(t - 1));
    return (t % 2 == 0) ? v : -v;
}

double ipow(double x, int p) {
    double r = 1.0;
    const bool inv = p < 0;
    for (int i = 0; i < std::abs(p); ++i) r *= x;
    return inv ? 1.0 / r : r;
}

}  // namespace

TailSide::TailSide(double a, long n0, double theta, double reach, int maxPower)
    : a_(a), n0_(n0), theta_(theta), x0_(double(n0) - a), reach_(reach) {
    if (!(x0_ >= 0.5)) throw Error("window", "far-field tail must start beyond the center");
    const double need = 4.0 * std::max({reach, std::abs(a), 1.0});
    K_ = std::max(0L, long(std::ceil(need - x0_)));
    xK_ = x0_ + double(K_);
    zK_.assign(maxPower + kSeries + 4, 0.0);
    for (int t = 2; t < int(zK_.size()); ++t) zK_[t] = hurwitz(t, xK_);
    z0_.assign(2 * maxPower + 4, 0.0);
    for (int t = 2; t < int(z0_.size()); ++t) z0_[t] = hurwitz(t, x0_);
    psi0_ = boost::math::digamma(x0_);
}

double TailSide::zeta_at(int t, double x) const {
    if (x == xK_ && t < int(zK_.size())) return zK_[t];
    if (x == x0_ && t < int(z0_.size())) return z0_[t];
    return hurwitz(t, x);
}

double TailSide::zeta0(int t) const { return zeta_at(t, x0_); }

double TailSide::hil1(int s, double b) const {
    if (!(b < double(n0_))) throw Error("domain", "Hilbert tail sum needs the pole before the tail");
    const double q = b - a_;
    long K = K_;
    double xK = xK_;
    if (std::abs(q) > reach_) {  // slow path: extend the direct part
        K = std::max(K_, long(std::ceil(4.0 * std::abs(q) - x0_)));
        xK = x0_ + double(K);
    }
    double direct = 0.0;
    for (long i = K - 1; i >= 0; --i) {
        const double n = double(n0_ + i);
        direct += ipow(n - a_, -s) / (n - b);
    }
    double rem = 0.0, qp = 1.0;
    for (int j = 0; j < kSeries; ++j) {
        rem += qp * zeta_at(s + j + 1, xK);
        qp *= q;
    }
    return direct + rem;
}

double TailSide::hil2(int s, double b) const {
    if (!(b < double(n0_))) throw Error("domain", "Hilbert tail sum needs the pole before the tail");
    const double p = -a_, q = b - a_;
    long K = K_;
    double xK = xK_;
    if (std::abs(q) > reach_) {
        K = std::max(K_, long(std::ceil(4.0 * std::abs(q) - x0_)));
        xK = x0_ + double(K);
    }
    double direct = 0.0;
    for (long i = K - 1; i >= 0; --i) {
        const double n = double(n0_ + i);
        direct += ipow(n - a_, -s) / (n * (n - b));
    }
    // 1/(n (n - b)) = sum_t c_t (n - a)^{-t-2},  c_t = sum_{i+j=t} p^i q^j
    double rem = 0.0, c = 1.0, pt = 1.0;
    for (int t = 0; t < kSeries - 1; ++t) {
        rem += c * zeta_at(s + t + 2, xK);
        pt *= p;
        c = q * c + pt;
    }
    return direct + rem;
}

template <class F>
double TailSide::osc_sum(F f) const {
    using C = std::complex<double>;
    const C z = std::polar(1.0, theta_);
    double direct = 0.0;
    const long M = n0_ + kOsc;
    for (long n = M - 1; n >= n0_; --n) direct += std::real(C(f(n)) * std::polar(1.0, theta_ * double(n)));
    // summation by parts: sum_{n>=M} f z^n = z^M/(1-z) [f + w Df + w^2 D^2 f + w^3 D^3 f], w = z/(1-z)
    const C f0 = f(M), f1 = f(M + 1), f2 = f(M + 2), f3 = f(M + 3);
    const C d1 = f1 - f0, d2 = f2 - 2.0 * f1 + f0, d3 = f3 - 3.0 * f2 + 3.0 * f1 - f0;
    const C w = z / (1.0 - z);
    const C tail = std::polar(1.0, theta_ * double(M)) / (1.0 - z) * (f0 + w * (d1 + w * (d2 + w * d3)));
    return direct + std::real(tail);
}

double TailSide::osc_window(int s, long m) const {
    const double a = a_;
    return osc_sum([a, s, m](long n) {
        const double x = double(n);
        return ipow(x - a, -s) / (x * (x - double(m)));
    });
}

double TailSide::r_excl(int s, long b) const {
    if (b < n0_) throw Error("domain", "excluded pole must lie in the tail");
    const double d = double(b) - a_;
    double v = ipow(d, -s) * (psi0_ - boost::math::digamma(double(b - n0_ + 1)) + 1.0 / d);
    for (int j = 2; j <= s; ++j) v -= ipow(d, -(s - j + 1)) * (zeta0(j) - ipow(d, -j));
    return v;
}

double TailSide::r_far(int s, double b) const {
    if (!(b < double(n0_))) throw Error("domain", "pole must lie before the tail");
    const double d = b - a_;
    double v = ipow(d, -s) * (psi0_ - boost::math::digamma(double(n0_) - b));
    for (int j = 2; j <= s; ++j) v -= ipow(d, -(s - j + 1)) * zeta0(j);
    return v;
}

namespace {

// S_{m n}, m in window, summed against the right-type tail (-1)^n (n-a)^{-s}
double window_tail_S(const TailSide& T, double theta, int s, long m) {
    double gm = 0.0;
    if (m != 0) {
        const double h = std::sin(0.5 * theta * double(m));
        gm = 2.0 * h * h / double(m);
    }
    const double v = gm * T.hil1(s, double(m)) - T.hil2(s, double(m)) + T.osc_window(s, m);
    const double sign = (m % 2 == 0) ? 1.0 : -1.0;
    return sign * v / (4.0 * pi * pi);
}

// both tails on the same side
double tail_tail_same_S(const TailSide& T, double theta, int s, int s2) {
    using C = std::complex<double>;
    const double a = T.a();
    const double r1 = T.hil1(s, 0.0), r2 = T.hil1(s2, 0.0);
    const double osc = T.osc_sum([&](long n) {
        const double x = double(n);
        const double u = ipow(x - a, -s), u2 = ipow(x - a, -s2);
        const double Hs = -T.r_excl(s, n), Hs2 = -T.r_excl(s2, n);
        return C((u2 * Hs + u * Hs2) / x - u * u2 / (x * x), u * u2 * theta / x);
    });
    return (r1 * r2 + osc) / (4.0 * pi * pi);
}

// L holds the mirrored left tail (power s), R the right tail (power s2)
double tail_tail_cross_S(const TailSide& L, const TailSide& R, int s, int s2) {
    const double aL = L.a(), aR = R.a();
    const double rank = -L.hil1(s, 0.0) * R.hil1(s2, 0.0);
    const double o1 = R.osc_sum([&](long n) {
        const double x = double(n);
        return ipow(x - aR, -s2) * L.r_far(s, -x) / x;
    });
    const double o2 = L.osc_sum([&](long n) {
        const double x = double(n);
        return ipow(x - aL, -s) * R.r_far(s2, -x) / x;
    });
    return (rank + o1 + o2) / (4.0 * pi * pi);
}

}  // namespace

AugmentedGram assemble_augmented(SymmetryGroup g, double delta, NodeWindow window, double alpha,
                                 const std::vector<int>& powers) {
    const WeightedGram base = assemble_gram(g, delta, window);
    const WeightSpec w = weight_params(g);
    const double a = delta * alpha;
    const long N = window.size(), P = long(powers.size());
    if (!(double(window.nMax) + 1.0 - a >= 1.0 && a - double(window.nMin) + 1.0 >= 1.0))
        throw Error("window", "the window must contain delta*alpha to attach far-field tails");
    int maxPow = 1;
    for (int p : powers) {
        if (p < 1) throw Error("usage", "tail powers must be positive");
        maxPow = std::max(maxPow, p);
    }
    const bool coupled = w.gamma != 0 && delta > 1.0;
    // 2 pi/delta shifted by -2 pi: same values at integers, but its derivative is the
    // one the diagonal S_nn carries
    const double theta = 2.0 * pi / delta - 2.0 * pi;
    const double reach = std::max(double(window.nMax) - a, a - double(window.nMin)) + 1.0;

    AugmentedGram A;
    A.group = g;
    A.delta = delta;
    A.alpha = alpha;
    A.window = window;
    A.powers = powers;
    A.right = std::make_shared<TailSide>(a, window.nMax + 1, theta, reach, 2 * maxPow + 2);
    A.left = std::make_shared<TailSide>(-a, 1 - window.nMin, theta, reach, 2 * maxPow + 2);
    const TailSide& R = *A.right;
    const TailSide& L = *A.left;

    A.tailScale.resize(2 * P);
    for (long i = 0; i < P; ++i) {
        A.tailScale(i) = 1.0 / std::sqrt(R.zeta0(2 * powers[i]) / delta);
        A.tailScale(P + i) = 1.0 / std::sqrt(L.zeta0(2 * powers[i]) / delta);
    }

    Mat G = Mat::Zero(N + 2 * P, N + 2 * P);
    G.topLeftCorner(N, N) = base.entries;
    for (long i = 0; i < P; ++i)
        for (long j = 0; j < P; ++j) {
            const int t = powers[i] + powers[j];
            G(N + i, N + j) = R.zeta0(t) / delta * A.tailScale(i) * A.tailScale(j);
            G(N + P + i, N + P + j) = L.zeta0(t) / delta * A.tailScale(P + i) * A.tailScale(P + j);
        }
    if (coupled) {
        const double gam = double(w.gamma);
        for (long r = 0; r < N; ++r) {
            const long m = window.nMin + r;
            for (long i = 0; i < P; ++i) {
                const double vr = gam * window_tail_S(R, theta, powers[i], m) * A.tailScale(i);
                const double vl = gam * window_tail_S(L, theta, powers[i], -m) * A.tailScale(P + i);
                G(r, N + i) = G(N + i, r) = vr;
                G(r, N + P + i) = G(N + P + i, r) = vl;
            }
        }
        for (long i = 0; i < P; ++i)
            for (long j = i; j < P; ++j) {
                const double sr = gam * tail_tail_same_S(R, theta, powers[i], powers[j]);
                const double sl = gam * tail_tail_same_S(L, theta, powers[i], powers[j]);
                G(N + i, N + j) += sr * A.tailScale(i) * A.tailScale(j);
                G(N + P + i, N + P + j) += sl * A.tailScale(P + i) * A.tailScale(P + j);
                if (j != i) {
                    G(N + j, N + i) = G(N + i, N + j);
                    G(N + P + j, N + P + i) = G(N + P + i, N + P + j);
                }
            }
        for (long i = 0; i < P; ++i)
            for (long j = 0; j < P; ++j) {
                const double c = gam * tail_tail_cross_S(L, R, powers[i], powers[j]) *
                                 A.tailScale(P + i) * A.tailScale(j);
                G(N + P + i, N + j) = G(N + j, N + P + i) = c;
            }
    }
    A.entries = G;
    Eigen::LLT<Mat> llt(G);
    if (llt.info() != Eigen::Success)
        throw Error("factorization", "augmented Gram is not positive definite");
    return A;
}

Vec AugmentedGram::eval(double x) const {
    const long N = window.size(), P = long(powers.size());
    Vec v(N + 2 * P);
    for (long r = 0; r < N; ++r) v(r) = sinc_node(delta, window.nMin + r, x);
    const double b = delta * x;
    if (P == 0) return v;
    if (!(b >= double(window.nMin) - 0.5 && b <= double(window.nMax) + 0.5)) {
        std::ostringstream os;
        os << "evaluation point " << x << " lies outside the node window";
        throw Error("domain", os.str());
    }
    const double sr = std::sin(pi * b);
    for (long i = 0; i < P; ++i) {
        v(N + i) = -sr / pi * right->hil1(powers[i], b) * tailScale(i);
        v(N + P + i) = sr / pi * left->hil1(powers[i], -b) * tailScale(P + i);
    }
    return v;
}

}  // namespace extremal
