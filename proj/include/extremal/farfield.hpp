#pragma once
#include <memory>
#include <vector>

#include "extremal/gram.hpp"

namespace extremal {

// Sums over one tail n >= n0 of the sequences (n - a)^{-s}, with n0 - a >= 1.
// Non-oscillating parts are summed in closed form (Hurwitz zeta, digamma) or by a
// short direct sum followed by a geometric expansion in 1/(n - a); oscillating parts
// by direct summation with a summation-by-parts remainder.
class TailSide {
public:
    // reach bounds |b - a| for the Hilbert-type sums; theta = 2 pi/delta - 2 pi (0: unused)
    TailSide(double a, long n0, double theta, double reach, int maxPower);

    double a() const { return a_; }
    long n0() const { return n0_; }

    // sum (n - a)^{-t}, t >= 2
    double zeta0(int t) const;
    // sum (n - a)^{-s}/(n - b), b < n0
    double hil1(int s, double b) const;
    // sum (n - a)^{-s}/(n (n - b)), b < n0
    double hil2(int s, double b) const;
    // sum (n - a)^{-s} cos(theta n)/(n (n - m)), m < n0
    double osc_window(int s, long m) const;
    // sum_{n != b} (n - a)^{-s}/(n - b) for an integer b >= n0
    double r_excl(int s, long b) const;
    // sum (n - a)^{-s}/(n - b) for b < n0 well separated from a
    double r_far(int s, double b) const;

    // sum_{n >= n0} Re(f(n) e^{i theta n}) for smooth, decaying f
    template <class F>
    double osc_sum(F f) const;

private:
    double zeta_at(int t, double x) const;
    double a_;
    long n0_;
    double theta_;
    double x0_;
    long K_;      // direct terms before the expansion takes over
    double xK_;   // n0 + K - a
    double reach_;
    std::vector<double> zK_;  // zeta(t, xK)
    std::vector<double> z0_;  // zeta(t, x0)
    double psi0_;             // digamma(x0)
};

// Window basis plus far-field tail functions t_{R,s} = (-1)^n (n - a)^{-s} on n > nMax and
// t_{L,s} = (-1)^n (a - n)^{-s} on n < nMin, each scaled to unit unweighted norm.
// All these spans are nested in the window, so Rayleigh-Ritz bounds survive.
struct AugmentedGram {
    SymmetryGroup group = SymmetryGroup::U;
    double delta = 1.0;
    double alpha = 0.0;
    NodeWindow window;
    std::vector<int> powers;
    Mat entries;    // order: window nodes, right tails, left tails
    Vec tailScale;  // multiplies the raw tail sequence
    std::shared_ptr<const TailSide> right, left;  // left is the mirror image

    long window_size() const { return window.size(); }
    long size() const { return entries.rows(); }
    long tail_count() const { return long(powers.size()); }
    // values of every basis function at x (with tails, x must lie within the window span)
    Vec eval(double x) const;
};

AugmentedGram assemble_augmented(SymmetryGroup g, double delta, NodeWindow window, double alpha,
                                 const std::vector<int>& powers);

}  // namespace extremal
