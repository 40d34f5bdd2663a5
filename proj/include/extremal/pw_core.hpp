#pragma once
#include <complex>

namespace extremal {

using cplx = std::complex<double>;

// sin(pi t)/(pi t), with the removable point handled
double sinc(double t);

// e_n(x) = sinc(delta*x - n); orthogonal, squared norm 1/delta
double sinc_node(double delta, long n, double x);

// reproducing kernel of the Paley-Wiener space of type pi*delta
cplx pw_kernel(double delta, cplx w, cplx z);

// companion functions for E(z) = exp(-i pi delta z)
struct PwStructure {
    double delta;
    cplx A(cplx z) const;  // cos(pi delta z)
    cplx B(cplx z) const;  // sin(pi delta z)
    cplx C(cplx z) const;  // tan(pi delta z)
    double dA(double x) const;
    // A-zeros: xi_n = sign(n)(|n| - 1/2)/delta, n != 0
    double a_zero(long n) const;
    // B-zeros: eta_n = n/delta
    double b_zero(long n) const { return n / delta; }
    double c_coeff() const;  // -A'(xi_n)/B(xi_n), constant pi*delta
};

// partial sum sum_{m<=M} 2z / (c_m (xi_m^2 - z^2)); throws "pole" near a zero of A
cplx c_series_partial(double delta, cplx z, long M);

}  // namespace extremal
