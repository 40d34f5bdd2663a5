#include "extremal/pw_core.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "extremal/errors.hpp"

namespace extremal {

using std::numbers::pi;

double sinc(double t) {
    if (std::abs(t) < 0x1p-26) return 1.0 - (pi * t) * (pi * t) / 6.0;
    return std::sin(pi * t) / (pi * t);
}

double sinc_node(double delta, long n, double x) { return sinc(delta * x - double(n)); }

cplx pw_kernel(double delta, cplx w, cplx z) {
    const cplx u = z - std::conj(w);
    if (std::abs(u) < 0x1p-26) return delta - pi * pi * delta * delta * delta * u * u / 6.0;
    return std::sin(pi * delta * u) / (pi * u);
}

cplx PwStructure::A(cplx z) const { return std::cos(pi * delta * z); }
cplx PwStructure::B(cplx z) const { return std::sin(pi * delta * z); }
cplx PwStructure::C(cplx z) const { return std::tan(pi * delta * z); }
double PwStructure::dA(double x) const { return -pi * delta * std::sin(pi * delta * x); }

double PwStructure::a_zero(long n) const {
    if (n == 0) throw Error("domain", "A-zeros are indexed by nonzero integers");
    const double m = std::abs(double(n)) - 0.5;
    return (n > 0 ? m : -m) / delta;
}

double PwStructure::c_coeff() const { return pi * delta; }

cplx c_series_partial(double delta, cplx z, long M) {
    const double c = pi * delta;
    cplx sum = 0.0;
    // sum backwards so the small tail terms accumulate first
    for (long m = M; m >= 1; --m) {
        const double xi = (m - 0.5) / delta;
        if (std::abs(z - xi) < 1e-9 || std::abs(z + xi) < 1e-9) {
            std::ostringstream os;
            os << "c-series argument within 1e-9 of the A-zero " << xi << " (m=" << m << ")";
            throw Error("pole", os.str());
        }
        sum += 2.0 * z / (c * (xi * xi - z * z));
    }
    return sum;
}

}  // namespace extremal
