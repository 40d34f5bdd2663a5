#include "extremal/density.hpp"

#include <cmath>
#include <numbers>

#include "extremal/errors.hpp"

namespace extremal {

WeightSpec weight_params(SymmetryGroup g) {
    switch (g) {
        case SymmetryGroup::U: return {0, 0.0};
        case SymmetryGroup::Sp: return {-1, 0.0};
        case SymmetryGroup::O: return {0, 0.5};
        case SymmetryGroup::SOeven: return {1, 0.0};
        case SymmetryGroup::SOodd: return {-1, 1.0};
    }
    return {0, 0.0};
}

double weight_ac(SymmetryGroup g, double x) {
    const int gamma = weight_params(g).gamma;
    if (gamma == 0) return 1.0;
    const double t = 2.0 * std::numbers::pi * x;
    // removable singularity: 1 - t^2/6 is exact to double precision here
    const double s = std::abs(x) < 0x1p-26 ? 1.0 - t * t / 6.0 : std::sin(t) / t;
    return 1.0 + gamma * s;
}

std::string group_name(SymmetryGroup g) {
    switch (g) {
        case SymmetryGroup::U: return "U";
        case SymmetryGroup::Sp: return "Sp";
        case SymmetryGroup::O: return "O";
        case SymmetryGroup::SOeven: return "SO(even)";
        case SymmetryGroup::SOodd: return "SO(odd)";
    }
    return "?";
}

SymmetryGroup parse_group(std::string_view s) {
    for (auto g : kAllGroups)
        if (s == group_name(g)) return g;
    throw Error("usage", "unknown symmetry group '" + std::string(s) +
                             "' (expected U, Sp, O, SO(even), SO(odd))");
}

}  // namespace extremal
