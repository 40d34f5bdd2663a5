#pragma once
#include <memory>
#include <string>
#include <vector>

#include "extremal/farfield.hpp"

namespace extremal {

enum class Route { variational, kernel, debranges, sequence };
std::string route_name(Route r);

struct ExtremalSolution {
    double lambda0 = 0.0;  // = aValue^{1/(2k)}
    double aValue = 0.0;
    int k = 1;
    Route route = Route::variational;
    long nodes = 0;          // window size (or 2N for the sequence oracle)
    double residual = 0.0;   // scaled eigen residual, or |f| at the root
    bool tangential = false; // kernel/determinant root found without sign change
    Vec coeffs;              // window node coefficients, v^T G v = 1 over the full basis
    Vec tailCoeffs;          // far-field coefficients (same normalization)
    double numeratorNorm = 0.0;  // |(x - alpha)^k f|^2 for the normalized f
    std::shared_ptr<const AugmentedGram> basis;
    std::vector<std::string> warnings;
};

}  // namespace extremal
