#pragma once
#include <array>
#include <string>
#include <string_view>

namespace extremal {

enum class SymmetryGroup { U, Sp, O, SOeven, SOodd };

inline constexpr std::array<SymmetryGroup, 5> kAllGroups = {
    SymmetryGroup::U, SymmetryGroup::Sp, SymmetryGroup::O, SymmetryGroup::SOeven,
    SymmetryGroup::SOodd};

// W_G = 1 + gamma*sin(2 pi x)/(2 pi x) + eta*delta_0
struct WeightSpec {
    int gamma;
    double eta;
};

WeightSpec weight_params(SymmetryGroup g);

// absolutely continuous part only; the point mass is data, never a value
double weight_ac(SymmetryGroup g, double x);

std::string group_name(SymmetryGroup g);
// throws Error("usage", ...) on anything but the five exact names
SymmetryGroup parse_group(std::string_view s);

}  // namespace extremal
