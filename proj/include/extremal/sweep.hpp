#pragma once
#include <extremal/density.hpp>
#include <extremal/solution.hpp>

#include <optional>
#include <string>
#include <vector>

namespace extremal {

enum class RouteChoice { automatic, variational, kernel, debranges };

// throws Error("usage") for anything but auto/variational/kernel/debranges
RouteChoice parse_route(const std::string& s);

struct ComputeRequest {
    SymmetryGroup group = SymmetryGroup::U;
    double delta = 1.0;
    double alpha = 0.0;
    int k = 1;
    RouteChoice route = RouteChoice::automatic;
    std::optional<long> nodes;  // variational window size
    double tol = 1e-12;
};

// auto: U -> closed kernel, O (k=1) -> closed kernel, k >= 2 -> variational (checked
// against the determinant route for U), otherwise numeric kernel
ExtremalSolution compute(const ComputeRequest& r);

struct SweepConfig {
    std::vector<SymmetryGroup> groups{kAllGroups.begin(), kAllGroups.end()};
    std::vector<double> deltas{1.0, 4.0 / 3.0, 1.5, 2.0};
    double alphaMin = 0.0;
    double alphaMax = 4.0;
    double alphaStep = 0.05;
    int k = 1;
    RouteChoice route = RouteChoice::automatic;
};

struct SweepRow {
    SymmetryGroup group = SymmetryGroup::U;
    double delta = 1.0;
    double alpha = 0.0;
    int k = 1;
    bool ok = false;
    double lambda0 = 0.0;
    double sqrtA = 0.0;
    double aValue = 0.0;
    std::string route;
    long nodes = 0;
    double residual = 0.0;
    std::string error;  // error code when !ok
    std::vector<std::string> warnings;
};

// alpha_i = alphaMin + i*alphaStep, inclusive of alphaMax up to rounding
std::vector<double> alpha_grid(double lo, double hi, double step);

// rows in (group, delta, alpha) order whatever the thread count; threads <= 0 means
// the hardware concurrency
std::vector<SweepRow> run_sweep(const SweepConfig& cfg, int threads);

// EXTREMAL_THREADS if set and positive, else the hardware concurrency
int sweep_threads_from_env();

std::string sweep_csv(const std::vector<SweepRow>& rows);
std::string sweep_json(const std::vector<SweepRow>& rows);
std::string sweep_svg(const std::vector<SweepRow>& rows);

}  // namespace extremal
