#pragma once
#include <functional>
#include <string>
#include <vector>

namespace extremal {

struct CriterionReport {
    std::string id;  // "1".."11", or "gram-oracle"
    std::string title;
    bool pass = false;
    std::string detail;
    double seconds = 0.0;
};

enum class VerifyLevel { quick, full };

struct VerifyOptions {
    int threads = 0;          // sweep parallelism, 0: EXTREMAL_THREADS or hardware
    std::string figureDir;    // when set, the regeneration check leaves CSV and SVG here
};

// ids run at a level, in order; the Gram oracle comes first
std::vector<std::string> verify_ids(VerifyLevel level);

// throws Error("usage") for an unknown id
CriterionReport run_criterion(const std::string& id, const VerifyOptions& opt = {});

// runs every id of the level, handing each report to `sink` as it completes
std::vector<CriterionReport> run_verify(VerifyLevel level, const VerifyOptions& opt,
                                        const std::function<void(const CriterionReport&)>& sink);

std::string format_report(const CriterionReport& r);

// S_mn by adaptive quadrature of the defining integral over [-T, T]; the truncated
// tail is oscillatory and below 1e-10 for T = 400
double sin_weight_quadrature(double delta, long m, long n, double T = 400.0);

}  // namespace extremal
