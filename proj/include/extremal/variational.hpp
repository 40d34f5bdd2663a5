#pragma once
#include <optional>
#include <vector>

#include "extremal/solution.hpp"

namespace extremal {

struct ProblemSpec {
    SymmetryGroup group = SymmetryGroup::U;
    double delta = 1.0;
    double alpha = 0.0;
    int k = 1;
    std::optional<NodeWindow> window;  // default_window() when empty
    double tol = 1e-12;
    int tails = 4;  // far-field functions per side; 0 gives the bare window
};

// all n with n/delta in [min(0,alpha) - L, max(0,alpha) + L], L = 12/delta + 4
NodeWindow default_window(double delta, double alpha);
// `nodes` consecutive nodes around the midpoint of 0 and alpha
NodeWindow centered_window(double delta, double alpha, long nodes);

// rows l = 1..k: C_ln = (-1)^n (n/delta - alpha)^{k-l}, 0^0 = 1
Mat moment_constraints(double delta, double alpha, int k, NodeWindow window);

ExtremalSolution variational_value(const ProblemSpec& p);

// f(x) for the normalized extremizer carried by sol
std::vector<double> extremizer_samples(const ExtremalSolution& sol, const std::vector<double>& xs);

// sqrt(A) for U, Sp, SO(even); min(sqrt(A), |alpha|) for O, SO(odd)
double theorem1_bound(SymmetryGroup g, double delta, double alpha);

}  // namespace extremal
