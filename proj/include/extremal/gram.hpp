#pragma once
#include <string>

#include "extremal/density.hpp"
#include "extremal/numerics.hpp"

namespace extremal {

// basis nodes n/delta for nMin <= n <= nMax
struct NodeWindow {
    long nMin = 0;
    long nMax = 0;
    long size() const { return nMax - nMin + 1; }
    bool contains(long n) const { return nMin <= n && n <= nMax; }
    NodeWindow reflected() const { return {-nMax, -nMin}; }
};

struct WeightedGram {
    NodeWindow window;
    double delta = 1.0;
    SymmetryGroup group = SymmetryGroup::U;
    Mat entries;
    std::string warning;  // set when the smallest pivot is suspiciously small
};

// S_mn = integral of e_m e_n sin(2 pi x)/(2 pi x), exact
double sin_weight_entry(double delta, long m, long n);

// throws "window" if eta > 0 and 0 is not a node, "factorization" if not SPD
WeightedGram assemble_gram(SymmetryGroup g, double delta, NodeWindow window);

// smallest eigenvalue of the assembled matrix (diagnostics and tests)
double gram_min_eig(const WeightedGram& G);

// Test hook: adds `shift` to S_mn (and S_nm) for the given pair until cleared.
// Used to check that the verification suite notices a corrupted entry.
void corrupt_sin_weight_for_testing(long m, long n, double shift);
void clear_sin_weight_corruption();

}  // namespace extremal
