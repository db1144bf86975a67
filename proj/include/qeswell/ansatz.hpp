#pragma once
#include <vector>

namespace qeswell {

struct GaussianTerm {
    double center = 0.0;
    double width = 1.0;   // exponent coefficient omega in exp(-omega (r-c)^2), > 0
    double weight = 1.0;  // nonzero
};

// psi(r) = sum_j weight_j * exp(-width_j (r - center_j)^2)
struct GaussianSuperposition {
    std::vector<GaussianTerm> terms;
    bool parity_symmetric = false;  // term multiset invariant under r -> -r
};

// validates terms (finite, width > 0, weight != 0) and tags parity
GaussianSuperposition make_superposition(std::vector<GaussianTerm> terms);

// symmetric center layout used by the equidistant families (exact fp mirror pairs)
std::vector<double> equidistant_centers(int M, double spacing);

// M unit-weight, unit-width terms on the symmetric center set:
// odd M -> {0, ±s, ±2s, ...}, even M -> {±s, ±3s, ...} (the origin stays center-free)
GaussianSuperposition equidistant_ansatz(int M, double spacing, double width = 1.0);

// same center layout with per-center signs (left to right), |pattern| == M
GaussianSuperposition sign_pattern_ansatz(int M, const std::vector<int>& pattern,
                                          double spacing, double width = 1.0);

// one shift-stabilized evaluation pass:
//   psi = sign * exp(log_magnitude), dlog = psi'/psi, d2_ratio = psi''/psi
struct LogEval {
    double log_magnitude;
    int sign;
    double dlog;
    double d2_ratio;
};

// throws AtNodeError (with a bracketing interval) when the weighted sum cancels exactly
LogEval evaluate(const GaussianSuperposition& g, double r);

// sign * exp(log_magnitude); underflows to signed 0 far out, never overflows
double psi(const GaussianSuperposition& g, double r);

// sign changes of psi on [lo, hi], scan step `resolution`, each bracket bisected
// down to width <= 1e-12; returns refined node positions, ascending
std::vector<double> find_nodes(const GaussianSuperposition& g, double lo, double hi,
                               double resolution);

} // namespace qeswell
