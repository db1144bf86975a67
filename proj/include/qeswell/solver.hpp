#pragma once
#include "qeswell/potential.hpp"

#include <vector>

namespace qeswell {

// N interior points of [-L, L], Dirichlet walls at both ends, h = 2L/(N+1);
// points are generated as exact fp mirror pairs so parity survives rounding
struct Grid {
    double half_width = 0.0;
    int n_points = 0;

    double step() const { return 2.0 * half_width / (n_points + 1); }
    double point(int i) const { return (i + 1 - 0.5 * (n_points + 1)) * step(); }
};

// symmetric tridiagonal H = -d^2/dr^2 + V (units hbar = 1, 2m = 1)
struct Tridiag {
    std::vector<double> d;  // size N
    std::vector<double> e;  // size N-1
};

// throws SingularPotentialError when V is non-finite at a grid point; for
// parity-symmetric potentials the diagonal is sampled on a half grid and mirrored,
// making it palindromic bitwise (fp summation order is not mirror-invariant)
Tridiag discretize(const Potential& V, const Grid& g);

struct Spectrum {
    std::vector<double> energies;                    // ascending
    std::vector<std::vector<double>> eigenfunctions; // sum psi_i^2 h = 1; empty unless requested
    std::vector<int> node_counts;
    std::vector<double> residuals;                   // max_i |(H psi)_i - E psi_i|
};

// k lowest levels by Sturm-count bisection (absolute 1e-12 * max(1,|E|)), vectors by
// shifted inverse iteration with reorthogonalization inside near-degenerate clusters.
// Palindromic operators are split into even/odd half problems first: quasi-degenerate
// doublet members then live in different sectors and come out exactly parity-pure.
// Requires k <= N/4. Throws SolverFailure if inverse iteration stalls (50 sweeps).
Spectrum eigen_lowest(const Tridiag& T, const Grid& g, int k, bool want_vectors = true);

// Richardson pairing: solve at h and exactly h/2 (N -> 2N+1), combine
struct ConvergenceReport {
    Spectrum fine;                      // the h/2 solve
    std::vector<double> coarse;         // energies at h
    std::vector<double> extrapolated;   // (4 E_fine - E_coarse) / 3
    std::vector<double> error_estimate; // |E_fine - E_coarse| / 3
    std::vector<bool> flagged;          // error_estimate > tol
};
ConvergenceReport convergence_check(const Potential& V, const Grid& g, int k,
                                    double tol = 1e-6, bool want_vectors = true);

// default box size for a well family: max(3 * outermost, outermost + 4)
double suggested_half_width(double outermost_center);

} // namespace qeswell
