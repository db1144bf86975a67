#pragma once
#include <utility>
#include <vector>

namespace qeswell {

// piecewise-constant double well on (-3, 3), Dirichlet walls:
// height a2 on (-3,-1), barrier b2 on (-1,1), height c2 on (1,3)
struct RectDoubleWell {
    double a2 = 0.0, b2 = 0.0, c2 = 0.0;
};

// # eigenvalues strictly below E (zeros of the left IVP solution, exact transfer steps)
int rdw_count_below(const RectDoubleWell& w, double E);

// n lowest eigenvalues by per-index counting bisection (relative width 1e-13);
// immune to near-degenerate doublets — no root finder to miss a double root
std::vector<double> rdw_levels(const RectDoubleWell& w, int n);

// isolated-well references: E_p = a2 + ((p+1) pi/2)^2 and the same over c2
std::pair<std::vector<double>, std::vector<double>> rdw_approx(const RectDoubleWell& w,
                                                               int per_side);

struct RdwWave {
    double energy = 0.0;
    std::vector<double> r, psi;          // n_samples points on [-3, 3], int psi^2 dr = 1
    double weight_left = 0.0, weight_right = 0.0;  // sup|psi| over the two outer regions
};

// eigenfunction at `energy` (must be an eigenvalue to 1e-9, else NonEigenvalueError);
// symmetric wells are built parity-pure from the half problem, asymmetric ones by
// bidirectional shooting matched at x = 0. When a symmetric doublet is degenerate to
// fp resolution both parities match the energy window; level_index (if >= 0) then
// picks the member by the alternating-parity rule.
RdwWave rdw_wavefunction(const RectDoubleWell& w, double energy, int n_samples = 2001,
                         int level_index = -1);

} // namespace qeswell
