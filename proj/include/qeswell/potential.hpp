#pragma once
#include "qeswell/qes_inverse.hpp"

#include <functional>
#include <string>
#include <vector>

namespace qeswell {

// evaluable 1D potential handed to the grid solver and the scan drivers
struct Potential {
    std::function<double(double)> v;
    bool parity_symmetric = false;
    std::string label;
    // exact (unnormalized) ground-state density when the family provides one;
    // empty otherwise — degenerate-doublet argmax tracking needs the exact density,
    // fp eigenvectors of a split ~1e-13 doublet are arbitrary mixtures
    std::function<double(double)> ground_density;
};

Potential make_potential(const QesPotential& qp);
Potential make_potential(const SexticQes& s);

// linear interpolation between samples; evaluation outside [r.front(), r.back()] throws
Potential tabulated_potential(std::vector<double> r, std::vector<double> v);

// double rectangular well with sigmoid ramps of width `ramp` at the internal steps:
// value a2 left of -1, b2 between, c2 right of +1, continued flat outside
Potential smoothed_rect_potential(double a2, double b2, double c2, double ramp = 0.01);

} // namespace qeswell
