#pragma once
#include <stdexcept>
#include <string>

namespace qeswell {

// psi vanished at the evaluation point; [lo, hi] brackets the sign change.
struct AtNodeError : std::runtime_error {
    double lo, hi;
    AtNodeError(double lo_, double hi_)
        : std::runtime_error("ansatz vanishes near r in [" + std::to_string(lo_) + ", " +
                             std::to_string(hi_) + "]"),
          lo(lo_), hi(hi_) {}
};

// requested energy gauge cannot be evaluated (e.g. psi(0) = 0 for the origin gauge)
struct GaugeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// potential evaluated to a non-finite value at a grid point
struct SingularPotentialError : std::runtime_error {
    double r;
    explicit SingularPotentialError(double r_)
        : std::runtime_error("potential is non-finite at r = " + std::to_string(r_)), r(r_) {}
};

// inverse iteration failed to converge
struct SolverFailure : std::runtime_error {
    double shift, residual;
    SolverFailure(double shift_, double residual_)
        : std::runtime_error("inverse iteration stalled at shift " + std::to_string(shift_) +
                             " (residual " + std::to_string(residual_) + ")"),
          shift(shift_), residual(residual_) {}
};

// excited-branch potential difference requested too close to a pole of psi''/psi
struct PoleProximityError : std::runtime_error {
    double r, node;
    PoleProximityError(double r_, double node_)
        : std::runtime_error("r = " + std::to_string(r_) + " is within 1e-9 of the node at " +
                             std::to_string(node_)),
          r(r_), node(node_) {}
};

// multiplet statistics requested where the spread/gap cut is degenerate
struct DegenerateCutError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// level counting detected a missed root; caller should rescan finer
struct ResolutionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// requested energy is not an eigenvalue, no normalizable solution exists
struct NonEigenvalueError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace qeswell
