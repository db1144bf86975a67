#pragma once
#include "qeswell/ansatz.hpp"

#include <vector>

namespace qeswell {

// fixes the additive constant in V = E + psi''/psi
struct EnergyGauge {
    enum class Mode { raw, origin, min_zero };
    Mode mode = Mode::raw;
    double lo = 0.0, hi = 0.0;  // search interval for min_zero

    static EnergyGauge raw() { return {Mode::raw, 0.0, 0.0}; }
    static EnergyGauge origin() { return {Mode::origin, 0.0, 0.0}; }
    static EnergyGauge min_zero(double lo, double hi) { return {Mode::min_zero, lo, hi}; }
};

// potential with psi as exact ground-shape solution: V(r) = ground_energy + psi''/psi
class QesPotential {
public:
    QesPotential(GaussianSuperposition ansatz, double ground_energy, bool singular)
        : ansatz_(std::move(ansatz)), ground_energy_(ground_energy), singular_(singular) {}

    double ground_energy() const { return ground_energy_; }
    bool singular() const { return singular_; }
    const GaussianSuperposition& ansatz() const { return ansatz_; }

    double value(double r) const;      // E0 + psi''/psi
    double value_rel(double r) const;  // V - E0 = psi''/psi (no constant-offset roundoff)

private:
    GaussianSuperposition ansatz_;
    double ground_energy_;
    bool singular_;
};

// raw: E0 = 0; origin: V(0) = 0 (GaugeError if psi(0) = 0); min_zero: min V = 0 on [lo, hi]
QesPotential reconstruct(const GaussianSuperposition& g, const EnergyGauge& gauge);

// closed-form V - E for the unit-weight, unit-width two/three/four-center ansatzes;
// saturating tanh / shifted-exponential branches, valid for arbitrarily large |r|
double closed_form_m2(double a, double r);
double closed_form_m3(double b, double r);
double closed_form_m4(double a, double r);

// closed_form_m3(b, r) - (-2 + 4 r^2), evaluated cancellation-free; the harmonic
// backbone carries ~|V| while the well structure is O(e^{-b^2}), so subtracting it
// inside the formula (not after) is what keeps small Taylor coefficients extractable
double m3_harmonic_shifted(double b, double r);

// quartic-exponent family: psi = exp(-(r^2+alpha)^2/4), V = A r^2 + B r^4 + r^6
struct SexticQes {
    double alpha, A, B, ground_energy;
    enum class Shape { single_well, double_well, triple_well } shape;
    double value(double r) const { return r * r * (A + r * r * (B + r * r)); }
    double psi(double r) const;
};
SexticQes sextic_qes(double alpha);

// even Taylor coefficients of the three-center closed form about r = 0:
// V - E = c0 + c2 r^2 + c4 r^4 + ...
struct TaylorM3 {
    double c0, c2, c4;
};
TaylorM3 taylor_coeffs_m3(double b);

// potential difference between a sign-pattern excited branch and its all-positive base,
// raw-gauge and well-bottom-aligned, plus the pole locations of the excited branch
struct ExcitedDelta {
    double raw;
    double aligned;
    std::vector<double> poles;
};
ExcitedDelta delta_excited(const QesPotential& base, const std::vector<int>& pattern, double r);

} // namespace qeswell
