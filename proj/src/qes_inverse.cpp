#include "qeswell/qes_inverse.hpp"
#include "qeswell/errors.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>

namespace qeswell {

namespace {

// golden-section refinement of a bracketed minimum down to interval width tol
double golden_min(const std::function<double(double)>& f, double a, double b, double tol,
                  double* fmin = nullptr) {
    constexpr double invphi = 0.6180339887498949;
    double x1 = b - invphi * (b - a), x2 = a + invphi * (b - a);
    double f1 = f(x1), f2 = f(x2);
    while (b - a > tol) {
        if (f1 <= f2) {
            b = x2; x2 = x1; f2 = f1;
            x1 = b - invphi * (b - a); f1 = f(x1);
        } else {
            a = x1; x1 = x2; f1 = f2;
            x2 = a + invphi * (b - a); f2 = f(x2);
        }
    }
    const double xm = 0.5 * (a + b);
    if (fmin) *fmin = f(xm);
    return xm;
}

double d2_ratio_or_inf(const GaussianSuperposition& g, double r) {
    try {
        return evaluate(g, r).d2_ratio;
    } catch (const AtNodeError&) {
        return std::numeric_limits<double>::infinity();
    }
}

// deepest genuine well bottom of psi''/psi: scanned local minima refined by golden
// section, rejecting candidates adjacent to poles (nodes of psi)
double deepest_bottom(const GaussianSuperposition& g, const std::vector<double>& nodes,
                      double lo, double hi) {
    constexpr int n = 2048;
    const double h = (hi - lo) / n;
    double keepout = 0.0;
    if (!nodes.empty()) {
        double cmin = g.terms.front().center, cmax = cmin;
        for (const auto& t : g.terms) {
            cmin = std::min(cmin, t.center);
            cmax = std::max(cmax, t.center);
        }
        const int M = static_cast<int>(g.terms.size());
        keepout = M > 1 ? 0.25 * (cmax - cmin) / (M - 1) : 4.0 * h;
    }
    auto near_node = [&](double r) {
        for (double p : nodes)
            if (std::fabs(r - p) < keepout) return true;
        return false;
    };
    std::vector<double> v(n + 1);
    for (int i = 0; i <= n; ++i) v[i] = d2_ratio_or_inf(g, lo + i * h);
    double best = std::numeric_limits<double>::infinity();
    auto f = [&](double r) { return d2_ratio_or_inf(g, r); };
    for (int i = 1; i < n; ++i) {
        if (!(v[i] < v[i - 1] && v[i] < v[i + 1])) continue;
        const double x = lo + i * h;
        if (near_node(x)) continue;
        double fm;
        golden_min(f, x - h, x + h, 1e-10, &fm);
        best = std::min(best, fm);
    }
    if (!std::isfinite(best)) {  // no interior local minimum: fall back to scan minimum
        for (int i = 0; i <= n; ++i)
            if (!near_node(lo + i * h)) best = std::min(best, v[i]);
    }
    return best;
}

void support_window(const GaussianSuperposition& g, double& lo, double& hi) {
    double cmin = g.terms.front().center, cmax = cmin, wmin = g.terms.front().width;
    for (const auto& t : g.terms) {
        cmin = std::min(cmin, t.center);
        cmax = std::max(cmax, t.center);
        wmin = std::min(wmin, t.width);
    }
    const double pad = 4.0 / std::sqrt(wmin);
    lo = cmin - pad;
    hi = cmax + pad;
}

} // namespace

double QesPotential::value(double r) const { return ground_energy_ + evaluate(ansatz_, r).d2_ratio; }
double QesPotential::value_rel(double r) const { return evaluate(ansatz_, r).d2_ratio; }

QesPotential reconstruct(const GaussianSuperposition& g, const EnergyGauge& gauge) {
    bool mixed = false;
    for (const auto& t : g.terms) mixed |= std::signbit(t.weight) != std::signbit(g.terms[0].weight);
    double e0 = 0.0;
    switch (gauge.mode) {
        case EnergyGauge::Mode::raw:
            break;
        case EnergyGauge::Mode::origin: {
            try {
                e0 = -evaluate(g, 0.0).d2_ratio;
            } catch (const AtNodeError&) {
                throw GaugeError("origin gauge undefined: psi(0) = 0");
            }
            break;
        }
        case EnergyGauge::Mode::min_zero: {
            if (!(gauge.hi > gauge.lo))
                throw std::invalid_argument("min_zero gauge needs a nonempty interval");
            constexpr int n = 2048;
            const double h = (gauge.hi - gauge.lo) / n;
            double best = std::numeric_limits<double>::infinity();
            int besti = 0;
            std::vector<double> v(n + 1);
            for (int i = 0; i <= n; ++i) {
                v[i] = d2_ratio_or_inf(g, gauge.lo + i * h);
                if (v[i] < best) { best = v[i]; besti = i; }
            }
            auto f = [&](double r) { return d2_ratio_or_inf(g, r); };
            const double a = gauge.lo + std::max(0, besti - 1) * h;
            const double b = gauge.lo + std::min(n, besti + 1) * h;
            double fm;
            golden_min(f, a, b, 1e-10, &fm);
            e0 = -std::min(best, fm);
            break;
        }
    }
    return QesPotential(g, e0, mixed);
}

double closed_form_m2(double a, double r) {
    return -2.0 + 4.0 * a * a + 4.0 * r * r - 8.0 * a * r * std::tanh(2.0 * a * r);
}

double m3_harmonic_shifted(double b, double r) {
    if (b == 0.0) return 0.0;
    const double t = 2.0 * b * r;
    const double g = std::fabs(t) - b * b;
    if (g > 600.0) return 4.0 * b * b - 8.0 * b * std::fabs(r);  // central term negligible
    const double P = std::exp(g);
    const double Q = std::exp(-std::fabs(t) - b * b);
    const double B = P + Q + 1.0;
    const double odd = (t == 0.0) ? 0.0 : 8.0 * b * r * std::copysign(1.0, t) * (P - Q);
    return (4.0 * b * b * (P + Q) - odd) / B;
}

double closed_form_m3(double b, double r) {
    return -2.0 + 4.0 * r * r + m3_harmonic_shifted(b, r);
}

double closed_form_m4(double a, double r) {
    if (a == 0.0) return -2.0 + 4.0 * r * r;
    // F = cosh(2ar) + e^{-8a^2} cosh(6ar), rescaled by the dominant exponential
    const double T = 2.0 * std::fabs(a * r);
    const double L1 = T, L2 = 3.0 * T - 8.0 * a * a;
    const double Lm = std::max(L1, L2);
    const double e1 = std::exp(L1 - Lm), e2 = std::exp(L2 - Lm);
    const double u2 = std::exp(-2.0 * T), u6 = std::exp(-6.0 * T);
    const double F = e1 * (1.0 + u2) + e2 * (1.0 + u6);
    const double sg = (a * r >= 0.0) ? 1.0 : -1.0;
    const double Fp = sg * (2.0 * a * e1 * (1.0 - u2) + 6.0 * a * e2 * (1.0 - u6));
    const double Fpp = 4.0 * a * a * e1 * (1.0 + u2) + 36.0 * a * a * e2 * (1.0 + u6);
    return -2.0 + 4.0 * r * r - 4.0 * r * Fp / F + Fpp / F;
}

SexticQes sextic_qes(double alpha) {
    SexticQes s;
    s.alpha = alpha;
    s.A = alpha * alpha - 3.0;
    s.B = 2.0 * alpha;
    s.ground_energy = alpha;
    const double r3 = std::sqrt(3.0);
    s.shape = alpha >= r3    ? SexticQes::Shape::single_well
              : alpha >= -r3 ? SexticQes::Shape::double_well
                             : SexticQes::Shape::triple_well;
    return s;
}

double SexticQes::psi(double r) const {
    const double q = r * r + alpha;
    return std::exp(-0.25 * q * q);
}

TaylorM3 taylor_coeffs_m3(double b) {
    // Chebyshev-Lobatto interpolation of W(u) = closed form minus harmonic backbone,
    // as a function of u = r^2; endpoint derivatives at u = 0 give the coefficients
    constexpr int n = 17;
    constexpr double umax = 0.25;
    double fj[n];
    for (int j = 0; j < n; ++j) {
        const double x = std::cos(M_PI * j / (n - 1));
        const double u = (x + 1.0) * 0.5 * umax;
        fj[j] = m3_harmonic_shifted(b, std::sqrt(u));
    }
    double a[n];
    for (int k = 0; k < n; ++k) {
        double s = 0.5 * (fj[0] + fj[n - 1] * std::cos(M_PI * k));
        for (int j = 1; j < n - 1; ++j) s += fj[j] * std::cos(M_PI * j * k / (n - 1));
        a[k] = 2.0 * s / (n - 1);
    }
    a[0] *= 0.5;
    a[n - 1] *= 0.5;
    // T_k(-1) = (-1)^k, T_k'(-1) = (-1)^{k+1} k^2, T_k''(-1) = (-1)^k k^2(k^2-1)/3
    double g0 = 0.0, g1 = 0.0, g2 = 0.0;
    for (int k = 0; k < n; ++k) {
        const double sgn = (k % 2 == 0) ? 1.0 : -1.0;
        const double k2 = static_cast<double>(k) * k;
        g0 += a[k] * sgn;
        g1 += a[k] * -sgn * k2;
        g2 += a[k] * sgn * k2 * (k2 - 1.0) / 3.0;
    }
    const double s = 2.0 / umax;  // du/dx chain factor, inverted
    return {-2.0 + g0, 4.0 + g1 * s, 0.5 * g2 * s * s};
}

ExcitedDelta delta_excited(const QesPotential& base, const std::vector<int>& pattern, double r) {
    const auto& bt = base.ansatz().terms;
    if (pattern.size() != bt.size())
        throw std::invalid_argument("pattern length must match the base ansatz");
    std::vector<GaussianTerm> terms;
    for (size_t i = 0; i < bt.size(); ++i) {
        if (pattern[i] != 1 && pattern[i] != -1)
            throw std::invalid_argument("pattern entries must be +1 or -1");
        terms.push_back({bt[i].center, bt[i].width, pattern[i] * std::fabs(bt[i].weight)});
    }
    const auto exc = make_superposition(std::move(terms));

    double lo, hi;
    support_window(exc, lo, hi);
    ExcitedDelta out;
    out.poles = find_nodes(exc, lo, hi, (hi - lo) / 4096.0);
    for (double p : out.poles)
        if (std::fabs(r - p) < 1e-9) throw PoleProximityError(r, p);

    const double d2e = evaluate(exc, r).d2_ratio;
    const double d2b = base.value_rel(r);
    out.raw = d2e - d2b;

    const auto base_nodes = find_nodes(base.ansatz(), lo, hi, (hi - lo) / 4096.0);
    const double bot_exc = deepest_bottom(exc, out.poles, lo, hi);
    const double bot_base = deepest_bottom(base.ansatz(), base_nodes, lo, hi);
    out.aligned = (d2e - bot_exc) - (d2b - bot_base);
    return out;
}

} // namespace qeswell
