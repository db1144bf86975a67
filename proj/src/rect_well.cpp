#include "qeswell/rect_well.hpp"
#include "qeswell/errors.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qeswell {

namespace {

struct State {
    double u, up;
};

// propagate (u, u') across a constant-height stretch of length d; returns the number
// of zeros of u on (0, d] (closed right end: a zero landing on a junction is counted
// exactly once, by the region to its left)
int prop(double E, double V, double d, State& s) {
    const double w = E - V;
    if (d <= 0.0) return 0;
    if (std::fabs(w) < 1e-12) {  // degenerate plateau: u is linear
        const double u1 = s.u + s.up * d;
        const int z = (s.u * u1 < 0.0 || (s.u != 0.0 && u1 == 0.0)) ? 1 : 0;
        s.u = u1;
        return z;
    }
    if (w > 0.0) {  // oscillatory: u = A sin(k x + phi)
        const double k = std::sqrt(w);
        const double c = std::cos(k * d), sn = std::sin(k * d);
        const double u1 = s.u * c + s.up * sn / k;
        const double up1 = -s.u * k * sn + s.up * c;
        const double phi = std::atan2(s.u * k, s.up);
        const int z = static_cast<int>(std::floor((phi + k * d) / M_PI) - std::floor(phi / M_PI));
        s.u = u1;
        s.up = up1;
        return z;
    }
    // evanescent: at most one sign change
    const double kap = std::sqrt(-w);
    const double kd = kap * d;
    double u1, up1;
    if (kd > 350.0) {
        // cosh/sinh would overflow; the subdominant mode is e^{-2kd} < e^{-700} down,
        // so keep only the dominant one, dropping a positive overall factor e^{kd}
        // (zero counts and normalized shapes are scale-invariant)
        const double a = 0.5 * (s.u + s.up / kap);
        const double b = 0.5 * (s.u - s.up / kap);
        if (a != 0.0) {
            u1 = a;
            up1 = kap * a;
        } else {
            u1 = b;
            up1 = -kap * b;
        }
    } else {
        const double ch = std::cosh(kd), sh = std::sinh(kd);
        u1 = s.u * ch + s.up * sh / kap;
        up1 = s.u * kap * sh + s.up * ch;
    }
    const int z = (s.u * u1 < 0.0 || (s.u != 0.0 && u1 == 0.0)) ? 1 : 0;
    s.u = u1;
    s.up = up1;
    return z;
}

void renorm(State& s) {
    const double m = std::max(std::fabs(s.u), std::fabs(s.up));
    if (m > 1e250) {
        s.u /= m;
        s.up /= m;
    }
}

int count_zeros_left_ivp(const RectDoubleWell& w, double E) {
    State s{0.0, 1.0};
    int z = 0;
    z += prop(E, w.a2, 2.0, s);
    renorm(s);
    z += prop(E, w.b2, 2.0, s);
    renorm(s);
    z += prop(E, w.c2, 2.0, s);
    return z;
}

// half problem on [0, 3] for symmetric wells; even ICs (1,0), odd (0,1) at the center
int count_zeros_half(const RectDoubleWell& w, double E, bool even) {
    State s{even ? 1.0 : 0.0, even ? 0.0 : 1.0};
    int z = 0;
    z += prop(E, w.b2, 1.0, s);
    renorm(s);
    z += prop(E, w.c2, 2.0, s);
    return z;
}

template <class CountFn>
double bisect_index(double lo, double hi0, int lev, const CountFn& count) {
    double hi = hi0;
    int guard = 0;
    while (count(hi) <= lev) {
        hi = hi * 2.0 + 10.0;
        if (++guard > 80) throw ResolutionError("level bracket expansion failed");
    }
    for (int it = 0; it < 220; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (count(mid) >= lev + 1) hi = mid; else lo = mid;
        if (hi - lo < 1e-13 * std::max(1.0, std::fabs(hi))) break;
    }
    return 0.5 * (lo + hi);
}

double sample_left(const RectDoubleWell& w, double E, double x) {
    State s{0.0, 1.0};
    if (x <= -1.0) {
        prop(E, w.a2, x + 3.0, s);
    } else {
        prop(E, w.a2, 2.0, s);
        prop(E, w.b2, x + 1.0, s);
    }
    return s.u;
}

double sample_right(const RectDoubleWell& w, double E, double x) {
    // shoot inward from +3: flip coordinates, heights c2 then b2
    State s{0.0, 1.0};
    if (x >= 1.0) {
        prop(E, w.c2, 3.0 - x, s);
    } else {
        prop(E, w.c2, 2.0, s);
        prop(E, w.b2, 1.0 - x, s);
    }
    return s.u;
}

double sample_half(const RectDoubleWell& w, double E, bool even, double xabs) {
    State s{even ? 1.0 : 0.0, even ? 0.0 : 1.0};
    if (xabs <= 1.0) {
        prop(E, w.b2, xabs, s);
    } else {
        prop(E, w.b2, 1.0, s);
        prop(E, w.c2, xabs - 1.0, s);
    }
    return s.u;
}

} // namespace

int rdw_count_below(const RectDoubleWell& w, double E) { return count_zeros_left_ivp(w, E); }

std::vector<double> rdw_levels(const RectDoubleWell& w, int n) {
    if (n < 1) throw std::invalid_argument("need n >= 1 levels");
    std::vector<double> out;
    out.reserve(n);
    const double lo = std::min({w.a2, w.b2, w.c2}) - 1.0;
    const double hi0 = std::max({w.a2, w.b2, w.c2}) + 400.0;
    for (int lev = 0; lev < n; ++lev)
        out.push_back(
            bisect_index(lo, hi0, lev, [&](double E) { return count_zeros_left_ivp(w, E); }));
    return out;
}

std::pair<std::vector<double>, std::vector<double>> rdw_approx(const RectDoubleWell& w,
                                                               int per_side) {
    std::vector<double> left, right;
    for (int p = 0; p < per_side; ++p) {
        const double box = std::pow((p + 1) * M_PI / 2.0, 2);
        left.push_back(w.a2 + box);
        right.push_back(w.c2 + box);
    }
    return {left, right};
}

RdwWave rdw_wavefunction(const RectDoubleWell& w, double energy, int n_samples,
                         int level_index) {
    if (n_samples < 16) throw std::invalid_argument("need at least 16 samples");
    const double delta = 1e-9 * std::max(1.0, std::fabs(energy));
    if (count_zeros_left_ivp(w, energy + delta) - count_zeros_left_ivp(w, energy - delta) < 1)
        throw NonEigenvalueError("no eigenvalue within 1e-9 of the requested energy");

    RdwWave out;
    out.energy = energy;
    out.r.resize(n_samples);
    out.psi.resize(n_samples);
    for (int i = 0; i < n_samples; ++i)
        out.r[i] = -3.0 + 6.0 * i / (n_samples - 1);

    if (w.a2 == w.c2) {
        // parity-pure from the half problem; pick the sector that owns this eigenvalue
        const bool even_hit = count_zeros_half(w, energy + delta, true) >
                              count_zeros_half(w, energy - delta, true);
        const bool odd_hit = count_zeros_half(w, energy + delta, false) >
                             count_zeros_half(w, energy - delta, false);
        bool even = even_hit;
        if (even_hit && odd_hit && level_index >= 0) even = level_index % 2 == 0;
        for (int i = 0; i < n_samples; ++i) {
            const double x = out.r[i];
            const double v = sample_half(w, energy, even, std::fabs(x));
            out.psi[i] = (!even && x < 0.0) ? -v : v;
        }
    } else {
        const double uL = sample_left(w, energy, 0.0);
        const double uR = sample_right(w, energy, 0.0);
        // derivative matching via small offset (values can vanish at an odd-like state)
        const double eps = 1e-6;
        const double dL = (sample_left(w, energy, eps) - sample_left(w, energy, -eps)) / (2 * eps);
        const double dR = (sample_right(w, energy, eps) - sample_right(w, energy, -eps)) / (2 * eps);
        double s;
        if (std::fabs(uL) >= std::fabs(dL) && uR != 0.0) s = uL / uR;
        else if (dR != 0.0) s = dL / dR;
        else s = uL / uR;
        for (int i = 0; i < n_samples; ++i) {
            const double x = out.r[i];
            out.psi[i] = x < 0.0 ? sample_left(w, energy, x) : s * sample_right(w, energy, x);
        }
    }

    // trapezoid normalization, then the positive-leftmost-extremum sign convention
    const double h = 6.0 / (n_samples - 1);
    double nrm = 0.0;
    for (int i = 0; i < n_samples; ++i) {
        const double f = out.psi[i] * out.psi[i];
        nrm += (i == 0 || i == n_samples - 1) ? 0.5 * f : f;
    }
    nrm = std::sqrt(nrm * h);
    double sup = 0.0;
    for (double v : out.psi) sup = std::max(sup, std::fabs(v));
    int sign = 1;
    for (int i = 1; i + 1 < n_samples; ++i) {
        if (std::fabs(out.psi[i]) <= 1e-13 * sup) continue;
        if ((out.psi[i] - out.psi[i - 1]) * (out.psi[i + 1] - out.psi[i]) <= 0.0) {
            sign = out.psi[i] > 0.0 ? 1 : -1;
            break;
        }
    }
    const double scale = sign / nrm;
    for (double& v : out.psi) v *= scale;
    for (int i = 0; i < n_samples; ++i) {
        const double a = std::fabs(out.psi[i]);
        if (out.r[i] < -1.0) out.weight_left = std::max(out.weight_left, a);
        if (out.r[i] > 1.0) out.weight_right = std::max(out.weight_right, a);
    }
    return out;
}

} // namespace qeswell
