#include "qeswell/potential.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <stdexcept>

namespace qeswell {

Potential make_potential(const QesPotential& qp) {
    Potential p;
    p.v = [qp](double r) { return qp.value(r); };
    p.parity_symmetric = qp.ansatz().parity_symmetric;
    p.label = "qes(M=" + std::to_string(qp.ansatz().terms.size()) + ")";
    if (!qp.singular()) {
        // same-sign ansatz is the exact nodeless ground shape
        const auto g = qp.ansatz();
        p.ground_density = [g](double r) {
            const double a = psi(g, r);
            return a * a;
        };
    }
    return p;
}

Potential make_potential(const SexticQes& s) {
    Potential p;
    p.v = [s](double r) { return s.value(r); };
    p.parity_symmetric = true;
    p.label = "sextic(alpha=" + std::to_string(s.alpha) + ")";
    p.ground_density = [s](double r) {
        const double a = s.psi(r);
        return a * a;
    };
    return p;
}

Potential tabulated_potential(std::vector<double> r, std::vector<double> v) {
    if (r.size() != v.size() || r.size() < 2)
        throw std::invalid_argument("tabulated potential needs matching r/v arrays, >= 2 samples");
    if (!std::is_sorted(r.begin(), r.end()))
        throw std::invalid_argument("tabulated potential needs ascending r");
    Potential p;
    p.label = "tabulated";
    const auto rs = std::make_shared<std::vector<double>>(std::move(r));
    const auto vs = std::make_shared<std::vector<double>>(std::move(v));
    p.v = [rs, vs](double x) {
        if (x < rs->front() || x > rs->back())
            throw std::invalid_argument("tabulated potential evaluated outside its range");
        const auto it = std::upper_bound(rs->begin(), rs->end(), x);
        const size_t i = std::min(rs->size() - 1, static_cast<size_t>(it - rs->begin()));
        if (i == 0) return vs->front();
        const double t = (x - (*rs)[i - 1]) / ((*rs)[i] - (*rs)[i - 1]);
        return (*vs)[i - 1] + t * ((*vs)[i] - (*vs)[i - 1]);
    };
    return p;
}

Potential smoothed_rect_potential(double a2, double b2, double c2, double ramp) {
    if (!(ramp > 0.0)) throw std::invalid_argument("ramp width must be positive");
    Potential p;
    p.parity_symmetric = a2 == c2;
    p.label = "smoothed_rect";
    p.v = [a2, b2, c2, ramp](double x) {
        const double s1 = 0.5 * (1.0 + std::tanh((x + 1.0) / ramp));
        const double s2 = 0.5 * (1.0 + std::tanh((x - 1.0) / ramp));
        return a2 + (b2 - a2) * s1 + (c2 - b2) * s2;
    };
    return p;
}

} // namespace qeswell
