#include "qeswell/ansatz.hpp"
#include "qeswell/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

namespace qeswell {

namespace {

bool mirror_invariant(const std::vector<GaussianTerm>& terms) {
    auto key = [](const GaussianTerm& t) { return std::array<double, 3>{t.center, t.width, t.weight}; };
    std::vector<std::array<double, 3>> a, b;
    a.reserve(terms.size());
    b.reserve(terms.size());
    for (const auto& t : terms) {
        a.push_back(key(t));
        b.push_back({-t.center, t.width, t.weight});
    }
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    return a == b;
}

} // namespace

GaussianSuperposition make_superposition(std::vector<GaussianTerm> terms) {
    if (terms.empty()) throw std::invalid_argument("ansatz needs at least one term");
    for (const auto& t : terms) {
        if (!std::isfinite(t.center) || !std::isfinite(t.width) || !std::isfinite(t.weight))
            throw std::invalid_argument("ansatz term has a non-finite field");
        if (t.width <= 0.0) throw std::invalid_argument("ansatz width must be positive");
        if (t.weight == 0.0) throw std::invalid_argument("ansatz weight must be nonzero");
    }
    GaussianSuperposition g;
    g.terms = std::move(terms);
    g.parity_symmetric = mirror_invariant(g.terms);
    return g;
}

std::vector<double> equidistant_centers(int M, double spacing) {
    if (M < 1) throw std::invalid_argument("need M >= 1 centers");
    if (!(spacing > 0.0) && M > 1) throw std::invalid_argument("spacing must be positive");
    std::vector<double> c(M);
    // two families, matching the closed forms: odd M sits on integer multiples of the
    // spacing (0, s, 2s, ...), even M on odd multiples (s, 3s, ...) so the origin stays
    // center-free; mirror pairs are exact fp negations of each other
    for (int i = 0; i < M; ++i) {
        const int k = (M % 2 == 1) ? i - (M - 1) / 2   // ..., -1, 0, 1, ...
                                   : 2 * i - (M - 1);  // ..., -3, -1, 1, 3, ...
        const double mag = std::abs(k) * spacing;
        c[i] = k < 0 ? -mag : mag;
    }
    return c;
}

GaussianSuperposition equidistant_ansatz(int M, double spacing, double width) {
    std::vector<GaussianTerm> terms;
    for (double c : equidistant_centers(M, spacing)) terms.push_back({c, width, 1.0});
    return make_superposition(std::move(terms));
}

GaussianSuperposition sign_pattern_ansatz(int M, const std::vector<int>& pattern,
                                          double spacing, double width) {
    if (static_cast<int>(pattern.size()) != M)
        throw std::invalid_argument("sign pattern length must equal M");
    auto centers = equidistant_centers(M, spacing);
    std::vector<GaussianTerm> terms;
    for (int i = 0; i < M; ++i) {
        if (pattern[i] != 1 && pattern[i] != -1)
            throw std::invalid_argument("sign pattern entries must be +1 or -1");
        terms.push_back({centers[i], width, static_cast<double>(pattern[i])});
    }
    return make_superposition(std::move(terms));
}

LogEval evaluate(const GaussianSuperposition& g, double r) {
    const int M = static_cast<int>(g.terms.size());
    double smax = -HUGE_VAL;
    for (const auto& t : g.terms) {
        const double d = r - t.center;
        const double s = -t.width * d * d;
        if (s > smax) smax = s;
    }
    // shifted accumulation: every exponent is <= 0, so exp never overflows
    double den = 0.0, num1 = 0.0, num2 = 0.0;
    for (int j = 0; j < M; ++j) {
        const auto& t = g.terms[j];
        const double d = r - t.center;
        const double z = t.weight * std::exp(-t.width * d * d - smax);
        den += z;
        num1 += z * (-2.0 * t.width * d);
        num2 += z * (4.0 * t.width * t.width * d * d - 2.0 * t.width);
    }
    if (den == 0.0) {
        // exact cancellation: bracket the sign change around r
        double h = 1e-12 * std::max(1.0, std::fabs(r));
        for (int it = 0; it < 120; ++it, h *= 2.0) {
            const double pl = psi(g, r - h), pr = psi(g, r + h);
            if (pl != 0.0 && pr != 0.0 && std::signbit(pl) != std::signbit(pr))
                throw AtNodeError(r - h, r + h);
        }
        throw AtNodeError(r, r);
    }
    LogEval e;
    e.sign = den > 0.0 ? 1 : -1;
    e.log_magnitude = smax + std::log(std::fabs(den));
    e.dlog = num1 / den;
    e.d2_ratio = num2 / den;
    return e;
}

double psi(const GaussianSuperposition& g, double r) {
    double smax = -HUGE_VAL;
    for (const auto& t : g.terms) {
        const double d = r - t.center;
        smax = std::max(smax, -t.width * d * d);
    }
    double den = 0.0;
    for (const auto& t : g.terms) {
        const double d = r - t.center;
        den += t.weight * std::exp(-t.width * d * d - smax);
    }
    return den * std::exp(smax);  // exp(smax) <= 1, may underflow but never overflow
}

std::vector<double> find_nodes(const GaussianSuperposition& g, double lo, double hi,
                               double resolution) {
    if (!(hi > lo) || !(resolution > 0.0))
        throw std::invalid_argument("find_nodes needs lo < hi and a positive resolution");
    std::vector<double> nodes;
    const long n = std::lround(std::ceil((hi - lo) / resolution));
    double xprev = lo;
    double pprev = psi(g, lo);
    for (long i = 1; i <= n; ++i) {
        const double x = (i == n) ? hi : lo + static_cast<double>(i) * resolution;
        const double p = psi(g, x);
        if (p == 0.0) {  // landed exactly on a node
            nodes.push_back(x);
        } else if (pprev != 0.0 && std::signbit(p) != std::signbit(pprev)) {
            double a = xprev, b = x, pa = pprev;
            while (b - a > 1e-12) {
                const double m = 0.5 * (a + b);
                const double pm = psi(g, m);
                if (pm == 0.0) { a = b = m; break; }
                if (std::signbit(pm) == std::signbit(pa)) a = m; else b = m;
            }
            nodes.push_back(0.5 * (a + b));
        }
        xprev = x;
        pprev = p;
    }
    return nodes;
}

} // namespace qeswell
