#include "qeswell/solver.hpp"
#include "qeswell/errors.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <random>
#include <stdexcept>

namespace qeswell {

namespace {

struct Sector {
    std::vector<double> d, e;
};

double off_norm_inf(const Sector& s) {
    double m = 0.0;
    const int n = static_cast<int>(s.d.size());
    for (int i = 0; i < n; ++i) {
        double row = std::fabs(s.d[i]);
        if (i > 0) row += std::fabs(s.e[i - 1]);
        if (i + 1 < n) row += std::fabs(s.e[i]);
        m = std::max(m, row);
    }
    return m;
}

// #eigenvalues below sigma via the LDL^T sturm sequence
int count_below(const Sector& s, const std::vector<double>& e2, double sigma, double pivmin) {
    int cnt = 0;
    double q = s.d[0] - sigma;
    if (std::fabs(q) < pivmin) q = -pivmin;
    if (q < 0.0) ++cnt;
    const int n = static_cast<int>(s.d.size());
    for (int i = 1; i < n; ++i) {
        q = s.d[i] - sigma - e2[i - 1] / q;
        if (std::fabs(q) < pivmin) q = -pivmin;
        if (q < 0.0) ++cnt;
    }
    return cnt;
}

double bisect_level(const Sector& s, const std::vector<double>& e2, double pivmin, int j) {
    double lo = s.d[0], hi = s.d[0];
    const int n = static_cast<int>(s.d.size());
    for (int i = 0; i < n; ++i) {
        double r = 0.0;
        if (i > 0) r += std::fabs(s.e[i - 1]);
        if (i + 1 < n) r += std::fabs(s.e[i]);
        lo = std::min(lo, s.d[i] - r);
        hi = std::max(hi, s.d[i] + r);
    }
    for (int it = 0; it < 220; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (hi - lo < 1e-12 * std::max(1.0, std::fabs(mid))) break;
        if (count_below(s, e2, mid, pivmin) >= j + 1) hi = mid; else lo = mid;
    }
    return 0.5 * (lo + hi);
}

// partial-pivot LU solve of (T - sigma) x = b, in place (gttrf/gtts2 scheme)
void shifted_solve(const Sector& s, double sigma, std::vector<double>& x, double pivmin) {
    const int n = static_cast<int>(s.d.size());
    std::vector<double> dl(s.e), dd(n), du(s.e), du2(std::max(0, n - 2), 0.0), mult(std::max(0, n - 1));
    std::vector<char> swapped(std::max(0, n - 1), 0);
    for (int i = 0; i < n; ++i) dd[i] = s.d[i] - sigma;
    auto guard = [pivmin](double p) {
        return std::fabs(p) < pivmin ? (p >= 0.0 ? pivmin : -pivmin) : p;
    };
    for (int i = 0; i < n - 1; ++i) {
        if (std::fabs(dd[i]) >= std::fabs(dl[i])) {
            dd[i] = guard(dd[i]);
            const double fact = dl[i] / dd[i];
            mult[i] = fact;
            dd[i + 1] -= fact * du[i];
            if (i < n - 2) du2[i] = 0.0;
        } else {  // swap rows i, i+1
            swapped[i] = 1;
            const double fact = dd[i] / dl[i];
            mult[i] = fact;
            dd[i] = dl[i];
            const double tmp = du[i];
            du[i] = dd[i + 1];
            dd[i + 1] = tmp - fact * dd[i + 1];
            if (i < n - 2) {
                du2[i] = du[i + 1];
                du[i + 1] = -fact * du[i + 1];
            }
        }
    }
    dd[n - 1] = guard(dd[n - 1]);
    for (int i = 0; i < n - 1; ++i) {
        if (swapped[i]) std::swap(x[i], x[i + 1]);
        x[i + 1] -= mult[i] * x[i];
    }
    x[n - 1] /= dd[n - 1];
    if (n >= 2) x[n - 2] = (x[n - 2] - du[n - 2] * x[n - 1]) / dd[n - 2];
    for (int i = n - 3; i >= 0; --i)
        x[i] = (x[i] - du[i] * x[i + 1] - du2[i] * x[i + 2]) / dd[i];
}

double norm2(const std::vector<double>& x) {
    double s = 0.0;
    for (double v : x) s += v * v;
    return std::sqrt(s);
}

void axpy(std::vector<double>& y, double a, const std::vector<double>& x) {
    for (size_t i = 0; i < y.size(); ++i) y[i] += a * x[i];
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double residual_inf(const Sector& s, double lambda, const std::vector<double>& x) {
    const int n = static_cast<int>(s.d.size());
    double m = 0.0;
    for (int i = 0; i < n; ++i) {
        double r = (s.d[i] - lambda) * x[i];
        if (i > 0) r += s.e[i - 1] * x[i - 1];
        if (i + 1 < n) r += s.e[i] * x[i + 1];
        m = std::max(m, std::fabs(r));
    }
    return m;
}

std::vector<double> inverse_iterate(const Sector& s, double lambda, double pivmin, double tnorm,
                                    unsigned long long seed,
                                    const std::vector<const std::vector<double>*>& against) {
    const int n = static_cast<int>(s.d.size());
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<double> x(n);
    for (double& v : x) v = u(rng);
    const double tol = 1e3 * DBL_EPSILON * tnorm + 1e-11 * std::max(1.0, std::fabs(lambda));
    double resid = HUGE_VAL;
    for (int it = 0; it < 50; ++it) {
        shifted_solve(s, lambda, x, pivmin);
        for (const auto* p : against) axpy(x, -dot(x, *p), *p);
        const double nn = norm2(x);
        if (nn == 0.0) {  // start vector was orthogonal to the target space; reseed
            std::mt19937_64 rng2(seed + 0x9e3779b97f4a7c15ULL * (it + 1));
            for (double& v : x) v = u(rng2);
            continue;
        }
        for (double& v : x) v /= nn;
        resid = residual_inf(s, lambda, x);
        if (resid <= tol) return x;
    }
    throw SolverFailure(lambda, resid);
}

struct SectorLevel {
    double lambda;
    int sector;      // 0 = whole problem, 1 = even, 2 = odd
    int index_in_sector;
};

} // namespace

double suggested_half_width(double outermost_center) {
    const double a = std::fabs(outermost_center);
    return std::max(3.0 * a, a + 4.0);
}

Tridiag discretize(const Potential& V, const Grid& g) {
    const int n = g.n_points;
    if (n < 1 || !(g.half_width > 0.0))
        throw std::invalid_argument("grid needs n_points >= 1 and half_width > 0");
    const double h = g.step();
    const double kin = 2.0 / (h * h);
    Tridiag T;
    T.d.assign(n, 0.0);
    T.e.assign(n - 1, -1.0 / (h * h));
    auto sample = [&](int i) {
        const double r = g.point(i);
        const double v = V.v(r);
        if (!std::isfinite(v)) throw SingularPotentialError(r);
        return v;
    };
    if (V.parity_symmetric) {
        for (int i = 0; i < n / 2; ++i) {
            const double v = sample(i);
            T.d[i] = kin + v;
            T.d[n - 1 - i] = kin + v;  // mirrored, not re-evaluated: keeps d palindromic bitwise
        }
        if (n % 2 == 1) T.d[n / 2] = kin + sample(n / 2);
    } else {
        for (int i = 0; i < n; ++i) T.d[i] = kin + sample(i);
    }
    return T;
}

Spectrum eigen_lowest(const Tridiag& T, const Grid& g, int k, bool want_vectors) {
    const int n = static_cast<int>(T.d.size());
    if (n < 4 || static_cast<int>(T.e.size()) != n - 1)
        throw std::invalid_argument("malformed tridiagonal operator");
    if (k < 1 || k > n / 4)
        throw std::invalid_argument("need 1 <= k <= N/4 requested levels");

    bool palindromic = true;
    for (int i = 0; i < n / 2 && palindromic; ++i) palindromic = T.d[i] == T.d[n - 1 - i];
    bool uniform = true;
    for (int i = 1; i < n - 1 && uniform; ++i) uniform = T.e[i] == T.e[0];
    const bool fold = palindromic && uniform && n >= 8;

    std::vector<Sector> sectors;
    if (fold) {
        const double t = T.e[0];
        if (n % 2 == 0) {
            const int m = n / 2;
            Sector ev{{T.d.begin(), T.d.begin() + m}, std::vector<double>(m - 1, t)};
            ev.d[m - 1] += t;
            Sector od{{T.d.begin(), T.d.begin() + m}, std::vector<double>(m - 1, t)};
            od.d[m - 1] -= t;
            sectors = {std::move(ev), std::move(od)};
        } else {
            const int m = (n - 1) / 2;
            Sector ev{{T.d.begin(), T.d.begin() + m + 1}, std::vector<double>(m, t)};
            ev.e[m - 1] = std::sqrt(2.0) * t;
            Sector od{{T.d.begin(), T.d.begin() + m}, std::vector<double>(m - 1, t)};
            sectors = {std::move(ev), std::move(od)};
        }
    } else {
        sectors = {Sector{T.d, T.e}};
    }

    // lowest k of the union of sector spectra
    std::vector<SectorLevel> levels;
    std::vector<std::vector<double>> e2s;
    std::vector<double> pivmins, tnorms;
    for (auto& s : sectors) {
        std::vector<double> e2(s.e.size());
        double emax2 = 1.0;
        for (size_t i = 0; i < s.e.size(); ++i) {
            e2[i] = s.e[i] * s.e[i];
            emax2 = std::max(emax2, e2[i]);
        }
        e2s.push_back(std::move(e2));
        pivmins.push_back(DBL_MIN / DBL_EPSILON * emax2 * 1e3);
        tnorms.push_back(off_norm_inf(s));
    }
    for (size_t si = 0; si < sectors.size(); ++si) {
        const int take = std::min<int>(k, static_cast<int>(sectors[si].d.size()));
        for (int j = 0; j < take; ++j)
            levels.push_back({bisect_level(sectors[si], e2s[si], pivmins[si], j),
                              fold ? static_cast<int>(si) + 1 : 0, j});
    }
    std::stable_sort(levels.begin(), levels.end(),
                     [](const SectorLevel& a, const SectorLevel& b) { return a.lambda < b.lambda; });
    levels.resize(k);

    Spectrum out;
    out.energies.reserve(k);
    for (const auto& l : levels) out.energies.push_back(l.lambda);
    if (!want_vectors) return out;

    const double h = g.step();
    const double inv_sqrt_h = 1.0 / std::sqrt(h);
    // sector-local vectors, reorthogonalizing inside near-degenerate groups
    std::vector<std::vector<double>> sector_vecs(k);
    for (int a = 0; a < k; ++a) {
        const auto& l = levels[a];
        const int si = fold ? l.sector - 1 : 0;
        std::vector<const std::vector<double>*> against;
        for (int b = 0; b < a; ++b)
            if (levels[b].sector == l.sector &&
                std::fabs(levels[b].lambda - l.lambda) < 1e-8 * std::max(1.0, std::fabs(l.lambda)))
                against.push_back(&sector_vecs[b]);
        const unsigned long long seed =
            0x243f6a8885a308d3ULL ^ (static_cast<unsigned long long>(n) << 20) ^
            (static_cast<unsigned long long>(l.sector) << 16) ^ static_cast<unsigned long long>(l.index_in_sector);
        sector_vecs[a] =
            inverse_iterate(sectors[si], l.lambda, pivmins[si], tnorms[si], seed, against);
    }

    out.eigenfunctions.assign(k, {});
    out.node_counts.assign(k, 0);
    out.residuals.assign(k, 0.0);
    for (int a = 0; a < k; ++a) {
        const auto& u = sector_vecs[a];
        std::vector<double> v(n, 0.0);
        if (!fold) {
            v = u;
        } else if (levels[a].sector == 1) {  // even
            if (n % 2 == 0) {
                const int m = n / 2;
                for (int i = 0; i < m; ++i) {
                    const double w = u[i] * M_SQRT1_2;
                    v[i] = w;
                    v[n - 1 - i] = w;
                }
            } else {
                const int m = (n - 1) / 2;
                for (int i = 0; i < m; ++i) {
                    const double w = u[i] * M_SQRT1_2;
                    v[i] = w;
                    v[n - 1 - i] = w;
                }
                v[m] = u[m];
            }
        } else {  // odd
            const int m = n / 2;
            for (int i = 0; i < m; ++i) {
                const double w = u[i] * M_SQRT1_2;
                v[i] = w;
                v[n - 1 - i] = -w;
            }
            // center entry stays 0 for odd n
        }
        // normalize to sum psi^2 h = 1 and fix the sign at the leftmost extremum
        const double nn = norm2(v);
        double vmax = 0.0;
        for (double w : v) vmax = std::max(vmax, std::fabs(w));
        // inverse iteration leaves ~1e-13 (relative) noise in the decayed tails;
        // entries below this floor carry no sign information
        const double floor = 1e-8 * vmax;
        int sign_ref = 0;
        for (int i = 1; i < n - 1 && sign_ref == 0; ++i) {
            if (std::fabs(v[i]) <= floor) continue;
            if ((v[i] - v[i - 1]) * (v[i + 1] - v[i]) <= 0.0) sign_ref = v[i] > 0.0 ? 1 : -1;
        }
        if (sign_ref == 0) sign_ref = 1;
        const double scale = sign_ref * inv_sqrt_h / nn;
        for (double& w : v) w *= scale;

        int nodes = 0, prev = 0;
        for (int i = 0; i < n; ++i) {
            if (std::fabs(v[i]) <= floor * inv_sqrt_h / nn) continue;
            const int sg = v[i] > 0.0 ? 1 : -1;
            if (prev != 0 && sg != prev) ++nodes;
            prev = sg;
        }
        double res = 0.0;
        const double lam = levels[a].lambda;
        for (int i = 0; i < n; ++i) {
            double r = (T.d[i] - lam) * v[i];
            if (i > 0) r += T.e[i - 1] * v[i - 1];
            if (i + 1 < n) r += T.e[i] * v[i + 1];
            res = std::max(res, std::fabs(r));
        }
        out.eigenfunctions[a] = std::move(v);
        out.node_counts[a] = nodes;
        out.residuals[a] = res;
    }
    return out;
}

ConvergenceReport convergence_check(const Potential& V, const Grid& g, int k, double tol,
                                    bool want_vectors) {
    const Grid g2{g.half_width, 2 * g.n_points + 1};  // exactly halves h
    const Spectrum coarse = eigen_lowest(discretize(V, g), g, k, false);
    Spectrum fine = eigen_lowest(discretize(V, g2), g2, k, want_vectors);
    ConvergenceReport rep;
    rep.coarse = coarse.energies;
    rep.extrapolated.resize(k);
    rep.error_estimate.resize(k);
    rep.flagged.resize(k);
    for (int i = 0; i < k; ++i) {
        rep.extrapolated[i] = (4.0 * fine.energies[i] - coarse.energies[i]) / 3.0;
        rep.error_estimate[i] = std::fabs(fine.energies[i] - coarse.energies[i]) / 3.0;
        rep.flagged[i] = rep.error_estimate[i] > tol;
    }
    rep.fine = std::move(fine);
    return rep;
}

} // namespace qeswell
