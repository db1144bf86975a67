#include "qeswell/analysis.hpp"
#include "qeswell/errors.hpp"
#include "qeswell/rect_well.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <thread>

namespace qeswell {

namespace {

double golden_refine(const std::function<double(double)>& f, double a, double b, double tol,
                     bool maximize) {
    constexpr double invphi = 0.6180339887498949;
    auto val = [&](double x) { return maximize ? -f(x) : f(x); };
    double x1 = b - invphi * (b - a), x2 = a + invphi * (b - a);
    double f1 = val(x1), f2 = val(x2);
    while (b - a > tol) {
        if (f1 <= f2) {
            b = x2; x2 = x1; f2 = f1;
            x1 = b - invphi * (b - a); f1 = val(x1);
        } else {
            a = x1; x1 = x2; f1 = f2;
            x2 = a + invphi * (b - a); f2 = val(x2);
        }
    }
    return 0.5 * (a + b);
}

} // namespace

WellCensus well_census(const Potential& V, double lo, double hi, int scan_points) {
    if (!(hi > lo) || scan_points < 8) throw std::invalid_argument("bad census window");
    WellCensus c;
    c.lo = lo;
    c.hi = hi;
    const int n = scan_points;
    const double h = (hi - lo) / n;
    std::vector<double> v(n + 1);
    for (int i = 0; i <= n; ++i) v[i] = V.v(lo + i * h);
    constexpr double dstep = 1e-4;
    for (int i = 1; i < n; ++i) {
        const double x = lo + i * h;
        if (v[i] < v[i - 1] && v[i] < v[i + 1]) {
            const double loc = golden_refine(V.v, x - h, x + h, 1e-9, false);
            const double val = V.v(loc);
            const double curv = (V.v(loc - dstep) - 2.0 * val + V.v(loc + dstep)) / (dstep * dstep);
            c.minima.push_back({loc, val, curv});
        } else if (v[i] > v[i - 1] && v[i] > v[i + 1]) {
            c.maxima_locations.push_back(golden_refine(V.v, x - h, x + h, 1e-9, true));
        }
    }
    return c;
}

double leading_order_energy(const WellPoint& w, bool literal_form) {
    if (literal_form) return w.value + 0.5 * w.curvature;
    return w.value + std::sqrt(std::max(w.curvature, 0.0) / 2.0);
}

MultipletStats multiplet_detect(const std::vector<double>& energies, int M) {
    if (M < 1 || static_cast<int>(energies.size()) < M + 1)
        throw std::invalid_argument("multiplet_detect needs at least M+1 levels");
    MultipletStats s;
    s.spread = energies[M - 1] - energies[0];
    s.gap = energies[M] - energies[M - 1];
    if (s.gap <= 0.0) throw DegenerateCutError("multiplet boundary gap vanishes");
    s.ratio = s.spread / s.gap;
    return s;
}

NodalPattern nodal_pattern(const std::vector<double>& psi, const Grid& g,
                           const WellCensus& census, double suppression_threshold) {
    if (census.minima.empty()) throw std::invalid_argument("census holds no wells");
    if (static_cast<int>(psi.size()) != g.n_points)
        throw std::invalid_argument("psi length does not match the grid");
    NodalPattern p;
    for (size_t i = 0; i < census.minima.size(); ++i) {
        p.columns.push_back(census.minima[i].location);
        p.is_well.push_back(true);
        if (i + 1 < census.minima.size()) {
            p.columns.push_back(0.5 * (census.minima[i].location + census.minima[i + 1].location));
            p.is_well.push_back(false);
        }
    }

    const int n = g.n_points;
    const double h = g.step();
    double sup = 0.0;
    for (double v : psi) sup = std::max(sup, std::fabs(v));
    // grid eigenvectors carry ~1e-13 relative noise in decayed tails; genuine
    // inter-lobe crossings approach their zero at >= 1e-4 of the sup norm
    const double floor = 1e-8 * sup;

    auto interp = [&](double x) {
        const double t = (x - g.point(0)) / h;
        const int i = std::clamp(static_cast<int>(std::floor(t)), 0, n - 2);
        const double f = t - i;
        return psi[i] * (1.0 - f) + psi[i + 1] * f;
    };

    // refined zero crossings, ignoring sub-floor tail noise
    int prev_idx = -1;
    for (int i = 0; i < n; ++i) {
        if (std::fabs(psi[i]) <= floor) continue;
        if (prev_idx >= 0 && (psi[i] > 0.0) != (psi[prev_idx] > 0.0)) {
            // linear interpolation inside the bracketing cell
            int a = prev_idx, b = i;
            double xa = g.point(a), xb = g.point(b);
            const double ya = psi[a], yb = psi[b];
            p.nodes.push_back(xa + (xb - xa) * ya / (ya - yb));
        }
        prev_idx = i;
    }

    p.cells.assign(p.columns.size(), Cell::suppressed_pos);
    for (size_t c = 0; c < p.columns.size(); ++c) {
        const double v = interp(p.columns[c]);
        const bool dom = std::fabs(v) >= suppression_threshold * sup;
        if (v >= 0.0)
            p.cells[c] = dom ? Cell::dominant_pos : Cell::suppressed_pos;
        else
            p.cells[c] = dom ? Cell::dominant_neg : Cell::suppressed_neg;
    }
    for (double nd : p.nodes) {
        size_t best = 0;
        for (size_t c = 1; c < p.columns.size(); ++c)
            if (std::fabs(p.columns[c] - nd) < std::fabs(p.columns[best] - nd)) best = c;
        p.cells[best] = Cell::node;
    }
    return p;
}

std::string NodalPattern::ascii() const {
    std::string out;
    for (size_t i = 0; i < cells.size(); ++i) {
        if (i) out += ' ';
        switch (cells[i]) {
            case Cell::dominant_pos: out += "(^)"; break;
            case Cell::dominant_neg: out += "(v)"; break;
            case Cell::suppressed_pos: out += "[^]"; break;
            case Cell::suppressed_neg: out += "[v]"; break;
            case Cell::node: out += "(*)"; break;
        }
    }
    return out;
}

std::vector<RefCell> parse_pattern_row(const std::string& s) {
    std::vector<RefCell> row;
    for (char ch : s) {
        switch (ch) {
            case '+': row.push_back(RefCell::lobe_pos); break;
            case '-': row.push_back(RefCell::lobe_neg); break;
            case '*': row.push_back(RefCell::bullet); break;
            case '.': row.push_back(RefCell::open); break;
            default: throw std::invalid_argument("pattern rows use only + - * .");
        }
    }
    return row;
}

std::vector<std::vector<RefCell>> reference_pattern_rows(int M) {
    static const std::vector<std::vector<std::string>> rows_by_m = {
        // M = 3
        {"+.+.+",
         "+.*.-",
         "+*-*+"},
        // M = 4
        {"+.+.+.+",
         "+.+*-.-",
         "+*-.-*+",
         "+*-*+*-"},
        // M = 5
        {"+.+.+.+.+",
         "+.+.*.-.-",
         "+.+*-*+.+",
         "+*-.*.+*-",
         "+*-*+*-*+"},
        // M = 6
        {"+.+.+.+.+.+",
         "+.+.+*-.-.-",
         "+.+*-.-*+.+",
         "+*-.-*+.+*-",
         "+*-*+.+*-*+",
         "+*-*+*-*+*-"},
        // M = 7
        {"+.+.+.+.+.+.+",
         "+.+.+.*.-.-.-",
         "+.+.+*-*+.+.+",
         "+.+*-.*.+*-.-",
         "+*-.-*+*-.-*+",
         "+*-*+.*.-*+*-",
         "+*-*+*-*+*-*+"},
        // M = 8
        {"+.+.+.+.+.+.+.+",
         "+.+.+.+*-.-.-.-",
         "+.+.+*-.-*+.+.+",
         "+.+*-.-*+.+*-.-",
         "+*-.-*+.+*-.-*+",
         "+*-*+.+*-.-*+*-",
         "+*-*+*-.-*+*-*+",
         "+*-*+*-*+*-*+*-"},
    };
    if (M < 3 || M > 8) throw std::invalid_argument("catalogued patterns cover M = 3..8");
    std::vector<std::vector<RefCell>> out;
    for (const auto& s : rows_by_m[M - 3]) out.push_back(parse_pattern_row(s));
    return out;
}

std::vector<PatternMismatch> compare_pattern(const NodalPattern& got,
                                             const std::vector<RefCell>& want) {
    std::vector<PatternMismatch> bad;
    if (got.cells.size() != want.size()) {
        bad.push_back({-1, "column count " + std::to_string(got.cells.size()) + " vs " +
                               std::to_string(want.size())});
        return bad;
    }
    int bullets = 0;
    for (auto w : want) bullets += w == RefCell::bullet ? 1 : 0;
    if (static_cast<int>(got.nodes.size()) != bullets)
        bad.push_back({-1, "node count " + std::to_string(got.nodes.size()) + " vs " +
                               std::to_string(bullets)});
    auto describe = [](Cell c) {
        switch (c) {
            case Cell::dominant_pos: return "dominant+";
            case Cell::dominant_neg: return "dominant-";
            case Cell::suppressed_pos: return "suppressed+";
            case Cell::suppressed_neg: return "suppressed-";
            case Cell::node: return "node";
        }
        return "?";
    };
    for (size_t c = 0; c < want.size(); ++c) {
        const Cell g = got.cells[c];
        const std::string held = describe(g);
        switch (want[c]) {
            case RefCell::lobe_pos:
                if (g != Cell::dominant_pos)
                    bad.push_back({static_cast<int>(c), "want dominant+, got " + held});
                break;
            case RefCell::lobe_neg:
                if (g != Cell::dominant_neg)
                    bad.push_back({static_cast<int>(c), "want dominant-, got " + held});
                break;
            case RefCell::bullet:
                if (g != Cell::node)
                    bad.push_back({static_cast<int>(c), "want node, got " + held});
                break;
            case RefCell::open:
                break;
        }
        if (want[c] != RefCell::bullet && g == Cell::node)
            bad.push_back({static_cast<int>(c), "unexpected node"});
    }
    return bad;
}

ScanResult scan_family(const ScanFamily& fam, const std::vector<double>& params, int jobs) {
    ScanResult res;
    const int n = static_cast<int>(params.size());
    res.rows.resize(n);
    std::vector<double> seps(n, std::numeric_limits<double>::infinity());
    auto work = [&](int begin, int end) {
        for (int i = begin; i < end; ++i) {
            const FamilyPoint fp = fam(params[i]);
            ScanPoint& row = res.rows[i];
            row.param = params[i];
            row.energies = fp.energies;
            row.gap = fp.energies.size() >= 2 ? fp.energies[1] - fp.energies[0]
                                              : std::numeric_limits<double>::quiet_NaN();
            row.density_argmax = fp.density_argmax;
            row.n_wells = fp.n_wells;
            seps[i] = fp.min_well_separation;
        }
    };
    jobs = std::max(1, jobs);
    if (jobs == 1 || n < 2 * jobs) {
        work(0, n);
    } else {
        std::vector<std::thread> pool;
        const int chunk = (n + jobs - 1) / jobs;
        for (int j = 0; j < jobs; ++j) {
            const int b = j * chunk, e = std::min(n, b + chunk);
            if (b < e) pool.emplace_back(work, b, e);
        }
        for (auto& t : pool) t.join();
    }

    for (int i = 1; i + 1 < n; ++i) {
        const double y1 = res.rows[i - 1].gap, y2 = res.rows[i].gap, y3 = res.rows[i + 1].gap;
        if (!(y2 < y1 && y2 < y3)) continue;
        const double x1 = res.rows[i - 1].param, x2 = res.rows[i].param, x3 = res.rows[i + 1].param;
        const double den = (x1 - x2) * (x1 - x3) * (x2 - x3);
        const double A = (x3 * (y2 - y1) + x2 * (y1 - y3) + x1 * (y3 - y2)) / den;
        const double B = (x3 * x3 * (y1 - y2) + x2 * x2 * (y3 - y1) + x1 * x1 * (y2 - y3)) / den;
        double vertex = A != 0.0 ? -B / (2.0 * A) : x2;
        vertex = std::clamp(vertex, x1, x3);
        res.gap_minima.push_back(vertex);
    }
    for (int i = 1; i < n; ++i) {
        const double move = std::fabs(res.rows[i].density_argmax - res.rows[i - 1].density_argmax);
        const double sep = std::min(seps[i], seps[i - 1]);
        if (std::isfinite(sep) && move > 0.5 * sep)
            res.jumps.push_back({res.rows[i - 1].param, res.rows[i].param});
    }
    return res;
}

ScanFamily fd_family(std::function<Potential(double)> make, Grid grid, int k) {
    return [make, grid, k](double param) {
        const Potential pot = make(param);
        FamilyPoint fp;
        const bool exact_density = static_cast<bool>(pot.ground_density);
        const Spectrum sp =
            eigen_lowest(discretize(pot, grid), grid, k, /*want_vectors=*/!exact_density);
        fp.energies = sp.energies;
        const WellCensus c = well_census(pot, -grid.half_width, grid.half_width);
        fp.n_wells = static_cast<int>(c.minima.size());
        fp.min_well_separation = std::numeric_limits<double>::infinity();
        for (size_t i = 1; i < c.minima.size(); ++i)
            fp.min_well_separation = std::min(fp.min_well_separation,
                                              c.minima[i].location - c.minima[i - 1].location);
        double best = -std::numeric_limits<double>::infinity();
        int besti = 0;
        for (int i = 0; i < grid.n_points; ++i) {
            const double rho = exact_density
                                   ? pot.ground_density(grid.point(i))
                                   : sp.eigenfunctions[0][i] * sp.eigenfunctions[0][i];
            if (rho > best) {  // strictly greater: ties resolve to the leftmost point
                best = rho;
                besti = i;
            }
        }
        fp.density_argmax = grid.point(besti);
        return fp;
    };
}

ScanFamily rect_alc_family(double a2, double b2, int k) {
    return [a2, b2, k](double c2) {
        const RectDoubleWell w{a2, b2, c2};
        FamilyPoint fp;
        fp.energies = rdw_levels(w, k);
        const RdwWave g = rdw_wavefunction(w, fp.energies[0], 2001, 0);
        double best = -std::numeric_limits<double>::infinity();
        int besti = 0;
        for (size_t i = 0; i < g.psi.size(); ++i) {
            const double rho = g.psi[i] * g.psi[i];
            if (rho > best) {
                best = rho;
                besti = static_cast<int>(i);
            }
        }
        fp.density_argmax = g.r[besti];
        fp.n_wells = 2;
        fp.min_well_separation = 4.0;  // well centers sit at -2 and +2
        return fp;
    };
}

ScanFamily weighted_pair_family(double center, Grid grid, int k) {
    return fd_family(
        [center](double wgt) {
            auto g = make_superposition({{-center, 1.0, 1.0}, {center, 1.0, wgt}});
            return make_potential(reconstruct(g, EnergyGauge::raw()));
        },
        grid, k);
}

} // namespace qeswell
