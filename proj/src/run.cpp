#include "qeswell/run.hpp"

#include "qeswell/analysis.hpp"
#include "qeswell/csv.hpp"
#include "qeswell/errors.hpp"
#include "qeswell/json_io.hpp"
#include "qeswell/rect_well.hpp"
#include "qeswell/solver.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <random>
#include <string>
#include <vector>

namespace qeswell {
namespace {

struct GridDefaults {
    double L;
    int N;
    int k;
};

double outermost_center(const GaussianSuperposition& g) {
    double out = 0.0;
    for (const auto& t : g.terms) out = std::max(out, std::fabs(t.center));
    return out;
}

GridDefaults defaults_for(const PotentialSpec& spec) {
    if (spec.kind == "qes")
        return {suggested_half_width(outermost_center(spec.qes.ansatz())), 8000,
                static_cast<int>(spec.qes.ansatz().terms.size())};
    if (spec.kind == "sextic") return {4.5, 6000, 4};
    if (spec.kind == "rect" || spec.kind == "smoothed_rect") return {3.0, 8000, 4};
    // tabulated: largest symmetric interval inside the table
    return {std::min(-spec.tab_lo, spec.tab_hi), 8000, 4};
}

GridDefaults resolve_grid(const PotentialSpec& spec, const CliOptions& opt) {
    GridDefaults d = defaults_for(spec);
    if (opt.grid_L > 0.0) d.L = opt.grid_L;
    if (opt.grid_N > 0) d.N = opt.grid_N;
    if (opt.levels > 0) d.k = opt.levels;
    if (!(d.L > 0.0)) throw std::invalid_argument("grid half-width must be positive (--grid-L)");
    if (d.N < 8) throw std::invalid_argument("grid needs at least 8 points (--grid-N)");
    return d;
}

// inclusive arithmetic sweep, or an explicit list under `list_key`
std::vector<double> sweep_values(const Json& cfg, const char* list_key) {
    const bool has_list = cfg.contains(list_key);
    const bool has_range = cfg.contains("from") || cfg.contains("to") || cfg.contains("step");
    if (has_list == has_range)
        throw std::invalid_argument(std::string("sweep: give either \"") + list_key +
                                    "\" or from/to/step");
    std::vector<double> vals;
    if (has_list) {
        const Json& a = cfg.at(list_key);
        if (!a.is_array() || a.empty())
            throw std::invalid_argument(std::string("sweep: \"") + list_key +
                                        "\" must be a non-empty array");
        for (const Json& x : a) {
            if (!x.is_number())
                throw std::invalid_argument(std::string("sweep: non-numeric entry in \"") +
                                            list_key + "\"");
            vals.push_back(x.get<double>());
        }
        return vals;
    }
    const double from = num_at(cfg, "from", "sweep");
    const double to = num_at(cfg, "to", "sweep");
    const double step = num_at(cfg, "step", "sweep");
    if (!(step > 0.0) || to < from)
        throw std::invalid_argument("sweep: need step > 0 and to >= from");
    const long n = std::lround(std::floor((to - from) / step + 0.5)) + 1;
    if (n > 1000000) throw std::invalid_argument("sweep: more than 1e6 values requested");
    for (long i = 0; i < n; ++i) vals.push_back(from + static_cast<double>(i) * step);
    return vals;
}

const char* cell_name(Cell c) {
    switch (c) {
        case Cell::dominant_pos: return "dom+";
        case Cell::dominant_neg: return "dom-";
        case Cell::suppressed_pos: return "sup+";
        case Cell::suppressed_neg: return "sup-";
        case Cell::node: return "node";
    }
    return "?";
}

const char* shape_name(SexticQes::Shape s) {
    switch (s) {
        case SexticQes::Shape::single_well: return "single";
        case SexticQes::Shape::double_well: return "double";
        case SexticQes::Shape::triple_well: return "triple";
    }
    return "?";
}

Json census_json(const WellCensus& c) {
    Json j;
    j["interval"] = {c.lo, c.hi};
    j["n_wells"] = c.minima.size();
    j["minima"] = Json::array();
    for (const auto& m : c.minima) {
        Json e;
        e["location"] = m.location;
        e["value"] = m.value;
        e["curvature"] = m.curvature;
        if (m.curvature > 0.0)
            e["leading_order_energy"] = leading_order_energy(m);
        else
            e["leading_order_energy"] = nullptr;
        j["minima"].push_back(e);
    }
    j["maxima_locations"] = c.maxima_locations;
    return j;
}

// ---- potential ----

int cmd_potential(const CliOptions& opt) {
    const Json cfg = load_json_file(opt.config);
    const PotentialSpec spec = potential_from_json(cfg);
    GridDefaults d = defaults_for(spec);
    const double L = opt.grid_L > 0.0 ? opt.grid_L : d.L;
    const int n = opt.grid_N > 0 ? opt.grid_N : 2001;
    if (n < 2) throw std::invalid_argument("need at least 2 samples (--grid-N)");

    std::function<double(double)> shape;  // signed ground-branch wave shape, if the family has one
    if (spec.kind == "qes") {
        const GaussianSuperposition g = spec.qes.ansatz();
        shape = [g](double r) { return psi(g, r); };
    } else if (spec.kind == "sextic") {
        const SexticQes s = spec.sextic;
        shape = [s](double r) { return s.psi(r); };
    }

    const double dr = 2.0 * L / (n - 1);
    std::vector<double> rs(n), vs(n), ps;
    for (int i = 0; i < n; ++i) {
        rs[i] = -L + i * dr;
        try {
            vs[i] = spec.potential.v(rs[i]);
        } catch (const AtNodeError&) {
            vs[i] = std::numeric_limits<double>::quiet_NaN();  // pole of a singular branch
        }
    }
    if (shape) {
        ps.resize(n);
        double norm2 = 0.0;
        for (int i = 0; i < n; ++i) {
            ps[i] = shape(rs[i]);
            norm2 += ps[i] * ps[i] * dr;
        }
        const double scale = opt.psi_scale / std::sqrt(norm2);
        for (double& x : ps) x *= scale;
    }

    CsvWriter w;
    if (shape)
        w.header({"r", "V", "psi_scaled"});
    else
        w.header({"r", "V"});
    for (int i = 0; i < n; ++i) {
        w.field(rs[i]);
        w.field(vs[i]);
        if (shape) w.field(ps[i]);
        w.end_row();
    }
    write_text_file(opt.out + "_potential.csv", w.str());

    Json cj;
    if (spec.has_qes && spec.qes.singular()) {
        cj["singular"] = true;
        cj["note"] = "mixed-sign ansatz: potential has poles, census skipped";
    } else {
        cj = census_json(well_census(spec.potential, -L, L));
        cj["singular"] = false;
    }
    write_text_file(opt.out + "_census.json", cj.dump(2) + "\n");
    return 0;
}

// ---- solve ----

int cmd_solve(const CliOptions& opt) {
    const Json cfg = load_json_file(opt.config);
    const PotentialSpec spec = potential_from_json(cfg);
    const GridDefaults d = resolve_grid(spec, opt);
    const Grid g{d.L, d.N};
    const Tridiag T = discretize(spec.potential, g);
    const Spectrum s = eigen_lowest(T, g, d.k, true);

    CsvWriter sw;
    sw.header({"level", "energy", "nodes", "residual"});
    for (int i = 0; i < d.k; ++i) {
        sw.field(static_cast<long>(i));
        sw.field(s.energies[i]);
        sw.field(static_cast<long>(s.node_counts[i]));
        sw.field(s.residuals[i]);
        sw.end_row();
    }
    write_text_file(opt.out + "_spectrum.csv", sw.str());

    std::vector<std::string> cols{"r"};
    for (int i = 0; i < d.k; ++i) cols.push_back("psi" + std::to_string(i));
    CsvWriter ew;
    ew.header(cols);
    for (int i = 0; i < d.N; ++i) {
        ew.field(g.point(i));
        for (int j = 0; j < d.k; ++j) ew.field(s.eigenfunctions[j][i]);
        ew.end_row();
    }
    write_text_file(opt.out + "_eigenfunctions.csv", ew.str());
    return 0;
}

// ---- scans ----

struct ScanSetup {
    ScanFamily family;
    std::vector<double> values;
    int k;
};

ScanSetup scan_setup(const Json& cfg, const CliOptions& opt, int default_k) {
    require_object(cfg, {"family"},
                   {"values", "from", "to", "step", "levels", "grid", "a2", "b2", "center"},
                   "scan");
    const std::string family = cfg.at("family").get<std::string>();
    auto forbid = [&](const char* key) {
        if (cfg.contains(key))
            throw std::invalid_argument("scan(" + family + "): key \"" + key + "\" does not apply");
    };

    ScanSetup s;
    s.values = sweep_values(cfg, "values");
    s.k = default_k;
    if (cfg.contains("levels")) {
        double kd = num_at(cfg, "levels", "scan");
        if (kd != static_cast<int>(kd) || kd < 1)
            throw std::invalid_argument("scan.levels: expected a positive integer");
        s.k = static_cast<int>(kd);
    }
    if (opt.levels > 0) s.k = opt.levels;

    auto grid_for = [&](double defL, int defN) {
        double L = defL;
        int N = defN;
        if (cfg.contains("grid")) {
            const Json& gj = cfg.at("grid");
            require_object(gj, {"L", "N"}, {}, "scan.grid");
            L = num_at(gj, "L", "scan.grid");
            double Nd = num_at(gj, "N", "scan.grid");
            if (Nd != static_cast<int>(Nd)) throw std::invalid_argument("scan.grid.N: integer");
            N = static_cast<int>(Nd);
        }
        if (opt.grid_L > 0.0) L = opt.grid_L;
        if (opt.grid_N > 0) N = opt.grid_N;
        if (!(L > 0.0) || N < 8) throw std::invalid_argument("scan.grid: need L > 0, N >= 8");
        return Grid{L, N};
    };

    if (family == "rect") {
        forbid("center");
        forbid("grid");
        const double a2 = num_at(cfg, "a2", "scan(rect)");
        const double b2 = num_at(cfg, "b2", "scan(rect)");
        s.family = rect_alc_family(a2, b2, std::max(s.k, 1));
        return s;
    }
    if (family == "weighted_pair") {
        forbid("a2");
        forbid("b2");
        const double center = num_at(cfg, "center", "scan(weighted_pair)");
        s.family = weighted_pair_family(center, grid_for(suggested_half_width(center), 8000), s.k);
        return s;
    }
    if (family == "sextic") {
        forbid("a2");
        forbid("b2");
        forbid("center");
        Grid g = grid_for(4.5, 6000);
        const int k = s.k;
        s.family = fd_family([](double alpha) { return make_potential(sextic_qes(alpha)); }, g, k);
        return s;
    }
    throw std::invalid_argument("scan.family: expected rect | weighted_pair | sextic, got \"" +
                                family + "\"");
}

void write_scan_csv(const ScanResult& res, const std::string& path) {
    const int k = res.rows.empty() ? 0 : static_cast<int>(res.rows.front().energies.size());
    std::vector<std::string> cols{"param"};
    for (int i = 0; i < k; ++i) cols.push_back("E" + std::to_string(i));
    cols.push_back("gap");
    cols.push_back("argmax");
    cols.push_back("n_wells");
    CsvWriter w;
    w.header(cols);
    for (const auto& row : res.rows) {
        w.field(row.param);
        for (double e : row.energies) w.field(e);
        w.field(row.gap);
        w.field(row.density_argmax);
        w.field(static_cast<long>(row.n_wells));
        w.end_row();
    }
    write_text_file(path, w.str());
}

int cmd_scan(const CliOptions& opt, bool alc) {
    const Json cfg = load_json_file(opt.config);
    const ScanSetup s = scan_setup(cfg, opt, alc ? 2 : 1);
    const ScanResult res = scan_family(s.family, s.values, std::max(1, opt.jobs));
    write_scan_csv(res, opt.out + "_scan.csv");
    if (alc) {
        Json j;
        j["param"] = "sweep";
        j["gap_minima"] = res.gap_minima;
        write_text_file(opt.out + "_minima.json", j.dump(2) + "\n");
    } else {
        Json j;
        j["param"] = "sweep";
        j["jumps"] = Json::array();
        for (const auto& [before, after] : res.jumps)
            j["jumps"].push_back({{"before", before}, {"after", after}});
        write_text_file(opt.out + "_jumps.json", j.dump(2) + "\n");
    }
    return 0;
}

// ---- nodal ----

int cmd_nodal(const CliOptions& opt) {
    const Json cfg = load_json_file(opt.config);
    const PotentialSpec spec = potential_from_json(cfg);

    std::vector<std::vector<RefCell>> want;
    if (!opt.expect.empty()) {
        const Json e = load_json_file(opt.expect);
        require_object(e, {"M", "rows"}, {}, "expect");
        const Json& rows = e.at("rows");
        if (!rows.is_array() || rows.empty())
            throw std::invalid_argument("expect.rows: non-empty array of pattern strings");
        for (const Json& r : rows) want.push_back(parse_pattern_row(r.get<std::string>()));
    }

    GridDefaults d = resolve_grid(spec, opt);
    if (opt.levels <= 0 && !want.empty()) d.k = static_cast<int>(want.size());

    const Grid g{d.L, d.N};
    const Spectrum s = eigen_lowest(discretize(spec.potential, g), g, d.k, true);
    const WellCensus census = well_census(spec.potential, -d.L, d.L);
    if (census.minima.empty())
        throw std::invalid_argument("no potential minima inside the box; widen --grid-L");

    std::vector<NodalPattern> pats;
    for (int n = 0; n < d.k; ++n) pats.push_back(nodal_pattern(s.eigenfunctions[n], g, census));

    std::string txt;
    for (int n = 0; n < d.k; ++n) txt += "n=" + std::to_string(n) + "  " + pats[n].ascii() + "\n";
    write_text_file(opt.out + "_nodal.txt", txt);

    Json j;
    j["columns"] = pats.front().columns;
    j["is_well"] = pats.front().is_well;
    j["states"] = Json::array();
    for (int n = 0; n < d.k; ++n) {
        Json st;
        st["n"] = n;
        st["energy"] = s.energies[n];
        st["cells"] = Json::array();
        for (Cell c : pats[n].cells) st["cells"].push_back(cell_name(c));
        st["nodes"] = pats[n].nodes;
        st["ascii"] = pats[n].ascii();
        j["states"].push_back(st);
    }

    int mismatches = 0;
    if (!want.empty()) {
        Json cmp = Json::array();
        const int n_cmp = std::min<int>(d.k, static_cast<int>(want.size()));
        for (int n = 0; n < n_cmp; ++n) {
            for (const auto& m : compare_pattern(pats[n], want[n])) {
                ++mismatches;
                std::fprintf(stdout, "state %d column %d: %s\n", n, m.column, m.what.c_str());
                cmp.push_back({{"state", n}, {"column", m.column}, {"what", m.what}});
            }
        }
        if (d.k < static_cast<int>(want.size())) {
            ++mismatches;
            cmp.push_back({{"state", -1}, {"column", -1}, {"what", "fewer states than rows"}});
        }
        j["expected_file"] = opt.expect;
        j["mismatches"] = cmp;
    }
    write_text_file(opt.out + "_nodal.json", j.dump(2) + "\n");
    if (!want.empty())
        std::fprintf(stdout, "%s\n", mismatches == 0 ? "patterns match" : "patterns differ");
    return mismatches == 0 ? 0 : 3;
}

// ---- sextic ----

int cmd_sextic(const CliOptions& opt) {
    const Json cfg = load_json_file(opt.config);
    require_object(cfg, {}, {"alphas", "from", "to", "step"}, "sextic");
    const std::vector<double> alphas = sweep_values(cfg, "alphas");
    const double L = opt.grid_L > 0.0 ? opt.grid_L : 4.5;
    const int N = opt.grid_N > 0 ? opt.grid_N : 3000;

    CsvWriter w;
    w.header({"alpha", "A", "B", "shape", "E0_exact", "E0_numeric", "err_est", "n_wells"});
    for (double a : alphas) {
        const SexticQes s = sextic_qes(a);
        const Potential pot = make_potential(s);
        const ConvergenceReport rep = convergence_check(pot, Grid{L, N}, 1, 1e-6, false);
        const WellCensus c = well_census(pot, -L, L);
        w.field(a);
        w.field(s.A);
        w.field(s.B);
        w.field(std::string(shape_name(s.shape)));
        w.field(s.ground_energy);
        w.field(rep.extrapolated[0]);
        w.field(rep.error_estimate[0]);
        w.field(static_cast<long>(c.minima.size()));
        w.end_row();
    }
    write_text_file(opt.out + "_sextic.csv", w.str());
    return 0;
}

// ---- rectwell ----

int cmd_rectwell(const CliOptions& opt) {
    const Json cfg = load_json_file(opt.config);
    require_object(cfg, {"a2", "b2", "c2"}, {"levels", "per_side"}, "rectwell");
    RectDoubleWell well{num_at(cfg, "a2", "rectwell"), num_at(cfg, "b2", "rectwell"),
                        num_at(cfg, "c2", "rectwell")};
    int k = 4;
    if (cfg.contains("levels")) k = static_cast<int>(num_at(cfg, "levels", "rectwell"));
    if (opt.levels > 0) k = opt.levels;
    if (k < 1) throw std::invalid_argument("rectwell: levels must be >= 1");
    int per_side = k;
    if (cfg.contains("per_side")) per_side = static_cast<int>(num_at(cfg, "per_side", "rectwell"));
    if (per_side < 1) throw std::invalid_argument("rectwell: per_side must be >= 1");

    const std::vector<double> exact = rdw_levels(well, k);
    const auto [left, right] = rdw_approx(well, per_side);
    std::vector<double> uni;
    uni.insert(uni.end(), left.begin(), left.end());
    uni.insert(uni.end(), right.begin(), right.end());
    std::sort(uni.begin(), uni.end());

    const double nan = std::numeric_limits<double>::quiet_NaN();
    CsvWriter w;
    w.header({"level", "E_exact", "E_approx_left", "E_approx_right", "E_union", "rel_dev"});
    for (int i = 0; i < k; ++i) {
        w.field(static_cast<long>(i));
        w.field(exact[i]);
        w.field(i < static_cast<int>(left.size()) ? left[i] : nan);
        w.field(i < static_cast<int>(right.size()) ? right[i] : nan);
        const double u = i < static_cast<int>(uni.size()) ? uni[i] : nan;
        w.field(u);
        w.field((exact[i] - u) / u);
        w.end_row();
    }
    write_text_file(opt.out + "_levels.csv", w.str());
    return 0;
}

// ---- verify ----

// engine-only uniforms: std::distributions are not cross-platform deterministic
double unit_uniform(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

struct Check {
    std::string name;
    bool pass;
    std::string detail;
};

std::string fmt(const char* f, double a, double b = 0.0) {
    char tmp[128];
    std::snprintf(tmp, sizeof tmp, f, a, b);
    return tmp;
}

Check check_qes_residual() {
    std::mt19937_64 rng(99991);
    double worst = 0.0;
    for (int trial = 0; trial < 40; ++trial) {
        const int M = 1 + static_cast<int>(rng() % 8);
        const double spacing = 0.5 + 9.5 * unit_uniform(rng);
        const double width = 0.5 + 1.5 * unit_uniform(rng);
        GaussianSuperposition g;
        {
            std::vector<GaussianTerm> terms;
            const std::vector<double> cs = equidistant_centers(M, spacing);
            for (double c : cs)
                terms.push_back({c, width, 0.5 + 1.5 * unit_uniform(rng)});
            g = make_superposition(std::move(terms));
        }
        const QesPotential qp = reconstruct(g, EnergyGauge::raw());
        const double span = outermost_center(g) + 3.0;
        for (int i = 0; i < 50; ++i) {
            const double r = -span + 2.0 * span * unit_uniform(rng);
            // independent long-double pass over the shifted terms
            long double smax = -std::numeric_limits<long double>::infinity();
            for (const auto& t : g.terms) {
                const long double d = static_cast<long double>(r) - t.center;
                smax = std::max(smax, -static_cast<long double>(t.width) * d * d);
            }
            long double p0 = 0.0L, p2 = 0.0L;
            for (const auto& t : g.terms) {
                const long double d = static_cast<long double>(r) - t.center;
                const long double wj = t.width;
                const long double z =
                    static_cast<long double>(t.weight) * std::exp(-wj * d * d - smax);
                p0 += z;
                p2 += z * (4.0L * wj * wj * d * d - 2.0L * wj);
            }
            const long double mismatch =
                std::fabs(p2 - static_cast<long double>(qp.value_rel(r)) * p0);
            const double rel = static_cast<double>(
                mismatch / std::max({std::fabs(p2), std::fabs(p0), 1.0L}));
            worst = std::max(worst, rel);
        }
    }
    return {"qes_residual", worst < 1e-13, fmt("max normalized residual %.3e", worst)};
}

Check check_closed_forms() {
    double worst = 0.0;
    for (double s : {0.5, 1.0, 2.0, 3.0, 4.0}) {
        for (int M : {2, 3, 4}) {
            const GaussianSuperposition g = equidistant_ansatz(M, s);
            const QesPotential qp = reconstruct(g, EnergyGauge::raw());
            for (int i = 0; i <= 240; ++i) {
                const double r = -3.0 * s + 6.0 * s * i / 240.0;
                const double ref = M == 2   ? closed_form_m2(s, r)
                                   : M == 3 ? closed_form_m3(s, r)
                                            : closed_form_m4(s, r);
                const double got = qp.value_rel(r);
                worst = std::max(worst, std::fabs(got - ref) / std::max(1.0, std::fabs(ref)));
            }
        }
    }
    return {"closed_forms", worst < 1e-10, fmt("max relative deviation %.3e", worst)};
}

Check check_box_levels() {
    const std::vector<double> E = rdw_levels(RectDoubleWell{0.0, 0.0, 0.0}, 6);
    double worst = 0.0;
    for (int n = 1; n <= 6; ++n) {
        const double exact = n * n * M_PI * M_PI / 36.0;
        worst = std::max(worst, std::fabs(E[n - 1] - exact) / exact);
    }
    return {"box_levels", worst < 1e-10, fmt("max relative deviation %.3e", worst)};
}

Check check_sextic_ground() {
    double worst = 0.0;
    for (double a : {-2.0, 0.0, 1.0}) {
        const ConvergenceReport rep =
            convergence_check(make_potential(sextic_qes(a)), Grid{4.5, 3000}, 1, 1e-6, false);
        worst = std::max(worst, std::fabs(rep.extrapolated[0] - a));
    }
    return {"sextic_ground", worst < 1e-5, fmt("max |E0 - reference| %.3e", worst)};
}

Check check_rect_reference() {
    const std::vector<double> E = rdw_levels(RectDoubleWell{0.0, 400.0, 25.0}, 2);
    const double d0 = std::fabs(E[0] - 2.3483954972) / 2.3483954972;
    const double d1 = std::fabs(E[1] - 9.3922192892) / 9.3922192892;
    const double worst = std::max(d0, d1);
    return {"rect_reference", worst < 1e-8, fmt("max relative deviation %.3e", worst)};
}

Check check_series_coeffs() {
    double worst = 0.0;
    for (double b : {0.0, 1.0, 2.0, 4.0}) {
        const TaylorM3 t = taylor_coeffs_m3(b);
        const double u = std::exp(-b * b);
        const double den = 2.0 * u + 1.0;
        const double c0 = 2.0 * (4.0 * b * b * u - 2.0 * u - 1.0) / den;
        const double c2 = 4.0 *
                          (-16.0 * b * b * u * u - 8.0 * b * b * u + 4.0 * u * u + 4.0 * u + 1.0 +
                           4.0 * b * b * b * b * u) /
                          (den * den);
        const double c4 = -16.0 / 3.0 * b * b * b * b * u *
                          (-32.0 * u * u - 8.0 * u + 4.0 + 10.0 * b * b * u - b * b) /
                          (den * den * den);
        worst = std::max(worst, std::fabs(t.c0 - c0) / std::max(1.0, std::fabs(c0)));
        worst = std::max(worst, std::fabs(t.c2 - c2) / std::max(1.0, std::fabs(c2)));
        worst = std::max(worst, std::fabs(t.c4 - c4) / std::max(1.0, std::fabs(c4)));
    }
    return {"series_coefficients", worst < 1e-6, fmt("max deviation %.3e", worst)};
}

int cmd_verify(const CliOptions& opt) {
    const std::vector<Check> checks = {check_qes_residual(),   check_closed_forms(),
                                       check_box_levels(),     check_sextic_ground(),
                                       check_rect_reference(), check_series_coeffs()};
    bool all = true;
    Json j;
    j["checks"] = Json::array();
    for (const auto& c : checks) {
        all = all && c.pass;
        std::fprintf(stdout, "[%s] %s: %s\n", c.pass ? "PASS" : "FAIL", c.name.c_str(),
                     c.detail.c_str());
        j["checks"].push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
    }
    j["all_pass"] = all;
    write_text_file(opt.out + "_verify.json", j.dump(2) + "\n");
    return all ? 0 : 3;
}

} // namespace

int run_command(const std::string& command, const CliOptions& opt) {
    if (opt.out.empty()) throw std::invalid_argument("--out prefix is required");
    if (command != "verify" && opt.config.empty())
        throw std::invalid_argument("--config is required for this command");
    if (command == "potential") return cmd_potential(opt);
    if (command == "solve") return cmd_solve(opt);
    if (command == "scan-alc") return cmd_scan(opt, true);
    if (command == "scan-reloc") return cmd_scan(opt, false);
    if (command == "nodal") return cmd_nodal(opt);
    if (command == "sextic") return cmd_sextic(opt);
    if (command == "rectwell") return cmd_rectwell(opt);
    if (command == "verify") return cmd_verify(opt);
    throw std::invalid_argument("unknown command: " + command);
}

} // namespace qeswell
