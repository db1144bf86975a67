#pragma once
#include "qeswell/potential.hpp"
#include "qeswell/solver.hpp"

#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace qeswell {

struct WellPoint {
    double location, value, curvature;
};

struct WellCensus {
    std::vector<WellPoint> minima;        // ascending by location
    std::vector<double> maxima_locations; // interior barrier tops
    double lo = 0.0, hi = 0.0;
};

// interior strict local minima/maxima from a uniform scan, golden-refined to 1e-9;
// curvature by central second difference, step 1e-4
WellCensus well_census(const Potential& V, double lo, double hi, int scan_points = 4096);

// harmonic estimate about one well: V0 + sqrt(V''/2); literal variant: V0 + V''/2
double leading_order_energy(const WellPoint& w, bool literal_form = false);

struct MultipletStats {
    double spread, gap, ratio;
};
// lowest M levels against the (M+1)-th: spread = E_{M-1}-E_0, gap = E_M-E_{M-1};
// DegenerateCutError when the gap vanishes
MultipletStats multiplet_detect(const std::vector<double>& energies, int M);

// per-column classification of one eigenfunction over the census wells and the
// midpoints between them; suppression is relative to sup|psi|
enum class Cell { dominant_pos, dominant_neg, suppressed_pos, suppressed_neg, node };

struct NodalPattern {
    std::vector<double> columns;  // well centers interleaved with midpoints, ascending
    std::vector<bool> is_well;
    std::vector<Cell> cells;
    std::vector<double> nodes;    // refined zero crossings of psi
    std::string ascii() const;    // glyphs: (^) (v) (*) [^] [v]
};

NodalPattern nodal_pattern(const std::vector<double>& psi, const Grid& g,
                           const WellCensus& census, double suppression_threshold = 0.1);

// catalogued lobe/node layouts for the equidistant families, rows n = 0..M-1 over
// 2M-1 columns; open cells carry no requirement
enum class RefCell { lobe_pos, lobe_neg, bullet, open };
std::vector<std::vector<RefCell>> reference_pattern_rows(int M);
std::vector<RefCell> parse_pattern_row(const std::string& s);  // chars: + - * .

struct PatternMismatch {
    int column;  // -1 for whole-row complaints
    std::string what;
};
// lobe columns must be dominant with the stated sign; bullet columns must hold a node;
// open columns are unconstrained; the node-column sets must agree
std::vector<PatternMismatch> compare_pattern(const NodalPattern& got,
                                             const std::vector<RefCell>& want);

// ---- parameter scans ----

struct FamilyPoint {
    std::vector<double> energies;
    double density_argmax = 0.0;
    int n_wells = 0;
    double min_well_separation = 0.0;  // inf when fewer than two wells
};
using ScanFamily = std::function<FamilyPoint(double)>;

struct ScanPoint {
    double param;
    std::vector<double> energies;
    double gap;  // energies[1] - energies[0]
    double density_argmax;
    int n_wells;
};

struct ScanResult {
    std::string param_name = "param";
    std::vector<ScanPoint> rows;
    std::vector<double> gap_minima;                 // 3-point parabolic refinements
    std::vector<std::pair<double, double>> jumps;   // argmax jumps: (param before, after)
};

// rows for every parameter value (jobs > 1 computes them in a worker pool; results
// are written by index so the output is identical for any worker count), interior
// gap minima refined, argmax jumps flagged when the move exceeds half the
// inter-well separation
ScanResult scan_family(const ScanFamily& fam, const std::vector<double>& params, int jobs = 1);

// family builders
ScanFamily fd_family(std::function<Potential(double)> make, Grid grid, int k);
ScanFamily rect_alc_family(double a2, double b2, int k);             // param = c2
ScanFamily weighted_pair_family(double center, Grid grid, int k);    // param = w, weights (1, w)

} // namespace qeswell
