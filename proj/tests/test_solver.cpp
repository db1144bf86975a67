#include "qeswell/solver.hpp"
#include "qeswell/potential.hpp"
#include "qeswell/qes_inverse.hpp"
#include "qeswell/errors.hpp"

#include <doctest.h>

#include <cmath>
#include <limits>

using namespace qeswell;

namespace {

const Potential kBox{[](double) { return 0.0; }, true, "box", nullptr};
const Potential kHarmonic{[](double r) { return r * r; }, true, "harmonic", nullptr};

double box_level(int n, double L) {  // n = 0, 1, ...
    const double k = (n + 1) * M_PI / (2.0 * L);
    return k * k;
}

} // namespace

TEST_SUITE("solver") {

TEST_CASE("grid points come in exact mirror pairs") {
    const Grid g{12.0, 6000};
    CHECK(g.step() == doctest::Approx(24.0 / 6001.0).epsilon(1e-15));
    for (int i = 0; i < 40; ++i) CHECK(g.point(i) == -g.point(g.n_points - 1 - i));
    const Grid odd{3.0, 9};
    CHECK(odd.point(4) == 0.0);  // odd count puts a point exactly on the origin
}

TEST_CASE("box levels converge to the exact squares") {
    const Grid g{3.0, 8000};
    const auto sp = eigen_lowest(discretize(kBox, g), g, 6, true);
    for (int n = 0; n < 6; ++n) {
        CHECK(sp.energies[n] == doctest::Approx(box_level(n, 3.0)).epsilon(1e-6));
        CHECK(sp.node_counts[n] == n);
        CHECK(sp.residuals[n] < 1e-6);
    }
}

TEST_CASE("box ground level rises toward the limit from below") {
    const double exact = box_level(0, 3.0);
    double prev = -std::numeric_limits<double>::infinity();
    for (int N : {500, 1000, 2000, 4000}) {
        const Grid g{3.0, N};
        const double e0 = eigen_lowest(discretize(kBox, g), g, 1, false).energies[0];
        CHECK(e0 < exact);
        CHECK(e0 > prev);
        prev = e0;
    }
    CHECK(prev > exact - 2e-8);  // N = 4000 lands within 2e-8
}

TEST_CASE("harmonic oscillator ladder at the working grid") {
    const Grid g{12.0, 6000};
    const auto sp = eigen_lowest(discretize(kHarmonic, g), g, 4, true);
    CHECK(sp.energies[0] == doctest::Approx(1.0).epsilon(1.05e-6));
    CHECK(sp.energies[0] < 1.0);  // second-order scheme approaches from below
    for (int n = 0; n < 4; ++n) {
        CHECK(std::fabs(sp.energies[n] - (2.0 * n + 1.0)) < 3e-5);
        CHECK(sp.node_counts[n] == n);
    }
}

TEST_CASE("folded eigenvectors are parity-pure and normalized") {
    const Grid g{12.0, 6000};
    const auto sp = eigen_lowest(discretize(kHarmonic, g), g, 4, true);
    const double h = g.step();
    for (int k = 0; k < 4; ++k) {
        const auto& v = sp.eigenfunctions[k];
        const int n = static_cast<int>(v.size());
        REQUIRE(n == g.n_points);
        bool sym = true, anti = true;
        for (int i = 0; i < n; ++i) {
            if (v[i] != v[n - 1 - i]) sym = false;
            if (v[i] != -v[n - 1 - i]) anti = false;
        }
        // even/odd half-problem split makes parity exact in fp, not just approximate
        CHECK(((k % 2 == 0) ? sym : anti));
        double norm = 0.0;
        for (double x : v) norm += x * x;
        CHECK(norm * h == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("Richardson pairing arithmetic and flagging") {
    const Grid g{12.0, 2000};
    const auto rep = convergence_check(kHarmonic, g, 2, 1e-6, true);
    REQUIRE(rep.coarse.size() == 2);
    REQUIRE(rep.fine.energies.size() == 2);
    // fine pass runs at exactly half the step: N -> 2N + 1
    CHECK(static_cast<int>(rep.fine.eigenfunctions[0].size()) == 2 * g.n_points + 1);
    for (int n = 0; n < 2; ++n) {
        const double f = rep.fine.energies[n], c = rep.coarse[n];
        CHECK(rep.extrapolated[n] == doctest::Approx((4.0 * f - c) / 3.0).epsilon(1e-15));
        CHECK(rep.error_estimate[n] == doctest::Approx(std::fabs(f - c) / 3.0).epsilon(1e-15));
        CHECK(rep.flagged[n] == (rep.error_estimate[n] > 1e-6));
    }
    // h^2 error cancels: the combined level lands ~1e-11 off, far under either pass
    CHECK(rep.extrapolated[0] == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(rep.flagged[0]);  // raw fine-coarse drift at this grid is ~2e-6

    const auto loose = convergence_check(kHarmonic, g, 1, 1e-4, false);
    CHECK(!loose.flagged[0]);
}

TEST_CASE("symmetric pair reproduces its designed ground level") {
    const auto qp = reconstruct(equidistant_ansatz(2, 2.0), EnergyGauge::origin());
    const auto pot = make_potential(qp);
    const Grid g{8.0, 8000};
    const auto sp = eigen_lowest(discretize(pot, g), g, 2, false);
    // E0 = 2 - 4 a^2 = -14 exactly in this gauge
    CHECK(std::fabs(sp.energies[0] - (-14.0)) < 2e-6);
    CHECK(sp.energies[1] - sp.energies[0] == doctest::Approx(3.768209e-3).epsilon(1e-4));
}

TEST_CASE("triple-well multiplet collapses against the next band") {
    const auto pot = make_potential(reconstruct(equidistant_ansatz(3, 4.0), EnergyGauge::raw()));
    const Grid g{10.0, 24000};
    const auto sp = eigen_lowest(discretize(pot, g), g, 4, false);
    const double spread = sp.energies[2] - sp.energies[0];
    const double gap = sp.energies[3] - sp.energies[2];
    const double ratio = spread / gap;
    CHECK(ratio == doctest::Approx(1.423343e-3).epsilon(1e-3));
    CHECK(ratio > 1.3e-3);
    CHECK(ratio < 1.6e-3);
}

TEST_CASE("folded and unfolded paths agree") {
    // a 1e-12 step far inside the Dirichlet tail breaks the palindrome without
    // moving any level, forcing the full-width solve for comparison
    const Potential bump{
        [](double r) { return r * r + (r > 11.9 ? 1e-12 : 0.0); }, false, "bump", nullptr};
    const Grid g{12.0, 3001};
    const auto tb = discretize(bump, g);
    bool palindromic = true;
    for (size_t i = 0; i < tb.d.size(); ++i)
        if (tb.d[i] != tb.d[tb.d.size() - 1 - i]) { palindromic = false; break; }
    REQUIRE(!palindromic);

    const auto folded = eigen_lowest(discretize(kHarmonic, g), g, 4, false);
    const auto full = eigen_lowest(tb, g, 4, false);
    for (int n = 0; n < 4; ++n)
        CHECK(std::fabs(folded.energies[n] - full.energies[n]) < 1e-9);
}

TEST_CASE("defensive throws") {
    const Grid g{3.0, 9};
    const Potential sing{
        [](double r) { return std::fabs(r) < 1e-9 ? INFINITY : 0.0; }, false, "sing", nullptr};
    CHECK_THROWS_AS(discretize(sing, g), SingularPotentialError);

    const Grid small{3.0, 16};
    const auto T = discretize(kBox, small);
    CHECK_THROWS_AS(eigen_lowest(T, small, 5, false), std::invalid_argument);
}

TEST_CASE("suggested box widths clear the outermost well") {
    CHECK(suggested_half_width(0.0) == doctest::Approx(4.0));
    CHECK(suggested_half_width(1.0) == doctest::Approx(5.0));
    CHECK(suggested_half_width(2.0) == doctest::Approx(6.0));
    CHECK(suggested_half_width(4.0) == doctest::Approx(12.0));  // 3a once 3a > a + 4
}

} // TEST_SUITE
