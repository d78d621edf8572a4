// Acceptance gates for the positivity kit.  Eight end-to-end reproduction
// criteria, each printed as a single PASS/FAIL line with indented detail
// underneath.  The process exits 0 only if every criterion holds, so the
// binary doubles as a regression gate for the published tables, the grid
// certificates, and the randomized property suites.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdarg>
#include <cstdio>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "positivity/cohomology.hpp"
#include "positivity/criteria.hpp"
#include "positivity/lterm.hpp"
#include "positivity/maass.hpp"
#include "positivity/spectral.hpp"
#include "positivity/testfuncs.hpp"
#include "positivity/zeta.hpp"

using namespace poskit;
using cplx = std::complex<double>;

namespace {

std::string fmt(const char* f, ...) {
    char buf[512];
    va_list ap;
    va_start(ap, f);
    std::vsnprintf(buf, sizeof buf, f, ap);
    va_end(ap);
    return buf;
}

struct Checker {
    bool ok = true;
    std::vector<std::string> notes;

    void require(bool cond, const std::string& what) {
        if (!cond) {
            ok = false;
            notes.push_back("failed: " + what);
        }
    }
    void info(const std::string& what) { notes.push_back(what); }
};

bool report(int index, const std::string& title, const Checker& c) {
    std::printf("%s criterion %d: %s\n", c.ok ? "PASS" : "FAIL", index, title.c_str());
    for (const auto& note : c.notes) std::printf("    %s\n", note.c_str());
    std::fflush(stdout);
    return c.ok;
}

constexpr double kPrintedD[6] = {174.0, 212.0, 273.0, 318.0, 376.0, 424.0};
constexpr double kPrintedLambda[6] = {87.625, 108.0, 140.875, 167.0, 201.125, 232.0};

// published product-positivity table: degree, kernel support, left side
// (two degrees, 8 and 21, have no printed value; independently computed
// references are pinned for them below)
struct PrintedRow {
    int n;
    double p;
    double lhs;
};
constexpr PrintedRow kProductTable[23] = {
    {2, 3.0, -2.821},  {3, 6.0, -8.113},  {4, 6.0, -17.02},  {5, 6.0, -28.30},
    {6, 6.0, -38.51},  {7, 6.0, -50.30},  {9, 6.0, -71.43},  {10, 6.0, -80.27},
    {11, 6.0, -89.68}, {12, 6.0, -96.45}, {13, 6.0, -103.4}, {14, 6.0, -107.5},
    {15, 6.0, -111.4}, {16, 6.0, -112.1}, {17, 6.0, -112.4}, {18, 6.0, -109.2},
    {19, 6.0, -105.4}, {20, 6.0, -97.87}, {22, 6.0, -77.30}, {23, 6.0, -64.06},
    {24, 6.0, -46.70}, {25, 6.0, -28.18}, {26, 6.0, -5.388}};

Checker check_eigenvalue_bounds(const std::vector<EigenvalueBoundRow>& bounds) {
    Checker c;
    c.require(bounds.size() == 6, "bound table has six rows for degrees 3..8");
    if (bounds.size() != 6) return c;
    std::string ds = "certified d =", deltas = "deltas vs printed =";
    for (std::size_t i = 0; i < 6; ++i) {
        const auto& row = bounds[i];
        const double n = row.n;
        const double delta = row.d - kPrintedD[i];
        ds += fmt(" %d", row.d);
        deltas += fmt(" %+g", delta);
        c.require(std::abs(delta) <= 2.0,
                  fmt("degree %d: certified d = %d within 2 of printed %g", row.n, row.d,
                      kPrintedD[i]));
        c.require(std::abs(row.lambda_bound - (row.d / 2.0 + (n * n * n - 4.0 * n) / 24.0)) <
                      1e-12,
                  fmt("degree %d: lambda bound follows from certified d", row.n));
        c.require(std::abs(kPrintedD[i] / 2.0 + (n * n * n - 4.0 * n) / 24.0 -
                           kPrintedLambda[i]) < 1e-9,
                  fmt("degree %d: printed lambda %g follows arithmetically from printed d",
                      row.n, kPrintedLambda[i]));
    }
    c.info(ds + " (printed 174 212 273 318 376 424)");
    c.info(deltas);
    return c;
}

Checker check_product_table() {
    Checker c;
    double worst = 0.0;
    for (const auto& row : kProductTable) {
        const auto eval = rs_positivity_lhs(build_multiset(row.n), row.p);
        worst = std::max(worst, std::abs(eval.lhs - row.lhs));
        c.require(std::abs(eval.lhs - row.lhs) <= 0.05,
                  fmt("degree %d: left side %.4f within 0.05 of printed %.4f", row.n, eval.lhs,
                      row.lhs));
        c.require(eval.lhs + eval.err < 0.0,
                  fmt("degree %d: negative beyond propagated error", row.n));
    }
    // the two rows without printed values, pinned to independent references
    const auto e8 = rs_positivity_lhs(build_multiset(8), 6.0);
    const auto e21 = rs_positivity_lhs(build_multiset(21), 6.0);
    c.require(std::abs(e8.lhs - -60.353770) <= 0.05 && e8.lhs + e8.err < 0.0,
              "degree 8 (unprinted) matches the pinned reference and stays negative");
    c.require(std::abs(e21.lhs - -89.547049) <= 0.05 && e21.lhs + e21.err < 0.0,
              "degree 21 (unprinted) matches the pinned reference and stays negative");
    c.info(fmt("25 degrees checked; worst deviation from a printed value %.4f", worst));
    return c;
}

Checker check_residue_ladder(const std::vector<EigenvalueBoundRow>& bounds) {
    Checker c;
    const auto rep = lubotzky_table(bounds);
    c.require(std::abs(rep.hejhal_threshold - 33.04) <= 0.01,
              fmt("block-count threshold %.4f within 0.01 of 33.04", rep.hejhal_threshold));
    c.require(std::abs(rep.lambda_68 - 12916.6) <= 0.5,
              fmt("degree-68 residue eigenvalue %.4f within 0.5 of 12916.6", rep.lambda_68));
    c.require(rep.rows.size() == 32, "one row per seed degree 3..34");
    for (const auto& row : rep.rows)
        c.require(row.contradiction,
                  fmt("seed degree %d: lower bound %.4f exceeds upper bound %.4f", row.a,
                      row.lower_bound, row.upper_bound));
    // printed-column reproduction: the small seed degrees derive from the
    // printed d values, the rest from the unconditional parameter bound
    for (const auto& row : rep.rows) {
        if (row.a == 3) continue;
        const double derived = row.a <= 8 ? kPrintedD[row.a - 3] - row.a / 4.0
                                          : trivial_musum_bound(row.a);
        c.require(std::abs(derived - row.printed_lower) <= 0.01 + 1e-9,
                  fmt("seed degree %d: derived lower bound %.4f matches printed %.4f to 0.01",
                      row.a, derived, row.printed_lower));
    }
    // the first row prints 171.25 where its own derivation gives 173.25;
    // both values are pinned so the discrepancy stays on the record
    const auto& a3 = rep.rows.front();
    const double a3_derived = kPrintedD[0] - 3.0 / 4.0;
    c.require(std::abs(a3.printed_lower - 171.25) < 1e-9 &&
                  std::abs(a3_derived - 173.25) < 1e-9,
              "seed degree 3 discrepancy is pinned (printed 171.25, derived 173.25)");
    c.info(fmt("seed degree 3: printed lower bound %.2f, derived %.2f (discrepancy %.2f, "
               "contradiction holds either way)",
               a3.printed_lower, a3_derived, a3_derived - a3.printed_lower));
    c.info(fmt("threshold %.4f, residue eigenvalue %.4f vs cap %.1f", rep.hejhal_threshold,
               rep.lambda_68, rep.lambda_cap_68));
    return c;
}

Checker check_partition_proof() {
    Checker c;
    const auto report = realarch_partition_proof();
    const auto& k = report.constants;
    c.require(std::abs(k.n_right - 5.4471) <= 0.001,
              fmt("N boundary %.7f within 0.001 of 5.4471", k.n_right));
    c.require(std::abs(k.p_left - 8.6553) <= 0.001,
              fmt("P boundary %.7f within 0.001 of 8.6553", k.p_left));
    c.require(report.contradiction && report.upper_ratio < report.lower_ratio,
              "counting ratios contradict (upper below lower)");
    c.info(fmt("recomputed boundaries: N right %.7f, P left %.7f", k.n_right, k.p_left));
    c.info(fmt("recomputed ratios: lower %.6f, upper %.6f (printed pair .483104 / .298403 "
               "does not reproduce; the contradiction itself holds)",
               report.lower_ratio, report.upper_ratio));
    return c;
}

std::string clause_summary(const FigureCheck& fig) {
    std::string s = fig.name + ":";
    for (const auto& clause : fig.clauses) {
        s += fmt(" %s %s (margin %.2e", clause.name.c_str(), clause.passed ? "ok" : "FAIL",
                 clause.min_margin);
        if (!clause.passed && !clause.failing_nodes.empty())
            s += fmt(" at r = %.3f", clause.failing_nodes.front());
        s += ")";
    }
    return s;
}

Checker check_figure_grids() {
    Checker c;
    const auto rep = gl2_figure_checks();
    c.require(rep.even_window.passed, "even-shift window grid holds with margin");
    c.require(rep.odd_window.passed, "odd-shift window grid holds with margin");
    c.require(rep.level_two.passed, "conductor-two crossing grid holds with margin");
    c.require(rep.full_level.passed, "implication grids hold with margin");
    for (const auto* fig : {&rep.even_window, &rep.odd_window, &rep.level_two, &rep.full_level})
        c.info(clause_summary(*fig));
    c.info(fmt("crossings: even %.6f / %.6f, odd %.6f / %.6f, conductor-two %.6f / %.6f",
               rep.even_l1_crossing, rep.even_l3m_crossing, rep.odd_l1_crossing,
               rep.odd_l3m_crossing, rep.level2_l1_crossing, rep.level2_l1m_crossing));
    c.info("margins already include the three-sigma evaluation-error allowance");
    return c;
}

Checker check_parity_window() {
    Checker c;
    const auto [fp, fppp] = tail_bounds();
    c.require(fp.bound <= 1.2e-7, fmt("first-derivative series tail %.6e at most 1.2e-7",
                                      fp.bound));
    c.require(fppp.bound <= 2.8e-5, fmt("third-derivative series tail %.6e at most 2.8e-5",
                                        fppp.bound));
    const auto rep = exclusion_proof();
    c.require(std::abs(rep.min_ratio - 1.475) <= 0.01,
              fmt("kernel ratio minimum %.6f within 0.01 of 1.475", rep.min_ratio));
    const auto argmin = std::min_element(
        rep.nodes.begin(), rep.nodes.end(),
        [](const ExclusionNode& a, const ExclusionNode& b) { return a.ratio < b.ratio; });
    c.require(argmin != rep.nodes.end() && std::abs(argmin->r - 6.07) < 1e-9,
              "ratio minimum sits at the left edge r = 6.07");
    c.require(std::abs(rep.step - 1e-3) < 1e-12 && rep.nodes.size() == 71,
              "exclusion grid covers [6.07, 6.14] at step 0.001");
    c.require(rep.contradiction, "contradiction inequality holds across the window");
    c.info(fmt("tails %.6e / %.6e, ratio minimum %.6f at r = %.3f, minimum slack %.4e",
               fp.bound, fppp.bound, rep.min_ratio, argmin->r, rep.min_slack));
    return c;
}

Checker check_explicit_formula() {
    Checker c;
    const std::string data_dir = POSKIT_DATA_DIR;
    const auto zeros = load_zeros(data_dir + "/zeta_zeros_100.txt");
    const auto tf = TestFunction::plain(1, std::log(2.0));
    const auto res = explicit_formula_residual(zeros, tf);
    c.require(std::abs(res.residual) <= res.tail_bound,
              fmt("residual %.6e within the tail bound %.6e", res.residual, res.tail_bound));
    c.require(res.tail_bound < 1e-4, fmt("tail bound %.6e below 1e-4", res.tail_bound));
    c.info(fmt("100 ordinates: zero side %.9e, arithmetic side %.9e, residual %.6e",
               res.lhs, res.rhs, res.residual));
    const std::string longer = data_dir + "/zeta_zeros_1000.txt";
    if (std::filesystem::exists(longer)) {
        const auto res2 = explicit_formula_residual(load_zeros(longer), tf);
        c.require(std::abs(res2.residual) < std::abs(res.residual),
                  "residual strictly decreases with a thousand ordinates");
        c.info(fmt("1000 ordinates: residual %.6e (improvement factor %.0f)", res2.residual,
                   std::abs(res.residual) / std::abs(res2.residual)));
    } else {
        c.require(false, "thousand-ordinate file is bundled");
    }
    return c;
}

double h_quadrature_oracle(const TestFunction& tf, double r) {
    return integrate([&](double x) { return 2.0 * g_eval(tf, x) * std::cos(r * x); }, 0.0,
                     tf.p)
        .value;
}

Checker check_property_suites(const std::vector<EigenvalueBoundRow>& bounds) {
    Checker c;
    const double p = std::log(2.0);

    // two independent evaluation routes for the archimedean term
    {
        const std::vector<TestFunction> tfs = {
            TestFunction::plain(1, p),       TestFunction::plain(2, p),
            TestFunction::plain(3, p),       TestFunction::modified_fn(1, p),
            TestFunction::modified_fn(2, p), TestFunction::modified_fn(3, p)};
        std::mt19937 rng(0xC0FFEE);
        std::uniform_real_distribution<double> re_dist(-0.49, 20.0);
        std::uniform_real_distribution<double> im_dist(-20.0, 20.0);
        double worst = 0.0;
        for (int i = 0; i < 200; ++i) {
            const auto& tf = tfs[static_cast<std::size_t>(i) % tfs.size()];
            const cplx eta(re_dist(rng), im_dist(rng));
            const double delta =
                std::abs(l_exp_route(tf, eta).value - l_digamma_route(tf, eta).value);
            worst = std::max(worst, delta);
        }
        c.require(worst <= 1e-8, fmt("archimedean routes agree to 1e-8 (worst %.2e)", worst));
        c.info(fmt("dual archimedean routes on 200 random shifts: worst delta %.2e", worst));
    }

    // closed-form transforms of the modified functions against quadrature
    {
        constexpr double pi = 3.14159265358979323846;
        double worst = 0.0;
        for (int family : {1, 2, 3}) {
            const TestFunction tf = TestFunction::modified_fn(family, p, 14.13472);
            for (double r : {0.0, 1.0, 5.0, 13.0, 20.0, pi / p, 2.0 * pi / p, 3.0 * pi / p})
                worst = std::max(worst, std::abs(h_eval(tf, cplx(r, 0.0)).real() -
                                                 h_quadrature_oracle(tf, r)));
        }
        c.require(worst <= 1e-8, fmt("closed-form transforms match quadrature (worst %.2e)",
                                     worst));
        c.info(fmt("closed form vs quadrature on 24 transform points: worst delta %.2e",
                   worst));
    }

    // positivity of the smoothed transforms across the comparison strip
    {
        bool all = true;
        double floor_value = 1e300;
        for (int family : {1, 2, 3}) {
            const auto res =
                strip_positivity_check(TestFunction(family, p), 0.0, 30.0, 0.0, 0.49, 0.1);
            all = all && res.positive && res.min_value > 0.0;
            floor_value = std::min(floor_value, res.min_value);
        }
        c.require(all, "smoothed transforms stay positive on the strip grid");
        c.info(fmt("strip grid [0,30] x [0,0.49] at step 0.1: smallest value %.3e",
                   floor_value));
    }

    // eigenvalue identity for residue parameter ladders
    {
        std::mt19937 rng(0xA11CEu);
        std::uniform_real_distribution<double> re(-0.49, 0.49);
        std::uniform_real_distribution<double> im(-10.0, 10.0);
        std::uniform_int_distribution<int> adist(1, 6), rdist(1, 8), coin(0, 1);
        double worst = 0.0;
        for (int trial = 0; trial < 500; ++trial) {
            const int a = adist(rng), r = rdist(rng);
            std::vector<cplx> mu;
            while (static_cast<int>(mu.size()) < a) {
                if (a - static_cast<int>(mu.size()) >= 2 && coin(rng)) {
                    const cplx z(re(rng), im(rng));
                    mu.push_back(z);
                    mu.push_back(std::conj(z));
                } else {
                    mu.push_back(re(rng));
                }
            }
            double musum = 0.0;
            for (const auto& z : mu) musum += (z * z).real();
            const double n = a * r;
            const double lambda = laplace_eigenvalue(residue_params({a, r, mu}));
            const double lhs = 2.0 * lambda - (n * n * n - n) / 12.0;
            const double rhs = -r * musum - a * (static_cast<double>(r) * r * r - r) / 12.0;
            worst = std::max(worst,
                             std::abs(lhs - rhs) / std::max(1.0, std::abs(lhs)));
        }
        c.require(worst <= 1e-10,
                  fmt("residue eigenvalue identity on 500 random ladders (worst %.2e)",
                      worst));
        c.info(fmt("residue eigenvalue identity: worst relative defect %.2e", worst));
    }

    // random probes never beat the certified three-value maximum
    {
        std::mt19937 rng(0x5EC70401u);
        std::normal_distribution<double> gauss(0.0, 1.0);
        const auto& grid = SGrid::instance();
        bool all = true;
        double tightest = 1e300;
        for (int n = 3; n <= 6; ++n) {
            const double d = bounds[static_cast<std::size_t>(n - 3)].d;
            double best = -1e9, allowance = 0.0;
            for (const auto& part : three_value_partitions(n)) {
                const auto r = three_value_max({n, d, part[0], part[1], part[2], 2e-3});
                best = std::max(best, r.max_value);
                allowance = std::max(allowance, r.lipschitz * r.step + 3.0 * r.err);
            }
            allowance += n * 3.0 * grid.node_err();
            double worst = -1e9;
            std::vector<double> r(static_cast<std::size_t>(n));
            for (int trial = 0; trial < 100000; ++trial) {
                double mean = 0.0;
                for (auto& x : r) mean += (x = gauss(rng));
                mean /= n;
                double norm = 0.0;
                for (auto& x : r) {
                    x -= mean;
                    norm += x * x;
                }
                if (norm < 1e-12) continue;
                const double scale = std::sqrt(d / norm);
                double value = 0.0;
                for (const auto& x : r) value += grid.s(x * scale);
                worst = std::max(worst, value);
            }
            all = all && worst <= best + allowance && worst < 0.0;
            tightest = std::min(tightest, best + allowance - worst);
        }
        c.require(all, "Monte-Carlo probes never beat the three-value maximum for n <= 6");
        c.info(fmt("100000 random probes per degree 3..6: slimmest maximum-to-probe gap %.3e",
                   tightest));
    }
    return c;
}

}  // namespace

int main() {
    int passed = 0, total = 0;
    const auto tally = [&](bool ok) {
        ++total;
        if (ok) ++passed;
    };

    const auto bounds = eigenvalue_bound_table({3, 4, 5, 6, 7, 8});

    tally(report(1, "certified eigenvalue bounds reproduce the degree table",
                 check_eigenvalue_bounds(bounds)));
    tally(report(2, "product positivity certifies vanishing through degree 26",
                 check_product_table()));
    tally(report(3, "residue ladder exclusion table", check_residue_ladder(bounds)));
    tally(report(4, "real-shift partition constants", check_partition_proof()));
    tally(report(5, "degree-2 figure window and crossing grids", check_figure_grids()));
    tally(report(6, "parity window tails, ratio minimum, and exclusion",
                 check_parity_window()));
    tally(report(7, "explicit formula end to end on the zero data",
                 check_explicit_formula()));
    tally(report(8, "randomized property suites", check_property_suites(bounds)));

    std::printf("%d/%d criteria passed\n", passed, total);
    return passed == total ? 0 : 1;
}
