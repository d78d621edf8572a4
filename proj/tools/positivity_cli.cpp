// Command-line front end.  One subcommand per certificate family; each run
// writes CSV artifacts into the output directory and reports a summary on
// stdout.  Exit codes separate outcomes for CI use:
//   0  success, every claimed inequality certified, artifacts written
//   1  verification failure: the computation ran but a claim did not certify
//   2  usage error: bad flags, bad config, unreadable input
// Configuration comes from built-in defaults, optionally overlaid by a
// "key = value" file named via --config or the POSITIVITY_KIT_CONFIG
// environment variable (the environment wins), then by explicit flags.

#include <CLI11.hpp>

#include <complex>
#include <cstdio>
#include <filesystem>
#include <string>
#include <vector>

#include "positivity/cohomology.hpp"
#include "positivity/config.hpp"
#include "positivity/criteria.hpp"
#include "positivity/csv.hpp"
#include "positivity/maass.hpp"
#include "positivity/spectral.hpp"
#include "positivity/testfuncs.hpp"
#include "positivity/zeta.hpp"

namespace {

using namespace poskit;

constexpr double kLog2 = 0.69314718055994530942;

struct IntRange {
    int lo = 0, hi = 0;
};

IntRange parse_int_range(const std::string& text) {
    const auto dots = text.find("..");
    IntRange r;
    try {
        if (dots == std::string::npos) {
            r.lo = r.hi = std::stoi(text);
        } else {
            r.lo = std::stoi(text.substr(0, dots));
            r.hi = std::stoi(text.substr(dots + 2));
        }
    } catch (const std::exception&) {
        throw CLI::ValidationError("range", "expected N or LO..HI, got: " + text);
    }
    if (r.lo > r.hi) throw CLI::ValidationError("range", "empty range: " + text);
    return r;
}

struct RealRange {
    double lo = 0.0, hi = 0.0;
};

RealRange parse_real_range(const std::string& text) {
    const auto dots = text.find("..");
    if (dots == std::string::npos)
        throw CLI::ValidationError("range", "expected LO..HI, got: " + text);
    RealRange r;
    try {
        r.lo = std::stod(text.substr(0, dots));
        r.hi = std::stod(text.substr(dots + 2));
    } catch (const std::exception&) {
        throw CLI::ValidationError("range", "expected LO..HI, got: " + text);
    }
    if (!(r.lo <= r.hi)) throw CLI::ValidationError("range", "empty range: " + text);
    return r;
}

std::filesystem::path artifact_path(const RunConfig& cfg, const std::string& name) {
    std::filesystem::create_directories(cfg.output_dir);
    return std::filesystem::path(cfg.output_dir) / name;
}

void announce(const CsvTable& table, const std::filesystem::path& path) {
    emit_csv(table, path.string());
    std::printf("wrote %zu rows to %s\n", table.row_count(), path.string().c_str());
}

TestFunction make_tf(int family, bool modified, double p) {
    return modified ? TestFunction::modified_fn(family, p) : TestFunction::plain(family, p);
}

// --- subcommand bodies, each returning the process exit code ---------------

int run_lterm(const RunConfig& cfg, int family, bool modified, double p, RealRange re, double im,
              double step, const std::string& eta_spec) {
    const TestFunction tf = make_tf(family, modified, p);
    CsvTable table({"eta_re", "eta_im", "l_re", "l_im", "err"});
    if (!eta_spec.empty()) {
        // single-point mode: --eta RE[:IM] evaluates one shift and prints it
        const auto colon = eta_spec.find(':');
        double ere = 0.0, eim = 0.0;
        try {
            ere = std::stod(eta_spec.substr(0, colon));
            if (colon != std::string::npos) eim = std::stod(eta_spec.substr(colon + 1));
        } catch (const std::exception&) {
            throw CLI::ValidationError("--eta", "expected RE or RE:IM, got: " + eta_spec);
        }
        const LValue v = l_exp_route(tf, {ere, eim}, cfg.quadrature);
        table.add_row({ere, eim, v.value.real(), v.value.imag(), v.err});
        announce(table, artifact_path(cfg, "lterm.csv"));
        std::printf("l(%g%+gi) = %.10g %+.10gi (err %.3g)\n", ere, eim, v.value.real(),
                    v.value.imag(), v.err);
        return 0;
    }
    for (double x = re.lo; x <= re.hi + 1e-12; x += step) {
        const LValue v = l_exp_route(tf, {x, im}, cfg.quadrature);
        table.add_row({x, im, v.value.real(), v.value.imag(), v.err});
    }
    announce(table, artifact_path(cfg, "lterm.csv"));
    return 0;
}

int run_criteria(const RunConfig& cfg, const std::vector<std::string>& shift_specs,
                 double conductor, int plain_family, int modified_family, double p) {
    ArchimedeanData data;
    data.conductor = conductor;
    for (const auto& spec : shift_specs) {
        const auto colon = spec.find(':');
        try {
            const double re = std::stod(spec.substr(0, colon));
            const double imag = colon == std::string::npos ? 0.0 : std::stod(spec.substr(colon + 1));
            data.shifts.emplace_back(re, imag);
        } catch (const std::exception&) {
            throw CLI::ValidationError("--shift", "expected RE or RE:IM, got: " + spec);
        }
    }
    data.degree = static_cast<int>(data.shifts.size());

    const CriterionVerdict v = evaluate_criteria(data, TestFunction::plain(plain_family, p),
                                                 TestFunction::modified_fn(modified_family, p));
    const char* verdict = v.verdict == Verdict::NonExistence ? "NonExistence"
                          : v.verdict == Verdict::LowZero    ? "LowZero"
                                                             : "Inconclusive";
    CsvTable table({"degree", "conductor", "existence_sum", "existence_err", "lowzero_sum",
                    "lowzero_err", "verdict", "lowzero_also"});
    table.add_row({data.degree, conductor, v.existence_sum, v.existence_err, v.lowzero_sum,
                   v.lowzero_err, verdict, v.lowzero_also});
    announce(table, artifact_path(cfg, "criteria.csv"));
    std::printf("verdict: %s (existence %.6f, low-zero %.6f)\n", verdict, v.existence_sum,
                v.lowzero_sum);
    return 0;
}

int run_realarch(const RunConfig& cfg, double eta_max, double step) {
    const GridProofReport grid = realarch_grid_proof(eta_max, step);
    CsvTable gtable({"clause", "nodes", "min_margin", "worst_node", "passed", "tail_l1",
                     "tail_l3m"});
    gtable.add_row({grid.clause.name, static_cast<unsigned long>(grid.clause.nodes),
                    grid.clause.min_margin, grid.clause.worst_node, grid.clause.passed,
                    grid.tail_l1, grid.tail_l3m});
    announce(gtable, artifact_path(cfg, "realarch_grid.csv"));

    const PartitionReport part = realarch_partition_proof();
    const auto& k = part.constants;
    CsvTable ptable({"n_right", "p_left", "printed_n_right", "printed_p_left", "min_l1_on_n",
                     "max_diff_on_n", "min_l2m_on_p", "max_diff_on_p", "lower_ratio",
                     "upper_ratio", "sign_pattern_ok", "contradiction"});
    ptable.add_comment(part.note);
    ptable.add_row({k.n_right, k.p_left, k.printed_n_right, k.printed_p_left, k.min_l1_on_n,
                    k.max_diff_on_n, k.min_l2m_on_p, k.max_diff_on_p, part.lower_ratio,
                    part.upper_ratio, part.sign_pattern_ok, part.contradiction});
    announce(ptable, artifact_path(cfg, "realarch_partition.csv"));

    const bool ok = grid.passed && part.sign_pattern_ok && part.contradiction;
    std::printf("real-shift certificates: %s\n", ok ? "certified" : "NOT certified");
    return ok ? 0 : 1;
}

int run_gl2(const RunConfig& cfg) {
    const Gl2FigureReport rep = gl2_figure_checks();
    CsvTable table({"check", "clause", "nodes", "min_margin", "worst_node", "passed"});
    for (const auto* check : {&rep.even_window, &rep.odd_window, &rep.full_level, &rep.level_two})
        for (const auto& clause : check->clauses)
            table.add_row({check->name, clause.name, static_cast<unsigned long>(clause.nodes),
                           clause.min_margin, clause.worst_node, clause.passed});
    announce(table, artifact_path(cfg, "gl2_clauses.csv"));

    CsvTable cross({"even_l1", "even_l3m", "odd_l1", "odd_l3m", "level2_l1", "level2_l1m",
                    "coverage_even", "coverage_odd"});
    cross.add_comment(rep.even_window.note);
    cross.add_comment(rep.odd_window.note);
    cross.add_row({rep.even_l1_crossing, rep.even_l3m_crossing, rep.odd_l1_crossing,
                   rep.odd_l3m_crossing, rep.level2_l1_crossing, rep.level2_l1m_crossing,
                   rep.coverage_even, rep.coverage_odd});
    announce(cross, artifact_path(cfg, "gl2_crossings.csv"));

    std::printf("figure claims: %s (crossing coverage %s)\n",
                rep.all_passed() ? "all clauses certified" : "threshold clauses fail near edges",
                rep.coverage_even && rep.coverage_odd ? "holds" : "fails");
    return rep.all_passed() ? 0 : 1;
}

int run_eig_bounds(const RunConfig& cfg, IntRange n) {
    std::vector<int> ns;
    for (int i = n.lo; i <= n.hi; ++i) ns.push_back(i);
    const auto rows = eigenvalue_bound_table(ns);

    // Published values for degrees 3..8, kept for side-by-side reporting.
    auto printed_d = [](int deg) -> int {
        constexpr int table[6] = {174, 212, 273, 318, 376, 424};
        return deg >= 3 && deg <= 8 ? table[deg - 3] : 0;
    };

    CsvTable table({"n", "d_certified", "lambda_bound", "printed_d", "printed_lambda", "delta_d"});
    bool ok = true;
    for (const auto& row : rows) {
        const int pd = printed_d(row.n);
        if (pd == 0) {
            table.add_row({row.n, row.d, row.lambda_bound, "", "", ""});
            continue;
        }
        const double plambda = pd / 2.0 + (std::pow(row.n, 3) - 4.0 * row.n) / 24.0;
        const int delta = row.d - pd;
        table.add_row({row.n, row.d, row.lambda_bound, pd, plambda, delta});
        ok = ok && std::abs(delta) <= 2;
    }
    announce(table, artifact_path(cfg, "eig_bounds.csv"));
    std::printf("eigenvalue bounds: %s\n",
                ok ? "certified (within the scan-margin policy)" : "NOT within policy");
    return ok ? 0 : 1;
}

int run_lubotzky(const RunConfig& cfg) {
    const LubotzkyReport rep = lubotzky_table();
    CsvTable table({"a", "r_max", "lower_bound", "printed_lower", "upper_bound", "contradiction"});
    table.add_comment("threshold " + csv_number(rep.hejhal_threshold) + " on the block count");
    table.add_comment("lambda_68 " + csv_number(rep.lambda_68) + " vs cap " +
                      csv_number(rep.lambda_cap_68));
    table.add_comment(rep.note);
    for (const auto& row : rep.rows)
        table.add_row({row.a, row.r_max, row.lower_bound, row.printed_lower, row.upper_bound,
                       row.contradiction});
    announce(table, artifact_path(cfg, "lubotzky.csv"));
    std::printf("residue ladder: %s\n",
                rep.all_contradict ? "every seed degree ruled out" : "NOT all rows contradict");
    return rep.all_contradict ? 0 : 1;
}

int run_cohomology(const RunConfig& cfg, IntRange n, std::vector<double> supports) {
    std::vector<int> ns;
    for (int i = n.lo; i <= n.hi; ++i) ns.push_back(i);
    const auto rows = vanishing_scan(ns, supports);

    CsvTable table({"n", "best_p", "lhs", "err", "verdict"});
    bool all_vanish = true;
    for (const auto& row : rows) {
        table.add_row({row.n, row.best_p, row.lhs, row.err, row.verdict});
        all_vanish = all_vanish && row.verdict == "vanishes";
    }
    announce(table, artifact_path(cfg, "cohomology.csv"));
    std::printf("cuspidal cohomology: %s\n",
                all_vanish ? "vanishes across the requested degrees"
                           : "NOT certified for every requested degree");
    return all_vanish ? 0 : 1;
}

int run_maass_exclude(const RunConfig& cfg, double step) {
    const ExclusionReport rep = exclusion_proof(step);

    CsvTable tails({"series", "start", "bound", "direct", "remainder", "envelope_ratio"});
    const auto pair = tail_bounds(rep.r_lo, rep.r_hi);
    for (const auto* tb : {&pair.first, &pair.second})
        tails.add_row({tb->series, tb->start, tb->bound, tb->direct, tb->remainder,
                       tb->envelope_ratio});
    announce(tails, artifact_path(cfg, "maass_tails.csv"));

    CsvTable table({"r", "w_prime_3", "lead_1", "lead_2", "ratio", "a2_lower", "v1", "v2", "v3",
                    "displayed_margin", "slack", "err"});
    table.add_comment("min_ratio " + csv_number(rep.min_ratio) + ", max_wp3 " +
                      csv_number(rep.max_wp3) + ", min_lead " + csv_number(rep.min_lead));
    table.add_comment("min_slack " + csv_number(rep.min_slack) + ", lipschitz " +
                      csv_number(rep.lipschitz) + ", max_err " + csv_number(rep.max_err));
    table.add_comment(rep.note);
    for (const auto& node : rep.nodes)
        table.add_row({node.r, node.w_prime_3, node.lead_1, node.lead_2, node.ratio,
                       node.a2_lower, node.v1, node.v2, node.v3, node.displayed_margin,
                       node.slack, node.err});
    announce(table, artifact_path(cfg, "maass_exclude.csv"));
    std::printf("parity window [%.2f, %.2f]: %s\n", rep.r_lo, rep.r_hi,
                rep.contradiction ? "excluded" : "NOT excluded");
    return rep.contradiction ? 0 : 1;
}

int run_zeta_verify(const RunConfig& cfg, int family, double p) {
    const ZeroList zeros = load_zeros(cfg.zero_file);
    const ExplicitFormulaCheck check =
        explicit_formula_residual(zeros, TestFunction::plain(family, p), cfg.quadrature);

    CsvTable table({"zeros_used", "gamma_max", "lhs", "rhs", "residual", "tail_bound", "err",
                    "polar", "lterm", "coeff_sum", "coeff_terms"});
    table.add_row({static_cast<unsigned long>(check.zeros_used), check.gamma_max, check.lhs,
                   check.rhs, check.residual, check.tail_bound, check.err, check.polar,
                   check.lterm, check.coeff_sum, static_cast<unsigned long>(check.coeff_terms)});
    announce(table, artifact_path(cfg, "zeta_verify.csv"));

    const bool ok = std::fabs(check.residual) <= check.tail_bound;
    std::printf("explicit formula with %zu zeros: residual %+.3e %s tail bound %.3e\n",
                check.zeros_used, check.residual, ok ? "within" : "EXCEEDS", check.tail_bound);
    return ok ? 0 : 1;
}

int run_plot_grid(const RunConfig& cfg, const std::string& function, RealRange re, RealRange im,
                  double step, double p) {
    const bool modified = function.size() == 3 && function[2] == 'm';
    const int family = function[1] - '0';
    const TestFunction tf = make_tf(family, modified, p);

    CsvTable table({"re", "im", "h_re", "sign"});
    for (double y = im.lo; y <= im.hi + 1e-12; y += step)
        for (double x = re.lo; x <= re.hi + 1e-12; x += step) {
            const double v = h_eval(tf, {x, y}, cfg.quadrature).real();
            table.add_row({x, y, v, v > 0.0 ? 1 : (v < 0.0 ? -1 : 0)});
        }
    announce(table, artifact_path(cfg, "plot_grid.csv"));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"positivity-kit: explicit-formula positivity certificates"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "positivity-kit 1.0.0");

    std::string config_path;
    std::string out_dir;
    std::string zero_file;
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "key = value config file");
        sub->add_option("--out", out_dir, "output directory for CSV artifacts");
    };
    auto make_cfg = [&]() {
        RunConfig cfg = resolve_config(config_path);
        if (!out_dir.empty()) cfg.output_dir = out_dir;
        if (!zero_file.empty()) cfg.zero_file = zero_file;
        cfg.validate();
        return cfg;
    };

    int rc = 0;

    // lterm
    int lt_family = 1;
    bool lt_modified = false;
    double lt_p = kLog2, lt_im = 0.0, lt_step = 0.05;
    std::string lt_re = "-0.499..2.0";
    auto* lterm = app.add_subcommand("lterm", "archimedean l-term values on a shift grid");
    add_common(lterm);
    lterm->add_option("--family", lt_family, "kernel family")->check(CLI::Range(1, 3));
    lterm->add_flag("--modified", lt_modified, "use the modified kernel");
    lterm->add_option("--support", lt_p, "test function support");
    lterm->add_option("--re", lt_re, "real shift range LO..HI");
    lterm->add_option("--im", lt_im, "imaginary shift component");
    lterm->add_option("--step", lt_step, "grid step");
    std::string lt_eta;
    lterm->add_option("--eta", lt_eta, "single shift RE or RE:IM (overrides the grid)");
    lterm->callback([&] {
        rc = run_lterm(make_cfg(), lt_family, lt_modified, lt_p, parse_real_range(lt_re), lt_im,
                       lt_step, lt_eta);
    });

    // criteria
    std::vector<std::string> cr_shifts;
    double cr_conductor = 1.0, cr_p = kLog2;
    int cr_plain = 1, cr_modified = 3;
    auto* criteria = app.add_subcommand("criteria", "existence / low-zero verdict for one datum");
    add_common(criteria);
    criteria->add_option("--shift", cr_shifts, "archimedean shift RE or RE:IM (repeatable)")
        ->required();
    criteria->add_option("--conductor", cr_conductor, "conductor D >= 1");
    criteria->add_option("--plain-family", cr_plain, "plain kernel family")->check(CLI::Range(1, 3));
    criteria->add_option("--modified-family", cr_modified, "modified kernel family")
        ->check(CLI::Range(1, 3));
    criteria->add_option("--support", cr_p, "test function support");
    criteria->callback([&] {
        rc = run_criteria(make_cfg(), cr_shifts, cr_conductor, cr_plain, cr_modified, cr_p);
    });

    // realarch
    double ra_eta_max = -1.0, ra_step = -1.0;
    auto* realarch = app.add_subcommand("realarch", "real-shift grid and partition certificates");
    add_common(realarch);
    realarch->add_option("--eta-max", ra_eta_max, "grid upper end");
    realarch->add_option("--step", ra_step, "grid step");
    realarch->callback([&] {
        const RunConfig cfg = make_cfg();
        rc = run_realarch(cfg, ra_eta_max > 0 ? ra_eta_max : cfg.eta_max,
                          ra_step > 0 ? ra_step : cfg.step_realarch);
    });

    // gl2
    auto* gl2 = app.add_subcommand("gl2", "degree-2 figure claims with margin certification");
    add_common(gl2);
    gl2->callback([&] { rc = run_gl2(make_cfg()); });

    // eig-bounds
    std::string eb_range = "3..8";
    int eb_min = 0, eb_max = 0;
    auto* eig = app.add_subcommand("eig-bounds", "certified Laplace eigenvalue bounds");
    add_common(eig);
    eig->add_option("--n", eb_range, "degree range N or LO..HI");
    eig->add_option("--n-min", eb_min, "lowest degree");
    eig->add_option("--n-max", eb_max, "highest degree");
    eig->callback([&] {
        IntRange n = eb_min > 0 || eb_max > 0 ? IntRange{eb_min > 0 ? eb_min : 3,
                                                         eb_max > 0 ? eb_max : 8}
                                              : parse_int_range(eb_range);
        rc = run_eig_bounds(make_cfg(), n);
    });

    // lubotzky
    auto* lub = app.add_subcommand("lubotzky", "residue-ladder exclusion table");
    add_common(lub);
    lub->callback([&] { rc = run_lubotzky(make_cfg()); });

    // cohomology
    std::string co_range = "2..26";
    std::vector<double> co_supports;
    auto* cohom = app.add_subcommand("cohomology", "cuspidal cohomology vanishing scan");
    add_common(cohom);
    cohom->add_option("--n", co_range, "degree range N or LO..HI");
    cohom->add_option("--support", co_supports, "candidate supports (repeatable)");
    cohom->callback([&] {
        if (co_supports.empty()) co_supports = {3.0, 6.0, 9.0, 12.0};
        rc = run_cohomology(make_cfg(), parse_int_range(co_range), co_supports);
    });

    // maass-exclude
    double mx_step = -1.0;
    auto* maass = app.add_subcommand("maass-exclude", "parity-relation window exclusion");
    add_common(maass);
    maass->add_option("--step", mx_step, "grid step (at most 0.001)");
    maass->callback([&] {
        const RunConfig cfg = make_cfg();
        rc = run_maass_exclude(cfg, mx_step > 0 ? mx_step : cfg.step_maass);
    });

    // zeta-verify
    int zv_family = 1;
    double zv_p = kLog2;
    auto* zeta = app.add_subcommand("zeta-verify", "explicit-formula residual against zeta zeros");
    add_common(zeta);
    zeta->add_option("--zeros", zero_file, "zero ordinate file");
    zeta->add_option("--family", zv_family, "kernel family")->check(CLI::Range(1, 3));
    zeta->add_option("--support", zv_p, "test function support");
    zeta->callback([&] { rc = run_zeta_verify(make_cfg(), zv_family, zv_p); });

    // plot-grid
    std::string pg_function, pg_re = "0..30", pg_im = "0..0.49";
    double pg_step = -1.0, pg_p = kLog2;
    auto* plot = app.add_subcommand("plot-grid", "sign grid of a transform over a rectangle");
    add_common(plot);
    plot->add_option("--function", pg_function, "transform name")
        ->required()
        ->check(CLI::IsMember({"h1", "h2", "h3", "h1m", "h2m", "h3m"}));
    plot->add_option("--re", pg_re, "real range LO..HI");
    plot->add_option("--im", pg_im, "imaginary range LO..HI");
    plot->add_option("--step", pg_step, "grid step");
    plot->add_option("--support", pg_p, "test function support");
    plot->callback([&] {
        const RunConfig cfg = make_cfg();
        rc = run_plot_grid(cfg, pg_function, parse_real_range(pg_re), parse_real_range(pg_im),
                           pg_step > 0 ? pg_step : cfg.step_plot, pg_p);
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return rc;
}
