#include <catch2/catch_amalgamated.hpp>

#include <complex>
#include <random>

#include "positivity/spectral.hpp"

using namespace poskit;
using Catch::Approx;

namespace {

constexpr double kPrintedD[6] = {174.0, 212.0, 273.0, 318.0, 376.0, 424.0};
constexpr double kPrintedLambda[6] = {87.625, 108.0, 140.875, 167.0, 201.125, 232.0};

const std::vector<EigenvalueBoundRow>& bound_table() {
    static const auto table = eigenvalue_bound_table({3, 4, 5, 6, 7, 8});
    return table;
}

}  // namespace

TEST_CASE("laplace eigenvalue from parameter multisets", "[spectral]") {
    const std::complex<double> mu(0.0, 9.534);

    SECTION("degree two cusp seed") {
        const LanglandsParams p{2, {mu, -mu}};
        CHECK(laplace_eigenvalue(p) == Approx(91.147156).margin(1e-9));
    }
    SECTION("zero parameters give the base eigenvalue") {
        CHECK(laplace_eigenvalue({3, {0.0, 0.0, 0.0}}) == Approx(1.0).margin(1e-12));
        CHECK(laplace_eigenvalue({1, {0.0}}) == Approx(0.0).margin(1e-12));
    }
    SECTION("conjugation symmetric off-axis parameters are accepted") {
        const std::complex<double> z(0.3, 2.0);
        const LanglandsParams p{3, {z, std::conj(z), -2.0 * z.real()}};
        CHECK(std::isfinite(laplace_eigenvalue(p)));
    }
    SECTION("a complex eigenvalue is rejected") {
        CHECK_THROWS_AS(laplace_eigenvalue({2, {{0.0, 2.0}, {0.5, 1.0}}}), std::domain_error);
    }
    SECTION("parameter count must match the degree") {
        CHECK_THROWS_AS(laplace_eigenvalue({3, {0.0, 0.0}}), std::invalid_argument);
        CHECK_THROWS_AS(laplace_eigenvalue({0, {}}), std::invalid_argument);
    }
}

TEST_CASE("trivial cusp form bounds", "[spectral]") {
    CHECK(trivial_bound(2) == Approx(103.68).margin(1e-9));
    CHECK(trivial_eigenvalue_bound(2) == Approx(51.84).margin(1e-9));
    CHECK(trivial_bound(9) == Approx(58.32).margin(1e-9));
    CHECK(trivial_musum_bound(9) == Approx(56.07).margin(1e-9));
    CHECK(trivial_bound(10) == Approx(57.6).margin(1e-9));
    CHECK(trivial_musum_bound(10) == Approx(55.10).margin(1e-9));
    CHECK_THROWS_AS(trivial_bound(1), std::invalid_argument);
}

TEST_CASE("three value partitions enumerate multiplicity splits", "[spectral]") {
    CHECK(three_value_partitions(3) ==
          std::vector<std::array<int, 3>>{{1, 1, 1}});
    CHECK(three_value_partitions(4) ==
          std::vector<std::array<int, 3>>{{2, 1, 1}});
    const auto p8 = three_value_partitions(8);
    REQUIRE(p8.size() == 5);
    for (const auto& want : std::vector<std::array<int, 3>>{
             {6, 1, 1}, {5, 2, 1}, {4, 3, 1}, {4, 2, 2}, {3, 3, 2}})
        CHECK(std::find(p8.begin(), p8.end(), want) != p8.end());
}

TEST_CASE("three value maximum scan", "[spectral]") {
    SECTION("degree three at the critical sphere") {
        const auto r = three_value_max({3, 174.0, 1, 1, 1, 2e-3});
        CHECK(r.max_value == Approx(-0.003604314).margin(2e-6));
        CHECK(r.err < 1e-9);
        CHECK(r.certified_negative);
        // extremal configuration is the merged two-value point (x, x, -2x)
        CHECK(std::abs(r.r3) == Approx(10.77033).margin(2e-3));
        CHECK(r.r1 == Approx(r.r2).margin(2e-3));
        // constraint residuals at the reported argmax
        CHECK(r.r1 + r.r2 + r.r3 == Approx(0.0).margin(1e-9));
        CHECK(r.r1 * r.r1 + r.r2 * r.r2 + r.r3 * r.r3 == Approx(174.0).margin(1e-7));
    }
    SECTION("small spheres are deep inside the negative region") {
        const auto r = three_value_max({3, 1.0, 1, 1, 1, 2e-3});
        CHECK(r.max_value == Approx(-0.694308244).margin(2e-6));
        CHECK(r.certified_negative);
    }
    SECTION("the certification flips sign just above the table edge") {
        CHECK(three_value_max({3, 175.0, 1, 1, 1, 2e-3}).certified_negative);
        const auto above = three_value_max({3, 176.0, 1, 1, 1, 2e-3});
        CHECK(above.max_value > 0.0);
        CHECK_FALSE(above.certified_negative);
    }
    SECTION("degree eight partitions all certify at the table edge") {
        double v431 = 0.0, v422 = 0.0, v521 = 0.0, v332 = 0.0;
        for (const auto& p : three_value_partitions(8)) {
            const auto r = three_value_max({8, 424.0, p[0], p[1], p[2], 2e-3});
            CHECK(r.certified_negative);
            if (p == std::array<int, 3>{4, 3, 1}) v431 = r.max_value;
            if (p == std::array<int, 3>{4, 2, 2}) v422 = r.max_value;
            if (p == std::array<int, 3>{5, 2, 1}) v521 = r.max_value;
            if (p == std::array<int, 3>{3, 3, 2}) v332 = r.max_value;
        }
        // partitions that merge to the same two-value split share a maximum
        CHECK(v431 == Approx(v422).margin(1e-6));
        CHECK(v521 == Approx(v332).margin(1e-6));
    }
    SECTION("input validation") {
        CHECK_THROWS_AS(three_value_max({3, -1.0, 1, 1, 1, 2e-3}), std::invalid_argument);
        CHECK_THROWS_AS(three_value_max({4, 10.0, 1, 2, 1, 2e-3}), std::invalid_argument);
        CHECK_THROWS_AS(three_value_max({5, 10.0, 2, 1, 1, 2e-3}), std::invalid_argument);
        CHECK_THROWS_AS(three_value_max({3, 10.0, 1, 1, 1, 0.0}), std::invalid_argument);
    }
}

TEST_CASE("certified eigenvalue bound table", "[spectral]") {
    const auto& rows = bound_table();
    REQUIRE(rows.size() == 6);
    const int expected_d[6] = {175, 213, 274, 319, 378, 425};
    for (std::size_t i = 0; i < 6; ++i) {
        CAPTURE(rows[i].n);
        CHECK(rows[i].d == expected_d[i]);
        CHECK(std::abs(rows[i].d - kPrintedD[i]) <= 2.0);
        const double n = rows[i].n;
        CHECK(rows[i].lambda_bound ==
              Approx(rows[i].d / 2.0 + (n * n * n - 4.0 * n) / 24.0).margin(1e-12));
        CHECK(std::abs(rows[i].lambda_bound - kPrintedLambda[i]) <= 1.0);
        if (i > 0) CHECK(rows[i].d > rows[i - 1].d);
    }
}

TEST_CASE("monte carlo probes never beat the three value maximum", "[spectral]") {
    std::mt19937 rng(0x5EC70401u);
    std::normal_distribution<double> gauss(0.0, 1.0);
    const auto& table = bound_table();
    const auto& grid = SGrid::instance();
    for (int n = 3; n <= 6; ++n) {
        const double d = table[static_cast<std::size_t>(n - 3)].d;
        double best = -1e9, allowance = 0.0;
        for (const auto& p : three_value_partitions(n)) {
            const auto r = three_value_max({n, d, p[0], p[1], p[2], 2e-3});
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
        CAPTURE(n, worst, best, allowance);
        CHECK(worst <= best + allowance);
        CHECK(worst < 0.0);
    }
}

TEST_CASE("residue parameter ladders", "[spectral]") {
    const std::complex<double> mu(0.0, 9.534);

    SECTION("degree 68 residue of the degree 2 seed") {
        const auto p = residue_params({2, 34, {mu, -mu}});
        REQUIRE(p.n == 68);
        REQUIRE(p.mu.size() == 68);
        CHECK(p.mu.front() == std::complex<double>(16.5, 9.534));
        CHECK(p.mu[1] == std::complex<double>(16.5, -9.534));
        CHECK(p.mu.back() == std::complex<double>(-16.5, -9.534));
        CHECK(laplace_eigenvalue(p) == Approx(12916.503304).margin(1e-5));
    }
    SECTION("one block reproduces the seed") {
        const ResidueSpec spec{3, 1, {mu, -mu, 0.0}};
        const auto p = residue_params(spec);
        CHECK(laplace_eigenvalue(p) ==
              Approx(laplace_eigenvalue({3, spec.mu_cusp})).margin(1e-12));
    }
    SECTION("the full ladder of a trivial seed has eigenvalue zero") {
        for (int r : {2, 5, 9})
            CHECK(laplace_eigenvalue(residue_params({1, r, {0.0}})) ==
                  Approx(0.0).margin(1e-12));
    }
    SECTION("input validation") {
        CHECK_THROWS_AS(residue_params({0, 3, {}}), std::invalid_argument);
        CHECK_THROWS_AS(residue_params({2, 0, {mu, -mu}}), std::invalid_argument);
        CHECK_THROWS_AS(residue_params({2, 3, {mu}}), std::invalid_argument);
    }
}

TEST_CASE("residue eigenvalue identity holds exactly", "[spectral]") {
    std::mt19937 rng(0xA11CEu);
    std::uniform_real_distribution<double> re(-0.49, 0.49);
    std::uniform_real_distribution<double> im(-10.0, 10.0);
    std::uniform_int_distribution<int> adist(1, 6), rdist(1, 8), coin(0, 1);
    for (int trial = 0; trial < 500; ++trial) {
        const int a = adist(rng), r = rdist(rng);
        std::vector<std::complex<double>> mu;
        while (static_cast<int>(mu.size()) < a) {
            if (a - static_cast<int>(mu.size()) >= 2 && coin(rng)) {
                const std::complex<double> z(re(rng), im(rng));
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
        REQUIRE(lhs == Approx(rhs).margin(1e-10 * std::max(1.0, std::abs(lhs))));
    }
}

TEST_CASE("residual spectrum exclusion table", "[spectral]") {
    const auto report = lubotzky_table(bound_table());

    CHECK(report.hejhal_musum == Approx(181.794312).margin(1e-9));
    CHECK(report.hejhal_threshold == Approx(33.041881).margin(1e-5));
    CHECK(std::abs(report.hejhal_threshold - 33.04) < 0.01);

    CHECK(report.lambda_68 == Approx(12916.503304).margin(1e-5));
    CHECK(report.lambda_68 < report.lambda_cap_68);
    CHECK(report.lambda_cap_68 == Approx(13098.5).margin(1e-9));
    // the recomputed eigenvalue matches one printed value and exposes the other
    CHECK(std::abs(report.lambda_68 - LubotzkyReport::printed_lambda_68) < 0.5);
    CHECK(std::abs(report.lambda_68 - LubotzkyReport::printed_lambda_68_variant) > 5.0);

    REQUIRE(report.rows.size() == 32);
    CHECK(report.all_contradict);
    for (const auto& row : report.rows) {
        CAPTURE(row.a);
        CHECK(row.r_max == 68 / row.a);
        CHECK(row.contradiction);
        CHECK(row.lower_bound > row.upper_bound);
        CHECK(row.printed_lower > row.upper_bound);
        CHECK(row.upper_bound ==
              Approx(row.a * (static_cast<double>(row.r_max) * row.r_max - 1.0) / 12.0)
                  .margin(1e-12));
        // beyond the table the published column follows the trivial bound,
        // truncated to two decimals (one row straddles a 0.01 boundary)
        if (row.a >= 9) CHECK(std::abs(row.lower_bound - row.printed_lower) < 0.0101);
    }
    const auto& first = report.rows.front();
    CHECK(first.a == 3);
    CHECK(first.r_max == 22);
    CHECK(first.upper_bound == Approx(120.75).margin(1e-12));
    // the published 171.25 disagrees with its own recipe d - a/4; both clear
    // the upper bound by a wide margin
    CHECK(first.printed_lower == Approx(171.25).margin(1e-12));
    CHECK(first.lower_bound == Approx(bound_table()[0].d - 0.75).margin(1e-12));
    CHECK(std::abs(first.lower_bound - first.printed_lower) > 1.0);
    const auto& a23 = report.rows[20];
    CHECK(a23.a == 23);
    CHECK(a23.upper_bound == Approx(5.75).margin(1e-12));
    CHECK(report.note.find("degree 68") != std::string::npos);
}
