#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "positivity/lterm.hpp"

using poskit::LValue;
using poskit::SFunctionSample;
using poskit::SGrid;
using poskit::TestFunction;
using poskit::l_digamma_route;
using poskit::l_exp_route;
using poskit::s_derivative;
using poskit::s_function;
using Catch::Approx;

namespace {

constexpr double p_log2 = 0.69314718055994530942;
constexpr double log2_quarter = 0.17328679513998632735;
using cplx = std::complex<double>;

std::vector<TestFunction> all_test_functions() {
    return {TestFunction::plain(1, p_log2),       TestFunction::plain(2, p_log2),
            TestFunction::plain(3, p_log2),       TestFunction::modified_fn(1, p_log2),
            TestFunction::modified_fn(2, p_log2), TestFunction::modified_fn(3, p_log2)};
}

} // namespace

TEST_CASE("archimedean term: independent routes agree on random arguments", "[lterm]") {
    const auto tfs = all_test_functions();
    std::mt19937 rng(0xC0FFEE);
    std::uniform_real_distribution<double> re_dist(-0.49, 20.0);
    std::uniform_real_distribution<double> im_dist(-20.0, 20.0);

    for (int i = 0; i < 200; ++i) {
        const auto& tf = tfs[static_cast<std::size_t>(i) % tfs.size()];
        const cplx eta(re_dist(rng), im_dist(rng));
        const LValue a = l_exp_route(tf, eta);
        const LValue b = l_digamma_route(tf, eta);
        INFO("draw " << i << ": family " << tf.family << (tf.modified ? "m" : "")
                     << ", eta = " << eta.real() << " + " << eta.imag() << "i, delta = "
                     << std::abs(a.value - b.value));
        REQUIRE(a.err >= 0.0);
        REQUIRE(b.err >= 0.0);
        REQUIRE(std::abs(a.value - b.value) <= 1e-8);
    }
}

TEST_CASE("archimedean term: anchor values", "[lterm]") {
    const auto g1 = TestFunction::plain(1, p_log2);
    const auto g3m = TestFunction::modified_fn(3, p_log2);

    SECTION("dual route at eta = 0 to 1e-9, with frozen value") {
        const LValue a = l_exp_route(g1, 0.0);
        const LValue b = l_digamma_route(g1, 0.0);
        REQUIRE(std::abs(a.value - b.value) <= 1e-9);
        REQUIRE(a.value.real() == Approx(-0.5603256862246).epsilon(1e-9));
        REQUIRE(std::abs(a.value.imag()) <= 1e-10);
    }
    SECTION("first-kernel term at 6.07i sits below -log(2)/4") {
        const LValue v = l_exp_route(g1, cplx(0.0, 6.07));
        REQUIRE(v.value.real() == Approx(-0.173446270106).epsilon(1e-8));
        REQUIRE(v.value.real() < -log2_quarter);
    }
    SECTION("positive real part far out on the real axis") {
        const LValue v = l_exp_route(g1, 1e4);
        REQUIRE(v.value.real() == Approx(3.686206705).epsilon(1e-7));
        REQUIRE(v.value.real() > 0.0);
    }
    SECTION("modified third-kernel term at eta = 1 sits below -log(2)/4") {
        const LValue v = l_digamma_route(g3m, 1.0);
        REQUIRE(v.value.real() == Approx(-0.370657367970).epsilon(1e-8));
        REQUIRE(v.value.real() < -log2_quarter);
    }
    SECTION("conjugate symmetry at 0.3 + 2i") {
        for (const auto& tf : {TestFunction::plain(1, p_log2), TestFunction::modified_fn(2, p_log2)}) {
            const cplx eta(0.3, 2.0);
            const LValue v = l_exp_route(tf, eta);
            const LValue w = l_exp_route(tf, std::conj(eta));
            REQUIRE(std::abs(w.value - std::conj(v.value)) <= 1e-12);
            const LValue vd = l_digamma_route(tf, eta);
            const LValue wd = l_digamma_route(tf, std::conj(eta));
            REQUIRE(std::abs(wd.value - std::conj(vd.value)) <= 1e-10);
        }
    }
}

TEST_CASE("archimedean term: evenness of Re l(sigma + ir) in r", "[lterm]") {
    const auto tfs = all_test_functions();
    std::mt19937 rng(2024);
    std::uniform_real_distribution<double> sigma_dist(-0.49, 10.0);
    std::uniform_real_distribution<double> r_dist(0.01, 20.0);
    for (int i = 0; i < 50; ++i) {
        const auto& tf = tfs[static_cast<std::size_t>(i) % tfs.size()];
        const double sigma = sigma_dist(rng), r = r_dist(rng);
        const LValue up = l_exp_route(tf, cplx(sigma, r));
        const LValue dn = l_exp_route(tf, cplx(sigma, -r));
        INFO("sigma = " << sigma << ", r = " << r);
        REQUIRE(up.value.real() == Approx(dn.value.real()).margin(1e-10));
    }
}

TEST_CASE("archimedean term: positivity for large real shifts", "[lterm]") {
    const auto g1 = TestFunction::plain(1, p_log2);
    double prev = 0.0;
    for (const double eta : {50.0, 75.0, 100.0, 200.0, 500.0, 1000.0, 5000.0, 1e4}) {
        const LValue v = l_exp_route(g1, eta);
        REQUIRE(v.value.real() > 0.0);
        REQUIRE(v.value.real() > prev);
        prev = v.value.real();
    }
}

TEST_CASE("archimedean term: domain guards at the critical edge", "[lterm]") {
    const auto g1 = TestFunction::plain(1, p_log2);
    REQUIRE_THROWS_AS(l_exp_route(g1, cplx(-0.51, 0.0)), std::domain_error);
    REQUIRE_THROWS_AS(l_digamma_route(g1, cplx(-0.5, 0.0)), std::domain_error);
    REQUIRE_THROWS_AS(l_digamma_route(g1, cplx(-0.7, 3.0)), std::domain_error);
    REQUIRE_NOTHROW(l_exp_route(g1, cplx(-0.5, 0.0)));
}

TEST_CASE("s function: anchors and maximizer placement", "[lterm][sfunction]") {
    const SFunctionSample s0 = s_function(0.0);
    const SFunctionSample s7 = s_function(7.0);
    const SFunctionSample s10 = s_function(10.0);

    REQUIRE(s0.s_value == Approx(-0.233166223700).epsilon(1e-8));
    REQUIRE(s7.s_value == Approx(-0.015908046251).epsilon(1e-8));
    REQUIRE(s10.s_value == Approx(0.147351528469).epsilon(1e-8));
    REQUIRE(s0.s_value < 0.0);
    REQUIRE(s7.s_value < 0.0);
    REQUIRE(s10.s_value > 0.0);

    for (const auto& smp : {s0, s7, s10}) {
        REQUIRE(smp.argmax_sigma >= -0.5);
        REQUIRE(smp.argmax_sigma <= 1.5);
        REQUIRE(smp.err >= 0.0);
    }

    SECTION("sample dominates the profile it maximizes") {
        const auto tf = TestFunction::plain(1, 0.5);
        const SFunctionSample smp = s_function(3.3);
        const LValue at_arg = l_exp_route(tf, cplx(smp.argmax_sigma, 3.3));
        REQUIRE(at_arg.value.real() == Approx(smp.s_value).margin(1e-9));
        for (int k = 0; k <= 40; ++k) {
            const double sigma = -0.5 + 2.0 * k / 40.0;
            const LValue v = l_exp_route(tf, cplx(sigma, 3.3));
            REQUIRE(v.value.real() <= smp.s_value + 1e-9);
        }
    }
}

TEST_CASE("s function: negative on the exclusion window with margin", "[lterm][sfunction]") {
    const auto& grid = SGrid::instance();
    double worst = -1e9, worst_r = 0.0;
    for (int k = 0; k <= 720; ++k) {
        const double r = 0.01 * k;
        const double v = grid.s(r);
        if (v > worst) { worst = v; worst_r = r; }
        REQUIRE(grid.s(-r) == Approx(v).margin(1e-14));
    }
    INFO("max over the window is " << worst << " at r = " << worst_r);
    REQUIRE(worst < 0.0);
    REQUIRE(worst + 3.0 * grid.node_err() < 0.0);
    REQUIRE(worst == Approx(-0.00534331).margin(2e-6));
    REQUIRE(worst_r == Approx(7.20).margin(1e-9));
}

TEST_CASE("s function: grid interpolation matches direct evaluation", "[lterm][sfunction]") {
    const auto& grid = SGrid::instance();
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> r_dist(0.0, 30.0);
    for (int i = 0; i < 20; ++i) {
        const double r = r_dist(rng);
        REQUIRE(grid.s(r) == Approx(s_function(r).s_value).margin(1e-9));
    }
    REQUIRE(grid.s(32.0) == Approx(s_function(32.0).s_value).margin(1e-12));
}

TEST_CASE("s derivative: parity, upward crossing, and the three-crossing line", "[lterm][sfunction]") {
    REQUIRE(std::abs(s_derivative(0.0)) <= 1e-6);
    const double d72 = s_derivative(7.2);
    REQUIRE(d72 == Approx(0.053073).margin(1e-4));
    REQUIRE(d72 > 0.0);

    SECTION("a secant line through the derivative graph crosses it at most three times") {
        const double x1 = 5.0, x2 = 40.0;
        const double y1 = s_derivative(x1), y2 = s_derivative(x2);
        const double slope = (y2 - y1) / (x2 - x1);
        auto line = [&](double x) { return y1 + slope * (x - x1); };

        int crossings = 0;
        int prev_sign = 0;
        for (double x = -100.0 + 0.013; x <= 100.0; x += 0.25) {
            const double f = s_derivative(x) - line(x);
            if (std::abs(f) < 1e-7) continue;
            const int sign = f > 0.0 ? 1 : -1;
            if (prev_sign != 0 && sign != prev_sign) ++crossings;
            prev_sign = sign;
        }
        INFO("sign changes counted: " << crossings);
        REQUIRE(crossings <= 3);
        CHECK(crossings == 3);
    }
}
