// Rankin-Selberg positivity for constant-coefficients cohomological types.
//
// A self-dual product L-function L(s, pi x pi~) has nonnegative Dirichlet
// coefficients, so the explicit-formula inequality holds with NO support
// restriction on the test function once the coefficient sum is dropped:
//
//     int_R g(x) (e^{x/2} + e^{-x/2}) dx
//         + 2 Re sum_{multiset} l(mu) + g(0) log D  >=  0,
//
// the first term coming from the pole of L(s, pi x pi~) at s = 1.  For a
// cohomological cusp form of degree n = 2m + t (t = 0 or 1) the archimedean
// type is induced from discrete series D_{2j+t} (plus a sign character when
// t = 1), and the product's n^2 half-integral shift parameters form the
// integer multiset
//
//     { t+j+k, t-1+j+k, |k-j|, 1+|k-j| : 1 <= j,k <= m }
//       union (t = 1 only)  {0} union { j, j, j+1, j+1 : 1 <= j <= m }.
//
// Evaluating the left side with the Fejer-type kernel
// g_p(x) = ((1 - |x|/p) cos(pi x/p) + sin(pi |x|/p)/pi) / cosh(x/2) gives a
// NEGATIVE value for every 1 < n < 27 at p = 3 or 6, contradicting the
// inequality: no such cusp form exists, so the constant-coefficients
// cuspidal cohomology of SL_n(Z) vanishes in that range.  The pole term has
// the closed form 16 p / pi^2, which doubles as a quadrature self-check.

#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "positivity/lterm.hpp"
#include "positivity/quadrature.hpp"
#include "positivity/testfuncs.hpp"

namespace poskit {

struct CohomClass {
    int n = 0;  // degree, n = 2m + t
    int m = 0;
    int t = 0;
    std::vector<int> mu_multiset;  // n^2 nonnegative integer shifts
};

inline CohomClass build_multiset(int n) {
    if (n < 2) throw std::invalid_argument("build_multiset: requires n >= 2");
    CohomClass cls;
    cls.n = n;
    cls.m = n / 2;
    cls.t = n % 2;
    cls.mu_multiset.reserve(static_cast<std::size_t>(n) * n);
    for (int j = 1; j <= cls.m; ++j)
        for (int k = 1; k <= cls.m; ++k) {
            cls.mu_multiset.push_back(cls.t + j + k);
            cls.mu_multiset.push_back(cls.t - 1 + j + k);
            cls.mu_multiset.push_back(std::abs(k - j));
            cls.mu_multiset.push_back(1 + std::abs(k - j));
        }
    if (cls.t == 1) {
        cls.mu_multiset.push_back(0);
        for (int j = 1; j <= cls.m; ++j) {
            cls.mu_multiset.push_back(j);
            cls.mu_multiset.push_back(j);
            cls.mu_multiset.push_back(j + 1);
            cls.mu_multiset.push_back(j + 1);
        }
    }
    if (cls.mu_multiset.size() != static_cast<std::size_t>(n) * n)
        throw std::logic_error("build_multiset: cardinality must be n^2");
    std::sort(cls.mu_multiset.begin(), cls.mu_multiset.end());
    return cls;
}

struct PolarTerm {
    double value = 0.0;  // closed form 16 p / pi^2
    double err = 0.0;    // quadrature error of the self-check
};

namespace detail {

inline PolarTerm polar_term(double p) {
    const TestFunction tf = TestFunction::plain(1, p);
    auto integrand = [&](double x) {
        return g_eval(tf, x) * (std::exp(0.5 * x) + std::exp(-0.5 * x));
    };
    const IntegralResult quad =
        integrate_segmented(integrand, {0.0, 0.5 * p, p}, {});
    constexpr double pi = 3.14159265358979323846;
    PolarTerm out;
    out.value = 16.0 * p / (pi * pi);
    out.err = quad.error;
    const double closed_half = 0.5 * out.value;  // integrand is even
    if (std::abs(quad.value - closed_half) > 1e-10 * std::max(1.0, closed_half) + 3.0 * quad.error)
        throw std::logic_error("polar_term: quadrature disagrees with the closed form");
    return out;
}

}  // namespace detail

struct RsPositivity {
    double lhs = 0.0;
    double err = 0.0;
    double polar = 0.0;      // pole contribution, 16 p / pi^2
    double lterm_sum = 0.0;  // 2 sum of l over the multiset
};

// Left side of the product-positivity inequality at full level (D = 1).
// Distinct multiset entries are evaluated once and weighted by multiplicity.
inline RsPositivity rs_positivity_lhs(const CohomClass& cls, double p) {
    if (!(p > 0.0)) throw std::invalid_argument("rs_positivity_lhs: requires p > 0");
    if (cls.mu_multiset.size() != static_cast<std::size_t>(cls.n) * cls.n)
        throw std::invalid_argument("rs_positivity_lhs: malformed multiset");
    const TestFunction tf = TestFunction::plain(1, p);
    std::map<int, int> histogram;
    for (const int v : cls.mu_multiset) ++histogram[v];

    RsPositivity out;
    const PolarTerm polar = detail::polar_term(p);
    out.polar = polar.value;
    out.err = polar.err;
    for (const auto& [value, count] : histogram) {
        const LValue l = l_exp_route(tf, static_cast<double>(value));
        out.lterm_sum += 2.0 * count * l.value.real();
        out.err += 2.0 * count * l.err;
    }
    out.lhs = out.polar + out.lterm_sum;  // + g(0) log 1 = 0 at full level
    return out;
}

struct VanishingRow {
    int n = 0;
    double best_p = 0.0;  // candidate with the most negative left side
    double lhs = 0.0;
    double err = 0.0;
    std::string verdict;  // "vanishes" or "inconclusive"
};

// For each degree, minimize the left side over the candidate supports; a
// negative value beyond its error bar contradicts existence and certifies
// that the cuspidal cohomology vanishes.
inline std::vector<VanishingRow> vanishing_scan(const std::vector<int>& ns,
                                                const std::vector<double>& ps) {
    if (ps.empty()) throw std::invalid_argument("vanishing_scan: needs support candidates");
    std::vector<VanishingRow> rows;
    rows.reserve(ns.size());
    for (const int n : ns) {
        const CohomClass cls = build_multiset(n);
        VanishingRow row;
        row.n = n;
        bool first = true;
        for (const double p : ps) {
            const RsPositivity eval = rs_positivity_lhs(cls, p);
            if (first || eval.lhs < row.lhs) {
                row.best_p = p;
                row.lhs = eval.lhs;
                row.err = eval.err;
                first = false;
            }
        }
        row.verdict = row.lhs < -row.err ? "vanishes" : "inconclusive";
        rows.push_back(row);
    }
    return rows;
}

}  // namespace poskit
