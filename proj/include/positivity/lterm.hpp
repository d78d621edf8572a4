#pragma once

// The archimedean term of the explicit formula,
//
//     l(eta) = (1/2pi) int_R h(r) (Gamma_R'/Gamma_R)(1/2 + eta + ir) dr,
//
// for a test function pair (g, h), evaluated along two independent routes:
//
//   exponential route   l(eta) = -(log pi / 2) g(0)
//       - (1/2) int_0^inf [ g(x/2) e^{-(1/4 + eta/2) x} / (1 - e^{-x})
//                           - g(0) e^{-x} / x ] dx,
//       valid for Re eta >= -1/2 (the boundary is the continuous limit of the
//       principal-value transform integral).  The integrand's 0/0 cancellation
//       near x = 0 is handled by an explicit degree-5 Taylor development with
//       coefficients assembled from the Bernoulli expansion of x/(1 - e^{-x})
//       and the Taylor coefficients of g's analytic half-line branch, which
//       are extracted by a Cauchy trapezoid integral on a small circle.
//
//   digamma route       direct r-integration of h against
//       Gamma_R'/Gamma_R(1/2 + eta +- ir) on [0, T], plus analytically
//       controlled tails: transforms with closed forms are split into an
//       envelope part (integrated exactly through the substitution r = T/t)
//       and an oscillatory part handled by four integrations by parts;
//       smoothed transforms get a least-squares tail model
//       h(r) r^m ~ alpha + beta_c cos(pr) + beta_s sin(pr) over one period,
//       with the fit residual folded into the reported error.
//
// The two routes share no quadrature machinery beyond the panel integrator,
// so their agreement is a genuine end-to-end check of both.
//
// On top of the exponential route sits a fixed-node engine for the map
// sigma -> Re l(sigma + ir) of the family-1, p = 1/2, smoothed function:
// precomputing the sigma-independent factors turns each evaluation into one
// dot product, which makes the spectral scans (built on
// s(r) = max_{sigma in [-1/2, 3/2]} Re l(sigma + ir)) run in minutes.

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <complex>
#include <map>
#include <mutex>
#include <thread>
#include <tuple>
#include <vector>

#include "positivity/quadrature.hpp"
#include "positivity/specfun.hpp"
#include "positivity/testfuncs.hpp"

namespace poskit {

struct LValue {
    std::complex<double> eta;
    std::complex<double> value;
    double err = 0.0;
};

namespace detail {

inline constexpr double log_pi = 1.1447298858494001741434273513531;

// 16-point Gauss-Legendre rule on [-1, 1], positive half.
inline constexpr double gl16_x[8] = {
    0.0950125098376374401853193, 0.2816035507792589132304605,
    0.4580167776572273863424194, 0.6178762444026437484466718,
    0.7554044083550030338951012, 0.8656312023878317438804679,
    0.9445750230732325760779884, 0.9894009349916499325961542};
inline constexpr double gl16_w[8] = {
    0.1894506104550684962853967, 0.1826034150449235888667637,
    0.1691565193950025381893121, 0.1495959888165767320815017,
    0.1246289712555338720524763, 0.0951585116824927848099251,
    0.0622535239386478928628438, 0.0271524594117540948517806};

// Taylor coefficients q_k of x -> g(x/2) about 0 along the analytic branch,
// k = 0..6, by a 64-point Cauchy trapezoid on a circle inside the branch's
// analyticity disc.  The trapezoid's aliasing error involves coefficients of
// order 64 + k and is far below double precision.
inline const std::array<double, 7>& g_half_taylor(const TestFunction& tf) {
    using key_t = std::tuple<int, double, bool, bool, double>;
    static std::mutex mu;
    static std::map<key_t, std::array<double, 7>> cache;
    const key_t key{tf.family, tf.p, tf.smoothing, tf.modified, tf.c};
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;

    const double rho = std::min(tf.p, 1.0) / 3.0;
    constexpr int M = 64;
    std::array<std::complex<double>, M> gv;
    for (int m = 0; m < M; ++m) {
        const double th = 2.0 * tf_pi * m / M;
        gv[m] = g_branch<std::complex<double>>(tf, std::polar(rho, th));
    }
    std::array<double, 7> q{};
    for (int k = 0; k < 7; ++k) {
        std::complex<double> acc = 0.0;
        for (int m = 0; m < M; ++m) {
            const double th = 2.0 * tf_pi * m * k / M;
            acc += gv[m] * std::complex<double>(std::cos(th), -std::sin(th));
        }
        // a_k / 2^k turns the branch coefficients into those of g(x/2)
        q[k] = acc.real() / (M * std::pow(rho, k) * std::pow(2.0, k));
    }
    return cache.emplace(key, q).first->second;
}

// Degree-5 development of the combined integrand
//   I(x) = [ g(x/2) e^{-ax} - g(0) e^{-x} w(x) ] / (x w(x)),  w = (1-e^{-x})/x,
// integrated over [0, x0]: the x^0 terms cancel exactly and the remaining
// polynomial is integrated termwise.  trunc receives a bound on the omitted
// degree-6 tail.
inline std::complex<double> series_head(const std::array<double, 7>& q,
                                        std::complex<double> a, double x0,
                                        double* trunc) {
    using cplx = std::complex<double>;
    const double g0 = q[0];
    const cplx c1 = 0.5 - a;
    const cplx c2 = 1.0 / 12.0 - a / 2.0 + a * a / 2.0;
    const cplx c3 = -a / 12.0 + a * a / 4.0 - a * a * a / 6.0;
    const cplx a2 = a * a, a3 = a2 * a, a4 = a2 * a2, a5 = a4 * a;
    const cplx c4 = -1.0 / 720.0 + a2 / 24.0 - a3 / 12.0 + a4 / 24.0;
    const cplx c5 = a / 720.0 - a3 / 72.0 + a4 / 48.0 - a5 / 120.0;

    const cplx d0 = g0 * (1.5 - a) + q[1];
    const cplx d1 = g0 * c2 + q[1] * c1 + q[2] - g0 / 2.0;
    const cplx d2 = g0 * c3 + q[1] * c2 + q[2] * c1 + q[3] + g0 / 6.0;
    const cplx d3 = g0 * c4 + q[1] * c3 + q[2] * c2 + q[3] * c1 + q[4] - g0 / 24.0;
    const cplx d4 =
        g0 * c5 + q[1] * c4 + q[2] * c3 + q[3] * c2 + q[4] * c1 + q[5] + g0 / 120.0;

    const double x2 = x0 * x0, x3 = x2 * x0, x4 = x2 * x2, x5 = x4 * x0;
    if (trunc) {
        double qsum = 1.0;
        for (int k = 1; k < 7; ++k) qsum += std::abs(q[k]);
        const double ab = std::abs(a) + 2.0;
        *trunc = std::pow(ab, 6) / 720.0 * qsum * x5 * x0 * x0 / 6.0;
    }
    return d0 * x0 + d1 * x2 / 2.0 + d2 * x3 / 3.0 + d3 * x4 / 4.0 + d4 * x5 / 5.0;
}

inline double series_cut(double amax) {
    return std::min(1e-3, 0.014 / std::pow(std::max(1.0, amax), 0.8));
}

}  // namespace detail

// Exponential-integral route.  Accepts the closed half-plane Re eta >= -1/2;
// on the boundary it computes the principal-value regularization that the
// transform integral only reaches as a limit.
inline LValue l_exp_route(const TestFunction& tf, std::complex<double> eta,
                          const QuadratureSettings& st = {}) {
    using cplx = std::complex<double>;
    if (eta.real() < -0.5 - 1e-12)
        throw std::domain_error("l_exp_route: requires Re eta >= -1/2");
    const cplx a = 0.25 + eta / 2.0;
    const double g0 = g_eval(tf, 0.0);
    const auto& q = detail::g_half_taylor(tf);
    const double x0 = detail::series_cut(std::abs(a));
    double trunc = 0.0;
    const cplx head = detail::series_head(q, a, x0, &trunc);

    const double alpha = a.real(), beta = a.imag();
    auto big = [&](double x) { return g_eval(tf, x / 2.0) / -std::expm1(-x); };
    auto re_int = [&](double x) {
        return big(x) * std::exp(-alpha * x) * std::cos(beta * x) -
               g0 * std::exp(-x) / x;
    };
    // geometric breakpoints resolve both the 1/x spike at x0 and, for large
    // Re a, the e^{-ax} boundary layer that a single panel would step over
    std::vector<double> xbreaks{x0};
    for (double b = 4.0 * x0; b < 2.0 * tf.p; b *= 4.0) xbreaks.push_back(b);
    xbreaks.push_back(2.0 * tf.p);
    const IntegralResult re = integrate_segmented(re_int, xbreaks, st);
    double qim_val = 0.0, qim_err = 0.0;
    if (beta != 0.0) {
        auto im_int = [&](double x) {
            return -big(x) * std::exp(-alpha * x) * std::sin(beta * x);
        };
        const IntegralResult im = integrate_segmented(im_int, xbreaks, st);
        qim_val = im.value;
        qim_err = im.error;
    }
    const double e1_2p = -std::expint(-2.0 * tf.p);

    LValue out;
    out.eta = eta;
    out.value = -0.5 * detail::log_pi * g0 -
                0.5 * (head + cplx(re.value - g0 * e1_2p, qim_val));
    out.err = 0.5 * (re.error + qim_err + trunc) + 1e-15 * std::abs(out.value);
    return out;
}

namespace detail {

// Symmetrized digamma factor of the transform-side integrand.
inline std::complex<double> phi_sym(std::complex<double> eta, double r) {
    return gamma_r_logderiv(0.5 + eta + std::complex<double>(0.0, r)) +
           gamma_r_logderiv(0.5 + eta - std::complex<double>(0.0, r));
}

// Closed-form transforms of the bare kernels split as
//   khat(r) = prefactor(r) * (1 + osc_sign * cos(p r)) / 2,
// valid wherever the prefactor's denominator is nonzero; used only for
// r beyond the last removable point.
inline double hat_prefactor(int family, double p, double r, int* osc_sign) {
    const double pi = tf_pi, u = p * r;
    if (family == 1) {
        *osc_sign = 1;
        const double den = pi * pi - u * u;
        return 8.0 * p * pi * pi / (den * den);
    }
    if (family == 2) {
        *osc_sign = -1;
        const double den = u * (u * u - 4.0 * pi * pi);
        return 128.0 * p * std::pow(pi, 4) / (3.0 * den * den);
    }
    *osc_sign = 1;
    const double den = (pi * pi - u * u) * (9.0 * pi * pi - u * u);
    return 2304.0 * p * std::pow(pi, 6) / (5.0 * den * den);
}

// int_T^inf F(r) cos(pr) dr and int_T^inf F(r) sin(pr) dr by four
// integrations by parts, for smooth F decaying like a power.  F is sampled
// at T + j h (j = -3..3) for the derivative stencils; the remainder bound
// |F''''(T)| T / (3 p^4) is returned through rem.
struct OscTail {
    std::complex<double> cos_part, sin_part;
    double rem = 0.0;
};

template <class F>
OscTail osc_tail_ibp(F&& f, double T, double p) {
    const double h = 0.05;
    std::array<std::complex<double>, 7> v;
    for (int j = -3; j <= 3; ++j) v[j + 3] = f(T + j * h);
    const std::complex<double> f0 = v[3];
    const std::complex<double> f1 =
        (v[1] - 8.0 * v[2] + 8.0 * v[4] - v[5]) / (12.0 * h);
    const std::complex<double> f2 =
        (-v[1] + 16.0 * v[2] - 30.0 * v[3] + 16.0 * v[4] - v[5]) / (12.0 * h * h);
    const std::complex<double> f3 =
        (v[0] - 8.0 * v[1] + 13.0 * v[2] - 13.0 * v[4] + 8.0 * v[5] - v[6]) /
        (8.0 * h * h * h);
    const std::complex<double> f4 =
        (-v[0] + 12.0 * v[1] - 39.0 * v[2] + 56.0 * v[3] - 39.0 * v[4] +
         12.0 * v[5] - v[6]) /
        (6.0 * h * h * h * h);

    const double sn = std::sin(p * T), cs = std::cos(p * T);
    const double p2 = p * p, p3 = p2 * p, p4 = p2 * p2;
    OscTail out;
    out.cos_part = -f0 * sn / p - f1 * cs / p2 + f2 * sn / p3 + f3 * cs / p4;
    out.sin_part = f0 * cs / p - f1 * sn / p2 - f2 * cs / p3 + f3 * sn / p4;
    out.rem = std::abs(f4) * T / (3.0 * p4) + std::abs(f3) * 1e-6 / p3;
    return out;
}

// Envelope integral int_T^inf F(r) dr through r = T/t; F must decay at least
// like r^{-2} times logarithmic growth.
template <class F>
IntegralResult envelope_tail(F&& f, double T, const QuadratureSettings& st) {
    return integrate([&](double t) { return f(T / t) * T / (t * t); }, 0.0, 1.0, st);
}

// Fixed-rule transform of a plain (unsmoothed or smoothed) function at real r,
// with panel density tied to the oscillation; used inside the digamma route
// where adaptive error control per node would be wasteful.
inline double h_fixed(const TestFunction& tf, double r) {
    const double p = tf.p;
    const int panels =
        std::max(6, static_cast<int>(std::ceil(std::abs(r) * p / tf_pi)));
    const double w = p / panels;
    double acc = 0.0;
    for (int j = 0; j < panels; ++j) {
        const double mid = (j + 0.5) * w, half = 0.5 * w;
        for (int i = 0; i < 8; ++i) {
            const double xp = mid + half * gl16_x[i];
            const double xm = mid - half * gl16_x[i];
            acc += gl16_w[i] * half *
                   (2.0 * g_eval(tf, xp) * std::cos(r * xp) +
                    2.0 * g_eval(tf, xm) * std::cos(r * xm));
        }
    }
    return acc;
}

struct TailFit {
    double alpha = 0.0, beta_c = 0.0, beta_s = 0.0;
    double max_residual = 0.0;
    int m = 0;
};

// Least-squares tail model h(r) r^m ~ alpha + beta_c cos(pr) + beta_s sin(pr)
// over one oscillation period starting at T.
inline TailFit smoothed_tail_fit(const TestFunction& tf, double T) {
    TailFit fit;
    fit.m = tf.family == 1 ? 4 : tf.family == 2 ? 6 : 8;
    const int N = 48;
    const double period = 2.0 * tf_pi / tf.p;
    double s_yy[3] = {0, 0, 0};
    double s_mm[3][3] = {{0, 0, 0}, {0, 0, 0}, {0, 0, 0}};
    std::vector<double> rv(N), yv(N);
    for (int i = 0; i < N; ++i) {
        const double r = T + period * i / N;
        const double y = h_fixed(tf, r) * std::pow(r, fit.m);
        const double base[3] = {1.0, std::cos(tf.p * r), std::sin(tf.p * r)};
        for (int a = 0; a < 3; ++a) {
            s_yy[a] += base[a] * y;
            for (int b = 0; b < 3; ++b) s_mm[a][b] += base[a] * base[b];
        }
        rv[i] = r;
        yv[i] = y;
    }
    // solve the 3x3 normal equations by Gaussian elimination
    double A[3][4];
    for (int a = 0; a < 3; ++a) {
        for (int b = 0; b < 3; ++b) A[a][b] = s_mm[a][b];
        A[a][3] = s_yy[a];
    }
    for (int col = 0; col < 3; ++col) {
        int piv = col;
        for (int row = col + 1; row < 3; ++row)
            if (std::abs(A[row][col]) > std::abs(A[piv][col])) piv = row;
        std::swap(A[col], A[piv]);
        for (int row = 0; row < 3; ++row) {
            if (row == col) continue;
            const double f = A[row][col] / A[col][col];
            for (int k = col; k < 4; ++k) A[row][k] -= f * A[col][k];
        }
    }
    fit.alpha = A[0][3] / A[0][0];
    fit.beta_c = A[1][3] / A[1][1];
    fit.beta_s = A[2][3] / A[2][2];
    for (int i = 0; i < N; ++i) {
        const double model = fit.alpha + fit.beta_c * std::cos(tf.p * rv[i]) +
                             fit.beta_s * std::sin(tf.p * rv[i]);
        fit.max_residual = std::max(fit.max_residual, std::abs(yv[i] - model));
    }
    return fit;
}

}  // namespace detail

// Transform-side route.  Strictly inside the half-plane Re eta > -1/2, where
// the digamma factor has no pole on the integration ray.
inline LValue l_digamma_route(const TestFunction& tf, std::complex<double> eta,
                              const QuadratureSettings& st = {}) {
    using cplx = std::complex<double>;
    if (eta.real() <= -0.5)
        throw std::domain_error("l_digamma_route: requires Re eta > -1/2");

    const bool closed_form = tf.modified || !tf.smoothing;
    const double T = closed_form ? 150.0 : 300.0;
    const double p = tf.p;

    // transform values on [0, T]
    auto h_at = [&](double r) -> double {
        if (tf.modified)
            return ((tf.c * tf.c - r * r) *
                    detail::kernel_hat<double>(tf.family, p, r)) /
                   tf.modified_norm();
        if (!tf.smoothing) return detail::kernel_hat<double>(tf.family, p, r);
        return detail::h_fixed(tf, r);
    };

    std::vector<double> breaks;
    for (double b : {0.0, 0.5, 1.0, 2.0, 4.0, 8.0, 16.0, 32.0, 64.0, 100.0})
        if (b < T) breaks.push_back(b);
    breaks.push_back(T);
    const IntegralResult main_re = integrate_segmented(
        [&](double r) { return h_at(r) * detail::phi_sym(eta, r).real(); }, breaks, st);
    IntegralResult main_im{0.0, 0.0, 0, true};
    if (eta.imag() != 0.0)
        main_im = integrate_segmented(
            [&](double r) { return h_at(r) * detail::phi_sym(eta, r).imag(); }, breaks,
            st);

    cplx tail(0.0, 0.0);
    double tail_err = 0.0;
    if (closed_form) {
        int osc_sign = 0;
        auto pref = [&](double r) {
            int s;
            double v = detail::hat_prefactor(tf.family, p, r, &s);
            if (tf.modified) v *= (tf.c * tf.c - r * r) / tf.modified_norm();
            return v;
        };
        detail::hat_prefactor(tf.family, p, T, &osc_sign);
        auto F = [&](double r) { return pref(r) * detail::phi_sym(eta, r); };
        const IntegralResult env_re = detail::envelope_tail(
            [&](double r) { return F(r).real(); }, T, st);
        IntegralResult env_im{0.0, 0.0, 0, true};
        if (eta.imag() != 0.0)
            env_im = detail::envelope_tail([&](double r) { return F(r).imag(); }, T, st);
        const detail::OscTail osc = detail::osc_tail_ibp(F, T, p);
        tail = 0.5 * (cplx(env_re.value, env_im.value) +
                      static_cast<double>(osc_sign) * osc.cos_part);
        tail_err = 0.5 * (env_re.error + env_im.error + osc.rem);
    } else {
        const detail::TailFit fit = detail::smoothed_tail_fit(tf, T);
        const int m = fit.m;
        auto Fm = [&](double r) { return detail::phi_sym(eta, r) / std::pow(r, m); };
        const IntegralResult env_re = detail::envelope_tail(
            [&](double r) { return Fm(r).real(); }, T, st);
        IntegralResult env_im{0.0, 0.0, 0, true};
        if (eta.imag() != 0.0)
            env_im = detail::envelope_tail([&](double r) { return Fm(r).imag(); }, T, st);
        const detail::OscTail osc = detail::osc_tail_ibp(Fm, T, p);
        tail = fit.alpha * cplx(env_re.value, env_im.value) +
               fit.beta_c * osc.cos_part + fit.beta_s * osc.sin_part;
        // unmodeled remainder: one power of r beyond the fitted model
        const double c5 = 2.0 * fit.max_residual * T;
        const double env_abs = detail::envelope_tail(
                                   [&](double r) {
                                       return std::abs(detail::phi_sym(eta, r)) /
                                              std::pow(r, m + 1);
                                   },
                                   T, st)
                                   .value;
        tail_err = fit.alpha * (env_re.error + env_im.error) +
                   (std::abs(fit.beta_c) + std::abs(fit.beta_s)) * osc.rem +
                   c5 * env_abs + 1e-10;
        tail_err = std::abs(tail_err);
    }

    LValue out;
    out.eta = eta;
    out.value = (cplx(main_re.value, main_im.value) + tail) / (2.0 * detail::tf_pi);
    out.err = (main_re.error + main_im.error + tail_err) / (2.0 * detail::tf_pi) +
              1e-14 * std::abs(out.value);
    return out;
}

// ---------------------------------------------------------------------------
// s-function: s(r) = max over sigma in [-1/2, 3/2] of Re l(sigma + ir) for the
// family-1, p = 1/2, smoothed test function.

struct SFunctionSample {
    double r = 0.0;
    double s_value = 0.0;
    double argmax_sigma = 0.0;
    double err = 0.0;
};

namespace detail {

// Fixed-node evaluator of sigma -> Re l_{1,1/2}(sigma + ir) at one r.  All
// sigma-independent factors (kernel, Bose factor, oscillation) are folded
// into per-node constants, so one evaluation is a dot product against
// exp(-sigma x_i / 2) plus the series head.
class SEngine {
  public:
    explicit SEngine(double r) : tf_(TestFunction::plain(1, 0.5)), r_(std::abs(r)) {
        const double amax = 1.0 + r_ / 2.0;
        x0_ = series_cut(amax);
        q_ = g_half_taylor(tf_);
        e1_x0_ = -std::expint(-x0_);
        build_nodes();
    }

    double eval(double sigma) const {
        const std::complex<double> a(0.25 + 0.5 * sigma, 0.5 * r_);
        double trunc = 0.0;
        const double head = series_head(q_, a, x0_, &trunc).real();
        double dot = 0.0;
        for (std::size_t i = 0; i < xs_.size(); ++i)
            dot += cw_[i] * std::exp(-0.5 * sigma * xs_[i]);
        last_trunc_ = trunc;
        return -0.5 * log_pi - 0.5 * (head + dot - e1_x0_);
    }

    double series_trunc() const { return last_trunc_; }

  private:
    void build_nodes() {
        const double b = 2.0 * tf_.p;
        // geometric panels resolve the 1/x spike, then splitting caps the
        // oscillation phase r x / 2 per panel at about pi
        std::vector<double> edges{x0_};
        const int ngeo = 18;
        const double rho = std::pow(b / x0_, 1.0 / ngeo);
        for (int j = 1; j <= ngeo; ++j) edges.push_back(x0_ * std::pow(rho, j));
        edges.back() = b;
        const double wmax = 2.0 * tf_pi / std::max(r_, 1.0);
        std::vector<double> fine{edges.front()};
        for (std::size_t j = 1; j < edges.size(); ++j) {
            const double w = edges[j] - edges[j - 1];
            const int parts = std::max(1, static_cast<int>(std::ceil(w / wmax)));
            for (int k = 1; k <= parts; ++k)
                fine.push_back(edges[j - 1] + w * k / parts);
        }
        for (std::size_t j = 1; j < fine.size(); ++j) {
            const double mid = 0.5 * (fine[j] + fine[j - 1]);
            const double half = 0.5 * (fine[j] - fine[j - 1]);
            for (int i = 0; i < 8; ++i) {
                for (double sgn : {1.0, -1.0}) {
                    const double x = mid + sgn * half * gl16_x[i];
                    const double G = g_eval(tf_, x / 2.0) / -std::expm1(-x);
                    xs_.push_back(x);
                    cw_.push_back(gl16_w[i] * half * G * std::exp(-0.25 * x) *
                                  std::cos(0.5 * r_ * x));
                }
            }
        }
    }

    TestFunction tf_;
    double r_;
    double x0_ = 0.0;
    double e1_x0_ = 0.0;
    std::array<double, 7> q_{};
    std::vector<double> xs_, cw_;
    mutable double last_trunc_ = 0.0;
};

// golden-section maximization on [lo, hi] to the given sigma tolerance
template <class F>
double golden_max(F&& f, double lo, double hi, double tol, double* arg) {
    const double gr = 0.6180339887498949;
    double a = lo, b = hi;
    double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
    double f1 = f(x1), f2 = f(x2);
    while (b - a > tol) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + gr * (b - a);
            f2 = f(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - gr * (b - a);
            f1 = f(x1);
        }
    }
    const double xm = 0.5 * (a + b);
    const double fm = f(xm);
    if (arg) *arg = xm;
    return std::max(fm, std::max(f1, f2));
}

}  // namespace detail

// Full maximization: coarse sigma sweep at step 1/64 refined by golden
// section to 1e-8.
inline SFunctionSample s_function(double r) {
    const detail::SEngine eng(r);
    auto f = [&](double sigma) { return eng.eval(sigma); };
    double best = -std::numeric_limits<double>::infinity(), best_sigma = -0.5;
    for (int k = 0; k <= 128; ++k) {
        const double sigma = -0.5 + k / 64.0;
        const double v = f(sigma);
        if (v > best) {
            best = v;
            best_sigma = sigma;
        }
    }
    double arg = best_sigma;
    const double refined =
        detail::golden_max(f, std::max(-0.5, best_sigma - 1.0 / 64.0),
                           std::min(1.5, best_sigma + 1.0 / 64.0), 1e-8, &arg);
    SFunctionSample out;
    out.r = r;
    out.s_value = std::max(best, refined);
    out.argmax_sigma = refined >= best ? arg : best_sigma;
    out.err = 1e-11 + eng.series_trunc();
    return out;
}

// Central difference with one Richardson step.  Where the maximizing sigma
// switches branches s has a one-sided derivative jump; this reports the
// symmetric average there.
inline double s_derivative(double r) {
    const double h = 1e-4;
    auto s = [](double x) { return s_function(x).s_value; };
    const double d1 = (s(r + h) - s(r - h)) / (2.0 * h);
    const double d2 = (s(r + 0.5 * h) - s(r - 0.5 * h)) / h;
    return (4.0 * d2 - d1) / 3.0;
}

// Memoized s-values on a uniform grid over [0, 32.768] at step 1e-3 with
// cubic interpolation, built in parallel on first use; beyond the grid the
// exact maximization runs directly.
class SGrid {
  public:
    static const SGrid& instance() {
        static SGrid grid;
        return grid;
    }

    double s(double r) const {
        const double a = std::abs(r);
        if (a >= r_max_ - 2.0 * step_) return s_function(a).s_value;
        const double t = a / step_;
        const std::size_t i =
            std::min(val_.size() - 3, static_cast<std::size_t>(std::max(1.0, t)));
        const double u = t - static_cast<double>(i);
        // Catmull-Rom through nodes i-1 .. i+2
        const double p0 = val_[i - 1], p1 = val_[i], p2 = val_[i + 1], p3 = val_[i + 2];
        return p1 + 0.5 * u * (p2 - p0 +
                               u * (2.0 * p0 - 5.0 * p1 + 4.0 * p2 - p3 +
                                    u * (3.0 * (p1 - p2) + p3 - p0)));
    }

    double argmax(double r) const {
        const double a = std::abs(r);
        if (a >= r_max_ - 2.0 * step_) return s_function(a).argmax_sigma;
        const std::size_t i = static_cast<std::size_t>(a / step_ + 0.5);
        return arg_[std::min(i, arg_.size() - 1)];
    }

    double node_err() const { return node_err_; }
    double step() const { return step_; }
    double r_max() const { return r_max_; }

  private:
    SGrid() {
        const std::size_t n = static_cast<std::size_t>(r_max_ / step_) + 1;
        val_.resize(n);
        arg_.resize(n);
        unsigned workers = std::max(1u, std::min(8u, std::thread::hardware_concurrency()));
        std::atomic<std::size_t> next{0};
        auto work = [&]() {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= n) return;
                const double r = i * step_;
                const detail::SEngine eng(r);
                auto f = [&](double sigma) { return eng.eval(sigma); };
                double best = -std::numeric_limits<double>::infinity(), bs = -0.5;
                for (int k = 0; k <= 64; ++k) {
                    const double sigma = -0.5 + k / 32.0;
                    const double v = f(sigma);
                    if (v > best) {
                        best = v;
                        bs = sigma;
                    }
                }
                double arg = bs;
                const double refined =
                    detail::golden_max(f, std::max(-0.5, bs - 1.0 / 32.0),
                                       std::min(1.5, bs + 1.0 / 32.0), 1e-8, &arg);
                val_[i] = std::max(best, refined);
                arg_[i] = arg;
            }
        };
        std::vector<std::thread> pool;
        for (unsigned w = 0; w + 1 < workers; ++w) pool.emplace_back(work);
        work();
        for (auto& th : pool) th.join();
    }

    static constexpr double step_ = 1e-3;
    static constexpr double r_max_ = 32.768;
    double node_err_ = 5e-10;
    std::vector<double> val_, arg_;
};

}  // namespace poskit
