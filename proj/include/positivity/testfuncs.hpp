#pragma once

// The library of even, compactly supported test functions used everywhere in
// the kit, together with their Fourier transforms
//
//     h(r) = \int_R g(x) e^{irx} dx.
//
// Three kernel families are provided on the half-line branch z = |x| >= 0,
// each supported on [0, p] and normalized to k(0) = 1:
//
//   family 1:  (1 - z/p) cos(pi z/p) + sin(pi z/p)/pi
//   family 2:  [4pi(1 - z/p) + 2pi(1 - z/p) cos(2pi z/p) + 3 sin(2pi z/p)]/(6pi)
//   family 3:  [54pi(1 - z/p) cos(pi z/p) + 6pi(1 - z/p) cos(3pi z/p)
//                + 27 sin(pi z/p) + 11 sin(3pi z/p)]/(60pi)
//
// Up to rescaling these are self-convolutions of cos(pi x/2)^j, so their
// transforms are nonnegative on the real line.  A test function is one of:
//
//   plain smoothed    g(x) = k(|x|) sech(x/2)   -- transform positive in the
//                     strip |Im r| < 1/2 (sech spreads positivity upward)
//   plain unsmoothed  g(x) = k(|x|)
//   modified          g_m(x) = (c^2 k(|x|) + k''(|x|)) / (c^2 + k''(0)),
//                     built from the unsmoothed kernel; its transform is
//                     h_m(r) = (c^2 - r^2) k_hat(r) / (c^2 + k''(0)),
//                     positive exactly for |r| < c on the real line.
//
// Modified transforms have closed forms rational in u = p r times cos^2(u/2)
// or sin^2(u/2); the removable 0/0 points at u = 0, +-pi, +-2pi, +-3pi are
// evaluated through shifted sinc factors instead of raw quotients.

#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>

#include "positivity/quadrature.hpp"

namespace poskit {

struct TestFunction {
    int family;       // 1, 2, or 3
    double p;         // support half-length
    bool smoothing;   // divide by cosh(x/2)
    bool modified;    // (c^2 g + g'')/(c^2 + g''(0)) on the unsmoothed kernel
    double c;         // cutoff height, meaningful only when modified

    TestFunction(int family_, double p_, bool smoothing_ = true,
                 bool modified_ = false, double c_ = 14.13472)
        : family(family_), p(p_), smoothing(smoothing_), modified(modified_), c(c_) {
        if (family < 1 || family > 3)
            throw std::invalid_argument("TestFunction: family must be 1, 2, or 3");
        if (!(p > 0.0)) throw std::invalid_argument("TestFunction: p must be positive");
        if (modified) {
            // Modified functions are always built on the bare kernel.
            smoothing = false;
            if (!(c > 0.0))
                throw std::invalid_argument("TestFunction: cutoff c must be positive");
            if (c * c + kernel_curvature_at_zero() <= 0.0)
                throw std::invalid_argument(
                    "TestFunction: c^2 must exceed -k''(0), otherwise the "
                    "transform is not positive below the cutoff");
        }
    }

    static TestFunction plain(int family, double p) {
        return TestFunction(family, p, true, false);
    }
    static TestFunction unsmoothed(int family, double p) {
        return TestFunction(family, p, false, false);
    }
    static TestFunction modified_fn(int family, double p, double c = 14.13472) {
        return TestFunction(family, p, false, true, c);
    }

    // k''(0): -pi^2/p^2, -4pi^2/(3p^2), -9pi^2/(5p^2) for families 1..3.
    double kernel_curvature_at_zero() const {
        constexpr double pi = 3.14159265358979323846;
        const double w = pi * pi / (p * p);
        if (family == 1) return -w;
        if (family == 2) return -4.0 * w / 3.0;
        return -9.0 * w / 5.0;
    }

    double modified_norm() const { return c * c + kernel_curvature_at_zero(); }
};

namespace detail {

inline constexpr double tf_pi = 3.14159265358979323846;

// Branch kernel k(z) for z in [0, p] extended analytically, with derivatives
// up to fourth order.  Templated so the same formulas serve real evaluation,
// complex Taylor extraction, and complex transform arguments.
template <class T>
T kernel_eval(int family, double p, T z, int deriv) {
    const double pi = tf_pi;
    const T w = 1.0 - z / p;
    if (family == 1) {
        const T v = pi * z / p;
        const T cv = std::cos(v), sv = std::sin(v);
        const double q = pi / p;
        switch (deriv) {
            case 0: return w * cv + sv / pi;
            case 1: return -q * w * sv;
            case 2: return q / p * sv - q * q * w * cv;
            case 3: return 2.0 * q * q / p * cv + q * q * q * w * sv;
            case 4: return -3.0 * q * q * q / p * sv + q * q * q * q * w * cv;
        }
    } else if (family == 2) {
        const T v = 2.0 * pi * z / p;
        const T cv = std::cos(v), sv = std::sin(v);
        const double pp = pi / p;
        switch (deriv) {
            case 0: return (4.0 * pi * w + 2.0 * pi * w * cv + 3.0 * sv) / (6.0 * pi);
            case 1:
                return (-4.0 * pi / p + 4.0 * pi / p * cv -
                        4.0 * pi * pi / p * w * sv) / (6.0 * pi);
            case 2:
                return (-4.0 * pi * pi / (p * p) * sv -
                        8.0 * pi * pi * pi / (p * p) * w * cv) / (6.0 * pi);
            case 3: return (16.0 * pi * pi * pi * pp / (p * p) * w * sv) / (6.0 * pi);
            case 4:
                return (-16.0 * pi * pi * pi * pp / (p * p * p) * sv +
                        32.0 * pi * pi * pi * pp * pp / (p * p) * w * cv) / (6.0 * pi);
        }
    } else {
        const T a = pi * z / p, b = 3.0 * pi * z / p;
        const T ca = std::cos(a), sa = std::sin(a);
        const T cb = std::cos(b), sb = std::sin(b);
        const double pi2 = pi * pi, pi3 = pi2 * pi, pi4 = pi2 * pi2, pi5 = pi4 * pi;
        switch (deriv) {
            case 0:
                return (54.0 * pi * w * ca + 6.0 * pi * w * cb + 27.0 * sa +
                        11.0 * sb) / (60.0 * pi);
            case 1:
                return (-27.0 * pi / p * ca + 27.0 * pi / p * cb -
                        54.0 * pi2 / p * w * sa - 18.0 * pi2 / p * w * sb) / (60.0 * pi);
            case 2:
                return (81.0 * pi2 * sa - 63.0 * pi2 * sb -
                        54.0 * pi3 * w * (ca + cb)) / (60.0 * pi * p * p);
            case 3:
                return (135.0 * pi3 * (ca - cb) +
                        54.0 * pi4 * w * (sa + 3.0 * sb)) / (60.0 * pi * p * p * p);
            case 4:
                return (-189.0 * pi4 * sa + 243.0 * pi4 * sb +
                        54.0 * pi5 * w * (ca + 9.0 * cb)) / (60.0 * pi * p * p * p * p);
        }
    }
    throw std::invalid_argument("kernel_eval: derivative order must be 0..4");
}

// sech(z/2) and its first two derivatives.
template <class T>
T sech_half(T z, int deriv) {
    const T s = 1.0 / std::cosh(0.5 * z);
    if (deriv == 0) return s;
    const T t = std::tanh(0.5 * z);
    if (deriv == 1) return -0.5 * s * t;
    return 0.25 * s * (t * t - s * s);
}

// Analytic continuation of the z = |x| > 0 branch of g.
template <class T>
T g_branch(const TestFunction& tf, T z) {
    if (tf.modified) {
        return (tf.c * tf.c * kernel_eval<T>(tf.family, tf.p, z, 0) +
                kernel_eval<T>(tf.family, tf.p, z, 2)) / tf.modified_norm();
    }
    T v = kernel_eval<T>(tf.family, tf.p, z, 0);
    if (tf.smoothing) v *= sech_half<T>(z, 0);
    return v;
}

template <class T>
T g_branch_second_derivative(const TestFunction& tf, T z) {
    if (tf.modified) {
        return (tf.c * tf.c * kernel_eval<T>(tf.family, tf.p, z, 2) +
                kernel_eval<T>(tf.family, tf.p, z, 4)) / tf.modified_norm();
    }
    const T k2 = kernel_eval<T>(tf.family, tf.p, z, 2);
    if (!tf.smoothing) return k2;
    const T k0 = kernel_eval<T>(tf.family, tf.p, z, 0);
    const T k1 = kernel_eval<T>(tf.family, tf.p, z, 1);
    return k2 * sech_half<T>(z, 0) + 2.0 * k1 * sech_half<T>(z, 1) +
           k0 * sech_half<T>(z, 2);
}

// sin(t)/t, stable for small and complex t.
template <class T>
T sinc(T t) {
    if (std::abs(t) < 1e-8) return 1.0 - t * t / 6.0;
    return std::sin(t) / t;
}

// Nonnegative real-line transforms of the bare kernels, u = p r:
//   khat_1 = 8 p pi^2 cos^2(u/2) / (pi^2 - u^2)^2
//   khat_2 = (128 p pi^4 / 3) sin^2(u/2) / (u (u^2 - 4 pi^2))^2
//   khat_3 = (2304 p pi^6 / 5) cos^2(u/2) / ((pi^2 - u^2)(9 pi^2 - u^2))^2
// evaluated through shifted half-angle identities near the removable zeros:
// cos(u/2) = sin((pi -+ u)/2) near u = +-pi, cos(u/2) = -+ sin((u -+ 3pi)/2)
// near u = +-3pi, sin(u/2) = -sin((u - 2pi)/2) near u = 2pi, and so on; the
// squares make every sign immaterial.
template <class T>
T kernel_hat(int family, double p, T r) {
    const double pi = tf_pi;
    const T u = p * r;
    if (family == 1) {
        const double amp = 8.0 * p * pi * pi;
        if (std::abs(u - pi) < 1.0) {
            const T s = sinc<T>(0.5 * (pi - u));
            return 0.25 * amp * s * s / ((pi + u) * (pi + u));
        }
        if (std::abs(u + pi) < 1.0) {
            const T s = sinc<T>(0.5 * (pi + u));
            return 0.25 * amp * s * s / ((pi - u) * (pi - u));
        }
        const T cs = std::cos(0.5 * u);
        const T den = (pi * pi - u * u);
        return amp * cs * cs / (den * den);
    }
    if (family == 2) {
        const double amp = 128.0 * p * pi * pi * pi * pi / 3.0;
        const double tp = 2.0 * pi;
        if (std::abs(u) < 1.0) {
            const T s = sinc<T>(0.5 * u);
            const T den = u * u - tp * tp;
            return 0.25 * amp * s * s / (den * den);
        }
        if (std::abs(u - tp) < 1.0) {
            const T s = sinc<T>(0.5 * (u - tp));
            const T den = u * (u + tp);
            return 0.25 * amp * s * s / (den * den);
        }
        if (std::abs(u + tp) < 1.0) {
            const T s = sinc<T>(0.5 * (u + tp));
            const T den = u * (u - tp);
            return 0.25 * amp * s * s / (den * den);
        }
        const T sn = std::sin(0.5 * u);
        const T den = u * (u * u - tp * tp);
        return amp * sn * sn / (den * den);
    }
    const double amp = 2304.0 * p * std::pow(pi, 6) / 5.0;
    const double thp = 3.0 * pi;
    if (std::abs(u - pi) < 1.0) {
        const T s = sinc<T>(0.5 * (pi - u));
        const T den = (pi + u) * (9.0 * pi * pi - u * u);
        return 0.25 * amp * s * s / (den * den);
    }
    if (std::abs(u + pi) < 1.0) {
        const T s = sinc<T>(0.5 * (pi + u));
        const T den = (pi - u) * (9.0 * pi * pi - u * u);
        return 0.25 * amp * s * s / (den * den);
    }
    if (std::abs(u - thp) < 1.0) {
        const T s = sinc<T>(0.5 * (u - thp));
        const T den = (pi * pi - u * u) * (thp + u);
        return 0.25 * amp * s * s / (den * den);
    }
    if (std::abs(u + thp) < 1.0) {
        const T s = sinc<T>(0.5 * (u + thp));
        const T den = (pi * pi - u * u) * (thp - u);
        return 0.25 * amp * s * s / (den * den);
    }
    const T cs = std::cos(0.5 * u);
    const T den = (pi * pi - u * u) * (9.0 * pi * pi - u * u);
    return amp * cs * cs / (den * den);
}

}  // namespace detail

inline double g_eval(const TestFunction& tf, double x) {
    const double z = std::abs(x);
    if (z >= tf.p) return 0.0;
    return detail::g_branch<double>(tf, z);
}

// One-sided (from inside the support, away from the origin) at the kink
// points {0, +-p}; identically zero beyond the support.
inline double g_second_derivative(const TestFunction& tf, double x) {
    const double z = std::abs(x);
    if (z > tf.p) return 0.0;
    return detail::g_branch_second_derivative<double>(tf, z);
}

// Fourier transform h(r) = int g(x) e^{irx} dx at complex r.  Modified
// functions use their closed forms; everything else integrates
// 2 int_0^p g(x) cos(rx) dx, which for the smoothed family is restricted to
// the strip |Im r| < 1/2 where the transform is positive.
inline std::complex<double> h_eval(const TestFunction& tf, std::complex<double> r,
                                   const QuadratureSettings& st = {}) {
    using cplx = std::complex<double>;
    if (tf.modified) {
        const cplx base = detail::kernel_hat<cplx>(tf.family, tf.p, r);
        return (tf.c * tf.c - r * r) * base / tf.modified_norm();
    }
    if (tf.smoothing && std::abs(r.imag()) >= 0.5)
        throw std::domain_error("h_eval: smoothed transform requires |Im r| < 1/2");
    auto re_part = [&](double x) {
        return 2.0 * g_eval(tf, x) * (std::cos(r.real() * x) * std::cosh(r.imag() * x));
    };
    auto im_part = [&](double x) {
        return -2.0 * g_eval(tf, x) * (std::sin(r.real() * x) * std::sinh(r.imag() * x));
    };
    const IntegralResult re = integrate(re_part, 0.0, tf.p, st);
    if (r.imag() == 0.0) return cplx(re.value, 0.0);
    const IntegralResult im = integrate(im_part, 0.0, tf.p, st);
    return cplx(re.value, im.value);
}

// Quadrature error estimate accompanying h_eval on the same arguments.
inline double h_eval_err(const TestFunction& tf, std::complex<double> r,
                         const QuadratureSettings& st = {}) {
    if (tf.modified) return 1e-15 * std::abs(detail::kernel_hat<std::complex<double>>(
                                tf.family, tf.p, r)) * (tf.c * tf.c + std::norm(r));
    auto re_part = [&](double x) {
        return 2.0 * g_eval(tf, x) * (std::cos(r.real() * x) * std::cosh(r.imag() * x));
    };
    return integrate(re_part, 0.0, tf.p, st).error;
}

struct StripCheckResult {
    bool positive = true;
    double min_value = 0.0;
    std::complex<double> min_location{0.0, 0.0};
    double max_err = 0.0;
};

// Verifies Re h(r) > quadrature error over the rectangle
// [re_lo, re_hi] x [im_lo, im_hi] sampled at the given step.
inline StripCheckResult strip_positivity_check(const TestFunction& tf, double re_lo,
                                               double re_hi, double im_lo, double im_hi,
                                               double step) {
    if (!tf.smoothing)
        throw std::domain_error("strip_positivity_check: requires a smoothed function");
    if (std::max(std::abs(im_lo), std::abs(im_hi)) > 0.49)
        throw std::domain_error("strip_positivity_check: grid must stay in |Im r| <= 0.49");
    StripCheckResult res;
    res.min_value = std::numeric_limits<double>::infinity();
    auto axis = [step](double lo, double hi) {
        std::vector<double> v;
        for (double t = lo; t < hi - 1e-12; t += step) v.push_back(t);
        v.push_back(hi);
        return v;
    };
    for (double v : axis(im_lo, im_hi)) {
        for (double u : axis(re_lo, re_hi)) {
            const std::complex<double> r(u, v);
            const double hv = h_eval(tf, r).real();
            const double err = h_eval_err(tf, r);
            res.max_err = std::max(res.max_err, err);
            if (hv < res.min_value) {
                res.min_value = hv;
                res.min_location = r;
            }
            if (!(hv > err)) res.positive = false;
        }
    }
    return res;
}

}  // namespace poskit
