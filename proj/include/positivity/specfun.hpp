#pragma once

// Special functions over the complex domain used throughout the kit:
//
//   digamma(z)            psi(z) = Gamma'(z)/Gamma(z) for complex z
//   log_gamma(z)          log Gamma(z), principal determination for Re z > 0
//   gamma_r_logderiv(s)   d/ds log[ pi^{-s/2} Gamma(s/2) ]
//   bessel_k_im(r, y, k)  d^k/dy^k of K_{ir}(y), Macdonald function of
//                         imaginary order, real-valued for real r and y > 0
//
// digamma and log_gamma lift the argument by the forward recurrence until
// Re z >= 10 and then apply the Stirling asymptotic series; at that radius
// the k = 10 truncation already sits below double rounding.  Arguments at
// the poles (nonpositive integers) raise PoleError.
//
// K_{ir}(y) uses the cosh integral representation
//   K_{ir}(y) = int_0^inf exp(-y cosh u) cos(ru) du,
// differentiated under the integral sign for the y-derivatives.  The
// integrand is rescaled by e^{y} so the quadrature works with O(1) values,
// and truncated at u* = acosh(1 + 74/y) where the remaining mass is below
// e^{-74} of the peak.

#include <cmath>
#include <complex>
#include <stdexcept>

#include "positivity/quadrature.hpp"

namespace poskit {

class PoleError : public std::domain_error {
  public:
    explicit PoleError(const std::string& what) : std::domain_error(what) {}
};

namespace detail {

// B_{2k} / (2k) for k = 1..10.
inline constexpr double psi_stirling[10] = {
    1.0 / 12.0,       -1.0 / 120.0,     1.0 / 252.0,       -1.0 / 240.0,
    1.0 / 132.0,      -691.0 / 32760.0, 1.0 / 12.0,        -3617.0 / 8160.0,
    43867.0 / 14364.0, -174611.0 / 6600.0,
};

// B_{2k} / (2k (2k - 1)) for k = 1..10.
inline constexpr double lgamma_stirling[10] = {
    1.0 / 12.0,         -1.0 / 360.0,         1.0 / 1260.0,
    -1.0 / 1680.0,      1.0 / 1188.0,         -691.0 / 360360.0,
    1.0 / 156.0,        -3617.0 / 122400.0,   43867.0 / 244188.0,
    -174611.0 / 125400.0,
};

inline void check_not_pole(const std::complex<double>& z, const char* fn) {
    const double rn = std::round(z.real());
    if (rn <= 0.0 && std::abs(z.real() - rn) < 1e-13 && std::abs(z.imag()) < 1e-13)
        throw PoleError(std::string(fn) + ": argument at a nonpositive integer pole");
}

}  // namespace detail

inline std::complex<double> digamma(std::complex<double> z) {
    detail::check_not_pole(z, "digamma");
    std::complex<double> acc = 0.0;
    while (z.real() < 10.0) {
        acc -= 1.0 / z;
        z += 1.0;
    }
    const std::complex<double> inv2 = 1.0 / (z * z);
    std::complex<double> series = 0.0;
    for (int k = 9; k >= 0; --k) series = (series + detail::psi_stirling[k]) * inv2;
    return acc + std::log(z) - 0.5 / z - series;
}

inline std::complex<double> log_gamma(std::complex<double> z) {
    detail::check_not_pole(z, "log_gamma");
    std::complex<double> acc = 0.0;
    while (z.real() < 10.0) {
        acc -= std::log(z);
        z += 1.0;
    }
    const std::complex<double> inv = 1.0 / z;
    const std::complex<double> inv2 = inv * inv;
    std::complex<double> series = 0.0;
    for (int k = 9; k >= 0; --k) series = series * inv2 + detail::lgamma_stirling[k];
    series *= inv;
    constexpr double half_log_2pi = 0.91893853320467274178032973640562;
    return acc + (z - 0.5) * std::log(z) - z + half_log_2pi + series;
}

// Logarithmic derivative of the completed archimedean factor
// pi^{-s/2} Gamma(s/2):  -(log pi)/2 + psi(s/2)/2.
inline std::complex<double> gamma_r_logderiv(std::complex<double> s) {
    constexpr double log_pi = 1.1447298858494001741434273513531;
    return -0.5 * log_pi + 0.5 * digamma(0.5 * s);
}

// d^k/dy^k K_{ir}(y) for k = 0..3, real r, y > 0.
inline double bessel_k_im(double r, double y, int deriv = 0) {
    if (!(y > 0.0)) throw std::domain_error("bessel_k_im: requires y > 0");
    if (deriv < 0 || deriv > 3)
        throw std::invalid_argument("bessel_k_im: derivative order must be 0..3");

    const double ustar = std::acosh(1.0 + 74.0 / y);
    auto integrand = [r, y, deriv](double u) {
        const double ch = std::cosh(u);
        double w = std::exp(-y * (ch - 1.0)) * std::cos(r * u);
        for (int j = 0; j < deriv; ++j) w *= ch;
        return w;
    };

    QuadratureSettings st;
    st.rel_tol = 1e-13;
    st.abs_tol = 1e-16;
    const IntegralResult res = integrate(integrand, 0.0, ustar, st);
    const double sign = (deriv % 2 == 0) ? 1.0 : -1.0;
    return sign * res.value * std::exp(-y);
}

}  // namespace poskit
