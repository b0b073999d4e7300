#pragma once

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <complex>
#include <stdexcept>
#include <string>

namespace eitmem {

struct NumericsConfig {
    double z_quad_tol = 1e-9;    // relative tolerance of the medium z-integral
    unsigned z_quad_depth = 12;  // max adaptive bisection depth
};

struct QuadratureError : std::runtime_error {
    double achieved;
    explicit QuadratureError(double rel)
        : std::runtime_error(
              "medium quadrature did not converge; achieved relative error " +
              std::to_string(rel)),
          achieved(rel) {}
};

/// Adaptive Gauss-Kronrod integral of a complex-valued integrand over [a, b].
template <typename F>
std::complex<double> integrate_complex(F&& f, double a, double b,
                                       const NumericsConfig& num) {
    using boost::math::quadrature::gauss_kronrod;
    double err = 0.0, l1 = 0.0;
    const std::complex<double> val = gauss_kronrod<double, 15>::integrate(
        std::forward<F>(f), a, b, num.z_quad_depth, num.z_quad_tol, &err, &l1);
    if (l1 > 0.0 && err > 10.0 * num.z_quad_tol * l1)
        throw QuadratureError(err / l1);
    return val;
}

} // namespace eitmem
