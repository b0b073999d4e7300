#pragma once

// Angular-momentum coupling coefficients: Clebsch-Gordan, Wigner 3-j and 6-j.
// All arguments are (half-)integers passed as doubles; values are computed
// with the Racah algebraic sums using cached log-factorials, which is exact
// to double rounding for the small momenta needed here (j <= ~10).

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace eitmem::wigner {

namespace detail {

inline double ln_factorial(int n) {
    static std::vector<double> cache = {0.0};
    if (n < 0) throw std::invalid_argument("ln_factorial: negative argument");
    if (n < static_cast<int>(cache.size())) return cache[n];
    double val = cache.back();
    for (int i = static_cast<int>(cache.size()); i <= n; ++i) {
        val += std::log(static_cast<double>(i));
        cache.push_back(val);
    }
    return cache[n];
}

// Doubled representation: j -> 2j, exact integer arithmetic for half-integers.
inline int doubled(double j, const char* name) {
    double t = 2.0 * j;
    double r = std::round(t);
    if (std::abs(t - r) > 1e-9)
        throw std::invalid_argument(std::string(name) +
                                    " is not a half-integer: " + std::to_string(j));
    return static_cast<int>(r);
}

inline void check_pair(double j, double m, const char* jn) {
    int j2 = doubled(j, jn);
    int m2 = doubled(m, jn);
    if (j2 < 0) throw std::invalid_argument(std::string(jn) + " < 0");
    if ((j2 - m2) % 2 != 0)
        throw std::invalid_argument(std::string(jn) + ": j and m differ by a non-integer");
    if (std::abs(m2) > j2)
        throw std::invalid_argument(std::string(jn) + ": |m| > j");
}

inline bool triangle(double a, double b, double c) {
    return c >= std::abs(a - b) - 1e-9 && c <= a + b + 1e-9 &&
           std::abs(std::round(a + b + c) - (a + b + c)) < 1e-9;
}

} // namespace detail

/// <j1 m1; j2 m2 | J M> in the Condon-Shortley convention.
inline double clebsch_gordan(double j1, double m1, double j2, double m2,
                             double J, double M) {
    detail::check_pair(j1, m1, "j1");
    detail::check_pair(j2, m2, "j2");
    detail::check_pair(J, M, "J");

    if (std::abs((m1 + m2) - M) > 1e-9) return 0.0;
    if (!detail::triangle(j1, j2, J)) return 0.0;

    using detail::ln_factorial;
    auto lf = [](double x) { return ln_factorial(static_cast<int>(std::round(x))); };

    const double ln_pre =
        0.5 * (std::log(2.0 * J + 1.0) + lf(J + j1 - j2) + lf(J - j1 + j2) +
               lf(j1 + j2 - J) - lf(j1 + j2 + J + 1.0) + lf(J + M) + lf(J - M) +
               lf(j1 + m1) + lf(j1 - m1) + lf(j2 + m2) + lf(j2 - m2));

    const int k_max = static_cast<int>(std::round(
        std::min({j1 + j2 - J, j1 - m1, j2 + m2})));

    double sum = 0.0;
    for (int k = 0; k <= k_max; ++k) {
        const double t1 = j1 + j2 - J - k;
        const double t2 = j1 - m1 - k;
        const double t3 = j2 + m2 - k;
        const double t4 = J - j2 + m1 + k;
        const double t5 = J - j1 - m2 + k;
        if (t1 < -0.5 || t2 < -0.5 || t3 < -0.5 || t4 < -0.5 || t5 < -0.5) continue;
        double term = std::exp(ln_pre - (lf(k) + lf(t1) + lf(t2) + lf(t3) +
                                         lf(t4) + lf(t5)));
        sum += (k % 2 == 0) ? term : -term;
    }
    return sum;
}

/// Wigner 3-j symbol (j1 j2 j3; m1 m2 m3).
inline double wigner_3j(double j1, double m1, double j2, double m2,
                        double j3, double m3) {
    const double phase_exp = j1 - j2 - m3;
    const double sign = (static_cast<long long>(std::llround(phase_exp)) % 2 == 0)
                            ? 1.0 : -1.0;
    return sign / std::sqrt(2.0 * j3 + 1.0) *
           clebsch_gordan(j1, m1, j2, m2, j3, -m3);
}

/// Wigner 6-j symbol {j1 j2 j3; j4 j5 j6} via the Racah single-sum formula.
inline double wigner_6j(double j1, double j2, double j3, double j4, double j5,
                        double j6) {
    using detail::triangle;
    for (double j : {j1, j2, j3, j4, j5, j6}) detail::doubled(j, "j");
    if (!triangle(j1, j2, j3) || !triangle(j1, j5, j6) ||
        !triangle(j4, j2, j6) || !triangle(j4, j5, j3))
        return 0.0;

    using detail::ln_factorial;
    auto lf = [](double x) { return ln_factorial(static_cast<int>(std::round(x))); };
    auto ln_delta = [&](double a, double b, double c) {
        return 0.5 * (lf(a + b - c) + lf(a - b + c) + lf(-a + b + c) -
                      lf(a + b + c + 1.0));
    };

    const double pre = ln_delta(j1, j2, j3) + ln_delta(j1, j5, j6) +
                       ln_delta(j4, j2, j6) + ln_delta(j4, j5, j3);

    const int t_min = static_cast<int>(std::round(
        std::max({j1 + j2 + j3, j1 + j5 + j6, j4 + j2 + j6, j4 + j5 + j3})));
    const int t_max = static_cast<int>(std::round(
        std::min({j1 + j2 + j4 + j5, j2 + j3 + j5 + j6, j3 + j1 + j6 + j4})));

    double sum = 0.0;
    for (int t = t_min; t <= t_max; ++t) {
        double term = lf(t + 1.0) -
                      (lf(t - (j1 + j2 + j3)) + lf(t - (j1 + j5 + j6)) +
                       lf(t - (j4 + j2 + j6)) + lf(t - (j4 + j5 + j3)) +
                       lf((j1 + j2 + j4 + j5) - t) + lf((j2 + j3 + j5 + j6) - t) +
                       lf((j3 + j1 + j6 + j4) - t));
        sum += ((t % 2 == 0) ? 1.0 : -1.0) * std::exp(pre + term);
    }
    return sum;
}

} // namespace eitmem::wigner
