#pragma once

// Exact LP optimum of the classical-benchmark acceptance problem by vertex
// enumeration: every vertex of {q in [0,1]^N : sum q_N p_N = A} has at most
// one fractional coordinate, so enumerating fully-accepted subsets plus one
// marginal index is an exhaustive search over the optimum candidates.
// Truncation of the photon distribution is safe once the tail is negligible
// against the comparison tolerance.

#include <algorithm>
#include <cmath>
#include <vector>

namespace oracle {

inline double benchmark_vertex(const std::vector<double>& p, double mass) {
    const size_t n_max = p.size();
    double best = -1.0;
    for (size_t subset = 0; subset < (1ull << (n_max - 1)); ++subset) {
        double sub_mass = 0.0, sub_value = 0.0;
        for (size_t n = 1; n < n_max; ++n) {
            if (subset & (1ull << (n - 1))) {
                sub_mass += p[n];
                sub_value += p[n] * (n + 1.0) / (n + 2.0);
            }
        }
        if (sub_mass > mass + 1e-12) continue;
        if (std::abs(sub_mass - mass) <= 1e-12)
            best = std::max(best, sub_value / mass);
        for (size_t j = 1; j < n_max; ++j) {
            if ((subset & (1ull << (j - 1))) || p[j] <= 0.0) continue;
            double q = (mass - sub_mass) / p[j];
            if (q < -1e-9 || q > 1.0 + 1e-9) continue;
            q = std::clamp(q, 0.0, 1.0);
            const double value = sub_value + q * p[j] * (j + 1.0) / (j + 2.0);
            best = std::max(best, value / mass);
        }
    }
    return best;
}

inline std::vector<double> poisson_distribution_vector(double nbar, size_t n_max) {
    std::vector<double> p(n_max);
    double term = std::exp(-nbar);
    for (size_t n = 0; n < n_max; ++n) {
        p[n] = term;
        term *= nbar / (n + 1.0);
    }
    return p;
}

} // namespace oracle
