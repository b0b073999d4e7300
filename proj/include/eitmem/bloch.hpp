#pragma once

// Fourier-domain optical Bloch equations for the sigma+ probe/control pair on
// the cesium D2 line. Per Zeeman channel m the unknowns are the four optical
// coherences |g_m> -> |e_F',m+1> and the spin coherence |s_m> -> |g_m>; the
// frequency-domain equations form one small linear system per (omega, z, m),
// solved directly. The medium susceptibility sums the probe coherences over
// channels and is calibrated so the resonant control-off transmission equals
// exp(-d0).

#include <Eigen/Dense>
#include <array>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include "eitmem/constants.hpp"
#include "eitmem/level_scheme.hpp"
#include "eitmem/numerics.hpp"

namespace eitmem {

using cd = std::complex<double>;

struct FieldConfig {
    double probe_detuning = 0.0;    // rad/s from |g> -> |e_{F'=4}>
    double control_detuning = 0.0;  // rad/s from |s> -> |e_{F'=4}>
    double control_rabi = 0.0;      // rad/s on the reference s,m=0 -> F'=4 channel
    double probe_rabi = 1.0;        // rad/s, linear response placeholder

    // Model-reduction switch: excited manifolds F'=2..5 kept in the system.
    std::array<bool, 4> excited_enabled{true, true, true, true};

    bool enabled(int f_ex) const {
        return excited_enabled[static_cast<size_t>(f_ex - 2)];
    }
    static std::array<bool, 4> lambda_only() { return {false, false, true, false}; }
};

struct MediumConfig {
    double optical_depth = 0.0;      // resonant, control off, as measured
    double length = 0.0;             // m
    double temperature = 0.0;        // K
    double gradient = 0.0;           // magnetic gradient, G/cm
    double ground_decoherence = 0.0; // gamma_0, rad/s
    std::array<double, 7> populations{};  // ground p_m, m = -3..3

    double density_profile(double z) const {  // dimensionless, peak 1 at z=0
        return std::exp(-4.0 * z * z / (length * length));
    }
    double field_gauss(double z) const {  // B(z) = B0 * z
        return gradient * z * 100.0;      // z in m, gradient in G/cm
    }

    static std::array<double, 7> equal_populations() {
        std::array<double, 7> p{};
        p.fill(1.0 / 7.0);
        return p;
    }
    static std::array<double, 7> single_sublevel(int m = 3) {
        std::array<double, 7> p{};
        p[static_cast<size_t>(m + 3)] = 1.0;
        return p;
    }

    std::vector<std::string> validate() const {
        std::vector<std::string> bad;
        if (!(optical_depth > 0.0)) bad.push_back("medium: optical depth must be > 0");
        if (!(length > 0.0)) bad.push_back("medium: length must be > 0");
        double sum = 0.0;
        for (double p : populations) {
            if (p < 0.0) bad.push_back("medium: populations must be >= 0");
            sum += p;
        }
        if (std::abs(sum - 1.0) > 1e-9)
            bad.push_back("medium: populations must sum to 1");
        if (ground_decoherence < 0.0)
            bad.push_back("medium: ground decoherence must be >= 0");
        return bad;
    }
};

struct CoherenceSolution {
    std::array<cd, 4> optical{};  // sigma_{e_F' g}, F' = 2..5
    cd spin{};                    // sigma_{s g}
    double residual = 0.0;        // relative, of the assembled linear system

    cd optical_for(int f_ex) const {
        return optical[static_cast<size_t>(f_ex - 2)];
    }
};

namespace detail {

// Per-channel control Rabi frequency: global scale times dipole ratio against
// the reference transition.
inline double channel_control_rabi(const FieldConfig& f, const LevelScheme& s,
                                   int m, int f_ex) {
    return f.control_rabi * s.control_dipole(m, f_ex) /
           s.control_reference_dipole();
}

inline double channel_probe_rabi(const FieldConfig& f, const LevelScheme& s,
                                 int m, int f_ex) {
    return f.probe_rabi * s.probe_dipole(m, f_ex);
}

} // namespace detail

/// Solves the frequency-domain coherence system for one Zeeman channel at one
/// (omega, z) point. omega is the Fourier variable of the slowly varying
/// envelopes, z the position in the gradient field.
inline CoherenceSolution solve_coherences(double omega, double z, int m,
                                          const FieldConfig& fields,
                                          const MediumConfig& medium,
                                          const LevelScheme& scheme) {
    if (std::abs(m) > LevelScheme::m_max)
        throw std::invalid_argument("solve_coherences: |m| > 3");
    if (scheme.linewidth == 0.0 && medium.ground_decoherence == 0.0)
        throw std::invalid_argument(
            "solve_coherences: Gamma and gamma_0 both zero makes the system singular");

    const double b = medium.field_gauss(z);
    const double pop = medium.populations[static_cast<size_t>(m + 3)];
    const double gamma = scheme.linewidth;

    // Two-photon detuning referenced to the F'=4 transitions; the excited
    // Zeeman term cancels between probe and control.
    const double two_photon =
        (fields.probe_detuning + zeeman_detuning(m, GroundManifold::f3, 4, b, scheme)) -
        (fields.control_detuning + zeeman_detuning(m, GroundManifold::f4, 4, b, scheme));

    // Participating unknowns: enabled excited levels, plus the spin coherence
    // whenever the control actually couples it to one of them.
    std::array<int, 4> level_of{};
    int n_exc = 0;
    bool spin_coupled = false;
    for (int f_ex = 2; f_ex <= 5; ++f_ex) {
        if (!fields.enabled(f_ex)) continue;
        level_of[static_cast<size_t>(n_exc++)] = f_ex;
        if (detail::channel_control_rabi(fields, scheme, m, f_ex) != 0.0)
            spin_coupled = true;
    }
    const int n = n_exc + (spin_coupled ? 1 : 0);

    CoherenceSolution sol;
    if (n == 0) return sol;

    using Mat = Eigen::Matrix<cd, Eigen::Dynamic, Eigen::Dynamic, 0, 5, 5>;
    using Vec = Eigen::Matrix<cd, Eigen::Dynamic, 1, 0, 5, 1>;
    Mat a = Mat::Zero(n, n);
    Vec rhs = Vec::Zero(n);

    for (int i = 0; i < n_exc; ++i) {
        const int f_ex = level_of[static_cast<size_t>(i)];
        const double one_photon =
            fields.probe_detuning +
            zeeman_detuning(m, GroundManifold::f3, f_ex, b, scheme) -
            scheme.splitting(f_ex);
        a(i, i) = cd(omega + one_photon, 0.5 * gamma);
        if (spin_coupled) {
            const double oc = detail::channel_control_rabi(fields, scheme, m, f_ex);
            a(i, n_exc) = 0.5 * oc;
            a(n_exc, i) = 0.5 * oc;
        }
        rhs(i) = -0.5 * detail::channel_probe_rabi(fields, scheme, m, f_ex) * pop;
    }
    if (spin_coupled)
        a(n_exc, n_exc) = cd(omega + two_photon, medium.ground_decoherence);

    const Vec x = a.partialPivLu().solve(rhs);

    const double rhs_norm = rhs.norm();
    sol.residual = rhs_norm > 0.0 ? (a * x - rhs).norm() / rhs_norm : 0.0;
    for (int i = 0; i < n_exc; ++i)
        sol.optical[static_cast<size_t>(level_of[static_cast<size_t>(i)] - 2)] = x(i);
    if (spin_coupled) sol.spin = x(n_exc);
    return sol;
}

/// Linear-response susceptibility of the medium with the calibration constant
/// folded in. Construct once, evaluate many (omega, z) points.
class SusceptibilityModel {
public:
    // Integration window covers the Gaussian density out to 2.5 half-lengths.
    static constexpr double support_factor = 2.5;

    SusceptibilityModel(const FieldConfig& fields, const MediumConfig& medium,
                        const LevelScheme& scheme, const NumericsConfig& num = {})
        : fields_(fields), medium_(medium), scheme_(scheme), num_(num) {
        fields_.probe_rabi = 1.0;  // response is normalized by the probe
        wavenumber_ = constants::two_pi / scheme.wavelength;

        FieldConfig off = fields_;
        off.control_rabi = 0.0;
        off.probe_detuning = 0.0;
        const cd resonant = integrate_complex(
            [&](double z) { return raw(0.0, z, off); }, z_min(), z_max(), num_);
        if (!(std::abs(resonant.imag()) > 0.0)) {
            if (medium.optical_depth == 0.0) {
                calibration_ = 0.0;  // empty medium
                return;
            }
            throw std::invalid_argument(
                "susceptibility: probe couples to no enabled excited level");
        }
        calibration_ = medium.optical_depth /
                       (4.0 * std::numbers::pi * wavenumber_ * resonant.imag());
    }

    double z_min() const { return -0.5 * support_factor * medium_.length; }
    double z_max() const { return 0.5 * support_factor * medium_.length; }
    double calibration() const { return calibration_; }
    double wavenumber() const { return wavenumber_; }

    cd chi(double omega, double z) const {
        return calibration_ * raw(omega, z, fields_);
    }

    /// Column-integrated susceptibility at envelope frequency omega.
    cd chi_integral(double omega) const {
        if (calibration_ == 0.0) return {};
        return calibration_ *
               integrate_complex([&](double z) { return raw(omega, z, fields_); },
                                 z_min(), z_max(), num_);
    }

    /// Complex envelope transfer over the full medium.
    cd transfer(double omega) const {
        return std::exp(cd(0.0, constants::two_pi * wavenumber_) *
                        chi_integral(omega));
    }

    /// Power transmission at envelope frequency omega.
    double transmission(double omega) const {
        return std::exp(-4.0 * std::numbers::pi * wavenumber_ *
                        chi_integral(omega).imag());
    }

private:
    cd raw(double omega, double z, const FieldConfig& f) const {
        cd acc{};
        for (int m = -3; m <= 3; ++m) {
            if (medium_.populations[static_cast<size_t>(m + 3)] == 0.0) continue;
            const CoherenceSolution c =
                solve_coherences(omega, z, m, f, medium_, scheme_);
            for (int f_ex = 2; f_ex <= 4; ++f_ex) {
                if (!f.enabled(f_ex)) continue;
                acc += scheme_.probe_dipole(m, f_ex) * c.optical_for(f_ex);
            }
        }
        return -medium_.density_profile(z) * acc;
    }

    FieldConfig fields_;
    MediumConfig medium_;
    LevelScheme scheme_;
    NumericsConfig num_;
    double wavenumber_ = 0.0;
    double calibration_ = 0.0;
};

/// One-shot calibrated susceptibility chi(omega, z). Prefer
/// SusceptibilityModel when sampling many points.
inline cd susceptibility(double omega, double z, const FieldConfig& fields,
                         const MediumConfig& medium, const LevelScheme& scheme,
                         const NumericsConfig& num = {}) {
    return SusceptibilityModel(fields, medium, scheme, num).chi(omega, z);
}

struct EffectiveParams {
    double probe_detuning = 0.0;      // Stark-shifted
    double ground_decoherence = 0.0;  // control-induced, on top of gamma_0
};

/// Off-resonant control coupling to F' = 3, 5: aggregate Stark shift and the
/// control-induced ground-state decoherence. Diagnostic only; the full solver
/// contains both effects implicitly.
inline EffectiveParams effective_params(const FieldConfig& fields,
                                        const MediumConfig& medium,
                                        const LevelScheme& scheme) {
    EffectiveParams out{fields.probe_detuning, medium.ground_decoherence};
    for (int m = -3; m <= 3; ++m) {
        for (int f_ex : {3, 5}) {
            const double oc = detail::channel_control_rabi(fields, scheme, m, f_ex);
            const double split = scheme.splitting(f_ex);
            out.probe_detuning += 0.25 * oc * oc / split;
            out.ground_decoherence +=
                0.25 * oc * oc / (split * split) * 0.5 * scheme.linewidth;
        }
    }
    return out;
}

} // namespace eitmem
