#pragma once

// Spectral-domain probe propagation through the calibrated medium:
// transmission spectra, slow-light group delay, control-power tuning against
// a delay target, and the storage-and-retrieval efficiency with its
// early-leakage split.

#include <unsupported/Eigen/FFT>

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include "eitmem/bloch.hpp"
#include "eitmem/decoherence.hpp"
#include "eitmem/numerics.hpp"

namespace eitmem {

struct GridError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct DegenerateOutputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct BracketError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Gaussian probe pulse on a uniform time grid covering [0, span).
struct PulseSpec {
    double fwhm = 0.0;       // intensity FWHM, s
    double peak_time = 0.0;  // s
    double span = 0.0;       // s
    int samples = 4096;      // power of two

    double dt() const { return span / samples; }

    double envelope(double t) const {
        const double x = (t - peak_time) / fwhm;
        return std::exp(-2.0 * std::numbers::ln2 * x * x);
    }

    /// Fraction of the analytic pulse energy inside [0, span].
    double captured_energy_fraction() const {
        const double sigma = fwhm / (2.0 * std::sqrt(2.0 * std::numbers::ln2));
        auto cdf = [&](double t) {
            return 0.5 * (1.0 + std::erf((t - peak_time) / (sigma * std::numbers::sqrt2)));
        };
        return cdf(span) - cdf(0.0);
    }

    std::vector<std::string> validate(double expected_delay = 0.0) const {
        std::vector<std::string> bad;
        if (!(fwhm > 0.0)) bad.push_back("pulse: fwhm must be > 0");
        if (samples < 8 || (samples & (samples - 1)) != 0)
            bad.push_back("pulse: samples must be a power of two (>= 8)");
        if (!(span >= 16.0 * fwhm)) bad.push_back("pulse: span must be >= 16 fwhm");
        if (expected_delay > 0.0 && span < 4.0 * expected_delay)
            bad.push_back("pulse: span must be >= 4x the expected delay");
        if (fwhm > 0.0 && span > 0.0 && captured_energy_fraction() < 1.0 - 1e-8)
            bad.push_back("pulse: grid captures less than 1 - 1e-8 of the pulse energy");
        return bad;
    }

    static PulseSpec standard(double fwhm, double expected_delay) {
        PulseSpec p;
        p.fwhm = fwhm;
        p.peak_time = 5.0 * fwhm;
        p.span = std::max({16.0 * fwhm, 4.0 * expected_delay,
                           p.peak_time + expected_delay + 8.0 * fwhm});
        return p;
    }
};

struct ComplexSpectrum {
    double omega_start = 0.0;
    double omega_step = 0.0;
    std::vector<cd> values;
    double omega_at(size_t k) const { return omega_start + omega_step * k; }
};

namespace fourier {

// Physics convention: spectrum(w) = integral eps(t) exp(+i w t) dt, inverse
// carries 1/(2 pi). On the discrete grid spectra are kept in FFT index order;
// index k maps to angular frequency 2 pi k / (N dt), wrapped to +-Nyquist.

inline double omega_at(int k, int n, double dt) {
    const int kk = (k < n / 2) ? k : k - n;
    return constants::two_pi * kk / (n * dt);
}

inline std::vector<cd> forward(const std::vector<cd>& x, double dt) {
    Eigen::FFT<double> fft;
    std::vector<cd> out;
    fft.inv(out, x);  // (1/N) sum x_n exp(+2 pi i k n / N)
    const double scale = dt * static_cast<double>(x.size());
    for (auto& v : out) v *= scale;
    return out;
}

inline std::vector<cd> inverse(const std::vector<cd>& spec, double dt) {
    Eigen::FFT<double> fft;
    std::vector<cd> out;
    fft.fwd(out, spec);  // sum X_k exp(-2 pi i k n / N)
    const double scale = 1.0 / (dt * static_cast<double>(spec.size()));
    for (auto& v : out) v *= scale;
    return out;
}

} // namespace fourier

struct PropagationResult {
    PulseSpec pulse;
    std::vector<double> times;
    std::vector<cd> input, output;
    double energy_in = 0.0, energy_out = 0.0;  // time-domain, integral |eps|^2 dt

    double centroid(const std::vector<cd>& env) const {
        double num = 0.0, den = 0.0;
        for (size_t i = 0; i < env.size(); ++i) {
            const double p = std::norm(env[i]);
            num += times[i] * p;
            den += p;
        }
        return num / den;
    }
};

/// Transmission T(omega) on a uniform grid of envelope frequencies.
inline ComplexSpectrum transmission_spectrum(double omega_min, double omega_max,
                                             int samples,
                                             const FieldConfig& fields,
                                             const MediumConfig& medium,
                                             const LevelScheme& scheme,
                                             const NumericsConfig& num = {}) {
    if (samples < 2 || !(omega_max > omega_min))
        throw std::invalid_argument("transmission_spectrum: bad frequency grid");
    const SusceptibilityModel model(fields, medium, scheme, num);
    ComplexSpectrum out;
    out.omega_start = omega_min;
    out.omega_step = (omega_max - omega_min) / (samples - 1);
    out.values.resize(static_cast<size_t>(samples));
    for (int k = 0; k < samples; ++k)
        out.values[static_cast<size_t>(k)] = model.transmission(out.omega_at(
            static_cast<size_t>(k)));
    return out;
}

/// Propagates the probe pulse through the medium under continuous control.
inline PropagationResult propagate_pulse(const PulseSpec& pulse,
                                         const FieldConfig& fields,
                                         const MediumConfig& medium,
                                         const LevelScheme& scheme,
                                         const NumericsConfig& num = {}) {
    if (auto bad = pulse.validate(); !bad.empty()) {
        std::string msg = "propagate_pulse:";
        for (const auto& b : bad) msg += " " + b + ";";
        throw std::invalid_argument(msg);
    }

    const int n = pulse.samples;
    const double dt = pulse.dt();
    PropagationResult res;
    res.pulse = pulse;
    res.times.resize(static_cast<size_t>(n));
    res.input.resize(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        res.times[static_cast<size_t>(i)] = i * dt;
        res.input[static_cast<size_t>(i)] = pulse.envelope(i * dt);
    }

    std::vector<cd> spec = fourier::forward(res.input, dt);

    double peak = 0.0;
    for (const auto& v : spec) peak = std::max(peak, std::abs(v));
    const double support = 1e-10 * peak;

    const SusceptibilityModel model(fields, medium, scheme, num);
    for (int k = 0; k < n; ++k) {
        auto& v = spec[static_cast<size_t>(k)];
        if (std::abs(v) < support) continue;  // negligible spectral content
        v *= model.transfer(fourier::omega_at(k, n, dt));
    }

    res.output = fourier::inverse(spec, dt);

    for (int i = 0; i < n; ++i) {
        res.energy_in += std::norm(res.input[static_cast<size_t>(i)]) * dt;
        res.energy_out += std::norm(res.output[static_cast<size_t>(i)]) * dt;
    }

    // Aliasing guard: the output must not pile up against the grid edges.
    const int edge = std::max(1, n / 50);
    double edge_energy = 0.0;
    for (int i = 0; i < edge; ++i)
        edge_energy += (std::norm(res.output[static_cast<size_t>(i)]) +
                        std::norm(res.output[static_cast<size_t>(n - 1 - i)])) * dt;
    if (edge_energy > 1e-6 * res.energy_in)
        throw GridError("enlarge grid: output energy within 2% of the grid edge");

    return res;
}

/// Slow-light delay: energy-centroid shift between output and input.
inline double group_delay(const FieldConfig& fields, const MediumConfig& medium,
                          const LevelScheme& scheme, const PulseSpec& pulse,
                          const NumericsConfig& num = {}) {
    const PropagationResult res = propagate_pulse(pulse, fields, medium, scheme, num);
    if (res.energy_out < 0.01 * res.energy_in)
        throw DegenerateOutputError(
            "group_delay: transmission below 1%, delay undefined");
    return res.centroid(res.output) - res.centroid(res.input);
}

/// Finds the control Rabi frequency that produces the requested slow-light
/// delay, to 1% relative, on the monotone delay-vs-control map.
inline double tune_control(double target_delay, const FieldConfig& fields,
                           const MediumConfig& medium, const LevelScheme& scheme,
                           const PulseSpec& pulse, const NumericsConfig& num = {}) {
    if (!(target_delay > 0.0))
        throw std::invalid_argument("tune_control: target delay must be > 0");
    const double lo_bound = 1e-3 * scheme.linewidth;
    const double hi_bound = 1e2 * scheme.linewidth;

    auto delay_at = [&](double rabi) -> double {
        FieldConfig f = fields;
        f.control_rabi = rabi;
        try {
            return group_delay(f, medium, scheme, pulse, num);
        } catch (const GridError&) {
            return std::numeric_limits<double>::infinity();
        } catch (const DegenerateOutputError&) {
            return std::numeric_limits<double>::infinity();
        }
    };

    double w = std::clamp(std::sqrt(medium.optical_depth * scheme.linewidth /
                                    target_delay),
                          lo_bound, hi_bound);
    double d = delay_at(w);

    double w_slow = w, w_fast = w;  // delay(w_slow) >= target >= delay(w_fast)
    if (d >= target_delay) {
        double d_fast = d;
        while (d_fast >= target_delay) {
            if (w_fast >= hi_bound)
                throw BracketError(
                    "tune_control: target delay below the achievable range; "
                    "delay at the upper control bound is " +
                    std::to_string(d_fast));
            w_fast = std::min(w_fast * 1.6, hi_bound);
            d_fast = delay_at(w_fast);
        }
    } else {
        double d_slow = d;
        while (d_slow < target_delay) {
            if (w_slow <= lo_bound)
                throw BracketError(
                    "tune_control: target delay above the achievable range; "
                    "delay at the lower control bound is " +
                    std::to_string(d_slow));
            w_slow = std::max(w_slow / 1.6, lo_bound);
            d_slow = delay_at(w_slow);
        }
    }

    for (int it = 0; it < 80; ++it) {
        const double mid = std::sqrt(w_slow * w_fast);
        const double dm = delay_at(mid);
        if (std::isfinite(dm) && std::abs(dm - target_delay) <= 0.01 * target_delay)
            return mid;
        (dm >= target_delay ? w_slow : w_fast) = mid;
    }
    throw BracketError("tune_control: did not converge to 1% of the target delay");
}

/// Location of the transmission maximum near the two-photon resonance. The
/// control's off-resonant couplings Stark-shift the transparency window away
/// from the bare resonance; this finds where it actually sits.
inline double transparency_center(const FieldConfig& fields,
                                  const MediumConfig& medium,
                                  const LevelScheme& scheme,
                                  const NumericsConfig& num = {},
                                  double half_width = 0.0) {
    if (half_width <= 0.0) half_width = 2.0 * scheme.linewidth;
    const SusceptibilityModel model(fields, medium, scheme, num);
    auto argmax = [&](double lo, double hi, int n) {
        double best_w = lo, best_t = -1.0;
        for (int k = 0; k < n; ++k) {
            const double w = lo + (hi - lo) * k / (n - 1);
            const double t = model.transmission(w);
            if (t > best_t) {
                best_t = t;
                best_w = w;
            }
        }
        return best_w;
    };
    const double coarse = argmax(-half_width, half_width, 81);
    const double step = 2.0 * half_width / 80.0;
    return argmax(coarse - step, coarse + step, 41);
}

/// Experiment-style operating point: the control power is tuned to the delay
/// target and the two-photon detuning is parked on the transparency center
/// (the probe-control lock is optimized for peak transmission). Without the
/// recentering the Stark-displaced window would sit off the pulse carrier.
inline FieldConfig tune_operating_point(double target_delay, FieldConfig fields,
                                        const MediumConfig& medium,
                                        const LevelScheme& scheme,
                                        const PulseSpec& pulse,
                                        const NumericsConfig& num = {}) {
    for (int pass = 0; pass < 4; ++pass) {
        fields.control_rabi =
            tune_control(target_delay, fields, medium, scheme, pulse, num);
        const double peak = transparency_center(fields, medium, scheme, num);
        if (std::abs(peak) < 2e-3 * scheme.linewidth) break;
        fields.control_detuning -= peak;
    }
    return fields;
}

/// Storage-and-retrieval outcome at one operating point.
struct StorageResult {
    std::vector<double> times;
    std::vector<cd> input, output;
    double control_cutoff = 0.0;          // T_c, s
    double leakage = 0.0;                 // early output energy / input energy
    double propagation_efficiency = 0.0;  // eta
    double storage_time = 0.0;            // s
    double storage_overlap = 1.0;         // eta_s(storage_time)
    double overall_efficiency = 0.0;      // eta * eta_s
};

/// Propagates under continuous control and splits the output energy at the
/// control switch-off time T_c = peak time + capture_offset * fwhm.
inline StorageResult storage_retrieval_efficiency(
    const PulseSpec& pulse, const FieldConfig& fields, const MediumConfig& medium,
    const LevelScheme& scheme, double storage_time,
    const NumericsConfig& num = {}, double capture_offset = 1.0) {
    const PropagationResult res = propagate_pulse(pulse, fields, medium, scheme, num);

    StorageResult out;
    out.times = res.times;
    out.input = res.input;
    out.output = res.output;
    out.control_cutoff = pulse.peak_time + capture_offset * pulse.fwhm;
    out.storage_time = storage_time;

    const double dt = pulse.dt();
    double early = 0.0, late = 0.0;
    for (size_t i = 0; i < res.output.size(); ++i) {
        const double e = std::norm(res.output[i]) * dt;
        (res.times[i] < out.control_cutoff ? early : late) += e;
    }
    out.leakage = early / res.energy_in;
    out.propagation_efficiency = late / res.energy_in;

    const auto dephasing = DephasingParams::from(medium, scheme, 0.0, 0.0);
    out.storage_overlap = collective_overlap_efficiency(
        storage_time, medium.populations, dephasing, scheme);
    out.overall_efficiency = out.propagation_efficiency * out.storage_overlap;
    return out;
}

struct OdSweepPoint {
    double od = 0.0;
    double control_rabi = 0.0;
    double efficiency = 0.0;
    double leakage = 0.0;
    std::string error;  // empty on success
};

/// Retunes the control per optical depth to the target delay and evaluates
/// the storage efficiency. Failures are recorded per point.
inline std::vector<OdSweepPoint> efficiency_vs_od(
    const std::vector<double>& od_values, const FieldConfig& fields,
    const MediumConfig& medium, const LevelScheme& scheme, const PulseSpec& pulse,
    double target_delay, double storage_time = 0.0, const NumericsConfig& num = {},
    double capture_offset = 1.0) {
    std::vector<OdSweepPoint> out;
    out.reserve(od_values.size());
    for (double od : od_values) {
        OdSweepPoint pt;
        pt.od = od;
        try {
            MediumConfig med = medium;
            med.optical_depth = od;
            const FieldConfig f =
                tune_operating_point(target_delay, fields, med, scheme, pulse, num);
            const StorageResult sr = storage_retrieval_efficiency(
                pulse, f, med, scheme, storage_time, num, capture_offset);
            pt.control_rabi = f.control_rabi;
            pt.efficiency = sr.overall_efficiency;
            pt.leakage = sr.leakage;
        } catch (const std::exception& e) {
            pt.control_rabi = pt.efficiency = pt.leakage =
                std::numeric_limits<double>::quiet_NaN();
            pt.error = e.what();
        }
        out.push_back(std::move(pt));
    }
    return out;
}

} // namespace eitmem
