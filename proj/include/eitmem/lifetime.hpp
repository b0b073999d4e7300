#pragma once

// Overall memory efficiency versus storage time: the propagation efficiency
// at the tuned operating point times the collective-overlap decay, with an
// uncertainty band on the magnetic gradient. Transit and motional decay can
// be folded in for sensitivity studies; by default only the magnetic channel
// enters, matching how the dephasing budget is dominated.

#include <cmath>
#include <vector>

#include "eitmem/decoherence.hpp"
#include "eitmem/propagation.hpp"

namespace eitmem {

struct LifetimeOptions {
    double band_gradient = 1e-3;  // G/cm, uncertainty band on the gradient
    bool include_transit = false;
    bool include_motional = false;
    double beam_diameter = 250e-6;                      // m
    double crossing_angle = std::numbers::pi / 180.0;   // rad
};

struct LifetimePoint {
    double time = 0.0;        // s
    double efficiency = 0.0;  // overall
    double band_low = 0.0;
    double band_high = 0.0;
};

/// Overall efficiency curve at a fixed (already tuned) operating point.
inline std::vector<LifetimePoint> lifetime_curve(
    const std::vector<double>& storage_times, const PulseSpec& pulse,
    const FieldConfig& fields, const MediumConfig& medium,
    const LevelScheme& scheme, const LifetimeOptions& opts = {},
    const NumericsConfig& num = {}, double capture_offset = 1.0) {
    const StorageResult base = storage_retrieval_efficiency(
        pulse, fields, medium, scheme, 0.0, num, capture_offset);
    const double eta = base.propagation_efficiency;

    auto params_at = [&](double gradient) {
        DephasingParams p = DephasingParams::from(medium, scheme,
                                                  opts.beam_diameter,
                                                  opts.crossing_angle);
        p.gradient = gradient;
        return p;
    };
    const DephasingParams nominal = params_at(medium.gradient);
    const DephasingParams up = params_at(medium.gradient + opts.band_gradient);
    const DephasingParams down = params_at(medium.gradient - opts.band_gradient);

    const double tau1 = opts.include_transit ? transit_time(nominal) : 0.0;
    const auto tau2 = opts.include_motional ? motional_dephasing_time(nominal)
                                            : std::nullopt;

    auto extras = [&](double t) {
        double f = 1.0;
        if (opts.include_transit) f *= std::exp(-t / tau1);
        if (tau2) f *= std::exp(-(t * t) / (*tau2 * *tau2));
        return f;
    };

    std::vector<LifetimePoint> out;
    out.reserve(storage_times.size());
    for (double t : storage_times) {
        LifetimePoint pt;
        pt.time = t;
        const double ex = extras(t);
        const double mid = eta * ex *
            collective_overlap_efficiency(t, medium.populations, nominal, scheme);
        const double a = eta * ex *
            collective_overlap_efficiency(t, medium.populations, up, scheme);
        const double b = eta * ex *
            collective_overlap_efficiency(t, medium.populations, down, scheme);
        pt.efficiency = mid;
        pt.band_low = std::min(a, b);
        pt.band_high = std::max(a, b);
        out.push_back(pt);
    }
    return out;
}

} // namespace eitmem
