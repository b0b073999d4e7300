#pragma once

// Batch studies: resolve a key-value config into module inputs, validate
// everything up front, run, and emit results.csv / run-manifest / plot.svg.
// All outputs are pure functions of (config, seed).

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "eitmem/config.hpp"
#include "eitmem/lifetime.hpp"
#include "eitmem/propagation.hpp"
#include "eitmem/qubit.hpp"
#include "eitmem/svg.hpp"

namespace eitmem::studies {

inline constexpr const char* version_string = "eitmem 1.0.0";

enum class StudyType { spectrum, storage, sweep_od, lifetime, qubit_run, benchmark };

inline std::optional<StudyType> parse_study(const std::string& name) {
    if (name == "spectrum") return StudyType::spectrum;
    if (name == "storage") return StudyType::storage;
    if (name == "sweep-od") return StudyType::sweep_od;
    if (name == "lifetime") return StudyType::lifetime;
    if (name == "qubit") return StudyType::qubit_run;
    if (name == "benchmark") return StudyType::benchmark;
    return std::nullopt;
}

inline const char* study_name(StudyType s) {
    switch (s) {
        case StudyType::spectrum: return "spectrum";
        case StudyType::storage: return "storage";
        case StudyType::sweep_od: return "sweep-od";
        case StudyType::lifetime: return "lifetime";
        case StudyType::qubit_run: return "qubit";
        case StudyType::benchmark: return "benchmark";
    }
    return "?";
}

struct StudyArtifacts {
    std::string results_csv;
    std::string manifest;
    std::string plot_svg;  // empty when plotting is off
};

namespace detail {

inline std::string fmt(double v) {
    if (std::isnan(v)) return "nan";
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

struct Manifest {
    std::vector<std::pair<std::string, std::string>> rows;
    void add(const std::string& k, const std::string& v) { rows.emplace_back(k, v); }
    void add(const std::string& k, double v) { rows.emplace_back(k, fmt(v)); }

    std::string render(StudyType study, const config::KeyValueConfig& cfg,
                       std::uint64_t seed) const {
        std::string out = "# eitmem run manifest\n";
        out += std::string("version = ") + version_string + "\n";
        out += std::string("study = ") + study_name(study) + "\n";
        out += "seed = " + std::to_string(seed) + "\n";
        for (const auto& [k, v] : cfg.entries())
            out += "config." + k + " = " + v + "\n";
        for (const auto& [k, v] : rows) out += "resolved." + k + " = " + v + "\n";
        return out;
    }
};

// Shared builders. Units in configs are laboratory-friendly; everything is
// converted to SI here.

struct ControlSpec {
    bool tune = true;
    double delay_over_tau = 0.0;  // when tuned
    double rabi = 0.0;            // when fixed, rad/s
};

inline MediumConfig read_medium(config::Reader& r, const LevelScheme& scheme,
                                bool od_from_sweep = false) {
    MediumConfig m;
    m.optical_depth = od_from_sweep ? 1.0 : r.require_number("medium.od");
    m.length = r.require_number("medium.length_cm") * 1e-2;
    m.temperature = r.require_number("medium.temperature_uK") * 1e-6;
    m.gradient = r.require_number("medium.gradient_mG_cm") * 1e-3;
    m.ground_decoherence =
        r.require_number("medium.gamma0_over_Gamma") * scheme.linewidth;
    const std::string pops = r.require_string("medium.populations");
    if (pops == "equal") {
        m.populations = MediumConfig::equal_populations();
    } else if (pops == "single") {
        m.populations = MediumConfig::single_sublevel(3);
    } else if (!pops.empty()) {
        std::stringstream ss(pops);
        std::string item;
        std::vector<double> vals;
        while (std::getline(ss, item, ','))
            vals.push_back(std::strtod(item.c_str(), nullptr));
        if (vals.size() != 7) {
            r.fail("medium.populations: expected 'equal', 'single', or 7 values");
        } else {
            double sum = 0.0;
            for (double v : vals) sum += v;
            for (size_t i = 0; i < 7; ++i)
                m.populations[i] = sum > 0 ? vals[i] / sum : 0.0;
        }
    }
    if (r.errors().empty()) r.merge(m.validate());
    return m;
}

inline FieldConfig read_fields(config::Reader& r, const LevelScheme& scheme) {
    FieldConfig f;
    f.probe_detuning =
        r.require_number("fields.delta_p_over_Gamma") * scheme.linewidth;
    f.control_detuning =
        r.require_number("fields.delta_c_over_Gamma") * scheme.linewidth;
    return f;
}

inline ControlSpec read_control(config::Reader& r, const LevelScheme& scheme) {
    ControlSpec c;
    const std::string mode = r.require_string("control.mode");
    if (mode == "tune") {
        c.tune = true;
        c.delay_over_tau = r.require_number("control.delay_over_tau");
    } else if (mode == "fixed") {
        c.tune = false;
        c.rabi = r.require_number("control.omega_c_over_Gamma") * scheme.linewidth;
    } else if (!mode.empty()) {
        r.fail("control.mode: expected 'tune' or 'fixed'");
    }
    return c;
}

inline PulseSpec read_pulse(config::Reader& r, double expected_delay) {
    const double fwhm = r.require_number("pulse.fwhm_us") * 1e-6;
    PulseSpec def = PulseSpec::standard(fwhm > 0 ? fwhm : 1e-6, expected_delay);
    PulseSpec p;
    p.fwhm = fwhm;
    p.peak_time = r.number_or("pulse.peak_time_us", def.peak_time * 1e6) * 1e-6;
    p.span = r.number_or("pulse.span_us", def.span * 1e6) * 1e-6;
    p.samples = static_cast<int>(r.integer_or("pulse.samples", def.samples));
    if (r.errors().empty()) r.merge(p.validate(expected_delay));
    return p;
}

inline NumericsConfig read_numerics(config::Reader& r) {
    NumericsConfig n;
    n.z_quad_tol = r.number_or("numerics.zquad_tol", n.z_quad_tol);
    n.z_quad_depth = static_cast<unsigned>(
        r.integer_or("numerics.zquad_depth", n.z_quad_depth));
    return n;
}

inline std::uint64_t read_seed(config::Reader& r) {
    return static_cast<std::uint64_t>(r.integer_or("seed", 20180419));
}

// Operating point shared by storage-like studies: either a fixed control or
// the tuned-and-centered configuration.
inline FieldConfig resolve_operating_point(const ControlSpec& c, FieldConfig f,
                                           const MediumConfig& m,
                                           const LevelScheme& scheme,
                                           const PulseSpec& pulse,
                                           const NumericsConfig& num,
                                           Manifest& manifest) {
    if (c.tune) {
        f = tune_operating_point(c.delay_over_tau * pulse.fwhm, f, m, scheme,
                                 pulse, num);
    } else {
        f.control_rabi = c.rabi;
    }
    manifest.add("omega_c_over_Gamma", f.control_rabi / scheme.linewidth);
    manifest.add("delta_c_over_Gamma", f.control_detuning / scheme.linewidth);
    return f;
}

} // namespace detail

inline StudyArtifacts run_spectrum(const config::KeyValueConfig& cfg,
                                   const LevelScheme& scheme) {
    config::Reader r(cfg);
    detail::Manifest man;
    MediumConfig medium = detail::read_medium(r, scheme);
    FieldConfig fields = detail::read_fields(r, scheme);
    detail::ControlSpec control = detail::read_control(r, scheme);
    NumericsConfig num = detail::read_numerics(r);
    const double lo = r.number_or("spectrum.min_over_Gamma", -80.0);
    const double hi = r.number_or("spectrum.max_over_Gamma", 80.0);
    const int points = static_cast<int>(r.integer_or("spectrum.points", 1601));
    if (points < 2) r.fail("spectrum.points: need at least 2");
    if (!(hi > lo)) r.fail("spectrum range: max must exceed min");
    PulseSpec pulse;
    if (control.tune)
        pulse = detail::read_pulse(r, 10e-6);
    const std::uint64_t seed = detail::read_seed(r);
    const bool plot = r.flag_or("output.plot", false);
    r.throw_if_failed();

    fields = detail::resolve_operating_point(control, fields, medium, scheme,
                                             pulse, num, man);

    const auto spec = transmission_spectrum(lo * scheme.linewidth,
                                            hi * scheme.linewidth, points,
                                            fields, medium, scheme, num);
    std::string csv = "detuning_over_Gamma,transmission\n";
    svg::Series line{"T", {}, "#1f6fb2", true, false};
    for (size_t k = 0; k < spec.values.size(); ++k) {
        const double det =
            (fields.probe_detuning + spec.omega_at(k)) / scheme.linewidth;
        csv += detail::fmt(det) + "," + detail::fmt(spec.values[k].real()) + "\n";
        line.points.emplace_back(det, spec.values[k].real());
    }

    StudyArtifacts out;
    out.results_csv = std::move(csv);
    out.manifest = man.render(StudyType::spectrum, cfg, seed);
    if (plot)
        out.plot_svg = svg::line_plot("Probe transmission", "detuning / Gamma",
                                      "transmission", {line});
    return out;
}

inline StudyArtifacts run_storage(const config::KeyValueConfig& cfg,
                                  const LevelScheme& scheme) {
    config::Reader r(cfg);
    detail::Manifest man;
    MediumConfig medium = detail::read_medium(r, scheme);
    FieldConfig fields = detail::read_fields(r, scheme);
    detail::ControlSpec control = detail::read_control(r, scheme);
    NumericsConfig num = detail::read_numerics(r);
    const double storage_time = r.require_number("storage.time_us") * 1e-6;
    const double capture = r.number_or("storage.capture_offset_tau", 1.0);
    const double probe_fwhm = r.number_or("pulse.fwhm_us", 0.0);
    PulseSpec pulse = detail::read_pulse(
        r, control.tune ? control.delay_over_tau * probe_fwhm * 1e-6 : 0.0);
    const std::uint64_t seed = detail::read_seed(r);
    const bool plot = r.flag_or("output.plot", false);
    r.throw_if_failed();

    fields = detail::resolve_operating_point(control, fields, medium, scheme,
                                             pulse, num, man);
    const StorageResult sr = storage_retrieval_efficiency(
        pulse, fields, medium, scheme, storage_time, num, capture);

    man.add("control_cutoff_us", sr.control_cutoff * 1e6);
    man.add("propagation_efficiency", sr.propagation_efficiency);
    man.add("leakage", sr.leakage);
    man.add("storage_overlap", sr.storage_overlap);
    man.add("overall_efficiency", sr.overall_efficiency);

    std::string csv = "time_us,input_re,input_im,output_re,output_im\n";
    svg::Series in_line{"input", {}, "#777777", true, false};
    svg::Series out_line{"output", {}, "#b2341f", true, false};
    for (size_t i = 0; i < sr.times.size(); ++i) {
        csv += detail::fmt(sr.times[i] * 1e6) + "," +
               detail::fmt(sr.input[i].real()) + "," +
               detail::fmt(sr.input[i].imag()) + "," +
               detail::fmt(sr.output[i].real()) + "," +
               detail::fmt(sr.output[i].imag()) + "\n";
        in_line.points.emplace_back(sr.times[i] * 1e6, std::norm(sr.input[i]));
        out_line.points.emplace_back(sr.times[i] * 1e6, std::norm(sr.output[i]));
    }

    StudyArtifacts out;
    out.results_csv = std::move(csv);
    out.manifest = man.render(StudyType::storage, cfg, seed);
    if (plot)
        out.plot_svg = svg::line_plot("Slow-light storage", "time / us",
                                      "intensity", {in_line, out_line});
    return out;
}

inline StudyArtifacts run_sweep_od(const config::KeyValueConfig& cfg,
                                   const LevelScheme& scheme) {
    config::Reader r(cfg);
    detail::Manifest man;
    MediumConfig medium = detail::read_medium(r, scheme, /*od_from_sweep=*/true);
    FieldConfig fields = detail::read_fields(r, scheme);
    detail::ControlSpec control = detail::read_control(r, scheme);
    if (!control.tune) r.fail("sweep-od requires control.mode = tune");
    NumericsConfig num = detail::read_numerics(r);
    const auto od_list = r.require_list("sweep.od_list");
    for (double od : od_list)
        if (!(od > 0)) r.fail("sweep.od_list: depths must be > 0");
    const double storage_time = r.number_or("storage.time_us", 0.0) * 1e-6;
    const double capture = r.number_or("storage.capture_offset_tau", 1.0);
    const double probe_fwhm = r.number_or("pulse.fwhm_us", 0.0);
    PulseSpec pulse =
        detail::read_pulse(r, control.delay_over_tau * probe_fwhm * 1e-6);
    const std::uint64_t seed = detail::read_seed(r);
    const bool plot = r.flag_or("output.plot", false);
    r.throw_if_failed();

    const auto rows =
        efficiency_vs_od(od_list, fields, medium, scheme, pulse,
                         control.delay_over_tau * pulse.fwhm, storage_time, num,
                         capture);

    std::string csv = "od,omega_c_over_Gamma,efficiency,leakage\n";
    svg::Series eta{"efficiency", {}, "#1f6fb2", true, true};
    int failures = 0;
    for (const auto& pt : rows) {
        csv += detail::fmt(pt.od) + "," +
               detail::fmt(pt.control_rabi / scheme.linewidth) + "," +
               detail::fmt(pt.efficiency) + "," + detail::fmt(pt.leakage) + "\n";
        eta.points.emplace_back(pt.od, pt.efficiency);
        if (!pt.error.empty()) {
            man.add("error.od_" + detail::fmt(pt.od), pt.error);
            ++failures;
        }
    }
    man.add("failed_points", static_cast<double>(failures));

    StudyArtifacts out;
    out.results_csv = std::move(csv);
    out.manifest = man.render(StudyType::sweep_od, cfg, seed);
    if (plot)
        out.plot_svg = svg::line_plot("Storage efficiency vs optical depth",
                                      "optical depth", "efficiency", {eta});
    return out;
}

inline StudyArtifacts run_lifetime(const config::KeyValueConfig& cfg,
                                   const LevelScheme& scheme) {
    config::Reader r(cfg);
    detail::Manifest man;
    MediumConfig medium = detail::read_medium(r, scheme);
    FieldConfig fields = detail::read_fields(r, scheme);
    detail::ControlSpec control = detail::read_control(r, scheme);
    NumericsConfig num = detail::read_numerics(r);
    const auto times_us = r.require_list("lifetime.times_us");
    LifetimeOptions opts;
    opts.band_gradient = r.number_or("lifetime.band_mG_cm", 1.0) * 1e-3;
    opts.include_transit = r.flag_or("lifetime.include_transit", false);
    opts.include_motional = r.flag_or("lifetime.include_motional", false);
    if (opts.include_transit || opts.include_motional) {
        opts.beam_diameter =
            r.require_number("dephasing.beam_diameter_um") * 1e-6;
        opts.crossing_angle =
            r.require_number("dephasing.crossing_angle_deg") * std::numbers::pi /
            180.0;
    }
    const double capture = r.number_or("storage.capture_offset_tau", 1.0);
    const double probe_fwhm = r.number_or("pulse.fwhm_us", 0.0);
    PulseSpec pulse = detail::read_pulse(
        r, control.tune ? control.delay_over_tau * probe_fwhm * 1e-6 : 0.0);
    const std::uint64_t seed = detail::read_seed(r);
    const bool plot = r.flag_or("output.plot", false);
    r.throw_if_failed();

    fields = detail::resolve_operating_point(control, fields, medium, scheme,
                                             pulse, num, man);
    std::vector<double> times;
    for (double t : times_us) times.push_back(t * 1e-6);
    const auto curve =
        lifetime_curve(times, pulse, fields, medium, scheme, opts, num, capture);

    std::string csv = "time_us,efficiency,band_low,band_high\n";
    svg::Series mid{"efficiency", {}, "#1f6fb2", true, true};
    svg::Series lo{"band low", {}, "#9db8d2", true, false};
    svg::Series hi{"band high", {}, "#9db8d2", true, false};
    for (const auto& pt : curve) {
        csv += detail::fmt(pt.time * 1e6) + "," + detail::fmt(pt.efficiency) +
               "," + detail::fmt(pt.band_low) + "," + detail::fmt(pt.band_high) +
               "\n";
        mid.points.emplace_back(pt.time * 1e6, pt.efficiency);
        lo.points.emplace_back(pt.time * 1e6, pt.band_low);
        hi.points.emplace_back(pt.time * 1e6, pt.band_high);
    }

    StudyArtifacts out;
    out.results_csv = std::move(csv);
    out.manifest = man.render(StudyType::lifetime, cfg, seed);
    if (plot)
        out.plot_svg = svg::line_plot("Memory lifetime", "storage time / us",
                                      "overall efficiency", {lo, hi, mid});
    return out;
}

inline StudyArtifacts run_qubit(const config::KeyValueConfig& cfg,
                                const LevelScheme& scheme) {
    config::Reader r(cfg);
    detail::Manifest man;
    qubit::QubitExperimentConfig q;
    q.nbar = r.require_number("qubit.nbar");
    q.windows = r.integer_or("qubit.windows", 100000);
    q.background_per_window = r.require_number("qubit.background_per_window");
    q.detection_efficiency = r.require_number("qubit.detection_efficiency");
    q.channel.visibility = r.require_number("qubit.visibility");
    q.channel.phase = r.require_number("qubit.phase_rad");
    q.seed = detail::read_seed(r);
    const bool plot = r.flag_or("output.plot", false);

    const std::string mode = r.require_string("qubit.eta_mode");
    if (mode == "explicit") {
        q.channel.eta_h = r.require_number("qubit.eta_h");
        q.channel.eta_v = r.require_number("qubit.eta_v");
        r.merge(q.channel.validate());
        r.throw_if_failed();
    } else if (mode == "memory") {
        MediumConfig medium = detail::read_medium(r, scheme);
        FieldConfig fields = detail::read_fields(r, scheme);
        detail::ControlSpec control = detail::read_control(r, scheme);
        NumericsConfig num = detail::read_numerics(r);
        const double storage_time = r.require_number("storage.time_us") * 1e-6;
        const double capture = r.number_or("storage.capture_offset_tau", 1.0);
        const double probe_fwhm = r.number_or("pulse.fwhm_us", 0.0);
        PulseSpec pulse = detail::read_pulse(
            r, control.tune ? control.delay_over_tau * probe_fwhm * 1e-6 : 0.0);
        r.throw_if_failed();
        fields = detail::resolve_operating_point(control, fields, medium, scheme,
                                                 pulse, num, man);
        const StorageResult sr = storage_retrieval_efficiency(
            pulse, fields, medium, scheme, storage_time, num, capture);
        q.channel.eta_h = q.channel.eta_v = sr.overall_efficiency;
        man.add("memory_efficiency", sr.overall_efficiency);
    } else {
        r.fail("qubit.eta_mode: expected 'explicit' or 'memory'");
        r.throw_if_failed();
    }

    const auto res = qubit::qubit_experiment(q);
    man.add("average_fidelity", res.average_fidelity);
    man.add("average_efficiency", res.average_efficiency);
    man.add("classical_bound", res.classical_bound);

    std::string csv = "state,fidelity,fidelity_err,efficiency\n";
    svg::Series dots{"fidelity", {}, "#1f6fb2", false, true};
    double x = 0.0;
    for (const auto& s : res.states) {
        csv += s.label + "," + detail::fmt(s.fidelity) + "," +
               detail::fmt(s.fidelity_err) + "," + detail::fmt(s.efficiency) +
               "\n";
        dots.points.emplace_back(x += 1.0, s.fidelity);
    }

    StudyArtifacts out;
    out.results_csv = std::move(csv);
    out.manifest = man.render(StudyType::qubit_run, cfg, q.seed);
    if (plot)
        out.plot_svg = svg::line_plot("Qubit storage fidelities",
                                      "input state index (H V D A R L)",
                                      "conditional fidelity", {dots});
    return out;
}

inline StudyArtifacts run_benchmark(const config::KeyValueConfig& cfg,
                                    const LevelScheme&) {
    config::Reader r(cfg);
    detail::Manifest man;
    const auto nbars = r.require_list("benchmark.nbar_list");
    const double eff = r.require_number("benchmark.efficiency");
    if (eff <= 0.0 || eff > 1.0) r.fail("benchmark.efficiency: outside (0, 1]");
    for (double n : nbars)
        if (!(n > 0.0)) r.fail("benchmark.nbar_list: values must be > 0");
    const std::uint64_t seed = detail::read_seed(r);
    const bool plot = r.flag_or("output.plot", false);
    r.throw_if_failed();

    std::string csv = "nbar,bound\n";
    svg::Series line{"classical bound", {}, "#1f6fb2", true, true};
    for (double n : nbars) {
        const auto b = qubit::classical_benchmark(n, eff);
        csv += detail::fmt(n) + "," + detail::fmt(b.bound) + "\n";
        line.points.emplace_back(n, b.bound);
        if (!b.feasible) man.add("infeasible.nbar_" + detail::fmt(n), 1.0);
    }

    StudyArtifacts out;
    out.results_csv = std::move(csv);
    out.manifest = man.render(StudyType::benchmark, cfg, seed);
    if (plot)
        out.plot_svg = svg::line_plot("Classical memory bound",
                                      "mean photon number", "fidelity bound",
                                      {line});
    return out;
}

inline StudyArtifacts run_study(const config::KeyValueConfig& cfg, StudyType study,
                                const LevelScheme& scheme) {
    if (const auto declared = cfg.raw("study");
        declared && parse_study(*declared) != study)
        throw config::ConfigError(
            {"config declares study '" + *declared + "' but '" +
             study_name(study) + "' was requested"});
    switch (study) {
        case StudyType::spectrum: return run_spectrum(cfg, scheme);
        case StudyType::storage: return run_storage(cfg, scheme);
        case StudyType::sweep_od: return run_sweep_od(cfg, scheme);
        case StudyType::lifetime: return run_lifetime(cfg, scheme);
        case StudyType::qubit_run: return run_qubit(cfg, scheme);
        case StudyType::benchmark: return run_benchmark(cfg, scheme);
    }
    throw std::logic_error("unreachable");
}

inline void write_artifacts(const StudyArtifacts& artifacts,
                            const std::filesystem::path& outdir) {
    std::filesystem::create_directories(outdir);
    auto dump = [&](const char* name, const std::string& text) {
        std::ofstream out(outdir / name, std::ios::binary);
        if (!out) throw std::runtime_error(std::string("cannot write ") + name);
        out << text;
    };
    dump("results.csv", artifacts.results_csv);
    dump("run-manifest", artifacts.manifest);
    if (!artifacts.plot_svg.empty()) dump("plot.svg", artifacts.plot_svg);
}

} // namespace eitmem::studies
