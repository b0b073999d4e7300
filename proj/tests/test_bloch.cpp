#include <catch2/catch_amalgamated.hpp>

#include "eitmem/bloch.hpp"

#include <cmath>
#include <complex>
#include <random>

using namespace eitmem;
using Catch::Approx;

namespace {

const LevelScheme scheme = cesium_d2_scheme();
const double Gamma = scheme.linewidth;

MediumConfig base_medium() {
    MediumConfig m;
    m.optical_depth = 200.0;
    m.length = 0.025;
    m.temperature = 20e-6;
    m.gradient = 8e-3;  // 8 mG/cm
    m.ground_decoherence = 1e-3 * Gamma;
    m.populations = MediumConfig::equal_populations();
    return m;
}

// Closed-form Lambda-system response denominator.
cd lambda_denominator(double omega, double delta1, double delta2,
                      double rabi, double gamma0) {
    return cd(omega + delta1, 0.5 * Gamma) -
           0.25 * rabi * rabi / cd(omega + delta2, gamma0);
}

} // namespace

TEST_CASE("no probe drive, no coherence", "[bloch]") {
    FieldConfig f;
    f.probe_rabi = 0.0;
    f.control_rabi = 2.0 * Gamma;
    const auto sol = solve_coherences(0.3 * Gamma, 0.004, 1, f, base_medium(), scheme);
    for (auto c : sol.optical) CHECK(std::abs(c) == 0.0);
    CHECK(std::abs(sol.spin) == 0.0);
}

TEST_CASE("coherences are linear in the probe", "[bloch]") {
    FieldConfig f;
    f.probe_rabi = 1e4;
    f.control_rabi = 1.5 * Gamma;
    f.probe_detuning = 0.2 * Gamma;
    const auto med = base_medium();
    const auto a = solve_coherences(0.1 * Gamma, -0.003, 2, f, med, scheme);
    f.probe_rabi *= 2.0;
    const auto b = solve_coherences(0.1 * Gamma, -0.003, 2, f, med, scheme);
    for (int fe = 2; fe <= 5; ++fe)
        CHECK(std::abs(b.optical_for(fe) - 2.0 * a.optical_for(fe)) <=
              1e-12 * std::abs(a.optical_for(fe)) + 1e-30);
    CHECK(std::abs(b.spin - 2.0 * a.spin) <= 1e-12 * std::abs(a.spin) + 1e-30);
}

TEST_CASE("single-level truncation solves by hand", "[bloch]") {
    FieldConfig f;
    f.probe_rabi = 3.2e5;
    f.control_rabi = 0.0;
    f.excited_enabled = FieldConfig::lambda_only();
    auto med = base_medium();
    med.gradient = 0.0;
    const int m = 0;
    const auto sol = solve_coherences(0.0, 0.0, m, f, med, scheme);
    const double pop = med.populations[m + 3];
    const cd want = -0.5 * f.probe_rabi * scheme.probe_dipole(m, 4) * pop /
                    cd(0.0, 0.5 * Gamma);
    CHECK(std::abs(sol.optical_for(4) - want) < 1e-12 * std::abs(want));
    CHECK(std::abs(sol.spin) == 0.0);
    CHECK(sol.residual < 1e-10);
}

TEST_CASE("linear system residuals stay tiny", "[bloch]") {
    FieldConfig f;
    f.control_rabi = 3.0 * Gamma;
    f.probe_detuning = -0.7 * Gamma;
    f.control_detuning = 0.4 * Gamma;
    const auto med = base_medium();
    for (int m = -3; m <= 3; ++m) {
        for (double w : {-40.0 * Gamma, -0.01 * Gamma, 0.0, 2.0 * Gamma}) {
            const auto sol = solve_coherences(w, 0.008, m, f, med, scheme);
            CHECK(sol.residual < 1e-10);
        }
    }
}

TEST_CASE("solver rejects invalid configuration", "[bloch]") {
    FieldConfig f;
    const auto med = base_medium();
    CHECK_THROWS_AS(solve_coherences(0, 0, 4, f, med, scheme),
                    std::invalid_argument);
    LevelScheme dead = scheme;
    dead.linewidth = 0.0;
    auto med0 = med;
    med0.ground_decoherence = 0.0;
    CHECK_THROWS_AS(solve_coherences(0, 0, 0, f, med0, dead),
                    std::invalid_argument);
}

TEST_CASE("empty medium has zero susceptibility", "[bloch]") {
    FieldConfig f;
    f.control_rabi = Gamma;
    auto med = base_medium();
    med.optical_depth = 0.0;
    CHECK(susceptibility(0.4 * Gamma, 0.001, f, med, scheme) == cd{});
}

TEST_CASE("ideal Lambda EIT is perfectly dark on two-photon resonance",
          "[bloch]") {
    FieldConfig f;
    f.control_rabi = 2.0 * Gamma;
    f.excited_enabled = FieldConfig::lambda_only();
    auto med = base_medium();
    med.gradient = 0.0;
    med.ground_decoherence = 0.0;
    SusceptibilityModel model(f, med, scheme);
    const cd chi = model.chi(0.0, 0.0);
    CHECK(std::abs(chi.imag()) < 1e-20);

    // with all excited levels back in, the same point absorbs
    FieldConfig full = f;
    full.excited_enabled = {true, true, true, true};
    SusceptibilityModel model_full(full, med, scheme);
    CHECK(model_full.chi(0.0, 0.0).imag() > 0.0);
}

TEST_CASE("susceptibility does not depend on the probe scale", "[bloch]") {
    FieldConfig f;
    f.control_rabi = 1.2 * Gamma;
    f.probe_rabi = 1.0;
    const auto med = base_medium();
    const cd a = susceptibility(0.11 * Gamma, 0.002, f, med, scheme);
    f.probe_rabi = 10.0;
    const cd b = susceptibility(0.11 * Gamma, 0.002, f, med, scheme);
    CHECK(std::abs(a - b) <= 1e-12 * std::abs(a));
}

TEST_CASE("no gain anywhere: Im chi >= 0", "[bloch][passivity]") {
    std::mt19937_64 rng(0x5eed1234);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 15; ++trial) {
        FieldConfig f;
        f.control_rabi = 5.0 * Gamma * u(rng);
        f.probe_detuning = Gamma * (100.0 * u(rng) - 50.0);
        f.control_detuning = Gamma * (20.0 * u(rng) - 10.0);
        auto med = base_medium();
        med.ground_decoherence = 1e-2 * Gamma * u(rng);
        med.gradient = 0.02 * u(rng);
        SusceptibilityModel model(f, med, scheme);
        for (int k = 0; k <= 24; ++k) {
            const double w = (-60.0 + 5.0 * k) * Gamma;
            for (double z : {0.0, 0.008, -0.02}) {
                const cd chi = model.chi(w, z);
                INFO("trial " << trial << " w/Gamma " << w / Gamma << " z " << z);
                CHECK(chi.imag() >= -1e-9 * std::abs(chi) - 1e-300);
            }
        }
    }
}

TEST_CASE("three-level reduction matches the closed form", "[bloch]") {
    FieldConfig f;
    f.control_rabi = 2.0 * Gamma;
    f.excited_enabled = FieldConfig::lambda_only();
    f.probe_detuning = 0.3 * Gamma;
    f.control_detuning = -0.1 * Gamma;
    auto med = base_medium();
    med.gradient = 0.0;
    med.populations = MediumConfig::single_sublevel(3);
    SusceptibilityModel model(f, med, scheme);

    const double chan_rabi = f.control_rabi * scheme.control_dipole(3, 4) /
                             scheme.control_reference_dipole();
    const double d1 = f.probe_detuning;
    const double d2 = f.probe_detuning - f.control_detuning;
    auto denom = [&](double w) {
        return lambda_denominator(w, d1, d2, chan_rabi, med.ground_decoherence);
    };

    // one point fixes the proportionality constant; the rest must follow
    const double w0 = 0.05 * Gamma;
    const cd constant = model.chi(w0, 0.0) * denom(w0);
    for (int k = -12; k <= 12; ++k) {
        const double w = 0.4 * Gamma * k / 12.0;
        for (double z : {0.0, 0.006}) {
            const cd want = constant * med.density_profile(z) / denom(w);
            const cd got = model.chi(w, z);
            INFO("w/Gamma=" << w / Gamma << " z=" << z);
            CHECK(std::abs(got - want) <= 1e-8 * std::abs(want));
        }
    }
}

TEST_CASE("single populated sublevel equals the bare m=3 channel", "[bloch]") {
    FieldConfig f;
    f.control_rabi = 1.7 * Gamma;
    auto med = base_medium();
    med.populations = MediumConfig::single_sublevel(3);
    SusceptibilityModel model(f, med, scheme);

    const double w = 0.21 * Gamma, z = 0.004;
    FieldConfig unit = f;
    unit.probe_rabi = 1.0;
    const auto sol = solve_coherences(w, z, 3, unit, med, scheme);
    cd acc{};
    for (int fe = 2; fe <= 4; ++fe)
        acc += scheme.probe_dipole(3, fe) * sol.optical_for(fe);
    const cd manual = -model.calibration() * med.density_profile(z) * acc;
    CHECK(std::abs(model.chi(w, z) - manual) <= 1e-14 * std::abs(manual));
}

TEST_CASE("effective parameters", "[bloch]") {
    const auto med = base_medium();
    FieldConfig f;
    f.probe_detuning = 0.4 * Gamma;

    SECTION("control off leaves the bare values") {
        const auto p = effective_params(f, med, scheme);
        CHECK(p.probe_detuning == f.probe_detuning);
        CHECK(p.ground_decoherence == med.ground_decoherence);
    }

    SECTION("excess decoherence is quadratic in the control") {
        f.control_rabi = 1.3 * Gamma;
        const auto p1 = effective_params(f, med, scheme);
        f.control_rabi *= 2.0;
        const auto p2 = effective_params(f, med, scheme);
        const double e1 = p1.ground_decoherence - med.ground_decoherence;
        const double e2 = p2.ground_decoherence - med.ground_decoherence;
        CHECK(e2 == Approx(4.0 * e1).epsilon(1e-12));
        CHECK(e1 > 0.0);
    }

    SECTION("sum evaluated independently term by term") {
        f.control_rabi = 2.4 * Gamma;
        const auto p = effective_params(f, med, scheme);
        double shift = 0.0, extra = 0.0;
        const double ref = scheme.control_reference_dipole();
        for (int m = -3; m <= 3; ++m) {
            for (int fe : {3, 5}) {
                const double oc =
                    f.control_rabi * scheme.control_dipole(m, fe) / ref;
                shift += 0.25 * oc * oc / scheme.splitting(fe);
                extra += 0.25 * oc * oc /
                         (scheme.splitting(fe) * scheme.splitting(fe)) * 0.5 *
                         Gamma;
            }
        }
        CHECK(p.probe_detuning == Approx(f.probe_detuning + shift).epsilon(1e-12));
        CHECK(p.ground_decoherence ==
              Approx(med.ground_decoherence + extra).epsilon(1e-12));
    }
}
