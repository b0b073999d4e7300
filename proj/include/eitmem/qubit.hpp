#pragma once

// Polarization-qubit layer on top of the memory: phenomenological dual-rail
// channel, Poissonian photodetection with background, linear-inversion state
// tomography with a physicality projection, conditional fidelity, and the
// measure-and-prepare classical benchmark for weak coherent inputs.

#include <Eigen/Dense>
#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdio>
#include <istream>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace eitmem::qubit {

using cd = std::complex<double>;
using Matrix2 = Eigen::Matrix2cd;
using Vector2 = Eigen::Vector2cd;

struct PolarizationState {
    Matrix2 rho = Matrix2::Zero();

    static PolarizationState pure(const Vector2& psi) {
        PolarizationState s;
        s.rho = psi * psi.adjoint();
        return s;
    }

    std::vector<std::string> validate() const {
        std::vector<std::string> bad;
        if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > 1e-10)
            bad.push_back("state: density matrix not Hermitian");
        if (std::abs(rho.trace().real() - 1.0) > 1e-10 ||
            std::abs(rho.trace().imag()) > 1e-10)
            bad.push_back("state: trace differs from 1");
        Eigen::SelfAdjointEigenSolver<Matrix2> es(rho);
        if (es.eigenvalues().minCoeff() < -1e-10)
            bad.push_back("state: negative eigenvalue");
        return bad;
    }

    double purity() const { return (rho * rho).trace().real(); }
};

// Measurement basis order used throughout: H, V, D, A, R, L.
inline const std::array<Vector2, 6>& projection_states() {
    static const std::array<Vector2, 6> s = [] {
        const double r = 1.0 / std::sqrt(2.0);
        std::array<Vector2, 6> v;
        v[0] << 1, 0;                  // H
        v[1] << 0, 1;                  // V
        v[2] << r, r;                  // D
        v[3] << r, -r;                 // A
        v[4] << r, cd(0, -r);          // R
        v[5] << r, cd(0, r);           // L
        return v;
    }();
    return s;
}

inline const std::array<const char*, 6>& projection_names() {
    static const std::array<const char*, 6> n = {"H", "V", "D", "A", "R", "L"};
    return n;
}

struct DualRailChannel {
    double eta_h = 1.0;       // storage efficiency, H rail
    double eta_v = 1.0;       // storage efficiency, V rail
    double visibility = 1.0;  // interferometric visibility between the rails
    double phase = 0.0;       // relative phase, rad

    std::vector<std::string> validate() const {
        std::vector<std::string> bad;
        auto unit = [&](double x, const char* name) {
            if (x < 0.0 || x > 1.0)
                bad.push_back(std::string("channel: ") + name + " outside [0, 1]");
        };
        unit(eta_h, "eta_h");
        unit(eta_v, "eta_v");
        unit(visibility, "visibility");
        return bad;
    }
};

struct ChannelOutput {
    PolarizationState state;  // renormalized
    double efficiency = 0.0;  // trace before renormalization
};

/// Amplitude damping per rail plus coherence reduction by the interferometer
/// visibility and relative phase.
inline ChannelOutput apply_channel(const PolarizationState& input,
                                   const DualRailChannel& ch) {
    Matrix2 rho = input.rho;
    const double ah = std::sqrt(ch.eta_h), av = std::sqrt(ch.eta_v);
    rho(0, 0) *= ah * ah;
    rho(1, 1) *= av * av;
    const cd coherence = ch.visibility * std::exp(cd(0.0, ch.phase));
    rho(0, 1) *= ah * av * coherence;
    rho(1, 0) *= ah * av * std::conj(coherence);

    ChannelOutput out;
    out.efficiency = rho.trace().real();
    out.state.rho = out.efficiency > 0.0 ? Matrix2(rho / out.efficiency) : rho;
    return out;
}

struct TomographyRecord {
    long long windows = 0;            // detection windows per basis
    std::array<double, 6> counts{};   // totals for H, V, D, A, R, L
    double nbar = 0.0;                // mean photon number per pulse
    double background = 0.0;          // background rate per window
};

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
    std::uint64_t s = master ^ (0xA0761D6478BD642Full + index);
    return splitmix64(s);
}

} // namespace detail

/// Draws Poissonian photodetection counts for all six projections. Each
/// (record, basis) pair runs on its own substream derived from the seed, so
/// results do not depend on evaluation order.
inline TomographyRecord simulate_counts(const PolarizationState& input,
                                        const DualRailChannel& ch, double nbar,
                                        long long windows,
                                        double background_per_window,
                                        double detection_efficiency,
                                        std::uint64_t seed) {
    if (nbar < 0.0) throw std::invalid_argument("simulate_counts: nbar < 0");
    if (windows <= 0) throw std::invalid_argument("simulate_counts: windows <= 0");

    const ChannelOutput out = apply_channel(input, ch);
    TomographyRecord rec;
    rec.windows = windows;
    rec.nbar = nbar;
    rec.background = background_per_window;

    for (int b = 0; b < 6; ++b) {
        const Vector2& proj = projection_states()[static_cast<size_t>(b)];
        const double overlap =
            std::real((proj.adjoint() * out.state.rho * proj)(0, 0));
        const double mean = nbar * out.efficiency * detection_efficiency *
                                std::max(overlap, 0.0) +
                            background_per_window;
        std::mt19937_64 rng(detail::derive_seed(seed, static_cast<size_t>(b)));
        if (mean <= 0.0) continue;
        std::poisson_distribution<long long> poisson(mean);
        long long total = 0;
        for (long long w = 0; w < windows; ++w) total += poisson(rng);
        rec.counts[static_cast<size_t>(b)] = static_cast<double>(total);
    }
    return rec;
}

struct ReconstructionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Linear inversion from the three count asymmetries, projected to the
/// closest physical state by eigenvalue truncation when needed.
inline PolarizationState reconstruct(const TomographyRecord& rec) {
    auto asymmetry = [&](int plus, int minus) {
        const double a = rec.counts[static_cast<size_t>(plus)];
        const double b = rec.counts[static_cast<size_t>(minus)];
        if (a + b <= 0.0)
            throw ReconstructionError(
                std::string("reconstruct: no counts in the ") +
                projection_names()[static_cast<size_t>(plus)] + "/" +
                projection_names()[static_cast<size_t>(minus)] + " basis");
        return (a - b) / (a + b);
    };
    const double s_hv = asymmetry(0, 1);
    const double s_da = asymmetry(2, 3);
    const double s_rl = asymmetry(4, 5);

    const auto& p = projection_states();
    Matrix2 rho = 0.5 * Matrix2::Identity();
    rho += 0.5 * s_hv * (p[0] * p[0].adjoint() - p[1] * p[1].adjoint());
    rho += 0.5 * s_da * (p[2] * p[2].adjoint() - p[3] * p[3].adjoint());
    rho += 0.5 * s_rl * (p[4] * p[4].adjoint() - p[5] * p[5].adjoint());

    Eigen::SelfAdjointEigenSolver<Matrix2> es(rho);
    Eigen::Vector2d ev = es.eigenvalues().cwiseMax(0.0);
    const double norm = ev.sum();
    if (norm <= 0.0) throw ReconstructionError("reconstruct: degenerate record");
    ev /= norm;
    PolarizationState out;
    out.rho = es.eigenvectors() * ev.asDiagonal() *
              es.eigenvectors().adjoint();
    return out;
}

/// Conditional fidelity <psi| rho |psi> against a pure target.
inline double fidelity(const PolarizationState& state, const Vector2& psi) {
    return std::real((psi.adjoint() * state.rho * psi)(0, 0));
}

struct BenchmarkResult {
    double bound = 0.0;
    bool feasible = true;
};

/// Measure-and-prepare bound for an arbitrary photon-number distribution:
/// the cheater accepts events with per-N probabilities q_N in [0,1] chosen to
/// maximize the count-weighted fidelity sum( q_N p_N (N+1)/(N+2) ) subject to
/// sum_{N>=1} q_N p_N = target_mass. Since the fidelity grows with N the
/// optimum is the greedy threshold from the top.
inline BenchmarkResult classical_benchmark_distribution(
    const std::vector<double>& photon_dist, double target_mass) {
    BenchmarkResult res;
    double available = 0.0;
    for (size_t n = 1; n < photon_dist.size(); ++n) available += photon_dist[n];

    if (target_mass > available + 1e-15) {
        res.feasible = false;  // accept everything, rate still short
        double value = 0.0;
        for (size_t n = 1; n < photon_dist.size(); ++n)
            value += photon_dist[n] * (n + 1.0) / (n + 2.0);
        res.bound = available > 0.0 ? value / available : 1.0;
        return res;
    }

    double remaining = target_mass, value = 0.0;
    for (size_t n = photon_dist.size(); n-- > 1;) {
        const double take = std::min(photon_dist[n], remaining);
        value += take * (n + 1.0) / (n + 2.0);
        remaining -= take;
        if (remaining <= 0.0) break;
    }
    res.bound = value / target_mass;
    return res;
}

/// Classical bound for Poissonian inputs of mean nbar stored with the given
/// memory efficiency: accepted-count rate matched to efficiency * (1 - p0).
inline BenchmarkResult classical_benchmark(double nbar, double memory_efficiency) {
    if (!(nbar > 0.0))
        throw std::invalid_argument("classical_benchmark: nbar must be > 0");
    if (memory_efficiency <= 0.0 || memory_efficiency > 1.0)
        throw std::invalid_argument(
            "classical_benchmark: efficiency outside (0, 1]");
    std::vector<double> p;
    double term = std::exp(-nbar), cumulative = 0.0;
    for (int n = 0; cumulative < 1.0 - 1e-12; ++n) {
        p.push_back(term);
        cumulative += term;
        term *= nbar / (n + 1.0);
        if (n > 500) break;
    }
    return classical_benchmark_distribution(p, memory_efficiency * (1.0 - p[0]));
}

struct QubitExperimentConfig {
    DualRailChannel channel;
    double nbar = 0.5;
    long long windows = 100000;
    double background_per_window = 5e-4;
    double detection_efficiency = 1.0;
    std::uint64_t seed = 1;
};

struct StateOutcome {
    std::string label;
    double fidelity = 0.0;
    double fidelity_err = 0.0;
    double efficiency = 0.0;
};

struct QubitExperimentResult {
    std::vector<StateOutcome> states;
    double average_fidelity = 0.0;
    double average_efficiency = 0.0;
    double classical_bound = 0.0;
};

namespace detail {

// Poisson error on the fidelity through the three count asymmetries.
inline double fidelity_error(const TomographyRecord& rec, const Vector2& psi) {
    const auto& p = projection_states();
    double var = 0.0;
    for (int k = 0; k < 3; ++k) {
        const double a = rec.counts[static_cast<size_t>(2 * k)];
        const double b = rec.counts[static_cast<size_t>(2 * k + 1)];
        const double tot = a + b;
        if (tot <= 0.0) continue;
        const double var_s = 4.0 * a * b / (tot * tot * tot);
        const Matrix2 op = p[static_cast<size_t>(2 * k)] *
                               p[static_cast<size_t>(2 * k)].adjoint() -
                           p[static_cast<size_t>(2 * k + 1)] *
                               p[static_cast<size_t>(2 * k + 1)].adjoint();
        const double c = std::real((psi.adjoint() * op * psi)(0, 0));
        var += 0.25 * c * c * var_s;
    }
    return std::sqrt(var);
}

} // namespace detail

/// Count records as CSV. Export writes one aggregate row per basis; import
/// also accepts one row per window (counts summed, windows from the largest
/// window_index), so measured per-window data can be fed in directly.
inline void write_counts_csv(std::ostream& os, const TomographyRecord& rec) {
    os << "basis,window_index,counts\n";
    char buf[64];
    for (int b = 0; b < 6; ++b) {
        std::snprintf(buf, sizeof buf, "%.17g", rec.counts[static_cast<size_t>(b)]);
        os << projection_names()[static_cast<size_t>(b)] << ',' << rec.windows
           << ',' << buf << '\n';
    }
}

inline TomographyRecord read_counts_csv(std::istream& is) {
    TomographyRecord rec;
    std::string line;
    if (!std::getline(is, line))
        throw std::invalid_argument("count CSV: empty input");
    long long max_window = 0;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::stringstream row(line);
        std::string basis, window, counts;
        if (!std::getline(row, basis, ',') || !std::getline(row, window, ',') ||
            !std::getline(row, counts))
            throw std::invalid_argument("count CSV: malformed row: " + line);
        int b = -1;
        for (int k = 0; k < 6; ++k)
            if (basis == projection_names()[static_cast<size_t>(k)]) b = k;
        if (b < 0) throw std::invalid_argument("count CSV: unknown basis " + basis);
        rec.counts[static_cast<size_t>(b)] += std::stod(counts);
        max_window = std::max(max_window, std::stoll(window));
    }
    rec.windows = max_window;
    return rec;
}

/// Density matrix as one CSV row of interleaved real/imaginary parts.
inline void write_density_csv(std::ostream& os, const PolarizationState& state) {
    os << "re_hh,im_hh,re_hv,im_hv,re_vh,im_vh,re_vv,im_vv\n";
    char buf[64];
    bool first = true;
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            const cd v = state.rho(i, j);
            std::snprintf(buf, sizeof buf, "%.17g,%.17g", v.real(), v.imag());
            os << (first ? "" : ",") << buf;
            first = false;
        }
    }
    os << '\n';
}

/// Runs the six canonical inputs through channel, counting, reconstruction,
/// and fidelity; reports per-state outcomes, averages, and the benchmark.
inline QubitExperimentResult qubit_experiment(const QubitExperimentConfig& cfg) {
    QubitExperimentResult res;
    const auto& states = projection_states();
    for (int s = 0; s < 6; ++s) {
        const Vector2& psi = states[static_cast<size_t>(s)];
        const auto input = PolarizationState::pure(psi);
        const auto out = apply_channel(input, cfg.channel);
        const auto rec = simulate_counts(
            input, cfg.channel, cfg.nbar, cfg.windows, cfg.background_per_window,
            cfg.detection_efficiency,
            detail::derive_seed(cfg.seed, 0x517A7E00ull + static_cast<size_t>(s)));
        const auto rho = reconstruct(rec);
        StateOutcome o;
        o.label = projection_names()[static_cast<size_t>(s)];
        o.fidelity = fidelity(rho, psi);
        o.fidelity_err = detail::fidelity_error(rec, psi);
        o.efficiency = out.efficiency;
        res.average_fidelity += o.fidelity / 6.0;
        res.average_efficiency += o.efficiency / 6.0;
        res.states.push_back(std::move(o));
    }
    res.classical_bound =
        classical_benchmark(cfg.nbar, res.average_efficiency).bound;
    return res;
}

} // namespace eitmem::qubit
