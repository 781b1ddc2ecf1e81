#include "growthlab/quantum_evolution.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "growthlab/banded.hpp"

namespace growthlab {

using cd = std::complex<double>;

RealBandedSym matrix_X(int n) {
    if (n < 1) throw std::invalid_argument("matrix_X: size must be >= 1");
    RealBandedSym m;
    m.size = n;
    m.bands.resize(2);
    m.bands[0].assign(n, 0.0);
    m.bands[1].assign(n - 1, 0.0);
    for (int i = 0; i + 1 < n; ++i) m.bands[1][i] = std::sqrt((i + 1) / 2.0);
    return m;
}

RealBandedSym matrix_X2(int n) {
    if (n < 2) throw std::invalid_argument("matrix_X2: size must be >= 2");
    RealBandedSym m;
    m.size = n;
    m.bands.resize(3);
    m.bands[0].resize(n);
    m.bands[1].assign(n - 1, 0.0);
    m.bands[2].resize(n - 2);
    for (int i = 0; i < n; ++i) m.bands[0][i] = i + 0.5;
    for (int i = 0; i <= n - 3; ++i) m.bands[2][i] = std::sqrt((i + 1.0) * (i + 2.0)) / 2.0;
    return m;
}

double HermiteState::l2_norm() const {
    double s = 0.0;
    for (const cd& c : coeffs) s += std::norm(c);
    return std::sqrt(s);
}

double HermiteState::tail_mass() const {
    const int n = truncation();
    const int start = static_cast<int>(0.9 * n);
    double tail = 0.0, total = 0.0;
    for (int i = 0; i < n; ++i) {
        const double m = std::norm(coeffs[i]);
        total += m;
        if (i >= start) tail += m;
    }
    return total > 0.0 ? tail / total : 0.0;
}

double HermiteState::sobolev_norm(double s) const {
    double acc = 0.0;
    for (size_t n = 0; n < coeffs.size(); ++n)
        acc += (std::pow(n + 0.5, s) + 1.0) * std::norm(coeffs[n]);
    return std::sqrt(acc);
}

HermiteState ground_state(int n_modes, double t0) {
    if (n_modes < 2) throw std::invalid_argument("ground_state: need at least 2 modes");
    HermiteState st;
    st.coeffs.assign(n_modes, cd(0.0, 0.0));
    st.coeffs[0] = cd(1.0, 0.0);
    st.time = t0;
    return st;
}

const std::vector<double>& HermiteTrajectory::norms_for(double s) const {
    for (size_t k = 0; k < s_values.size(); ++k)
        if (s_values[k] == s) return norms[k];
    throw std::invalid_argument("HermiteTrajectory: norm series for requested s not recorded");
}

namespace {

// Workspace for one truncation size: ladder coefficients and Sobolev weights.
struct StepWorkspace {
    int n = 0;
    std::vector<double> x_off;    // sqrt((m+1)/2)
    std::vector<double> x2_diag;  // m + 1/2
    std::vector<double> x2_off;   // sqrt((m+1)(m+2))/2
    std::vector<std::vector<double>> weights;  // (m+1/2)^s + 1 per requested s

    void resize(int new_n, const std::vector<double>& s_values) {
        n = new_n;
        x_off.resize(n);
        x2_diag.resize(n);
        x2_off.resize(n);
        for (int m = 0; m < n; ++m) {
            x_off[m] = std::sqrt((m + 1.0) / 2.0);
            x2_diag[m] = m + 0.5;
            x2_off[m] = std::sqrt((m + 1.0) * (m + 2.0)) / 2.0;
        }
        weights.assign(s_values.size(), {});
        for (size_t k = 0; k < s_values.size(); ++k) {
            weights[k].resize(n);
            for (int m = 0; m < n; ++m) weights[k][m] = std::pow(m + 0.5, s_values[k]) + 1.0;
        }
    }
};

}  // namespace

HermiteTrajectory evolve(const HermiteState& initial, const QuantumHamiltonianSpec& spec,
                         double t_end, const std::vector<double>& s_values,
                         const EvolveOptions& opts) {
    if (t_end <= initial.time) throw std::invalid_argument("evolve: t_end must exceed state time");
    if (spec.dt <= 0.0 || opts.sample_step <= 0.0)
        throw std::invalid_argument("evolve: dt and sample_step must be positive");
    if (initial.tail_mass() > opts.tail_threshold)
        throw std::invalid_argument("evolve: initial state violates the tail-mass bound");

    const double t0 = initial.time;
    const long steps_per_sample =
        std::max<long>(1, std::lround(opts.sample_step / spec.dt));
    const double dt = opts.sample_step / static_cast<double>(steps_per_sample);
    const long n_samples = std::lround((t_end - t0) / opts.sample_step);
    if (std::abs(t0 + n_samples * opts.sample_step - t_end) > 1e-9 * std::max(1.0, t_end))
        throw std::invalid_argument("evolve: t_end - t0 must be a multiple of sample_step");

    int n = initial.truncation();
    std::vector<cd> b = initial.coeffs;
    StepWorkspace ws;
    ws.resize(n, s_values);
    BandedLU lu(n, 2, 2);
    std::vector<cd> rhs(n);

    HermiteTrajectory traj;
    traj.s_values = s_values;
    traj.norms.assign(s_values.size(), {});

    const double l2sq0 = [&] {
        double s = 0.0;
        for (const cd& c : b) s += std::norm(c);
        return s;
    }();

    auto record = [&](double t) {
        double total = 0.0, tail = 0.0;
        const int tail_start = static_cast<int>(0.9 * n);
        for (int m = 0; m < n; ++m) {
            const double mass = std::norm(b[m]);
            total += mass;
            if (m >= tail_start) tail += mass;
        }
        traj.times.push_back(t);
        traj.l2.push_back(std::sqrt(total));
        traj.tail.push_back(total > 0.0 ? tail / total : 0.0);
        traj.truncation.push_back(n);
        for (size_t k = 0; k < s_values.size(); ++k) {
            double acc = 0.0;
            for (int m = 0; m < n; ++m) acc += ws.weights[k][m] * std::norm(b[m]);
            traj.norms[k].push_back(std::sqrt(acc));
        }
        // unitarity watchdog
        const double drift = std::abs(total - l2sq0) / l2sq0;
        if (drift > opts.l2_drift_per_unit_time * std::max(1.0, t - t0))
            throw std::runtime_error("evolve: L2 drift exceeds budget (dt too large)");
        // truncation growth
        if (total > 0.0 && tail / total > opts.tail_threshold) {
            if (2 * n > opts.max_truncation)
                throw std::runtime_error("evolve: truncation ceiling reached, growth under-resolved");
            n *= 2;
            b.resize(n, cd(0.0, 0.0));
            ws.resize(n, s_values);
            lu = BandedLU(n, 2, 2);
            rhs.resize(n);
        }
    };

    record(t0);

    const bool rot = opts.rotating_frame;
    for (long k = 0; k < n_samples; ++k) {
        for (long j = 0; j < steps_per_sample; ++j) {
            const double th = t0 + (k * steps_per_sample + j + 0.5) * dt;
            const double phi_h = spec.phi ? spec.phi(th) : 0.0;
            const double half_phi = 0.5 * phi_h;
            const double force = spec.a * std::sin(th);

            // half-step banded potential V (Hermitian): in the rotating frame
            // the band-k entries carry the phase exp(i k (th - t0)) and the
            // oscillator diagonal is handled exactly outside the solve.
            const double tau = th - t0;
            const cd ph1 = rot ? std::polar(1.0, tau) : cd(1.0, 0.0);
            const cd ph2 = rot ? std::polar(1.0, 2.0 * tau) : cd(1.0, 0.0);
            const cd ihalf(0.0, 0.5 * dt);

            lu.reset(n);
            for (int m = 0; m < n; ++m) {
                const double v0 = half_phi * ws.x2_diag[m] + (rot ? 0.0 : ws.x2_diag[m]);
                lu.at(m, m) = cd(1.0, 0.0) - ihalf * v0;
                if (m + 1 < n) {
                    const cd v1 = force * ws.x_off[m] * ph1;
                    lu.at(m, m + 1) = -ihalf * v1;
                    lu.at(m + 1, m) = -ihalf * std::conj(v1);
                }
                if (m + 2 < n) {
                    const cd v2 = half_phi * ws.x2_off[m] * ph2;
                    lu.at(m, m + 2) = -ihalf * v2;
                    lu.at(m + 2, m) = -ihalf * std::conj(v2);
                }
            }
            // rhs = (I + i dt/2 V) b
            for (int m = 0; m < n; ++m) {
                const double v0 = half_phi * ws.x2_diag[m] + (rot ? 0.0 : ws.x2_diag[m]);
                cd acc = (cd(1.0, 0.0) + ihalf * v0) * b[m];
                if (m + 1 < n) acc += ihalf * (force * ws.x_off[m] * ph1) * b[m + 1];
                if (m >= 1) acc += ihalf * std::conj(force * ws.x_off[m - 1] * ph1) * b[m - 1];
                if (m + 2 < n) acc += ihalf * (half_phi * ws.x2_off[m] * ph2) * b[m + 2];
                if (m >= 2) acc += ihalf * std::conj(half_phi * ws.x2_off[m - 2] * ph2) * b[m - 2];
                rhs[m] = acc;
            }
            lu.factor();
            lu.solve(rhs);
            std::swap(b, rhs);
        }
        record(t0 + (k + 1) * opts.sample_step);
    }

    traj.final_state.coeffs = std::move(b);
    traj.final_state.time = t_end;
    return traj;
}

}  // namespace growthlab
